//! Lower bounds for binary polynomial optimization via signed certificates.

pub mod error;
pub mod extension;
pub mod gen;
pub mod io;
pub mod lp;
pub mod mincut;
pub mod partition;
pub mod poly;
pub mod relax;
pub mod rational;
pub mod solve;

pub use error::{Error, Result};
pub use poly::{Polynomial, Support};
pub use rational::Rational;
