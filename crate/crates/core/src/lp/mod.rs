//! Linear programming models and MPS export.

mod model;
mod mps;

pub use model::{Constraint, LinExpr, LpModel, RowId, Sense, VarDomain, VarId, Variable};
pub use mps::{write_mps, MpsExport};
