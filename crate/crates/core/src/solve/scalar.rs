use std::fmt::Debug;

use num_traits::{Signed, Zero};

use crate::rational::{self, Rational};

/// Arithmetic the simplex runs on: exact rationals or tolerance-based floats.
pub trait Scalar: Clone + Debug + PartialOrd + Send + Sync {
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_rational(&self) -> Rational;
    /// Treated as a structural zero (dropped from the tableau).
    fn negligible(&self) -> bool;
    /// Positive beyond the pivot tolerance.
    fn pos(&self) -> bool;
    /// Negative beyond the pricing tolerance.
    fn neg(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn magnitude(&self) -> f64;
}

pub const FLOAT_TOL: f64 = 1e-9;
const FLOAT_DROP: f64 = 1e-12;

impl Scalar for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(r: &Rational) -> Self {
        rational::to_f64(r)
    }
    fn to_rational(&self) -> Rational {
        rational::from_f64(*self)
    }
    fn negligible(&self) -> bool {
        self.abs() < FLOAT_DROP
    }
    fn pos(&self) -> bool {
        *self > FLOAT_TOL
    }
    fn neg(&self) -> bool {
        *self < -FLOAT_TOL
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn negligible(&self) -> bool {
        self.is_zero()
    }
    fn pos(&self) -> bool {
        self.is_positive()
    }
    fn neg(&self) -> bool {
        self.is_negative()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn magnitude(&self) -> f64 {
        rational::to_f64(&self.abs())
    }
}
