use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::Support;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A sparse multilinear polynomial over binary variables `x_1..x_n`.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<Support, Rational>,
}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Self {
        Polynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(n_vars);
        p.set(Support::constant(), c).expect("constant always fits");
        p
    }

    /// Builds from `(support, coefficient)` pairs, summing repeated supports.
    pub fn from_terms<I>(n_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Support, Rational)>,
    {
        let mut p = Self::zero(n_vars);
        for (s, c) in terms {
            p.add_term(s, c)?;
        }
        Ok(p)
    }

    /// Integer-coefficient shorthand used heavily in tests and examples.
    pub fn from_ints(n_vars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            n_vars,
            terms
                .iter()
                .map(|(s, c)| (Support::of(s), rational::int(*c))),
        )
        .expect("valid integer polynomial literal")
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Same terms with a larger variable count.
    pub fn with_n_vars(&self, n_vars: usize) -> Result<Self> {
        Self::from_terms(n_vars, self.terms.clone())
    }

    fn check(&self, s: &Support) -> Result<()> {
        match s.max_index() {
            Some(j) if j as usize > self.n_vars => Err(Error::IndexOutOfRange {
                index: j as usize,
                n_vars: self.n_vars,
            }),
            _ => Ok(()),
        }
    }

    /// Sets a coefficient; zero removes the term.
    pub fn set(&mut self, s: Support, c: Rational) -> Result<()> {
        self.check(&s)?;
        if c.is_zero() {
            self.terms.remove(&s);
        } else {
            self.terms.insert(s, c);
        }
        Ok(())
    }

    pub fn add_term(&mut self, s: Support, c: Rational) -> Result<()> {
        self.check(&s)?;
        let cur = self.terms.remove(&s).unwrap_or_else(Rational::zero);
        let next = cur + c;
        if !next.is_zero() {
            self.terms.insert(s, next);
        }
        Ok(())
    }

    pub fn coeff(&self, s: &Support) -> Rational {
        self.terms.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Support::constant())
    }

    pub fn linear_coeff(&self, j: u32) -> Rational {
        self.coeff(&Support::var(j))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Support, &Rational)> {
        self.terms.iter()
    }

    pub fn nonlinear_terms(&self) -> impl Iterator<Item = (&Support, &Rational)> {
        self.terms.iter().filter(|(s, _)| s.is_nonlinear())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Support::degree).max().unwrap_or(0)
    }

    pub fn evaluate(&self, x: &[bool]) -> Result<Rational> {
        if x.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: x.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .filter(|(s, _)| s.eval(x))
            .fold(Rational::zero(), |acc, (_, c)| acc + c))
    }

    /// Evaluation at a point given as a bitmask (bit j-1 is x_j).
    pub fn eval_mask(&self, x: u64) -> Rational {
        self.terms
            .iter()
            .filter(|(s, _)| s.eval_mask(x))
            .fold(Rational::zero(), |acc, (_, c)| acc + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n_vars);
        if c.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(s, v)| (s.clone(), v * c))
            .collect();
        out
    }

    pub fn add(&self, other: &Polynomial) -> Self {
        let mut out = Self::zero(self.n_vars.max(other.n_vars));
        for (s, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(s.clone(), c.clone()).expect("fits max n_vars");
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Maximum absolute coefficient, zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Variables appearing in some stored monomial, ascending.
    pub fn variables(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .terms
            .keys()
            .flat_map(|s| s.indices().iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Coefficientwise numeric view; lossy.
    pub fn to_f64_terms(&self) -> Vec<(Support, f64)> {
        self.terms
            .iter()
            .map(|(s, c)| (s.clone(), rational::to_f64(c)))
            .collect()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if s.is_constant() {
                write!(f, "{}", rational::format(&mag))?;
            } else if mag.is_one() {
                write!(f, "{s}")?;
            } else {
                write!(f, "{}*{s}", rational::format(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn evaluate_examples() {
        let f = Polynomial::from_ints(2, &[(&[1, 2], 1)]);
        assert_eq!(f.evaluate(&[true, true]).unwrap(), int(1));

        let f = Polynomial::from_ints(2, &[(&[], 1), (&[1], -1), (&[2], -1)]);
        assert_eq!(f.evaluate(&[true, true]).unwrap(), int(-1));

        let f = Polynomial::from_ints(3, &[(&[], 3), (&[1, 2], -1), (&[2, 3], -1)]);
        assert_eq!(f.evaluate(&[true, true, true]).unwrap(), int(1));
    }

    #[test]
    fn evaluate_dimension_mismatch() {
        let f = Polynomial::from_ints(2, &[(&[1, 2], 1)]);
        assert_eq!(
            f.evaluate(&[true]),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut f = Polynomial::from_ints(2, &[(&[1], 2)]);
        f.add_term(Support::of(&[1]), int(-2)).unwrap();
        assert!(f.is_zero());
        f.set(Support::of(&[2]), int(0)).unwrap();
        assert_eq!(f.num_terms(), 0);
    }

    #[test]
    fn out_of_range_support() {
        let mut f = Polynomial::zero(2);
        assert!(f.set(Support::of(&[3]), int(1)).is_err());
    }

    #[test]
    fn display() {
        let f = Polynomial::from_ints(3, &[(&[], 1), (&[1], 1), (&[1, 2], -2), (&[2, 3], 3)]);
        assert_eq!(f.to_string(), "1 + x1 - 2*x1*x2 + 3*x2*x3");
    }
}
