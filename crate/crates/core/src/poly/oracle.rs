//! Exhaustive oracles used to validate every polynomial-time routine.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub const BRUTE_FORCE_CAP: usize = 24;
pub const SUBMODULAR_CAP: usize = 16;

/// Exhaustive minimum with the default cap.
pub fn brute_force_min(f: &Polynomial) -> Result<(Vec<bool>, Rational)> {
    brute_force_min_capped(f, BRUTE_FORCE_CAP)
}

/// Exhaustive minimum over `{0,1}^n`; ties go to the lexicographically
/// smallest point (`x_1` most significant).
pub fn brute_force_min_capped(f: &Polynomial, cap: usize) -> Result<(Vec<bool>, Rational)> {
    let n = f.n_vars();
    if n > cap || n > 63 {
        return Err(Error::CapExceeded {
            what: "brute-force variable count",
            value: n,
            cap,
        });
    }
    let (best, value) = match ScaledPoly::new(f) {
        Some(sp) => {
            let (m, v) = sp.argmin(n);
            (m, Rational::new(BigInt::from(v), sp.denom.clone()))
        }
        None => exact_argmin(f, n),
    };
    Ok((mask_to_point(best, n), value))
}

/// Point order: `x_1` is the most significant bit of the enumeration index,
/// so increasing index is increasing lexicographic order.
fn lex_index_to_mask(k: u64, n: usize) -> u64 {
    let mut m = 0u64;
    for j in 0..n {
        if (k >> (n - 1 - j)) & 1 == 1 {
            m |= 1 << j;
        }
    }
    m
}

pub fn mask_to_point(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|j| (mask >> j) & 1 == 1).collect()
}

pub fn point_to_mask(x: &[bool]) -> u64 {
    x.iter()
        .enumerate()
        .fold(0, |m, (j, &b)| if b { m | (1 << j) } else { m })
}

fn exact_argmin(f: &Polynomial, n: usize) -> (u64, Rational) {
    let mut best: Option<(u64, Rational)> = None;
    for k in 0..(1u64 << n) {
        let m = lex_index_to_mask(k, n);
        let v = f.eval_mask(m);
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((m, v));
        }
    }
    best.expect("at least one point")
}

/// Integer-scaled copy for fast enumeration when everything fits in i128.
struct ScaledPoly {
    denom: BigInt,
    terms: Vec<(u64, i128)>,
}

impl ScaledPoly {
    fn new(f: &Polynomial) -> Option<Self> {
        let denom = rational::common_denominator(f.terms().map(|(_, c)| c));
        let scale = Rational::from_integer(denom.clone());
        let mut terms = Vec::with_capacity(f.num_terms());
        let mut total: i128 = 0;
        for (s, c) in f.terms() {
            let v = (c * &scale).to_integer().to_i128()?;
            total = total.checked_add(v.checked_abs()?)?;
            terms.push((s.mask(), v));
        }
        // every partial sum stays within `total`
        if total > i128::MAX / 2 {
            return None;
        }
        Some(ScaledPoly { denom, terms })
    }

    fn argmin(&self, n: usize) -> (u64, i128) {
        let mut best = (0u64, i128::MAX);
        for k in 0..(1u64 << n) {
            let m = lex_index_to_mask(k, n);
            let v: i128 = self
                .terms
                .iter()
                .filter(|(s, _)| s & m == *s)
                .map(|(_, c)| *c)
                .sum();
            if v < best.1 {
                best = (m, v);
            }
        }
        best
    }
}

/// Pairwise check of `g(x) + g(y) >= g(x|y) + g(x&y)`.
pub fn is_submodular(f: &Polynomial) -> Result<bool> {
    let n = f.n_vars();
    if n > SUBMODULAR_CAP {
        return Err(Error::CapExceeded {
            what: "submodularity check variable count",
            value: n,
            cap: SUBMODULAR_CAP,
        });
    }
    let values: Vec<Rational> = (0..(1u64 << n)).map(|m| f.eval_mask(m)).collect();
    for x in 0..values.len() {
        for y in (x + 1)..values.len() {
            let lhs = &values[x] + &values[y];
            let rhs = &values[x | y] + &values[x & y];
            if lhs < rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Minimum of `f` over all points; `None` for an empty variable set is not
/// possible, so this is a plain value helper.
pub fn min_value(f: &Polynomial) -> Result<Rational> {
    brute_force_min(f).map(|(_, v)| v)
}

pub fn is_binary_nonnegative(f: &Polynomial) -> Result<bool> {
    Ok(min_value(f)? >= Rational::zero())
}
