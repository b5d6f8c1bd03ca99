use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial support: a sorted set of 1-based variable indices.
///
/// The empty support is the constant monomial. Supports order graded-lex:
/// first by degree, then lexicographically by their sorted indices.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Support(Vec<u32>);

impl Support {
    pub fn constant() -> Self {
        Support(Vec::new())
    }

    pub fn var(j: u32) -> Self {
        Support(vec![j])
    }

    /// Builds a support from arbitrary indices; rejects zero and duplicates.
    pub fn new<I: IntoIterator<Item = u32>>(indices: I) -> Result<Self> {
        let mut v: Vec<u32> = indices.into_iter().collect();
        v.sort_unstable();
        if v.first() == Some(&0) {
            return Err(Error::MalformedSupport("index 0 (indices are 1-based)".into()));
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedSupport(format!("repeated index in {v:?}")));
        }
        Ok(Support(v))
    }

    /// Panics on malformed input; for literals in code and tests.
    pub fn of(indices: &[u32]) -> Self {
        Self::new(indices.iter().copied()).expect("malformed support literal")
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonlinear(&self) -> bool {
        self.0.len() >= 2
    }

    pub fn contains(&self, j: u32) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Whether every index lies in the given sorted set.
    pub fn is_subset_of(&self, set: &[u32]) -> bool {
        self.0.iter().all(|j| set.binary_search(j).is_ok())
    }

    /// Bitmask over variables 1..=64 (bit j-1 for variable j).
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &j| m | (1u64 << (j - 1)))
    }

    /// x^alpha for a binary point stored as a bitmask.
    pub fn eval_mask(&self, x: u64) -> bool {
        let m = self.mask();
        x & m == m
    }

    pub fn eval(&self, x: &[bool]) -> bool {
        self.0.iter().all(|&j| x[(j - 1) as usize])
    }

    /// Space-separated indices, as used by the text formats.
    pub fn key(&self) -> String {
        self.0
            .iter()
            .map(|j| j.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Ord for Support {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Support {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|j| format!("x{j}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl From<Support> for String {
    fn from(s: Support) -> String {
        s.key()
    }
}

impl TryFrom<String> for Support {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        let idx = s
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::MalformedSupport(format!("bad index '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Support::new(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let mut v = [
            Support::of(&[1, 2]),
            Support::of(&[3]),
            Support::constant(),
            Support::of(&[1]),
            Support::of(&[1, 2, 3]),
            Support::of(&[1, 3]),
        ];
        v.sort();
        let keys: Vec<String> = v.iter().map(|s| s.key()).collect();
        assert_eq!(keys, vec!["", "1", "3", "1 2", "1 3", "1 2 3"]);
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(Support::new([0, 1]).is_err());
        assert!(Support::new([2, 2]).is_err());
        assert_eq!(Support::new([3, 1]).unwrap().indices(), &[1, 3]);
    }

    #[test]
    fn mask_eval() {
        let a = Support::of(&[1, 3]);
        assert!(a.eval_mask(0b101));
        assert!(!a.eval_mask(0b001));
        assert!(Support::constant().eval_mask(0));
    }
}
