//! The standard and Lovász hierarchies and the signed reformulation.

use serde::{Deserialize, Serialize};

use super::model::{assemble, AssembleOptions, PsBlock, RelaxationModel};
use crate::error::{Error, Result};
use crate::extension::{
    all_standard_selectors, relaxed_lovasz_set_with, LovaszOptions, Selector, STANDARD_CAP,
};
use crate::partition::PartitionTree;
use crate::poly::{Polynomial, SignedDecomposition, SignedSupport, Support};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelaxMethod {
    /// Blocks partition the positive monomials.
    Standard,
    /// Blocks partition the variables of the positive monomials.
    Lovasz,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LevelOptions {
    pub foreign_ps_as_nns: bool,
    pub lovasz: LovaszOptions,
}

fn tree_base(dec: &SignedDecomposition, method: RelaxMethod) -> TreeBase {
    match method {
        RelaxMethod::Standard => TreeBase::Monomials(dec.s2.supports().cloned().collect()),
        RelaxMethod::Lovasz => TreeBase::Vars(dec.s2.vars().to_vec()),
    }
}

enum TreeBase {
    Monomials(Vec<Support>),
    Vars(Vec<u32>),
}

/// Number of levels `L`; 1 when `f` has no positive nonlinear monomial.
pub fn num_levels(f: &Polynomial, method: RelaxMethod) -> usize {
    let dec = SignedDecomposition::ambient(f);
    match tree_base(&dec, method) {
        TreeBase::Monomials(m) if !m.is_empty() => PartitionTree::build(&m).map_or(1, |t| t.height()),
        TreeBase::Vars(v) if !v.is_empty() => PartitionTree::build(&v).map_or(1, |t| t.height()),
        _ => 1,
    }
}

fn empty_block(n: usize) -> PsBlock {
    PsBlock {
        theta2: SignedSupport::new(n),
        selectors: vec![Selector::default()],
    }
}

/// Positive parts `θ^{i,k,2}` and their extension sets at level `i`.
pub fn level_blocks(
    f: &Polynomial,
    level: usize,
    method: RelaxMethod,
    opts: &LevelOptions,
) -> Result<Vec<PsBlock>> {
    let n = f.n_vars();
    let dec = SignedDecomposition::ambient(f);
    let max = num_levels(f, method);
    if level == 0 || level > max {
        return Err(Error::LevelOutOfRange { level, max });
    }
    if dec.m2() == 0 {
        return Ok(vec![empty_block(n)]);
    }
    match tree_base(&dec, method) {
        TreeBase::Monomials(monos) => {
            let tree = PartitionTree::build(&monos)?;
            tree.level(level)?
                .iter()
                .map(|node| {
                    let theta2 = SignedSupport::positive(n, node.iter().cloned())?;
                    let selectors = all_standard_selectors(&theta2)?.selectors;
                    Ok(PsBlock { theta2, selectors })
                })
                .collect()
        }
        TreeBase::Vars(vars) => {
            let tree = PartitionTree::build(&vars)?;
            let mut blocks = Vec::new();
            for node in tree.level(level)? {
                let inside = dec.s2.supports().filter(|a| a.is_subset_of(node)).cloned();
                let theta2 = SignedSupport::positive(n, inside)?;
                if theta2.m() == 0 {
                    continue;
                }
                let selectors = relaxed_lovasz_set_with(&theta2, opts.lovasz)?.selectors;
                blocks.push(PsBlock { theta2, selectors });
            }
            if blocks.is_empty() {
                blocks.push(empty_block(n));
            }
            Ok(blocks)
        }
    }
}

pub fn build_level_relaxation(
    f: &Polynomial,
    level: usize,
    method: RelaxMethod,
) -> Result<RelaxationModel> {
    build_level_relaxation_with(f, level, method, &LevelOptions::default())
}

pub fn build_level_relaxation_with(
    f: &Polynomial,
    level: usize,
    method: RelaxMethod,
    opts: &LevelOptions,
) -> Result<RelaxationModel> {
    let blocks = level_blocks(f, level, method, opts)?;
    assemble(
        f,
        blocks,
        AssembleOptions {
            with_g: true,
            foreign_ps_as_nns: opts.foreign_ps_as_nns,
        },
    )
}

/// `max λ s.t. f - λ ∈ NM(s, M)` with a single certificate whose extension
/// set is the smaller of the standard and relaxed Lovász sets.
pub fn build_signed_reformulation(f: &Polynomial) -> Result<RelaxationModel> {
    let dec = SignedDecomposition::ambient(f);
    let block = if dec.m2() == 0 {
        empty_block(f.n_vars())
    } else {
        let std = all_standard_selectors(&dec.s2).ok();
        let lov = relaxed_lovasz_set_with(&dec.s2, LovaszOptions::default())
            .ok()
            .filter(|es| es.len() <= STANDARD_CAP);
        let selectors = match (std, lov) {
            (Some(a), Some(b)) => {
                if b.len() < a.len() {
                    b.selectors
                } else {
                    a.selectors
                }
            }
            (Some(a), None) => a.selectors,
            (None, Some(b)) => b.selectors,
            (None, None) => {
                return Err(Error::CapExceeded {
                    what: "extension set size for the positive part",
                    value: dec.m2(),
                    cap: STANDARD_CAP,
                })
            }
        };
        PsBlock {
            theta2: dec.s2.clone(),
            selectors,
        }
    };
    assemble(f, vec![block], AssembleOptions::default())
}

/// Size bound of a level-`i` model up to a constant:
/// `m1·d1·m2·d2^(2^i)` (standard) or `m1·d1·m2·2^(2^i)` (Lovász).
pub fn size_bound(f: &Polynomial, level: usize, method: RelaxMethod) -> f64 {
    let dec = SignedDecomposition::ambient(f);
    let base = match method {
        RelaxMethod::Standard => dec.d2().max(1) as f64,
        RelaxMethod::Lovasz => 2.0,
    };
    let exp = 2f64.powi(level as i32);
    dec.m1() as f64 * dec.d1().max(1) as f64 * dec.m2().max(1) as f64 * base.powf(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_counts() {
        let f = Polynomial::from_ints(4, &[(&[1, 2], 1), (&[3, 4], 1), (&[1, 3], -2)]);
        assert_eq!(num_levels(&f, RelaxMethod::Standard), 2);
        assert_eq!(num_levels(&f, RelaxMethod::Lovasz), 3);
        let nns = Polynomial::from_ints(2, &[(&[1, 2], -1)]);
        assert_eq!(num_levels(&nns, RelaxMethod::Standard), 1);
        assert!(matches!(
            build_level_relaxation(&f, 3, RelaxMethod::Standard),
            Err(Error::LevelOutOfRange { level: 3, max: 2 })
        ));
    }

    #[test]
    fn lovasz_blocks_drop_empty_parts() {
        let f = Polynomial::from_ints(4, &[(&[1, 2], 1), (&[3, 4], 1), (&[2, 3], 1)]);
        // level 1: singletons hold no monomial
        let b = level_blocks(&f, 1, RelaxMethod::Lovasz, &LevelOptions::default()).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].theta2.m(), 0);
        // level 2: {1,2} and {3,4}; x2x3 spans both and is left to g
        let b = level_blocks(&f, 2, RelaxMethod::Lovasz, &LevelOptions::default()).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].selectors.len(), 2);
        let b = level_blocks(&f, 3, RelaxMethod::Lovasz, &LevelOptions::default()).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].theta2.m(), 3);
    }
}
