//! Flow rows certifying binary non-negativity of one NNS template.
//!
//! For `h(x) = F0 + Σ_α F_α x^α + Σ_j L_j x_j` with `F_α <= 0` the rows are
//!
//! ```text
//! ρ_sα + F_α <= 0                      ρ_sα >= 0
//! ρ_sα = Σ_{j∈α} ρ_αj                  ρ_αj >= 0
//! Σ_{α∋j} ρ_αj - r_j = t_j             r_j >= 0, t_j free
//! t_j <= L_j
//! F0 + Σ_α F_α + Σ_j t_j >= 0
//! ```
//!
//! The shortcut flow from the source into `j` is `-r_j`, i.e. it may only
//! run backwards; with a free shortcut the block would accept every `h`
//! whose coefficients sum to something non-negative.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{LinExpr, LpModel, RowId, Sense, VarDomain, VarId};
use crate::poly::Support;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonnegBlock {
    pub source: BTreeMap<Support, VarId>,
    pub inner: BTreeMap<(Support, u32), VarId>,
    pub back: BTreeMap<u32, VarId>,
    pub sink: BTreeMap<u32, VarId>,
    pub rows: Vec<RowId>,
    pub final_row: Option<RowId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BlockFlows {
    pub source: BTreeMap<String, String>,
    pub inner: BTreeMap<String, String>,
    pub back: BTreeMap<u32, String>,
    pub sink: BTreeMap<u32, String>,
}

impl NonnegBlock {
    pub fn num_vars(&self) -> usize {
        self.source.len() + self.inner.len() + self.back.len() + self.sink.len()
    }

    /// Sum of the sink flows `Σ_j t_j`.
    pub fn sink_total(&self) -> LinExpr {
        let mut e = LinExpr::zero();
        for v in self.sink.values() {
            e.add_term(*v, Rational::from_integer(1.into()));
        }
        e
    }

    pub fn flows(&self, values: &[Rational]) -> BlockFlows {
        let fmt = |v: &VarId| crate::rational::format(&values[v.0]);
        BlockFlows {
            source: self.source.iter().map(|(a, v)| (a.key(), fmt(v))).collect(),
            inner: self
                .inner
                .iter()
                .map(|((a, j), v)| (format!("{}->{j}", a.key()), fmt(v)))
                .collect(),
            back: self.back.iter().map(|(j, v)| (*j, fmt(v))).collect(),
            sink: self.sink.iter().map(|(j, v)| (*j, fmt(v))).collect(),
        }
    }
}

/// Hooks into the certified polynomial: `F_α` per negative monomial, `L_j`
/// per variable and the constant `F0`.
pub struct BlockHooks<'a> {
    pub negative: &'a BTreeMap<Support, LinExpr>,
    pub linear: &'a BTreeMap<u32, LinExpr>,
    pub constant: &'a LinExpr,
}

/// Appends the rows above; `with_final_row = false` leaves out the last
/// inequality so that `Σ t_j` can be optimized directly.
pub fn emit_nonneg_block(
    model: &mut LpModel,
    prefix: &str,
    hooks: &BlockHooks<'_>,
    with_final_row: bool,
) -> Result<NonnegBlock> {
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    let mut blk = NonnegBlock {
        source: BTreeMap::new(),
        inner: BTreeMap::new(),
        back: BTreeMap::new(),
        sink: BTreeMap::new(),
        rows: Vec::new(),
        final_row: None,
    };
    for a in hooks.negative.keys() {
        if !a.is_nonlinear() {
            return Err(Error::MalformedSupport(format!(
                "network monomial {a} must have degree at least 2"
            )));
        }
        if let Some(j) = a.indices().iter().find(|j| !hooks.linear.contains_key(j)) {
            return Err(Error::MalformedSupport(format!(
                "monomial {a} uses x{j}, which has no linear hook"
            )));
        }
    }
    for (a, fa) in hooks.negative {
        let k = a.key().replace(' ', "_");
        let s = model.add_var(format!("{prefix}.s.{k}"), VarDomain::NonNeg)?;
        blk.source.insert(a.clone(), s);
        let cap = LinExpr::var(s) + fa.clone();
        blk.rows
            .push(model.add_row(format!("{prefix}.cap.{k}"), &cap, Sense::Le, zero.clone())?);
        let mut split = LinExpr::var(s);
        for &j in a.indices() {
            let v = model.add_var(format!("{prefix}.a.{k}.{j}"), VarDomain::NonNeg)?;
            blk.inner.insert((a.clone(), j), v);
            split.add_term(v, -one.clone());
        }
        blk.rows
            .push(model.add_row(format!("{prefix}.split.{k}"), &split, Sense::Eq, zero.clone())?);
    }
    for (&j, lj) in hooks.linear {
        let r = model.add_var(format!("{prefix}.r.{j}"), VarDomain::NonNeg)?;
        let t = model.add_var(format!("{prefix}.t.{j}"), VarDomain::Free)?;
        blk.back.insert(j, r);
        blk.sink.insert(j, t);
        let mut bal = LinExpr::zero();
        for ((a, jj), v) in &blk.inner {
            if *jj == j && hooks.negative.contains_key(a) {
                bal.add_term(*v, one.clone());
            }
        }
        bal.add_term(r, -one.clone());
        bal.add_term(t, -one.clone());
        blk.rows
            .push(model.add_row(format!("{prefix}.bal.{j}"), &bal, Sense::Eq, zero.clone())?);
        let cap = LinExpr::var(t) - lj.clone();
        blk.rows
            .push(model.add_row(format!("{prefix}.sink.{j}"), &cap, Sense::Le, zero.clone())?);
    }
    if with_final_row {
        let mut total = hooks.constant.clone();
        for fa in hooks.negative.values() {
            total.add_expr(fa, &one);
        }
        total.add_expr(&blk.sink_total(), &one);
        let r = model.add_row(format!("{prefix}.nonneg"), &total, Sense::Ge, zero)?;
        blk.rows.push(r);
        blk.final_row = Some(r);
    }
    Ok(blk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::rational::int;
    use crate::solve::{solve, Status};

    /// Block with the polynomial's coefficients plugged in as constants.
    fn fixed_block(f: &Polynomial, with_final_row: bool) -> (LpModel, NonnegBlock) {
        let negative = f
            .nonlinear_terms()
            .map(|(a, c)| (a.clone(), LinExpr::constant(c.clone())))
            .collect();
        let linear = (1..=f.n_vars() as u32)
            .map(|j| (j, LinExpr::constant(f.linear_coeff(j))))
            .collect();
        let constant = LinExpr::constant(f.constant_term());
        let mut m = LpModel::new();
        let hooks = BlockHooks {
            negative: &negative,
            linear: &linear,
            constant: &constant,
        };
        let b = emit_nonneg_block(&mut m, "b", &hooks, with_final_row).unwrap();
        (m, b)
    }

    #[test]
    fn feasibility_matches_nonnegativity() {
        let ok = Polynomial::from_ints(2, &[(&[1], 1), (&[2], 1), (&[1, 2], -1)]);
        assert_eq!(solve(&fixed_block(&ok, true).0).status, Status::Optimal);
        let bad = Polynomial::from_ints(2, &[(&[], 1), (&[1], -1), (&[2], -1)]);
        assert_eq!(solve(&fixed_block(&bad, true).0).status, Status::Infeasible);
    }

    #[test]
    fn empty_network_is_sum_of_negative_parts() {
        let f = Polynomial::from_ints(3, &[(&[1], 2), (&[2], -3), (&[3], -1)]);
        let (mut m, b) = fixed_block(&f, false);
        m.set_objective(&b.sink_total());
        assert_eq!(solve(&m).objective, int(-4));
    }

    #[test]
    fn row_and_column_counts() {
        let f = Polynomial::from_ints(3, &[(&[1, 2], -1), (&[1, 2, 3], -2), (&[2], 1)]);
        let (m, b) = fixed_block(&f, true);
        // 2 cap + 2 split + 3 bal + 3 sink + 1 final
        assert_eq!(m.num_rows(), 11);
        // 2 source + 5 inner + 3 back + 3 sink
        assert_eq!(b.num_vars(), 13);
    }

    #[test]
    fn rejects_linear_network_monomial() {
        let negative = BTreeMap::from([(Support::of(&[1]), LinExpr::zero())]);
        let linear = BTreeMap::from([(1, LinExpr::zero())]);
        let hooks = BlockHooks {
            negative: &negative,
            linear: &linear,
            constant: &LinExpr::zero(),
        };
        assert!(emit_nonneg_block(&mut LpModel::new(), "b", &hooks, true).is_err());
    }
}
