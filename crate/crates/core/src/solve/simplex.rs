//! Two-phase primal simplex on a sparse row tableau.
//!
//! Pricing is Dantzig's rule; after a run of degenerate pivots it switches to
//! Bland's rule until the objective strictly improves, which rules out
//! cycling.

use std::time::Instant;

use num_traits::Signed;

use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::lp::{LpModel, Sense, VarDomain};
use crate::rational::Rational;

const NONE: usize = usize::MAX;
const DEGENERATE_RUN: usize = 50;

/// The model in equality form `A x = b, x >= 0, b >= 0` with a starting basis
/// of slack and artificial columns.
pub(crate) struct StdForm {
    pub ncols: usize,
    pub var_cols: Vec<(usize, Option<usize>)>,
    pub rows: Vec<Vec<(u32, Rational)>>,
    pub rhs: Vec<Rational>,
    pub init_basis: Vec<usize>,
    pub artificial: Vec<bool>,
    /// Minimization cost (the negated maximization objective).
    pub cost: Vec<Rational>,
}

impl StdForm {
    pub fn new(model: &LpModel) -> Self {
        let mut ncols = 0;
        let mut var_cols = Vec::with_capacity(model.num_vars());
        for v in model.vars() {
            let plus = ncols;
            ncols += 1;
            let minus = (v.domain == VarDomain::Free).then(|| {
                ncols += 1;
                ncols - 1
            });
            var_cols.push((plus, minus));
        }
        let mut rows = Vec::with_capacity(model.num_rows());
        let mut rhs = Vec::with_capacity(model.num_rows());
        let mut init_basis = Vec::with_capacity(model.num_rows());
        let mut extra = Vec::new();
        for r in model.rows() {
            let flip = r.rhs.is_negative();
            let sign = |c: &Rational| if flip { -c.clone() } else { c.clone() };
            let mut row: Vec<(u32, Rational)> = Vec::with_capacity(r.coeffs.len() + 2);
            for (v, c) in &r.coeffs {
                let (p, m) = var_cols[v.0];
                row.push((p as u32, sign(c)));
                if let Some(m) = m {
                    row.push((m as u32, -sign(c)));
                }
            }
            let sense = match (r.sense, flip) {
                (Sense::Le, true) => Sense::Ge,
                (Sense::Ge, true) => Sense::Le,
                (s, _) => s,
            };
            let mut new_col = |row: &mut Vec<(u32, Rational)>, c: i64, art: bool| {
                let j = ncols + extra.len();
                extra.push(art);
                row.push((j as u32, Rational::from_integer(c.into())));
                j
            };
            let basic = match sense {
                Sense::Le => new_col(&mut row, 1, false),
                Sense::Ge => {
                    new_col(&mut row, -1, false);
                    new_col(&mut row, 1, true)
                }
                Sense::Eq => new_col(&mut row, 1, true),
            };
            row.sort_by_key(|e| e.0);
            rows.push(row);
            rhs.push(if flip { -r.rhs.clone() } else { r.rhs.clone() });
            init_basis.push(basic);
        }
        let mut artificial = vec![false; ncols];
        artificial.extend(extra);
        let total = artificial.len();
        let mut cost = vec![Rational::from_integer(0.into()); total];
        for (v, c) in model.objective() {
            let (p, m) = var_cols[v.0];
            cost[p] = -c.clone();
            if let Some(m) = m {
                cost[m] = c.clone();
            }
        }
        StdForm {
            ncols: total,
            var_cols,
            rows,
            rhs,
            init_basis,
            artificial,
            cost,
        }
    }

    pub fn values<T: Scalar>(&self, col_values: &[T]) -> Vec<Rational> {
        self.var_cols
            .iter()
            .map(|&(p, m)| {
                let v = col_values[p].to_rational();
                match m {
                    Some(m) => v - col_values[m].to_rational(),
                    None => v,
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Limits {
    pub max_iterations: Option<usize>,
    pub deadline: Option<Instant>,
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Optimal,
    Infeasible,
    Unbounded,
}

pub(crate) struct Tableau<T: Scalar> {
    rows: Vec<Vec<(u32, T)>>,
    rhs: Vec<T>,
    alive: Vec<bool>,
    basis: Vec<usize>,
    row_of: Vec<usize>,
    col_rows: Vec<Vec<u32>>,
    enabled: Vec<bool>,
    artificial: Vec<bool>,
    d: Vec<T>,
    z: T,
    pub iterations: usize,
}

fn lookup<T: Scalar>(row: &[(u32, T)], c: usize) -> Option<&T> {
    row.binary_search_by_key(&(c as u32), |e| e.0)
        .ok()
        .map(|k| &row[k].1)
}

impl<T: Scalar> Tableau<T> {
    pub fn new(sf: &StdForm) -> Self {
        let rows: Vec<Vec<(u32, T)>> = sf
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, c)| (*j, T::from_rational(c))).collect())
            .collect();
        let mut col_rows = vec![Vec::new(); sf.ncols];
        for (i, r) in rows.iter().enumerate() {
            for (j, _) in r {
                col_rows[*j as usize].push(i as u32);
            }
        }
        let mut row_of = vec![NONE; sf.ncols];
        for (i, &b) in sf.init_basis.iter().enumerate() {
            row_of[b] = i;
        }
        Tableau {
            rhs: sf.rhs.iter().map(T::from_rational).collect(),
            alive: vec![true; rows.len()],
            rows,
            basis: sf.init_basis.clone(),
            row_of,
            col_rows,
            enabled: vec![true; sf.ncols],
            artificial: sf.artificial.clone(),
            d: vec![T::zero(); sf.ncols],
            z: T::zero(),
            iterations: 0,
        }
    }

    fn entry(&self, i: usize, c: usize) -> Option<&T> {
        lookup(&self.rows[i], c)
    }

    /// Live rows with a nonzero in column `c`; prunes stale index entries.
    fn column(&mut self, c: usize) -> Vec<u32> {
        let mut list = std::mem::take(&mut self.col_rows[c]);
        list.sort_unstable();
        list.dedup();
        list.retain(|&i| self.alive[i as usize] && self.entry(i as usize, c).is_some());
        self.col_rows[c] = list.clone();
        list
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.entry(r, c).expect("pivot entry").clone();
        let mut prow = std::mem::take(&mut self.rows[r]);
        for e in prow.iter_mut() {
            e.1 = if e.0 as usize == c { T::one() } else { e.1.div(&piv) };
        }
        self.rhs[r] = self.rhs[r].div(&piv);
        let rhs_r = self.rhs[r].clone();
        for i in self.column(c) {
            let i = i as usize;
            if i == r {
                continue;
            }
            let f = self.entry(i, c).expect("listed").clone();
            let old = std::mem::take(&mut self.rows[i]);
            let mut merged = Vec::with_capacity(old.len() + prow.len());
            let (mut a, mut b) = (0, 0);
            while a < old.len() || b < prow.len() {
                let ka = old.get(a).map_or(u32::MAX, |e| e.0);
                let kb = prow.get(b).map_or(u32::MAX, |e| e.0);
                if ka < kb {
                    merged.push(old[a].clone());
                    a += 1;
                } else if kb < ka {
                    if kb as usize != c {
                        let v = T::zero().sub(&f.mul(&prow[b].1));
                        if !v.negligible() {
                            merged.push((kb, v));
                            self.col_rows[kb as usize].push(i as u32);
                        }
                    }
                    b += 1;
                } else {
                    if ka as usize != c {
                        let v = old[a].1.sub(&f.mul(&prow[b].1));
                        if !v.negligible() {
                            merged.push((ka, v));
                        }
                    }
                    a += 1;
                    b += 1;
                }
            }
            self.rows[i] = merged;
            let v = self.rhs[i].sub(&f.mul(&rhs_r));
            self.rhs[i] = if v.negligible() { T::zero() } else { v };
        }
        let dc = self.d[c].clone();
        if !dc.negligible() {
            for (j, v) in &prow {
                let j = *j as usize;
                self.d[j] = self.d[j].sub(&dc.mul(v));
            }
            self.z = self.z.add(&dc.mul(&rhs_r));
        }
        self.d[c] = T::zero();
        self.rows[r] = prow;
        self.col_rows[c] = vec![r as u32];
        let leaving = self.basis[r];
        if leaving != NONE {
            self.row_of[leaving] = NONE;
        }
        self.basis[r] = c;
        self.row_of[c] = r;
        self.iterations += 1;
    }

    fn set_cost(&mut self, cost: &[T]) {
        self.d = cost.to_vec();
        self.z = T::zero();
        for i in 0..self.rows.len() {
            if !self.alive[i] {
                continue;
            }
            let cb = cost[self.basis[i]].clone();
            if cb.negligible() {
                continue;
            }
            for (j, v) in &self.rows[i] {
                let j = *j as usize;
                self.d[j] = self.d[j].sub(&cb.mul(v));
            }
            self.z = self.z.add(&cb.mul(&self.rhs[i]));
        }
        for i in 0..self.rows.len() {
            if self.alive[i] {
                self.d[self.basis[i]] = T::zero();
            }
        }
    }

    fn check_limits(&self, limits: &Limits) -> Result<()> {
        if let Some(cap) = limits.max_iterations {
            if self.iterations > cap {
                return Err(Error::IterationCap(cap));
            }
        }
        if let Some(deadline) = limits.deadline {
            if self.iterations.is_multiple_of(32) && Instant::now() >= deadline {
                return Err(Error::TimeLimit);
            }
        }
        Ok(())
    }

    fn optimize(&mut self, limits: &Limits) -> Result<Outcome> {
        let mut bland = false;
        let mut degenerate_run = 0;
        loop {
            self.check_limits(limits)?;
            let candidates = (0..self.d.len())
                .filter(|&j| self.enabled[j] && self.row_of[j] == NONE && self.d[j].neg());
            let entering = if bland {
                candidates.into_iter().next()
            } else {
                candidates.min_by(|&a, &b| {
                    self.d[a]
                        .partial_cmp(&self.d[b])
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
            };
            let Some(c) = entering else {
                return Ok(Outcome::Optimal);
            };
            let mut best: Option<(usize, T, T)> = None;
            for i in self.column(c) {
                let i = i as usize;
                let a = self.entry(i, c).expect("listed").clone();
                if !a.pos() {
                    continue;
                }
                let b = if self.rhs[i].neg() || self.rhs[i].negligible() {
                    T::zero()
                } else {
                    self.rhs[i].clone()
                };
                let ratio = b.div(&a);
                let better = match &best {
                    None => true,
                    Some((bi, br, ba)) => {
                        if T::EXACT {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        } else {
                            let tol = 1e-12 * (1.0 + br.magnitude());
                            let diff = ratio.sub(br);
                            if diff.magnitude() <= tol {
                                if bland {
                                    self.basis[i] < self.basis[*bi]
                                } else {
                                    a.magnitude() > ba.magnitude()
                                }
                            } else {
                                ratio < *br
                            }
                        }
                    }
                };
                if better {
                    best = Some((i, ratio, a));
                }
            }
            let Some((r, ratio, _)) = best else {
                return Ok(Outcome::Unbounded);
            };
            self.pivot(r, c);
            if ratio.negligible() {
                degenerate_run += 1;
                if degenerate_run > DEGENERATE_RUN {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
                bland = false;
            }
        }
    }

    /// Pivots artificial columns out of the basis; rows where that is
    /// impossible are redundant and dropped. Artificials are then disabled.
    fn remove_artificials(&mut self) {
        for i in 0..self.rows.len() {
            if !self.alive[i] || !self.artificial[self.basis[i]] {
                continue;
            }
            let pick = self.rows[i]
                .iter()
                .filter(|(j, v)| {
                    let j = *j as usize;
                    !self.artificial[j] && self.enabled[j] && self.row_of[j] == NONE && {
                        if T::EXACT {
                            !v.negligible()
                        } else {
                            v.magnitude() > super::scalar::FLOAT_TOL
                        }
                    }
                })
                .max_by(|a, b| {
                    a.1.magnitude()
                        .partial_cmp(&b.1.magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .map(|e| e.0 as usize);
            match pick {
                Some(j) => self.pivot(i, j),
                None => {
                    self.alive[i] = false;
                    self.row_of[self.basis[i]] = NONE;
                    self.basis[i] = NONE;
                    self.rows[i].clear();
                    self.rhs[i] = T::zero();
                }
            }
        }
        for j in 0..self.enabled.len() {
            if self.artificial[j] {
                self.enabled[j] = false;
            }
        }
    }

    fn phase_one(&mut self, limits: &Limits) -> Result<bool> {
        if !self.artificial.iter().any(|&a| a) {
            return Ok(true);
        }
        let cost: Vec<T> = self
            .artificial
            .iter()
            .map(|&a| if a { T::one() } else { T::zero() })
            .collect();
        self.set_cost(&cost);
        self.optimize(limits)?;
        let infeasible = if T::EXACT {
            self.z.pos()
        } else {
            self.z.magnitude() > 1e-7
        };
        if infeasible {
            return Ok(false);
        }
        self.remove_artificials();
        Ok(true)
    }

    pub fn solve(&mut self, sf: &StdForm, limits: &Limits) -> Result<Outcome> {
        if !self.phase_one(limits)? {
            return Ok(Outcome::Infeasible);
        }
        self.phase_two(sf, limits)
    }

    fn phase_two(&mut self, sf: &StdForm, limits: &Limits) -> Result<Outcome> {
        let cost: Vec<T> = sf.cost.iter().map(T::from_rational).collect();
        self.set_cost(&cost);
        self.optimize(limits)
    }

    /// Pivots the given columns into the basis and, if the result is primal
    /// feasible, finishes with phase two. Returns `None` when the crashed
    /// basis is infeasible.
    pub fn solve_from_basis(
        &mut self,
        sf: &StdForm,
        target: &[usize],
        limits: &Limits,
    ) -> Result<Option<Outcome>> {
        let mut wanted = vec![false; self.enabled.len()];
        for &t in target {
            wanted[t] = true;
        }
        for &t in target {
            if self.row_of[t] != NONE {
                continue;
            }
            self.check_limits(limits)?;
            let rows = self.column(t);
            let pick = rows
                .iter()
                .map(|&i| i as usize)
                .filter(|&i| !wanted[self.basis[i]])
                .min_by_key(|&i| (!self.artificial[self.basis[i]], self.rows[i].len()));
            if let Some(r) = pick {
                self.pivot(r, t);
            }
        }
        let feasible = (0..self.rows.len()).all(|i| {
            !self.alive[i]
                || (!self.rhs[i].neg()
                    && (!self.artificial[self.basis[i]] || self.rhs[i].negligible()))
        });
        if !feasible {
            return Ok(None);
        }
        self.remove_artificials();
        self.phase_two(sf, limits).map(Some)
    }

    pub fn basic_columns(&self) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| self.alive[i] && !self.artificial[self.basis[i]])
            .map(|i| self.basis[i])
            .collect()
    }

    pub fn column_values(&self) -> Vec<T> {
        let mut x = vec![T::zero(); self.enabled.len()];
        for i in 0..self.rows.len() {
            if self.alive[i] {
                x[self.basis[i]] = self.rhs[i].clone();
            }
        }
        x
    }
}
