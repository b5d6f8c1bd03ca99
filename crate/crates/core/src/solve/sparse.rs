//! Floating-point back end on a sparse revised simplex (microlp).

use std::time::Instant;

use microlp::{ComparisonOp, OptimizationDirection, Problem, SolveOutcome, TerminationReason};

use super::{LpSolution, Status};
use crate::error::{Error, Result};
use crate::lp::{LpModel, Sense, VarDomain, VarId};
use crate::rational::{from_f64, to_f64};

pub(super) fn solve(model: &LpModel, deadline: Option<Instant>) -> Result<LpSolution> {
    let mut p = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = model
        .vars()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let c = model.objective().get(&VarId(i)).map_or(0.0, to_f64);
            let lo = match v.domain {
                VarDomain::NonNeg => 0.0,
                VarDomain::Free => f64::NEG_INFINITY,
            };
            p.add_var(c, (lo, f64::INFINITY))
        })
        .collect();
    for r in model.rows() {
        let expr: Vec<_> = r.coeffs.iter().map(|(v, c)| (vars[v.0], to_f64(c))).collect();
        let op = match r.sense {
            Sense::Le => ComparisonOp::Le,
            Sense::Eq => ComparisonOp::Eq,
            Sense::Ge => ComparisonOp::Ge,
        };
        p.add_constraint(expr, op, to_f64(&r.rhs));
    }
    if let Some(d) = deadline {
        let left = d.saturating_duration_since(Instant::now());
        if left.is_zero() {
            return Err(Error::TimeLimit);
        }
        p.set_time_limit(left);
    }
    match p.solve() {
        Ok(SolveOutcome::Solution(s)) => {
            if s.termination_reason() != TerminationReason::ProvenOptimal {
                return Err(Error::TimeLimit);
            }
            Ok(LpSolution {
                status: Status::Optimal,
                objective: from_f64(s.objective()),
                values: vars.iter().map(|&v| from_f64(s.var_value_raw(v))).collect(),
                exact: false,
                iterations: s.stats().lp_iterations as usize,
            })
        }
        Ok(SolveOutcome::Interrupted(_)) => Err(Error::TimeLimit),
        Err(microlp::Error::Infeasible) => Ok(LpSolution::without_point(Status::Infeasible, false, 0)),
        Err(microlp::Error::Unbounded) => Ok(LpSolution::without_point(Status::Unbounded, false, 0)),
        Err(_) => Err(Error::Unsolved("floating-point solver failure")),
    }
}
