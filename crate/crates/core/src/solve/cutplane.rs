//! Cutting-plane loop: solve a master LP, ask an oracle for violated
//! inequalities, add them, repeat.

use std::collections::HashSet;

use super::{solve_with, LpSolution, SolveOptions};
use crate::error::{Error, Result};
use crate::lp::{LinExpr, LpModel, Sense};
use crate::rational::{self, Rational};

/// Produces inequalities `expr >= 0` violated by the master's current point.
pub trait CutOracle {
    fn separate(&mut self, model: &LpModel, values: &[Rational]) -> Result<Vec<LinExpr>>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CutPlaneOptions {
    pub solve: SolveOptions,
    /// Maximum number of master solves.
    pub max_rounds: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CutPlaneStats {
    pub rounds: usize,
    pub cuts_added: usize,
    pub duplicates_rejected: usize,
}

fn row_key(e: &LinExpr) -> String {
    let mut key = rational::format(&e.constant);
    for (v, c) in &e.terms {
        key.push_str(&format!("|{}:{}", v.0, rational::format(c)));
    }
    key
}

/// Runs to a master optimum with no violated cut; the returned model holds
/// every cut added.
pub fn solve_cutting_plane(
    mut master: LpModel,
    oracle: &mut dyn CutOracle,
    opts: &CutPlaneOptions,
) -> Result<(LpSolution, LpModel, CutPlaneStats)> {
    let mut stats = CutPlaneStats::default();
    let mut seen = HashSet::new();
    loop {
        if stats.rounds >= opts.max_rounds {
            return Err(Error::IterationCap(opts.max_rounds));
        }
        stats.rounds += 1;
        let sol = solve_with(&master, &opts.solve)?;
        if !sol.is_optimal() {
            return Ok((sol, master, stats));
        }
        let cuts = oracle.separate(&master, &sol.values)?;
        let mut added = 0;
        for cut in cuts {
            if !seen.insert(row_key(&cut)) {
                stats.duplicates_rejected += 1;
                continue;
            }
            let name = format!("cut{}", stats.cuts_added);
            master.add_row(name, &cut, Sense::Ge, Rational::from_integer(0.into()))?;
            stats.cuts_added += 1;
            added += 1;
        }
        if added == 0 {
            return Ok((sol, master, stats));
        }
    }
}
