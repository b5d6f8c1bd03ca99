//! LP solving: exact or floating-point simplex, and a cutting-plane driver.

mod cutplane;
mod scalar;
mod simplex;
mod sparse;

use std::time::Instant;

use num_traits::Zero;

pub use cutplane::{solve_cutting_plane, CutOracle, CutPlaneOptions, CutPlaneStats};
pub use scalar::{Scalar, FLOAT_TOL};

use crate::error::Result;
use crate::lp::LpModel;
use crate::rational::Rational;
use simplex::{Limits, Outcome, StdForm, Tableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: Status,
    pub objective: Rational,
    /// Primal values indexed by `VarId`; empty unless optimal.
    pub values: Vec<Rational>,
    /// False when produced by floating-point arithmetic.
    pub exact: bool,
    pub iterations: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }

    fn without_point(status: Status, exact: bool, iterations: usize) -> Self {
        LpSolution {
            status,
            objective: <Rational as Zero>::zero(),
            values: Vec::new(),
            exact,
            iterations,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Arithmetic {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    pub arithmetic: Arithmetic,
    /// Exact mode only: start from the optimal basis of a float solve.
    pub no_warm_start: bool,
    /// Pivot cap for the exact tableau; the float back end ignores it.
    pub max_iterations: Option<usize>,
    pub deadline: Option<Instant>,
}

impl SolveOptions {
    pub fn float() -> Self {
        SolveOptions {
            arithmetic: Arithmetic::Float,
            ..Self::default()
        }
    }
}

/// Exact solve without limits.
pub fn solve(model: &LpModel) -> LpSolution {
    solve_with(model, &SolveOptions::default()).expect("no limits configured")
}

pub fn solve_with(model: &LpModel, opts: &SolveOptions) -> Result<LpSolution> {
    match opts.arithmetic {
        Arithmetic::Float => sparse::solve(model, opts.deadline),
        Arithmetic::Exact => {
            let sf = StdForm::new(model);
            let limits = Limits {
                max_iterations: opts.max_iterations,
                deadline: opts.deadline,
            };
            let mut iterations = 0;
            if !opts.no_warm_start {
                let mut ft = Tableau::<f64>::new(&sf);
                // a float failure only costs the warm start
                if let Ok(Outcome::Optimal) = ft.solve(&sf, &limits) {
                    iterations += ft.iterations;
                    let mut t = Tableau::<Rational>::new(&sf);
                    if let Some(outcome) = t.solve_from_basis(&sf, &ft.basic_columns(), &limits)? {
                        let mut sol = finish(model, &sf, &t, outcome, true);
                        sol.iterations += iterations;
                        return Ok(sol);
                    }
                    iterations += t.iterations;
                }
            }
            let mut t = Tableau::<Rational>::new(&sf);
            let outcome = t.solve(&sf, &limits)?;
            let mut sol = finish(model, &sf, &t, outcome, true);
            sol.iterations += iterations;
            Ok(sol)
        }
    }
}

fn finish<T: Scalar>(
    model: &LpModel,
    sf: &StdForm,
    t: &Tableau<T>,
    outcome: Outcome,
    exact: bool,
) -> LpSolution {
    match outcome {
        Outcome::Infeasible => LpSolution::without_point(Status::Infeasible, exact, t.iterations),
        Outcome::Unbounded => LpSolution::without_point(Status::Unbounded, exact, t.iterations),
        Outcome::Optimal => {
            let values = sf.values(&t.column_values());
            LpSolution {
                status: Status::Optimal,
                objective: model.objective_value(&values),
                values,
                exact,
                iterations: t.iterations,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{LinExpr, Sense, VarDomain};
    use crate::rational::{frac, int};

    fn single(rows: &[(Sense, i64)]) -> LpModel {
        let mut m = LpModel::new();
        let l = m.add_var("lambda", VarDomain::Free).unwrap();
        for (k, (s, b)) in rows.iter().enumerate() {
            m.add_row(format!("r{k}"), &LinExpr::var(l), *s, int(*b)).unwrap();
        }
        m.set_objective(&LinExpr::var(l));
        m
    }

    #[test]
    fn spec_examples() {
        for arith in [Arithmetic::Exact, Arithmetic::Float] {
            let opts = SolveOptions {
                arithmetic: arith,
                ..Default::default()
            };
            let s = solve_with(&single(&[(Sense::Le, 3)]), &opts).unwrap();
            assert_eq!((s.status, s.objective), (Status::Optimal, int(3)));
            let s = solve_with(&single(&[(Sense::Le, 1), (Sense::Ge, 2)]), &opts).unwrap();
            assert_eq!(s.status, Status::Infeasible);
            let s = solve_with(&single(&[]), &opts).unwrap();
            assert_eq!(s.status, Status::Unbounded);
        }
    }

    #[test]
    fn textbook_lp() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
        let mut m = LpModel::new();
        let x = m.add_var("x", VarDomain::NonNeg).unwrap();
        let y = m.add_var("y", VarDomain::NonNeg).unwrap();
        m.add_row("a", &LinExpr::var(x), Sense::Le, int(4)).unwrap();
        m.add_row("b", &LinExpr::term(y, int(2)), Sense::Le, int(12)).unwrap();
        m.add_row("c", &(LinExpr::term(x, int(3)) + LinExpr::term(y, int(2))), Sense::Le, int(18))
            .unwrap();
        m.set_objective(&(LinExpr::term(x, int(3)) + LinExpr::term(y, int(5))));
        let s = solve(&m);
        assert_eq!(s.objective, int(36));
        assert_eq!(s.values, vec![int(2), int(6)]);
        assert!(m.is_feasible(&s.values));
    }

    #[test]
    fn rational_optimum_and_redundant_equalities() {
        // max x + y, 3x + y = 1, 6x + 2y = 2, x - y >= -1/2
        let mut m = LpModel::new();
        let x = m.add_var("x", VarDomain::Free).unwrap();
        let y = m.add_var("y", VarDomain::NonNeg).unwrap();
        let e = LinExpr::term(x, int(3)) + LinExpr::var(y);
        m.add_row("e1", &e, Sense::Eq, int(1)).unwrap();
        m.add_row("e2", &e.scaled(&int(2)), Sense::Eq, int(2)).unwrap();
        m.add_row("g", &(LinExpr::var(x) - LinExpr::var(y)), Sense::Ge, frac(-1, 2))
            .unwrap();
        m.set_objective(&(LinExpr::var(x) + LinExpr::var(y)));
        for no_warm_start in [false, true] {
            let s = solve_with(
                &m,
                &SolveOptions {
                    no_warm_start,
                    ..Default::default()
                },
            )
            .unwrap();
            // y = 1 - 3x and x - y >= -1/2 give x >= 1/8; x + y = 1 - 2x
            assert_eq!(s.objective, frac(3, 4));
            assert_eq!(s.values, vec![frac(1, 8), frac(5, 8)]);
        }
    }
}
