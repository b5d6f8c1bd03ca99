use std::collections::{BTreeMap, HashSet};
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarDomain {
    NonNeg,
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub domain: VarDomain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub coeffs: Vec<(VarId, Rational)>,
    pub sense: Sense,
    pub rhs: Rational,
}

/// Affine expression over model variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinExpr {
    pub terms: BTreeMap<VarId, Rational>,
    pub constant: Rational,
}

impl LinExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(v: VarId) -> Self {
        Self::term(v, Rational::one())
    }

    pub fn term(v: VarId, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(v, c);
        e
    }

    pub fn constant(c: Rational) -> Self {
        LinExpr {
            terms: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn add_term(&mut self, v: VarId, c: Rational) {
        let slot = self.terms.entry(v).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&v);
        }
    }

    pub fn add_expr(&mut self, other: &LinExpr, scale: &Rational) {
        for (v, c) in &other.terms {
            self.add_term(*v, c * scale);
        }
        self.constant += &other.constant * scale;
    }

    pub fn scaled(&self, c: &Rational) -> LinExpr {
        let mut e = LinExpr::zero();
        e.add_expr(self, c);
        e
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.terms
            .iter()
            .fold(self.constant.clone(), |acc, (v, c)| acc + c * &values[v.0])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add for LinExpr {
    type Output = LinExpr;
    fn add(mut self, rhs: LinExpr) -> LinExpr {
        self.add_expr(&rhs, &Rational::one());
        self
    }
}

impl Sub for LinExpr {
    type Output = LinExpr;
    fn sub(mut self, rhs: LinExpr) -> LinExpr {
        self.add_expr(&rhs, &-Rational::one());
        self
    }
}

impl Neg for LinExpr {
    type Output = LinExpr;
    fn neg(self) -> LinExpr {
        self.scaled(&-Rational::one())
    }
}

/// A maximization LP with variables bounded below by zero or free.
#[derive(Clone, Debug, Default)]
pub struct LpModel {
    vars: Vec<Variable>,
    rows: Vec<Constraint>,
    objective: BTreeMap<VarId, Rational>,
    var_names: HashSet<String>,
    row_names: HashSet<String>,
}

impl LpModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, name: impl Into<String>, domain: VarDomain) -> Result<VarId> {
        let name = name.into();
        if !self.var_names.insert(name.clone()) {
            return Err(Error::Duplicate {
                line: 0,
                what: format!("variable name {name}"),
            });
        }
        self.vars.push(Variable { name, domain });
        Ok(VarId(self.vars.len() - 1))
    }

    /// Adds `expr (sense) rhs`; the expression's constant moves to the right.
    pub fn add_row(
        &mut self,
        name: impl Into<String>,
        expr: &LinExpr,
        sense: Sense,
        rhs: Rational,
    ) -> Result<RowId> {
        let name = name.into();
        for v in expr.terms.keys() {
            if v.0 >= self.vars.len() {
                return Err(Error::IndexOutOfRange {
                    index: v.0,
                    n_vars: self.vars.len(),
                });
            }
        }
        if !self.row_names.insert(name.clone()) {
            return Err(Error::Duplicate {
                line: 0,
                what: format!("row name {name}"),
            });
        }
        self.rows.push(Constraint {
            name,
            coeffs: expr.terms.iter().map(|(v, c)| (*v, c.clone())).collect(),
            sense,
            rhs: rhs - &expr.constant,
        });
        Ok(RowId(self.rows.len() - 1))
    }

    pub fn set_objective(&mut self, expr: &LinExpr) {
        self.objective = expr.terms.clone();
    }

    pub fn objective(&self) -> &BTreeMap<VarId, Rational> {
        &self.objective
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn var_by_name(&self, name: &str) -> Option<VarId> {
        self.vars.iter().position(|v| v.name == name).map(VarId)
    }

    /// Exact feasibility check of a primal point.
    pub fn is_feasible(&self, values: &[Rational]) -> bool {
        if values.len() != self.vars.len() {
            return false;
        }
        let domains_ok = self
            .vars
            .iter()
            .zip(values)
            .all(|(v, x)| v.domain == VarDomain::Free || *x >= Rational::zero());
        domains_ok
            && self.rows.iter().all(|r| {
                let lhs = r
                    .coeffs
                    .iter()
                    .fold(Rational::zero(), |acc, (v, c)| acc + c * &values[v.0]);
                match r.sense {
                    Sense::Le => lhs <= r.rhs,
                    Sense::Eq => lhs == r.rhs,
                    Sense::Ge => lhs >= r.rhs,
                }
            })
    }

    pub fn objective_value(&self, values: &[Rational]) -> Rational {
        self.objective
            .iter()
            .fold(Rational::zero(), |acc, (v, c)| acc + c * &values[v.0])
    }

    pub fn describe_row(&self, r: RowId) -> String {
        let row = &self.rows[r.0];
        let lhs: Vec<String> = row
            .coeffs
            .iter()
            .map(|(v, c)| format!("{}*{}", rational::format(c), self.vars[v.0].name))
            .collect();
        let op = match row.sense {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        };
        format!(
            "{}: {} {op} {}",
            row.name,
            lhs.join(" + "),
            rational::format(&row.rhs)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn names_are_unique() {
        let mut m = LpModel::new();
        let x = m.add_var("x", VarDomain::NonNeg).unwrap();
        assert!(m.add_var("x", VarDomain::Free).is_err());
        m.add_row("r", &LinExpr::var(x), Sense::Le, int(1)).unwrap();
        assert!(m.add_row("r", &LinExpr::var(x), Sense::Le, int(1)).is_err());
        assert!(m
            .add_row("q", &LinExpr::var(VarId(7)), Sense::Le, int(1))
            .is_err());
    }

    #[test]
    fn expression_constant_moves_to_rhs() {
        let mut m = LpModel::new();
        let x = m.add_var("x", VarDomain::Free).unwrap();
        let e = LinExpr::var(x) + LinExpr::constant(int(2));
        m.add_row("r", &e, Sense::Ge, int(5)).unwrap();
        assert_eq!(m.rows()[0].rhs, int(3));
        assert!(m.is_feasible(&[int(3)]));
        assert!(!m.is_feasible(&[int(2)]));
        let mut e = LinExpr::var(x);
        e.add_term(x, int(-1));
        assert!(e.is_constant());
    }
}
