//! Fixed-format MPS export.
//!
//! Names are replaced by short deterministic codes (`R1234567`, `C1234567`)
//! so they fit the 8-character fields; the mapping is returned alongside.
//! MPS minimizes, so the objective row holds the negated coefficients.

use std::fmt::Write;

use super::{LpModel, Sense, VarDomain};
use crate::rational::{self, Rational};

pub struct MpsExport {
    pub mps: String,
    /// One line per name: `<code> <original name>`.
    pub names: String,
}

fn row_code(i: usize) -> String {
    format!("R{i:07}")
}

fn col_code(j: usize) -> String {
    format!("C{j:07}")
}

fn num(r: &Rational) -> String {
    let v = rational::to_f64(r);
    let s = format!("{v}");
    if s.len() <= 12 {
        s
    } else {
        format!("{v:.6e}")
    }
}

pub fn write_mps(model: &LpModel, name: &str) -> MpsExport {
    let mut mps = String::new();
    let mut names = String::new();
    let short: String = name.chars().filter(|c| !c.is_whitespace()).take(8).collect();
    let _ = writeln!(mps, "NAME          {short}");
    mps.push_str("ROWS\n N  OBJ\n");
    for (i, r) in model.rows().iter().enumerate() {
        let t = match r.sense {
            Sense::Le => 'L',
            Sense::Eq => 'E',
            Sense::Ge => 'G',
        };
        let _ = writeln!(mps, " {t}  {}", row_code(i));
        let _ = writeln!(names, "{} {}", row_code(i), r.name);
    }
    // column-major entries
    let mut cols: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); model.num_vars()];
    for (i, r) in model.rows().iter().enumerate() {
        for (v, c) in &r.coeffs {
            cols[v.0].push((i, c));
        }
    }
    mps.push_str("COLUMNS\n");
    for (j, entries) in cols.iter().enumerate() {
        let code = col_code(j);
        let _ = writeln!(names, "{code} {}", model.vars()[j].name);
        if let Some(c) = model.objective().get(&super::VarId(j)) {
            let _ = writeln!(mps, "    {code:<8}  {:<8}  {:>12}", "OBJ", num(&-c.clone()));
        }
        for (i, c) in entries {
            let _ = writeln!(mps, "    {code:<8}  {:<8}  {:>12}", row_code(*i), num(c));
        }
    }
    mps.push_str("RHS\n");
    for (i, r) in model.rows().iter().enumerate() {
        if r.rhs != Rational::from_integer(0.into()) {
            let _ = writeln!(mps, "    {:<8}  {:<8}  {:>12}", "RHS", row_code(i), num(&r.rhs));
        }
    }
    let free: Vec<usize> = model
        .vars()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.domain == VarDomain::Free)
        .map(|(j, _)| j)
        .collect();
    if !free.is_empty() {
        mps.push_str("BOUNDS\n");
        for j in free {
            let _ = writeln!(mps, " FR {:<8}  {}", "BND", col_code(j));
        }
    }
    mps.push_str("ENDATA\n");
    MpsExport { mps, names }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::LinExpr;
    use crate::rational::int;

    #[test]
    fn small_model() {
        let mut m = LpModel::new();
        let lam = m.add_var("lambda", VarDomain::Free).unwrap();
        let y = m.add_var("a_very_long_variable_name", VarDomain::NonNeg).unwrap();
        m.add_row("cap", &(LinExpr::var(lam) + LinExpr::var(y)), Sense::Le, int(3))
            .unwrap();
        m.add_row("floor", &LinExpr::var(y), Sense::Ge, int(0)).unwrap();
        m.set_objective(&LinExpr::var(lam));
        let out = write_mps(&m, "toy");
        assert!(out.mps.starts_with("NAME          toy\nROWS\n N  OBJ\n L  R0000000\n G  R0000001\n"));
        assert!(out.mps.contains("    C0000000  OBJ                 -1\n"));
        assert!(out.mps.contains("    RHS       R0000000             3\n"));
        assert!(out.mps.contains(" FR BND       C0000000\n"));
        assert!(!out.mps.contains("R0000001             0"));
        assert!(out.mps.ends_with("ENDATA\n"));
        assert!(out.names.contains("C0000001 a_very_long_variable_name\n"));
        for line in out.mps.lines() {
            for tok in line.split_whitespace() {
                assert!(tok.len() <= 12, "{tok}");
            }
        }
    }
}
