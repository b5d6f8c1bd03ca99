//! Line-oriented polynomial text format.
//!
//! Each line holds one term: `<coeff> : <indices>`, e.g. `-3/2 : 1 4`.
//! An empty index list is the constant term and `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::{Polynomial, Support};
use crate::error::{Error, Result};
use crate::rational;

/// Parses with `n_vars` inferred from the largest index used.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let terms = parse_terms(text)?;
    let n = terms
        .iter()
        .filter_map(|(s, _)| s.max_index())
        .max()
        .unwrap_or(0) as usize;
    Polynomial::from_terms(n, terms)
}

/// Parses with an explicit variable count; larger indices are rejected.
pub fn parse_polynomial_with_vars(text: &str, n_vars: usize) -> Result<Polynomial> {
    let terms = parse_terms(text)?;
    Polynomial::from_terms(n_vars, terms)
}

fn parse_terms(text: &str) -> Result<Vec<(Support, rational::Rational)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (coeff, idx) = line.split_once(':').ok_or_else(|| Error::Parse {
            line: line_no,
            msg: "expected `<coeff> : <indices>`".into(),
        })?;
        let c = rational::parse(coeff).ok_or_else(|| Error::Parse {
            line: line_no,
            msg: format!("bad coefficient `{}`", coeff.trim()),
        })?;
        let mut indices = Vec::new();
        for tok in idx.split_whitespace() {
            let j: u32 = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad variable index `{tok}`"),
            })?;
            indices.push(j);
        }
        let s = Support::new(indices).map_err(|e| Error::Parse {
            line: line_no,
            msg: e.to_string(),
        })?;
        if !seen.insert(s.clone()) {
            return Err(Error::Duplicate {
                line: line_no,
                what: format!("support {s}"),
            });
        }
        out.push((s, c));
    }
    Ok(out)
}

pub fn write_polynomial(f: &Polynomial) -> String {
    let mut out = String::new();
    for (s, c) in f.terms() {
        let idx: Vec<String> = s.indices().iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{} : {}", rational::format(c), idx.join(" "));
    }
    out
}
