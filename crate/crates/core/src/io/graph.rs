use std::collections::BTreeSet;
use std::fmt::Write;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Support};
use crate::rational::{self, Rational};

/// Weighted undirected graph with 1-based nodes; edges stored with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n_nodes: usize,
    pub edges: Vec<(u32, u32, Rational)>,
}

impl Graph {
    /// Validates and normalizes edge endpoints to `i < j`.
    pub fn new(n_nodes: usize, edges: Vec<(u32, u32, Rational)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (k, (a, b, w)) in edges.into_iter().enumerate() {
            let (i, j) = (a.min(b), a.max(b));
            if i == 0 || j as usize > n_nodes {
                return Err(Error::IndexOutOfRange {
                    index: if i == 0 { 0 } else { j as usize },
                    n_vars: n_nodes,
                });
            }
            if i == j {
                return Err(Error::Parse {
                    line: k + 2,
                    msg: format!("self loop on node {i}"),
                });
            }
            if !seen.insert((i, j)) {
                return Err(Error::Duplicate {
                    line: k + 2,
                    what: format!("edge {i} {j}"),
                });
            }
            out.push((i, j, w));
        }
        Ok(Graph {
            n_nodes,
            edges: out,
        })
    }

    pub fn cut_value(&self, side: &[bool]) -> Rational {
        self.edges
            .iter()
            .filter(|(i, j, _)| side[*i as usize - 1] != side[*j as usize - 1])
            .fold(Rational::zero(), |acc, (_, _, w)| acc + w)
    }
}

/// Reads the rudy / Biq Mac format: a header `n m` followed by `m` lines `i j w`.
pub fn parse_rudy(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || Error::Parse {
        line: hline,
        msg: format!("expected `n m`, got `{header}`"),
    };
    if head.len() != 2 {
        return Err(bad_header());
    }
    let n: usize = head[0].parse().map_err(|_| bad_header())?;
    let m: usize = head[1].parse().map_err(|_| bad_header())?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = BTreeSet::new();
    for (line, l) in lines {
        let tok: Vec<&str> = l.split_whitespace().collect();
        let bad = |msg: String| Error::Parse { line, msg };
        if tok.len() != 3 {
            return Err(bad(format!("expected `i j w`, got `{l}`")));
        }
        let i: u32 = tok[0].parse().map_err(|_| bad(format!("bad node `{}`", tok[0])))?;
        let j: u32 = tok[1].parse().map_err(|_| bad(format!("bad node `{}`", tok[1])))?;
        let w = rational::parse(tok[2]).ok_or_else(|| bad(format!("bad weight `{}`", tok[2])))?;
        for v in [i, j] {
            if v == 0 || v as usize > n {
                return Err(Error::IndexOutOfRange {
                    index: v as usize,
                    n_vars: n,
                });
            }
        }
        if i == j {
            return Err(bad(format!("self loop on node {i}")));
        }
        if !seen.insert((i.min(j), i.max(j))) {
            return Err(Error::Duplicate {
                line,
                what: format!("edge {i} {j}"),
            });
        }
        edges.push((i, j, w));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, edges)
}

pub fn write_rudy(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n_nodes, g.edges.len());
    for (i, j, w) in &g.edges {
        let _ = writeln!(out, "{i} {j} {}", rational::format(w));
    }
    out
}

/// `f(x) = -Σ w_ij (x_i + x_j - 2 x_i x_j)`, so `min f = -maxcut`.
pub fn maxcut_to_bpo(g: &Graph) -> Polynomial {
    let mut f = Polynomial::zero(g.n_nodes);
    let two = rational::int(2);
    for (i, j, w) in &g.edges {
        f.add_term(Support::var(*i), -w.clone()).expect("fits");
        f.add_term(Support::var(*j), -w.clone()).expect("fits");
        f.add_term(Support::of(&[*i, *j]), &two * w).expect("fits");
    }
    f
}

/// Maximum cut by Gray-code enumeration with node `n` fixed to side 0.
pub fn max_cut_enumerate(g: &Graph) -> Result<Rational> {
    let n = g.n_nodes;
    if n > 34 {
        return Err(Error::CapExceeded {
            what: "max-cut enumeration node count",
            value: n,
            cap: 34,
        });
    }
    if n <= 1 {
        return Ok(Rational::zero());
    }
    let denom = rational::common_denominator(g.edges.iter().map(|(_, _, w)| w));
    let scale = Rational::from_integer(denom.clone());
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for (i, j, w) in &g.edges {
        let v = (w * &scale).to_integer();
        let v: i64 = num_traits::ToPrimitive::to_i64(&v).ok_or(Error::CapExceeded {
            what: "scaled edge weight",
            value: usize::MAX,
            cap: i64::MAX as usize,
        })?;
        adj[*i as usize - 1].push((*j as usize - 1, v));
        adj[*j as usize - 1].push((*i as usize - 1, v));
    }
    let mut side = vec![false; n];
    let mut cut: i64 = 0;
    let mut best: i64 = 0;
    for k in 1u64..(1u64 << (n - 1)) {
        let v = k.trailing_zeros() as usize;
        // flipping v changes the cut by Σ w(v,u) * (same side ? +1 : -1)
        let mut delta = 0;
        for &(u, w) in &adj[v] {
            if side[u] == side[v] {
                delta += w;
            } else {
                delta -= w;
            }
        }
        side[v] = !side[v];
        cut += delta;
        best = best.max(cut);
    }
    Ok(Rational::new(best.into(), denom))
}
