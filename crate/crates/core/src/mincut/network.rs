use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{first_positive_nonlinear, Polynomial, Support};
use crate::rational::{self, Rational};

/// An NNS polynomial split into the pieces the network is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedForm {
    pub n_vars: usize,
    pub f_const: Rational,
    /// Sum of the negative nonlinear coefficients.
    pub f_a: Rational,
    /// The set `A` with its (negative) coefficients.
    pub neg_terms: BTreeMap<Support, Rational>,
    /// Linear coefficients `f_j` for every `j` in `1..=n`, zeros included.
    pub lin_terms: BTreeMap<u32, Rational>,
    /// `N_f = {j : f_j <= 0}`; these variables are fixed to one.
    pub fixed_ones: BTreeSet<u32>,
}

pub fn reduce(f: &Polynomial) -> Result<ReducedForm> {
    if let Some(a) = first_positive_nonlinear(f) {
        return Err(Error::NotNns(a));
    }
    let n = f.n_vars();
    let neg_terms: BTreeMap<Support, Rational> = f
        .nonlinear_terms()
        .map(|(a, c)| (a.clone(), c.clone()))
        .collect();
    let f_a = neg_terms.values().fold(Rational::zero(), |acc, c| acc + c);
    let lin_terms: BTreeMap<u32, Rational> =
        (1..=n as u32).map(|j| (j, f.linear_coeff(j))).collect();
    let fixed_ones = lin_terms
        .iter()
        .filter(|(_, c)| !c.is_positive())
        .map(|(j, _)| *j)
        .collect();
    Ok(ReducedForm {
        n_vars: n,
        f_const: f.constant_term(),
        f_a,
        neg_terms,
        lin_terms,
        fixed_ones,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Capacity {
    Finite(Rational),
    Infinite,
}

impl Capacity {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Capacity::Infinite)
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(c) => f.write_str(&rational::format(c)),
            Capacity::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Source,
    Sink,
    Monomial(Support),
    Var(u32),
}

impl Node {
    pub fn name(&self) -> String {
        match self {
            Node::Source => "s".into(),
            Node::Sink => "t".into(),
            Node::Monomial(a) => {
                let idx: Vec<String> = a.indices().iter().map(u32::to_string).collect();
                format!("a_{}", idx.join("_"))
            }
            Node::Var(j) => format!("x_{j}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub cap: Capacity,
}

/// The min-cut network: node 0 is the source, node 1 the sink, then one
/// node per negative monomial and one per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    pub nodes: Vec<Node>,
    pub arcs: Vec<Arc>,
}

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

impl FlowNetwork {
    pub fn var_node(&self, j: u32) -> Option<usize> {
        self.nodes.iter().position(|v| *v == Node::Var(j))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for v in &self.nodes {
            let _ = writeln!(out, "  {};", v.name());
        }
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                self.nodes[a.from].name(),
                self.nodes[a.to].name(),
                a.cap
            );
        }
        out.push_str("}\n");
        out
    }
}

pub fn build_network(rf: &ReducedForm) -> FlowNetwork {
    let mut nodes = vec![Node::Source, Node::Sink];
    let first_mono = nodes.len();
    nodes.extend(rf.neg_terms.keys().cloned().map(Node::Monomial));
    let first_var = nodes.len();
    nodes.extend((1..=rf.n_vars as u32).map(Node::Var));
    let var_node = |j: u32| first_var + j as usize - 1;

    let mut arcs = Vec::new();
    for (k, c) in rf.neg_terms.values().enumerate() {
        arcs.push(Arc {
            from: SOURCE,
            to: first_mono + k,
            cap: Capacity::Finite(-c.clone()),
        });
    }
    for (k, a) in rf.neg_terms.keys().enumerate() {
        for &j in a.indices() {
            arcs.push(Arc {
                from: first_mono + k,
                to: var_node(j),
                cap: Capacity::Infinite,
            });
        }
    }
    for (&j, c) in &rf.lin_terms {
        let cap = if c.is_positive() { c.clone() } else { Rational::zero() };
        arcs.push(Arc {
            from: var_node(j),
            to: SINK,
            cap: Capacity::Finite(cap),
        });
    }
    FlowNetwork { nodes, arcs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, t: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_ints(n, t)
    }

    #[test]
    fn reduce_examples() {
        let rf = reduce(&p(3, &[(&[], 3), (&[1, 2], -1), (&[2, 3], -1)])).unwrap();
        assert_eq!(rf.f_const, rational::int(3));
        assert_eq!(rf.f_a, rational::int(-2));
        assert_eq!(rf.neg_terms.len(), 2);
        assert_eq!(rf.fixed_ones, BTreeSet::from([1, 2, 3]));

        let rf = reduce(&p(2, &[(&[1], -1), (&[2], 1), (&[1, 2], -1)])).unwrap();
        assert_eq!(rf.fixed_ones, BTreeSet::from([1]));
        assert_eq!(rf.lin_terms[&1], rational::int(-1));
        assert_eq!(rf.lin_terms[&2], rational::int(1));

        let rf = reduce(&p(1, &[(&[1], 1)])).unwrap();
        assert!(rf.neg_terms.is_empty() && rf.fixed_ones.is_empty());

        assert!(matches!(
            reduce(&p(2, &[(&[1, 2], 1)])),
            Err(Error::NotNns(_))
        ));
    }

    #[test]
    fn network_shape() {
        let net = build_network(&reduce(&p(2, &[(&[1], 1), (&[2], 1), (&[1, 2], -1)])).unwrap());
        assert_eq!(net.arcs.len(), 1 + 2 + 2);
        assert_eq!(net.arcs[0].cap, Capacity::Finite(rational::int(1)));
        assert_eq!(net.arcs.iter().filter(|a| a.cap.is_infinite()).count(), 2);
        let sink_caps: Vec<_> = net.arcs.iter().filter(|a| a.to == SINK).collect();
        assert!(sink_caps
            .iter()
            .all(|a| a.cap == Capacity::Finite(rational::int(1))));

        let net = build_network(&reduce(&p(3, &[(&[], 3), (&[1, 2], -1), (&[2, 3], -1)])).unwrap());
        assert!(net
            .arcs
            .iter()
            .filter(|a| a.to == SINK)
            .all(|a| a.cap == Capacity::Finite(Rational::zero())));
    }

    #[test]
    fn dot_dump_names() {
        let net = build_network(&reduce(&p(2, &[(&[1], 1), (&[1, 2], -1)])).unwrap());
        let dot = net.to_dot();
        assert!(dot.contains("s -> a_1_2 [label=\"1\"]"));
        assert!(dot.contains("a_1_2 -> x_2 [label=\"inf\"]"));
        assert!(dot.contains("x_1 -> t [label=\"1\"]"));
    }
}
