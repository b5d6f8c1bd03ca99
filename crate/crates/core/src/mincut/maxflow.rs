//! Highest-label push-relabel with the gap heuristic, in exact arithmetic.

use num_traits::{Signed, Zero};

use super::network::{Capacity, FlowNetwork, SINK, SOURCE};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    pub value: Rational,
    /// Source side of the cut (`u = 1`), indexed by node.
    pub labels: Vec<bool>,
    /// Flow on each arc of the input network, in arc order.
    pub flows: Vec<Rational>,
}

struct Edge {
    to: usize,
    rev: usize,
    cap: Capacity,
    flow: Rational,
}

impl Edge {
    fn residual(&self) -> Capacity {
        match &self.cap {
            Capacity::Infinite => Capacity::Infinite,
            Capacity::Finite(c) => Capacity::Finite(c - &self.flow),
        }
    }

    fn has_residual(&self) -> bool {
        match &self.cap {
            Capacity::Infinite => true,
            Capacity::Finite(c) => *c > self.flow,
        }
    }
}

pub fn max_flow_min_cut(net: &FlowNetwork) -> CutResult {
    let n = net.nodes.len();
    let mut adj: Vec<Vec<Edge>> = (0..n).map(|_| Vec::new()).collect();
    let mut handles = Vec::with_capacity(net.arcs.len());
    for a in &net.arcs {
        let i = adj[a.from].len();
        let r = adj[a.to].len() + usize::from(a.from == a.to);
        adj[a.from].push(Edge {
            to: a.to,
            rev: r,
            cap: a.cap.clone(),
            flow: Rational::zero(),
        });
        adj[a.to].push(Edge {
            to: a.from,
            rev: i,
            cap: Capacity::Finite(Rational::zero()),
            flow: Rational::zero(),
        });
        handles.push((a.from, i));
    }

    let mut height = vec![0usize; n];
    let mut excess = vec![Rational::zero(); n];
    let mut count = vec![0usize; 2 * n + 1];
    let mut current = vec![0usize; n];
    height[SOURCE] = n;
    count[0] = n - 1;
    count[n] = 1;

    for i in 0..adj[SOURCE].len() {
        let amount = match adj[SOURCE][i].residual() {
            Capacity::Finite(c) => c,
            // never built by `build_network`; an infinite source arc would make
            // the cut unbounded, so it is skipped rather than saturated
            Capacity::Infinite => continue,
        };
        if amount.is_positive() {
            push(&mut adj, &mut excess, SOURCE, i, amount);
        }
    }

    while let Some(v) = (0..n)
        .filter(|&v| v != SOURCE && v != SINK && excess[v].is_positive())
        .max_by_key(|&v| height[v])
    {
        // discharge
        while excess[v].is_positive() {
            if current[v] == adj[v].len() {
                let old = height[v];
                let new = adj[v]
                    .iter()
                    .filter(|e| e.has_residual())
                    .map(|e| height[e.to] + 1)
                    .min()
                    .expect("a node with excess has a residual path to the source");
                count[old] -= 1;
                height[v] = new;
                count[new] += 1;
                current[v] = 0;
                if count[old] == 0 && old < n {
                    for u in 0..n {
                        if u != SOURCE && height[u] > old && height[u] < n {
                            count[height[u]] -= 1;
                            height[u] = n + 1;
                            count[n + 1] += 1;
                            current[u] = 0;
                        }
                    }
                }
                continue;
            }
            let i = current[v];
            let e = &adj[v][i];
            if e.has_residual() && height[v] == height[e.to] + 1 {
                let amount = match e.residual() {
                    Capacity::Infinite => excess[v].clone(),
                    Capacity::Finite(r) => r.min(excess[v].clone()),
                };
                push(&mut adj, &mut excess, v, i, amount);
            } else {
                current[v] += 1;
            }
        }
    }

    // residual reachability from the source
    let mut labels = vec![false; n];
    labels[SOURCE] = true;
    let mut stack = vec![SOURCE];
    while let Some(v) = stack.pop() {
        for e in &adj[v] {
            if !labels[e.to] && e.has_residual() {
                labels[e.to] = true;
                stack.push(e.to);
            }
        }
    }
    let flows = handles
        .iter()
        .map(|&(v, i)| adj[v][i].flow.clone())
        .collect();
    CutResult {
        value: excess[SINK].clone(),
        labels,
        flows,
    }
}

fn push(adj: &mut [Vec<Edge>], excess: &mut [Rational], v: usize, i: usize, amount: Rational) {
    let (to, rev) = (adj[v][i].to, adj[v][i].rev);
    adj[v][i].flow += &amount;
    adj[to][rev].flow -= &amount;
    excess[v] -= &amount;
    excess[to] += amount;
}

/// Capacity of the cut whose source side is `labels`; `None` when an
/// infinite arc crosses it.
pub fn cut_capacity(net: &FlowNetwork, labels: &[bool]) -> Option<Rational> {
    let mut total = Rational::zero();
    for a in &net.arcs {
        if labels[a.from] && !labels[a.to] {
            match &a.cap {
                Capacity::Infinite => return None,
                Capacity::Finite(c) => total += c,
            }
        }
    }
    Some(total)
}
