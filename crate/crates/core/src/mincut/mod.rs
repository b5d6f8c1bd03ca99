//! Exact minimization and separation for NNS polynomials via min cut.

mod maxflow;
mod network;

pub use maxflow::{cut_capacity, max_flow_min_cut, CutResult};
pub use network::{
    build_network, reduce, Arc, Capacity, FlowNetwork, Node, ReducedForm, SINK, SOURCE,
};

use num_traits::Zero;

use crate::error::Result;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Minimum of an NNS polynomial together with a minimizer.
pub fn minimize_nns(f: &Polynomial) -> Result<(Vec<bool>, Rational)> {
    let rf = reduce(f)?;
    let net = build_network(&rf);
    let cut = max_flow_min_cut(&net);
    let mut value = &rf.f_const + &rf.f_a + &cut.value;
    for j in &rf.fixed_ones {
        value += &rf.lin_terms[j];
    }
    let x = (1..=rf.n_vars as u32)
        .map(|j| {
            rf.fixed_ones.contains(&j)
                || net.var_node(j).is_some_and(|v| cut.labels[v])
        })
        .collect();
    Ok((x, value))
}

/// A point where the NNS polynomial is negative, if one exists.
pub fn separate(f: &Polynomial) -> Result<Option<Vec<bool>>> {
    let (x, value) = minimize_nns(f)?;
    Ok((value < Rational::zero()).then_some(x))
}

/// Binary non-negativity of an NNS polynomial.
pub fn is_nonnegative_nns(f: &Polynomial) -> Result<bool> {
    Ok(separate(f)?.is_none())
}
