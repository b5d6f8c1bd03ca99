//! Seeded random instances for tests, acceptance checks and the CLI.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::io::Graph;
use crate::poly::{Polynomial, Sign, SignedSupport, Support};
use crate::rational::{self, Rational};

/// Uniform rational in `[-bound, bound]` with denominator at most 8.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let d = rng.gen_range(1..=8);
    rational::frac(rng.gen_range(-bound * d..=bound * d), d)
}

pub fn random_support<R: Rng>(rng: &mut R, n: usize, degree: usize) -> Support {
    let mut idx: Vec<u32> = (1..=n as u32).collect();
    idx.shuffle(rng);
    idx.truncate(degree);
    Support::new(idx).expect("distinct indices in range")
}

/// Random NNS polynomial with at most `max_terms` terms (`n >= 2`).
pub fn random_nns<R: Rng>(rng: &mut R, n: usize, max_terms: usize) -> Polynomial {
    let m = rng.gen_range(1..=max_terms);
    let mut f = Polynomial::zero(n);
    let mut used = BTreeSet::new();
    for _ in 0..m {
        let deg = match rng.gen_range(0..10) {
            0 => 0,
            1..=3 => 1,
            _ => rng.gen_range(2..=n.clamp(2, 4)),
        };
        let a = random_support(rng, n, deg);
        if !used.insert(a.clone()) {
            continue;
        }
        let mut c = random_rational(rng, 5);
        if a.is_nonlinear() && c > Rational::from_integer(0.into()) {
            c = -c;
        }
        f.set(a, c).expect("support fits");
    }
    f
}

/// General polynomial with small integer coefficients: constant and linear
/// terms in `[-5, 5]`, up to `neg` negative and `pos` positive nonlinear
/// monomials of degree 2 or 3 with magnitudes in `[1, 5]`.
pub fn random_polynomial<R: Rng>(rng: &mut R, n: usize, neg: usize, pos: usize) -> Polynomial {
    let mut f = Polynomial::zero(n);
    f.set(Support::constant(), rational::int(rng.gen_range(-5..=5)))
        .expect("fits");
    for j in 1..=n as u32 {
        f.set(Support::var(j), rational::int(rng.gen_range(-5..=5)))
            .expect("fits");
    }
    let mut used = BTreeSet::new();
    let k_neg = rng.gen_range(0..=neg);
    let k_pos = rng.gen_range(0..=pos);
    for k in 0..(k_neg + k_pos) {
        let deg = rng.gen_range(2..=n.clamp(2, 3));
        let a = random_support(rng, n, deg);
        if !used.insert(a.clone()) {
            continue;
        }
        let mag = rng.gen_range(1..=5);
        let c = if k < k_neg { -mag } else { mag };
        f.set(a, rational::int(c)).expect("fits");
    }
    f
}

/// Random PS signed support over variables `1..=n` with `m` monomials.
pub fn random_ps_support<R: Rng>(rng: &mut R, n: usize, m: usize) -> SignedSupport {
    let mut s = SignedSupport::new(n);
    for _ in 0..m {
        let deg = rng.gen_range(2..=n.max(2));
        let a = random_support(rng, n, deg.min(n));
        if a.is_nonlinear() {
            s.insert(a, Sign::Pos).expect("fits");
        }
    }
    s
}

/// Erdős–Rényi graph with weights drawn from `weights`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64, weights: &[i64]) -> Graph {
    let mut edges = Vec::new();
    for i in 1..=n as u32 {
        for j in (i + 1)..=n as u32 {
            if rng.gen_bool(density) {
                let w = *weights.choose(rng).expect("nonempty weight set");
                edges.push((i, j, rational::int(w)));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are valid")
}
