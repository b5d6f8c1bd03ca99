//! Exact sets of overestimation maps for positively signed supports.
//!
//! Every map is stored as a selector sending each monomial to one of its
//! variables; the linear overestimator of `f` is `Σ f_α x_{sel(α)}`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, SignedSupport, Support};

pub const STANDARD_CAP: usize = 1 << 16;
pub const LOVASZ_CAP: usize = 20;
pub const VERIFY_CAP: usize = 14;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Selector(pub BTreeMap<Support, u32>);

impl Selector {
    pub fn get(&self, a: &Support) -> Option<u32> {
        self.0.get(a).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Support, &u32)> {
        self.0.iter()
    }

    pub fn is_valid_for(&self, s2: &SignedSupport) -> bool {
        self.0.len() == s2.m()
            && s2
                .supports()
                .all(|a| self.get(a).is_some_and(|j| a.contains(j)))
    }

    /// `Σ f_α x_{sel(α)}` for a PS polynomial on the selector's domain.
    pub fn apply(&self, f_ps: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(f_ps.n_vars());
        for (a, c) in f_ps.terms() {
            let j = self.get(a).ok_or_else(|| {
                Error::NotWithin(format!("monomial {a} has no selected variable"))
            })?;
            if !a.is_nonlinear() || c < &num_traits::Zero::zero() {
                return Err(Error::NotWithin(format!(
                    "term {c}*{a} is not positive nonlinear"
                )));
            }
            out.add_term(Support::var(j), c.clone())?;
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    Standard,
    Lovasz,
    RelaxedLovasz,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSet {
    pub selectors: Vec<Selector>,
    pub base: SignedSupport,
    pub method: Method,
    /// Variable orderings behind Lovász-type sets, in construction order.
    pub orderings: Vec<Vec<u32>>,
}

impl ExtensionSet {
    pub fn len(&self) -> usize {
        self.selectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selectors.is_empty()
    }
}

pub fn all_standard_selectors(s2: &SignedSupport) -> Result<ExtensionSet> {
    all_standard_selectors_capped(s2, STANDARD_CAP)
}

/// The full product set: every way of picking one variable per monomial.
pub fn all_standard_selectors_capped(s2: &SignedSupport, cap: usize) -> Result<ExtensionSet> {
    let mut size: usize = 1;
    for a in s2.supports() {
        size = size.saturating_mul(a.degree());
        if size > cap {
            return Err(Error::CapExceeded {
                what: "standard selector count",
                value: size,
                cap,
            });
        }
    }
    let mut selectors = vec![Selector::default()];
    for a in s2.supports() {
        let mut next = Vec::with_capacity(selectors.len() * a.degree());
        for sel in &selectors {
            for &j in a.indices() {
                let mut s = sel.clone();
                s.0.insert(a.clone(), j);
                next.push(s);
            }
        }
        selectors = next;
    }
    Ok(ExtensionSet {
        selectors,
        base: s2.clone(),
        method: Method::Standard,
        orderings: Vec::new(),
    })
}

/// Maps each monomial to the variable of its support that comes last in `pi`.
pub fn lovasz_selector_from_order(pi: &[u32], s2: &SignedSupport) -> Result<Selector> {
    let mut sorted = pi.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != pi.len() || sorted != s2.vars() {
        return Err(Error::InvalidOrdering(format!(
            "{pi:?} is not a permutation of {:?}",
            s2.vars()
        )));
    }
    Ok(selector_from_order(pi, s2))
}

fn selector_from_order(pi: &[u32], s2: &SignedSupport) -> Selector {
    let pos: HashMap<u32, usize> = pi.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    Selector(
        s2.supports()
            .map(|a| {
                let last = *a
                    .indices()
                    .iter()
                    .max_by_key(|j| pos[j])
                    .expect("nonlinear support");
                (a.clone(), last)
            })
            .collect(),
    )
}

/// All orderings of `N_{s2}`, one selector each (duplicates removed).
pub fn full_lovasz_set(s2: &SignedSupport) -> Result<ExtensionSet> {
    let n = s2.n_prime();
    if n > 8 {
        return Err(Error::CapExceeded {
            what: "full Lovász variable count",
            value: n,
            cap: 8,
        });
    }
    let mut orderings = Vec::new();
    permutations(s2.vars().to_vec(), 0, &mut orderings);
    Ok(from_orderings(s2, orderings, Method::Lovasz))
}

fn permutations(mut v: Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k == v.len() {
        out.push(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v.clone(), k + 1, out);
        v.swap(k, i);
    }
}

fn from_orderings(s2: &SignedSupport, orderings: Vec<Vec<u32>>, method: Method) -> ExtensionSet {
    let mut seen = HashSet::new();
    let mut selectors = Vec::new();
    for pi in &orderings {
        let sel = selector_from_order(pi, s2);
        if seen.insert(sel.clone()) {
            selectors.push(sel);
        }
    }
    ExtensionSet {
        selectors,
        base: s2.clone(),
        method,
        orderings,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LovaszOptions {
    /// Build the cover from a symmetric chain decomposition instead of the
    /// filtering scan.
    pub symmetric_chains: bool,
    pub cap: Option<usize>,
}

pub fn relaxed_lovasz_set(s2: &SignedSupport) -> Result<ExtensionSet> {
    relaxed_lovasz_set_with(s2, LovaszOptions::default())
}

/// Orderings of `N_{s2}` such that every subset is a prefix of one of them,
/// projected to selectors.
pub fn relaxed_lovasz_set_with(s2: &SignedSupport, opts: LovaszOptions) -> Result<ExtensionSet> {
    let n = s2.n_prime();
    let cap = opts.cap.unwrap_or(LOVASZ_CAP);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "relaxed Lovász variable count",
            value: n,
            cap,
        });
    }
    let vars = s2.vars();
    let positional = if opts.symmetric_chains {
        symmetric_chain_orderings(n)
    } else {
        filtered_orderings(n)
    };
    let orderings = positional
        .into_iter()
        .map(|p| p.into_iter().map(|k| vars[k]).collect())
        .collect();
    Ok(from_orderings(s2, orderings, Method::RelaxedLovasz))
}

/// Subsets of `0..n` as masks: increasing popcount, then lexicographic on
/// the sorted element lists.
fn scan_order(n: usize) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..(1u64 << n)).collect();
    let key = |m: &u64| {
        let elems: Vec<u32> = (0..n as u32).filter(|k| (m >> k) & 1 == 1).collect();
        (m.count_ones(), elems)
    };
    masks.sort_by_cached_key(key);
    masks
}

fn prefix_masks(order: &[usize]) -> Vec<u64> {
    let mut out = Vec::with_capacity(order.len() + 1);
    let mut m = 0u64;
    out.push(m);
    for &k in order {
        m |= 1 << k;
        out.push(m);
    }
    out
}

fn filtered_orderings(n: usize) -> Vec<Vec<usize>> {
    let mut orders: Vec<Vec<usize>> = Vec::new();
    let mut cover: HashMap<u64, usize> = HashMap::new();
    for x in scan_order(n) {
        if cover.contains_key(&x) {
            continue;
        }
        let mut order: Vec<usize> = (0..n).filter(|k| (x >> k) & 1 == 1).collect();
        order.extend((0..n).filter(|k| (x >> k) & 1 == 0));
        for m in prefix_masks(&order) {
            *cover.entry(m).or_default() += 1;
        }
        orders.push(order);
    }
    // one greedy pass: drop an ordering whose prefixes are all covered twice
    let mut keep = Vec::with_capacity(orders.len());
    for order in orders {
        let prefixes = prefix_masks(&order);
        if prefixes.iter().all(|m| cover[m] >= 2) {
            for m in prefixes {
                *cover.get_mut(&m).expect("counted") -= 1;
            }
        } else {
            keep.push(order);
        }
    }
    keep
}

/// de Bruijn's symmetric chain decomposition, each chain extended to a
/// maximal chain.
fn symmetric_chain_orderings(n: usize) -> Vec<Vec<usize>> {
    let mut chains: Vec<Vec<u64>> = vec![vec![0]];
    for k in 0..n {
        let bit = 1u64 << k;
        let mut next = Vec::with_capacity(chains.len() * 2);
        for c in &chains {
            let mut up = c.clone();
            up.push(c.last().expect("nonempty chain") | bit);
            next.push(up);
            if c.len() >= 2 {
                next.push(c[..c.len() - 1].iter().map(|m| m | bit).collect());
            }
        }
        chains = next;
    }
    chains
        .into_iter()
        .map(|c| {
            let bottom = c[0];
            let mut order: Vec<usize> = (0..n).filter(|k| (bottom >> k) & 1 == 1).collect();
            for w in c.windows(2) {
                order.push((w[1] ^ w[0]).trailing_zeros() as usize);
            }
            let top = *c.last().expect("nonempty chain");
            order.extend((0..n).filter(|k| (top >> k) & 1 == 0));
            order
        })
        .collect()
}

/// Support-level exactness: every selector picks a variable of each
/// monomial (overestimation), and every point of `{0,1}^{N_s}` is matched
/// exactly by some selector.
pub fn verify_exact(es: &ExtensionSet) -> Result<bool> {
    let s2 = &es.base;
    let n = s2.n_prime();
    if n > VERIFY_CAP {
        return Err(Error::CapExceeded {
            what: "exactness check variable count",
            value: n,
            cap: VERIFY_CAP,
        });
    }
    if es.selectors.iter().any(|s| !s.is_valid_for(s2)) {
        return Ok(false);
    }
    let vars = s2.vars();
    let local = |j: u32| vars.binary_search(&j).expect("variable of N_s");
    let monos: Vec<u64> = s2
        .supports()
        .map(|a| a.indices().iter().fold(0, |m, &j| m | 1 << local(j)))
        .collect();
    let picks: Vec<Vec<usize>> = es
        .selectors
        .iter()
        .map(|sel| s2.supports().map(|a| local(sel.get(a).expect("valid"))).collect())
        .collect();
    for x in 0..(1u64 << n) {
        let exact = picks.iter().any(|p| {
            monos
                .iter()
                .zip(p)
                .all(|(&a, &k)| ((x >> k) & 1 == 1) == (a & x == a))
        });
        if !exact {
            return Ok(false);
        }
    }
    Ok(true)
}
