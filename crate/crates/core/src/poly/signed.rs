use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Polynomial, Support};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Pos => 1,
        }
    }
}

/// Sign pattern per monomial; absent supports have sign 0.
///
/// The derived parameters `m`, `d` and the variable set `N_s` are kept in
/// sync with the pattern on every mutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSupport {
    n_vars: usize,
    signs: BTreeMap<Support, Sign>,
    d: usize,
    vars: Vec<u32>,
}

impl SignedSupport {
    pub fn new(n_vars: usize) -> Self {
        SignedSupport {
            n_vars,
            signs: BTreeMap::new(),
            d: 0,
            vars: Vec::new(),
        }
    }

    pub fn from_signs<I: IntoIterator<Item = (Support, Sign)>>(
        n_vars: usize,
        signs: I,
    ) -> Result<Self> {
        let mut s = Self::new(n_vars);
        for (a, sg) in signs {
            if let Some(j) = a.max_index() {
                if j as usize > n_vars {
                    return Err(Error::IndexOutOfRange {
                        index: j as usize,
                        n_vars,
                    });
                }
            }
            s.signs.insert(a, sg);
        }
        s.refresh();
        Ok(s)
    }

    /// All-positive pattern over the given supports (a PS template).
    pub fn positive<I: IntoIterator<Item = Support>>(n_vars: usize, supports: I) -> Result<Self> {
        Self::from_signs(n_vars, supports.into_iter().map(|a| (a, Sign::Pos)))
    }

    fn refresh(&mut self) {
        self.d = self.signs.keys().map(Support::degree).max().unwrap_or(0);
        let mut vars: Vec<u32> = self
            .signs
            .keys()
            .flat_map(|a| a.indices().iter().copied())
            .collect();
        vars.sort_unstable();
        vars.dedup();
        self.vars = vars;
    }

    pub fn insert(&mut self, a: Support, sign: Sign) -> Result<()> {
        if let Some(j) = a.max_index() {
            if j as usize > self.n_vars {
                return Err(Error::IndexOutOfRange {
                    index: j as usize,
                    n_vars: self.n_vars,
                });
            }
        }
        self.signs.insert(a, sign);
        self.refresh();
        Ok(())
    }

    pub fn remove(&mut self, a: &Support) -> Option<Sign> {
        let out = self.signs.remove(a);
        self.refresh();
        out
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn sign(&self, a: &Support) -> i8 {
        self.signs.get(a).map_or(0, |s| s.value())
    }

    pub fn contains(&self, a: &Support) -> bool {
        self.signs.contains_key(a)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Support, &Sign)> {
        self.signs.iter()
    }

    pub fn supports(&self) -> impl Iterator<Item = &Support> {
        self.signs.keys()
    }

    /// Number of nonzero entries.
    pub fn m(&self) -> usize {
        self.signs.len()
    }

    /// Maximum degree over the support.
    pub fn d(&self) -> usize {
        self.d
    }

    /// `N_s`: variables appearing in some supported monomial.
    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    /// `n' = |N_s|`.
    pub fn n_prime(&self) -> usize {
        self.vars.len()
    }

    /// A PS template: only nonlinear supports, all positive.
    pub fn is_ps(&self) -> bool {
        self.signs
            .iter()
            .all(|(a, s)| a.is_nonlinear() && *s == Sign::Pos)
    }
}

/// The NNS / PS split of a signed support that covers every constant and
/// linear monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedDecomposition {
    pub s1: SignedSupport,
    pub s2: SignedSupport,
}

impl SignedDecomposition {
    /// Splits `s`; requires `B_{0:1} ⊆ supp(s)`.
    pub fn from_support(s: &SignedSupport) -> Result<Self> {
        let n = s.n_vars();
        if !s.contains(&Support::constant()) {
            return Err(Error::MalformedSupport(
                "signed support must contain the constant monomial".into(),
            ));
        }
        for j in 1..=n as u32 {
            if !s.contains(&Support::var(j)) {
                return Err(Error::MalformedSupport(format!(
                    "signed support must contain linear monomial x{j}"
                )));
            }
        }
        let mut s1 = Vec::new();
        let mut s2 = Vec::new();
        for (a, sg) in s.iter() {
            if a.is_nonlinear() && *sg == Sign::Pos {
                s2.push((a.clone(), *sg));
            } else {
                s1.push((a.clone(), *sg));
            }
        }
        Ok(SignedDecomposition {
            s1: SignedSupport::from_signs(n, s1)?,
            s2: SignedSupport::from_signs(n, s2)?,
        })
    }

    /// Decomposition of the ambient support of `f - λ`: the nonlinear signs
    /// of `f` plus the constant and every linear monomial.
    pub fn ambient(f: &Polynomial) -> Self {
        let s = ambient_support(f);
        Self::from_support(&s).expect("ambient support covers B_{0:1}")
    }

    pub fn n_vars(&self) -> usize {
        self.s1.n_vars()
    }

    pub fn m1(&self) -> usize {
        self.s1.m()
    }
    pub fn d1(&self) -> usize {
        self.s1.d()
    }
    pub fn n1(&self) -> usize {
        self.s1.n_prime()
    }
    pub fn m2(&self) -> usize {
        self.s2.m()
    }
    pub fn d2(&self) -> usize {
        self.s2.d()
    }
    pub fn n2(&self) -> usize {
        self.s2.n_prime()
    }
    pub fn m(&self) -> usize {
        self.m1() + self.m2()
    }

    /// Nonlinear supports of the NNS part (the set `A` of its networks).
    pub fn negative_monomials(&self) -> Vec<Support> {
        self.s1.supports().filter(|a| a.is_nonlinear()).cloned().collect()
    }
}

/// `ssv(f)` on nonlinear monomials, plus the constant and all `n` linear
/// entries (sign of `f`'s coefficient, `+1` where it is zero).
pub fn ambient_support(f: &Polynomial) -> SignedSupport {
    let n = f.n_vars();
    let mut entries: Vec<(Support, Sign)> = f
        .nonlinear_terms()
        .map(|(a, c)| (a.clone(), sign_of(c)))
        .collect();
    let lin = std::iter::once(Support::constant()).chain((1..=n as u32).map(Support::var));
    for a in lin {
        let c = f.coeff(&a);
        let sg = if c.is_negative() { Sign::Neg } else { Sign::Pos };
        entries.push((a, sg));
    }
    SignedSupport::from_signs(n, entries).expect("supports of f fit n_vars")
}

fn sign_of(c: &crate::rational::Rational) -> Sign {
    if c.is_negative() {
        Sign::Neg
    } else {
        Sign::Pos
    }
}

/// `ssv(f)` with derived parameters.
pub fn signed_support(f: &Polynomial) -> SignedSupport {
    SignedSupport::from_signs(f.n_vars(), f.terms().map(|(a, c)| (a.clone(), sign_of(c))))
        .expect("supports of f fit n_vars")
}

/// The partial order `ssv(f) ⪯ s`.
pub fn within(f: &Polynomial, s: &SignedSupport) -> bool {
    f.terms().all(|(a, c)| match s.sign(a) {
        0 => false,
        sg if a.is_nonlinear() => (sg > 0) == c.is_positive() || c.is_zero(),
        _ => true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Class {
    Affine,
    /// Negatively signed: every coefficient is nonpositive.
    Ns,
    /// Positively signed: every coefficient is nonnegative.
    Ps,
    /// Nonlinear part nonpositive.
    Nns,
    /// Nonlinear part nonnegative.
    Nps,
    General,
}

/// Most specific class; precedence affine > NS/PS > NNS/NPS > general.
pub fn classify(f: &Polynomial) -> Class {
    let mut nonlin_pos = false;
    let mut nonlin_neg = false;
    let mut any_pos = false;
    let mut any_neg = false;
    for (a, c) in f.terms() {
        let pos = c.is_positive();
        any_pos |= pos;
        any_neg |= !pos;
        if a.is_nonlinear() {
            nonlin_pos |= pos;
            nonlin_neg |= !pos;
        }
    }
    if !nonlin_pos && !nonlin_neg {
        Class::Affine
    } else if !any_pos {
        Class::Ns
    } else if !any_neg {
        Class::Ps
    } else if !nonlin_pos {
        Class::Nns
    } else if !nonlin_neg {
        Class::Nps
    } else {
        Class::General
    }
}

/// True when no nonlinear coefficient is positive (NNS, NS or affine).
pub fn is_nns(f: &Polynomial) -> bool {
    f.nonlinear_terms().all(|(_, c)| !c.is_positive())
}

/// First nonlinear monomial with a positive coefficient, if any.
pub fn first_positive_nonlinear(f: &Polynomial) -> Option<Support> {
    f.nonlinear_terms()
        .find(|(_, c)| c.is_positive())
        .map(|(a, _)| a.clone())
}

/// `(nn(f), pp(f))`: constant, linear and negative nonlinear terms versus
/// positive nonlinear terms.
pub fn decompose(f: &Polynomial) -> (Polynomial, Polynomial) {
    let n = f.n_vars();
    let mut nn = Polynomial::zero(n);
    let mut ps = Polynomial::zero(n);
    for (a, c) in f.terms() {
        let target = if a.is_nonlinear() && c.is_positive() {
            &mut ps
        } else {
            &mut nn
        };
        target.set(a.clone(), c.clone()).expect("same n_vars");
    }
    (nn, ps)
}
