//! First-level Sherali-Adams bound for quadratic polynomials.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::lp::{LinExpr, LpModel, Sense, VarDomain, VarId};
use crate::poly::{Polynomial, Support};
use crate::rational::Rational;

pub struct SheraliAdams {
    pub model: LpModel,
    pub lambda: VarId,
}

/// `max λ` such that `f - λ` is a non-negative combination of
/// `x_i x_j, x_i(1-x_j), (1-x_i)x_j, (1-x_i)(1-x_j)` over the quadratic
/// monomials of `f`, and `x_j, 1-x_j` over all variables.
pub fn sherali_adams_1(f: &Polynomial) -> Result<SheraliAdams> {
    let deg = f.degree();
    if deg > 2 {
        return Err(Error::DegreeTooHigh(deg));
    }
    let n = f.n_vars();
    let one = Rational::one();
    let mut m = LpModel::new();
    let lambda = m.add_var("lambda", VarDomain::Free)?;
    // expression for each monomial coefficient of the combination
    let mut coeff: BTreeMap<Support, LinExpr> = BTreeMap::new();
    let add = |coeff: &mut BTreeMap<Support, LinExpr>, a: Support, v: VarId, c: &Rational| {
        coeff.entry(a).or_default().add_term(v, c.clone());
    };
    coeff.insert(Support::constant(), LinExpr::var(lambda));
    for j in 1..=n as u32 {
        coeff.entry(Support::var(j)).or_default();
        let up = m.add_var(format!("u{j}"), VarDomain::NonNeg)?;
        let down = m.add_var(format!("d{j}"), VarDomain::NonNeg)?;
        add(&mut coeff, Support::var(j), up, &one);
        add(&mut coeff, Support::constant(), down, &one);
        add(&mut coeff, Support::var(j), down, &-one.clone());
    }
    for (a, _) in f.nonlinear_terms() {
        let (i, j) = (a.indices()[0], a.indices()[1]);
        let (xi, xj) = (Support::var(i), Support::var(j));
        let tag = format!("{i}_{j}");
        // x_i x_j
        let v = m.add_var(format!("p11.{tag}"), VarDomain::NonNeg)?;
        add(&mut coeff, a.clone(), v, &one);
        // x_i (1 - x_j)
        let v = m.add_var(format!("p10.{tag}"), VarDomain::NonNeg)?;
        add(&mut coeff, xi.clone(), v, &one);
        add(&mut coeff, a.clone(), v, &-one.clone());
        // (1 - x_i) x_j
        let v = m.add_var(format!("p01.{tag}"), VarDomain::NonNeg)?;
        add(&mut coeff, xj.clone(), v, &one);
        add(&mut coeff, a.clone(), v, &-one.clone());
        // (1 - x_i)(1 - x_j)
        let v = m.add_var(format!("p00.{tag}"), VarDomain::NonNeg)?;
        add(&mut coeff, Support::constant(), v, &one);
        add(&mut coeff, xi, v, &-one.clone());
        add(&mut coeff, xj, v, &-one.clone());
        add(&mut coeff, a.clone(), v, &one);
    }
    for (a, e) in &coeff {
        let name = if a.is_constant() {
            "match.c".to_string()
        } else {
            format!("match.{}", a.key().replace(' ', "_"))
        };
        m.add_row(name, e, Sense::Eq, f.coeff(a))?;
    }
    m.set_objective(&LinExpr::var(lambda));
    Ok(SheraliAdams { model: m, lambda })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::solve::solve;

    fn bound(f: &Polynomial) -> Rational {
        let sa = sherali_adams_1(f).unwrap();
        let s = solve(&sa.model);
        s.values[sa.lambda.0].clone()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(bound(&Polynomial::from_ints(2, &[(&[1], 1), (&[1, 2], -1)])), int(0));
        let f = Polynomial::from_ints(2, &[(&[], 1), (&[1], -1), (&[2], -1), (&[1, 2], 1)]);
        assert_eq!(bound(&f), int(0));
        assert_eq!(bound(&Polynomial::constant(3, int(7))), int(7));
        assert!(matches!(
            sherali_adams_1(&Polynomial::from_ints(3, &[(&[1, 2, 3], 1)])),
            Err(Error::DegreeTooHigh(3))
        ));
    }

    #[test]
    fn triangle_maxcut_bound() {
        // unit triangle: SA-1 gives the trivial cut bound 3 instead of 2
        let f = crate::io::maxcut_to_bpo(
            &crate::io::parse_rudy("3 3\n1 2 1\n2 3 1\n1 3 1").unwrap(),
        );
        assert_eq!(bound(&f), int(-3));
    }
}
