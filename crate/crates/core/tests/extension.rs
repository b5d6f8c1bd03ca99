use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sigcert::extension::{
    all_standard_selectors, full_lovasz_set, lovasz_selector_from_order, relaxed_lovasz_set, relaxed_lovasz_set_with,
    verify_exact, ExtensionSet, LovaszOptions, Selector,
};
use sigcert::gen::random_ps_support;
use sigcert::poly::{mask_to_point, Polynomial, SignedSupport, Support};
use sigcert::rational::{int, Rational};

fn ps(n: usize, monomials: &[&[u32]]) -> SignedSupport {
    SignedSupport::positive(n, monomials.iter().map(|a| Support::of(a))).unwrap()
}

fn sel(pairs: &[(&[u32], u32)]) -> Selector {
    Selector(pairs.iter().map(|(a, j)| (Support::of(a), *j)).collect())
}

/// Exactness checked pointwise on one positive polynomial over the support:
/// every extension overestimates and the best one is tight.
fn tight_on(es: &ExtensionSet, f: &Polynomial) -> bool {
    let n = f.n_vars();
    (0..1u64 << n).all(|mask| {
        let x = mask_to_point(mask, n);
        let fx = f.evaluate(&x).unwrap();
        let vals: Vec<Rational> = es.selectors.iter().map(|s| s.apply(f).unwrap().evaluate(&x).unwrap()).collect();
        vals.iter().all(|v| v >= &fx) && vals.iter().min() == Some(&fx)
    })
}

#[test]
fn standard_counts() {
    assert_eq!(all_standard_selectors(&ps(2, &[&[1, 2]])).unwrap().len(), 2);
    assert_eq!(all_standard_selectors(&ps(3, &[&[1, 2], &[2, 3]])).unwrap().len(), 4);
    let empty = all_standard_selectors(&SignedSupport::new(3)).unwrap();
    assert_eq!(empty.selectors, vec![Selector::default()]);
}

#[test]
fn lovasz_selector_examples() {
    let s2 = ps(3, &[&[1, 2], &[2, 3], &[1, 2, 3]]);
    assert_eq!(
        lovasz_selector_from_order(&[1, 2, 3], &s2).unwrap(),
        sel(&[(&[1, 2], 2), (&[2, 3], 3), (&[1, 2, 3], 3)])
    );
    assert_eq!(
        lovasz_selector_from_order(&[3, 2, 1], &s2).unwrap(),
        sel(&[(&[1, 2], 1), (&[2, 3], 2), (&[1, 2, 3], 1)])
    );
    assert_eq!(lovasz_selector_from_order(&[2, 1], &ps(2, &[&[1, 2]])).unwrap(), sel(&[(&[1, 2], 1)]));
}

#[test]
fn relaxed_lovasz_examples() {
    let two = relaxed_lovasz_set(&ps(2, &[&[1, 2]])).unwrap();
    assert_eq!(two.len(), 2);
    let full = ps(3, &[&[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]]);
    let three = relaxed_lovasz_set(&full).unwrap();
    assert!((3..=8).contains(&three.len()));
    assert!(verify_exact(&three).unwrap());
    assert_eq!(relaxed_lovasz_set(&SignedSupport::new(2)).unwrap().len(), 1);
    // the full Lovász set has one selector per ordering up to repeats
    assert!(full_lovasz_set(&full).unwrap().len() <= 6);
}

#[test]
fn apply_examples() {
    let f = Polynomial::from_ints(3, &[(&[1, 2], 2), (&[2, 3], 3)]);
    let g = sel(&[(&[1, 2], 2), (&[2, 3], 2)]).apply(&f).unwrap();
    assert_eq!(g, Polynomial::from_ints(3, &[(&[2], 5)]));
    let g = sel(&[(&[1, 2], 1)]).apply(&Polynomial::from_ints(2, &[(&[1, 2], 1)])).unwrap();
    assert_eq!(g, Polynomial::from_ints(2, &[(&[1], 1)]));
    assert!(sel(&[]).apply(&Polynomial::zero(2)).unwrap().is_zero());
}

#[test]
fn single_selector_is_not_exact() {
    let s2 = ps(2, &[&[1, 2]]);
    let es = ExtensionSet {
        selectors: vec![sel(&[(&[1, 2], 1)])],
        ..all_standard_selectors(&s2).unwrap()
    };
    assert!(!verify_exact(&es).unwrap());
    assert!(!tight_on(&es, &Polynomial::from_ints(2, &[(&[1, 2], 1)])));
}

#[test]
fn selector_json() {
    let s = sel(&[(&[1, 2], 2)]);
    let text = serde_json::to_string(&s).unwrap();
    assert_eq!(text, r#"{"1 2":2}"#);
    assert_eq!(serde_json::from_str::<Selector>(&text).unwrap(), s);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructions_are_tight(seed in any::<u64>(), n in 2usize..7, m in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s2 = random_ps_support(&mut rng, n, m);
        let mut f = Polynomial::zero(n);
        for a in s2.supports() {
            f.set(a.clone(), int(rng.gen_range(1..=5))).unwrap();
        }
        let np = s2.n_prime();
        let sets = [
            all_standard_selectors(&s2).unwrap(),
            relaxed_lovasz_set(&s2).unwrap(),
            relaxed_lovasz_set_with(&s2, LovaszOptions { symmetric_chains: true, ..Default::default() }).unwrap(),
        ];
        for es in &sets {
            prop_assert!(tight_on(es, &f));
            prop_assert!(verify_exact(es).unwrap());
            prop_assert!(es.selectors.iter().all(|s| s.is_valid_for(&s2)));
        }
        prop_assert!(sets[1].len() <= 1 << np);
    }
}
