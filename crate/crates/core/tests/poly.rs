use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sigcert::gen::{random_nns, random_polynomial};
use sigcert::poly::{
    brute_force_min, classify, decompose, is_submodular, parse_polynomial, parse_polynomial_with_vars,
    signed_support, within, write_polynomial, Class, Polynomial, Sign, SignedSupport, Support,
};
use sigcert::rational::{frac, int};

fn p(n: usize, terms: &[(&[u32], i64)]) -> Polynomial {
    Polynomial::from_ints(n, terms)
}

#[test]
fn evaluate_examples() {
    assert_eq!(p(2, &[(&[1, 2], 1)]).evaluate(&[true, true]).unwrap(), int(1));
    assert_eq!(p(2, &[(&[], 1), (&[1], -1), (&[2], -1)]).evaluate(&[true, true]).unwrap(), int(-1));
    let f = p(3, &[(&[], 3), (&[1, 2], -1), (&[2, 3], -1)]);
    assert_eq!(f.evaluate(&[true, true, true]).unwrap(), int(1));
    assert!(f.evaluate(&[true, true]).is_err());
}

#[test]
fn classify_examples() {
    assert_eq!(classify(&p(1, &[(&[], 1), (&[1], 1)])), Class::Affine);
    assert_eq!(classify(&p(2, &[(&[1], 1), (&[1, 2], -1)])), Class::Nns);
    assert_eq!(classify(&p(3, &[(&[1, 2], 2), (&[2, 3], 3)])), Class::Ps);
    assert_eq!(classify(&p(2, &[(&[1], -1), (&[1, 2], 2)])), Class::Nps);
    assert_eq!(classify(&p(3, &[(&[1, 2], 1), (&[2, 3], -1)])), Class::General);
}

#[test]
fn decompose_examples() {
    let f = p(3, &[(&[], 1), (&[1], 1), (&[1, 2], -2), (&[2, 3], 3)]);
    let (nn, ps) = decompose(&f);
    assert_eq!(nn, p(3, &[(&[], 1), (&[1], 1), (&[1, 2], -2)]));
    assert_eq!(ps, p(3, &[(&[2, 3], 3)]));
    let (nn, ps) = decompose(&p(2, &[(&[1, 2], -1)]));
    assert_eq!((nn.num_terms(), ps.is_zero()), (1, true));
    let (nn, ps) = decompose(&p(3, &[(&[1, 2, 3], 1)]));
    assert_eq!((nn.is_zero(), ps.num_terms()), (true, 1));
}

#[test]
fn signed_support_examples() {
    let s = signed_support(&p(2, &[(&[], 1), (&[1], 1), (&[1, 2], -2)]));
    assert_eq!((s.m(), s.d()), (3, 2));
    assert_eq!(s.sign(&Support::of(&[1, 2])), -1);
    assert_eq!(s.sign(&Support::constant()), 1);
    assert_eq!(signed_support(&Polynomial::zero(3)).m(), 0);
    let s = signed_support(&p(3, &[(&[2, 3], 3), (&[1, 2, 3], -1)]));
    assert_eq!((s.m(), s.d(), s.n_prime()), (2, 3, 3));
}

#[test]
fn within_examples() {
    let neg = SignedSupport::from_signs(2, [(Support::of(&[1, 2]), Sign::Neg)]).unwrap();
    assert!(within(&p(2, &[(&[1, 2], -1)]), &neg));
    assert!(!within(&p(2, &[(&[1, 2], 1)]), &neg));
    let lin = SignedSupport::from_signs(1, [(Support::var(1), Sign::Pos)]).unwrap();
    assert!(within(&p(1, &[(&[1], -1)]), &lin));
}

#[test]
fn brute_force_examples() {
    let (x, v) = brute_force_min(&p(2, &[(&[], 1), (&[1], -1), (&[2], -1)])).unwrap();
    assert_eq!((x, v), (vec![true, true], int(-1)));
    let (x, v) = brute_force_min(&p(2, &[(&[1], 1), (&[2], 1), (&[1, 2], -2)])).unwrap();
    assert_eq!((x, v), (vec![false, false], int(0)));
    let (x, v) = brute_force_min(&Polynomial::zero(3)).unwrap();
    assert_eq!((x, v), (vec![false; 3], int(0)));
}

#[test]
fn submodularity_examples() {
    assert!(!is_submodular(&p(2, &[(&[1, 2], 1)])).unwrap());
    assert!(is_submodular(&p(3, &[(&[], 4), (&[1], -2), (&[3], 1)])).unwrap());
}

#[test]
fn text_format() {
    let f = parse_polynomial("# comment\n3/2 :\n-1 : 1 2\n0.25 : 3\n").unwrap();
    assert_eq!(f.n_vars(), 3);
    assert_eq!(f.constant_term(), frac(3, 2));
    assert_eq!(f.coeff(&Support::of(&[1, 2])), int(-1));
    assert_eq!(f.linear_coeff(3), frac(1, 4));
    assert!(parse_polynomial("1 : 1 2\n2 : 2 1\n").is_err());
    assert!(parse_polynomial("1 : 0\n").is_err());
    assert!(parse_polynomial_with_vars("1 : 4\n", 3).is_err());
    assert_eq!(parse_polynomial_with_vars("1 : 2\n", 5).unwrap().n_vars(), 5);
}

proptest! {
    #[test]
    fn text_round_trip(seed in any::<u64>(), n in 2usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_polynomial(&mut rng, n, 4, 4);
        let g = parse_polynomial_with_vars(&write_polynomial(&f), n).unwrap();
        prop_assert_eq!(f, g);
    }

    #[test]
    fn nns_polynomials_are_submodular(seed in any::<u64>(), n in 2usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_nns(&mut rng, n, 12);
        prop_assert!(is_submodular(&f).unwrap());
    }

    #[test]
    fn decomposition_sums_back(seed in any::<u64>(), n in 2usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_polynomial(&mut rng, n, 4, 4);
        let (nn, ps) = decompose(&f);
        prop_assert_eq!(nn.add(&ps), f.clone());
        prop_assert!(matches!(classify(&ps), Class::Ps | Class::Affine));
        prop_assert!(within(&f, &signed_support(&f)));
    }
}
