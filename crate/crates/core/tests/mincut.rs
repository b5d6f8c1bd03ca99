use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sigcert::gen::random_nns;
use sigcert::mincut::{build_network, cut_capacity, max_flow_min_cut, minimize_nns, reduce, separate, Capacity};
use sigcert::poly::{brute_force_min, Polynomial};
use sigcert::rational::int;

fn p(n: usize, terms: &[(&[u32], i64)]) -> Polynomial {
    Polynomial::from_ints(n, terms)
}

#[test]
fn reduce_examples() {
    let rf = reduce(&p(3, &[(&[], 3), (&[1, 2], -1), (&[2, 3], -1)])).unwrap();
    assert_eq!((rf.f_const.clone(), rf.f_a.clone()), (int(3), int(-2)));
    assert_eq!(rf.fixed_ones.iter().copied().collect::<Vec<_>>(), vec![1, 2, 3]);
    let rf = reduce(&p(2, &[(&[1], -1), (&[2], 1), (&[1, 2], -1)])).unwrap();
    assert_eq!(rf.fixed_ones.iter().copied().collect::<Vec<_>>(), vec![1]);
    let rf = reduce(&p(1, &[(&[1], 1)])).unwrap();
    assert!(rf.neg_terms.is_empty() && rf.fixed_ones.is_empty());
    assert!(reduce(&p(2, &[(&[1, 2], 1)])).is_err());
}

#[test]
fn network_shape() {
    // f = x1 + x2 - x1x2: one source arc of capacity 1, two infinite arcs, sink arcs 1 and 1
    let net = build_network(&reduce(&p(2, &[(&[1], 1), (&[2], 1), (&[1, 2], -1)])).unwrap());
    let finite: Vec<_> = net.arcs.iter().filter(|a| !a.cap.is_infinite()).collect();
    let infinite = net.arcs.len() - finite.len();
    assert_eq!(infinite, 2);
    assert!(finite.iter().all(|a| a.cap == Capacity::Finite(int(1))));
    assert_eq!(finite.len(), 3);
    let cut = max_flow_min_cut(&net);
    assert_eq!(cut.value, int(1));
    assert_eq!(cut_capacity(&net, &cut.labels), Some(int(1)));
}

#[test]
fn minimize_examples() {
    let (x, v) = minimize_nns(&p(3, &[(&[], 3), (&[1, 2], -1), (&[2, 3], -1)])).unwrap();
    assert_eq!((x, v), (vec![true; 3], int(1)));
    assert_eq!(minimize_nns(&p(2, &[(&[1], 1), (&[2], 1), (&[1, 2], -2)])).unwrap().1, int(0));
    assert_eq!(minimize_nns(&p(2, &[(&[], 1), (&[1], 2), (&[2], -1), (&[1, 2], -2)])).unwrap().1, int(0));
    let (x, v) = minimize_nns(&p(2, &[(&[1], -1), (&[2], 1), (&[1, 2], -1)])).unwrap();
    assert_eq!(v, int(-1));
    assert!(x[0]);
}

#[test]
fn separation_examples() {
    assert_eq!(separate(&p(2, &[(&[], 1), (&[1], -1), (&[2], -1)])).unwrap(), Some(vec![true, true]));
    assert_eq!(separate(&p(2, &[(&[1], 1), (&[2], 1), (&[1, 2], -1)])).unwrap(), None);
    assert_eq!(separate(&p(2, &[(&[], 2), (&[1, 2], -1)])).unwrap(), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn min_cut_matches_enumeration(seed in any::<u64>(), n in 2usize..11) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_nns(&mut rng, n, 25);
        let (x, v) = minimize_nns(&f).unwrap();
        prop_assert_eq!(&v, &brute_force_min(&f).unwrap().1);
        prop_assert_eq!(f.evaluate(&x).unwrap(), v);
    }

    #[test]
    fn cut_labels_price_the_cut(seed in any::<u64>(), n in 2usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_nns(&mut rng, n, 15);
        let net = build_network(&reduce(&f).unwrap());
        let cut = max_flow_min_cut(&net);
        prop_assert_eq!(cut_capacity(&net, &cut.labels), Some(cut.value));
    }
}
