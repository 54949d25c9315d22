//! Randomized invariants over small semigroups.

use gapdinv_core::cone::{
    cone_contains, decompose, nested_to_vector, random_cone_vector, vector_to_nested, ConeVector,
};
use gapdinv_core::forms::{b_polar, b_sym, q};
use gapdinv_core::rational::{self, int, ratio};
use gapdinv_core::statistics::{cross_dinv, dinv, nested_dinv};
use gapdinv_core::{enumerate_subdiagrams, GVector, GapDiagram, Subdiagram};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PAIRS: [(i64, i64); 7] = [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (4, 7), (5, 7)];

fn setup(pair: usize) -> (GapDiagram, Vec<Subdiagram>) {
    let (a, b) = PAIRS[pair];
    let g = GapDiagram::new(a, b).unwrap();
    let all = enumerate_subdiagrams(&g).collect();
    (g, all)
}

/// A chain of picks closed under cumulative union, smallest first.
fn ascending_chain(g: &GapDiagram, all: &[Subdiagram], picks: &[usize]) -> Vec<Subdiagram> {
    let mut acc = Subdiagram::empty(g);
    let mut chain: Vec<Subdiagram> = picks
        .iter()
        .map(|&k| {
            acc = acc.union(&all[k % all.len()], g);
            acc.clone()
        })
        .collect();
    chain.retain(|d| !d.is_empty());
    chain
}

proptest! {
    #[test]
    fn rationals_round_trip(p in -10_000i64..10_000, q in 1i64..500) {
        let r = ratio(p, q);
        let s = rational::format(&r);
        prop_assert_eq!(rational::parse(&s).unwrap(), r);
    }

    #[test]
    fn subdiagrams_round_trip_through_values(pair in 0..PAIRS.len(), k in any::<usize>()) {
        let (g, all) = setup(pair);
        let d = &all[k % all.len()];
        prop_assert_eq!(&Subdiagram::from_values(&g, &d.values()).unwrap(), d);
        prop_assert_eq!(&Subdiagram::new(&g, d.rows()).unwrap(), d);
    }

    #[test]
    fn forms_are_symmetric_and_polarize(pair in 0..PAIRS.len(), seed in any::<u64>()) {
        let (g, all) = setup(pair);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = random_cone_vector(&g, &all, &mut rng).into_inner();
        let m = random_cone_vector(&g, &all, &mut rng).into_inner();
        let b = b_sym(&g, &n, &m).unwrap();
        prop_assert_eq!(&b, &b_sym(&g, &m, &n).unwrap());
        prop_assert_eq!(&b, &b_polar(&g, &n, &m).unwrap());
        let k = ratio(7, 3);
        prop_assert_eq!(q(&g, &n.scale(&k)).unwrap(), &k * &k * q(&g, &n).unwrap());
    }

    #[test]
    fn cross_dinv_matches_form(pair in 0..PAIRS.len(), i in any::<usize>(), j in any::<usize>()) {
        let (g, all) = setup(pair);
        let (d, e) = (&all[i % all.len()], &all[j % all.len()]);
        let b = b_sym(&g, &GVector::indicator(&g, d), &GVector::indicator(&g, e)).unwrap();
        prop_assert_eq!(b, cross_dinv(d, e).unwrap().to_rational());
        prop_assert_eq!(cross_dinv(d, d).unwrap().doubled, 2 * dinv(d) as i64);
    }

    #[test]
    fn decomposition_reconstructs(pair in 0..PAIRS.len(), seed in any::<u64>()) {
        let (g, all) = setup(pair);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = random_cone_vector(&g, &all, &mut rng);
        prop_assert!(cone_contains(&g, n.vector()));
        let dec = decompose(&g, &n).unwrap();
        prop_assert!(dec.len() <= g.genus());
        prop_assert_eq!(&dec.reconstruct(&g), n.vector());
        for w in dec.layers.windows(2) {
            prop_assert!(w[1].is_subset(&w[0]) && w[1] != w[0]);
        }
    }

    #[test]
    fn nested_families_round_trip(pair in 0..PAIRS.len(), picks in prop::collection::vec(any::<usize>(), 1..6)) {
        let (g, all) = setup(pair);
        let chain = ascending_chain(&g, &all, &picks);
        prop_assume!(!chain.is_empty());
        let n = nested_to_vector(&g, &chain).unwrap();
        let back = vector_to_nested(&g, &n, Some(chain.len())).unwrap();
        prop_assert_eq!(&back, &chain);
        prop_assert_eq!(q(&g, n.vector()).unwrap(), nested_dinv(&chain).unwrap().to_rational());
    }

    #[test]
    fn off_cone_vectors_are_rejected(pair in 0..PAIRS.len(), k in any::<usize>()) {
        let (g, all) = setup(pair);
        let d = &all[k % all.len()];
        prop_assume!(!d.is_empty());
        let neg = GVector::indicator(&g, d).scale(&int(-1));
        prop_assert!(ConeVector::new(&g, neg).is_err());
    }
}
