//! Property tests over seeded random signed multigraphs.

use proptest::prelude::*;
use rand::seq::SliceRandom;

use sgchroma_core::color::{
    balanced_to_zero_free, cover_to_hom, lift_to_circular, verify_circular, CircularCheck,
};
use sgchroma_core::harness::generate::{random_dichotomy_instance, random_multi};
use sgchroma_core::harness::rng_for;
use sgchroma_core::minor::{has_ktilde_minor, negative_path_dichotomy, verify_certificate, Certificate};
use sgchroma_core::quotient::all_quotients;
use sgchroma_core::{
    balanced_quotient, canonical_form, chi_b, chi_fb, is_balanced, verify_quotient, Sign, SignedGraph,
};

/// A random graph on up to `max_n` vertices with digons, from a seed.
fn graph(max_n: usize) -> impl Strategy<Value = SignedGraph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_multi(n, [3, 2, 2, 1], &mut rng_for(seed, 0)))
}

/// The same graph relabelled and switched at random.
fn disguise(g: &SignedGraph, seed: u64) -> SignedGraph {
    let mut rng = rng_for(seed, 1);
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut rng);
    let flips: Vec<usize> = (0..g.n()).filter(|_| rand::Rng::random_bool(&mut rng, 0.5)).collect();
    g.permute(&perm).unwrap().switch_at(&flips).unwrap()
}

fn chi_b_value(g: &SignedGraph) -> usize {
    chi_b(g).unwrap().value().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_is_a_switching_isomorphism_invariant(g in graph(7), seed in any::<u64>()) {
        let h = disguise(&g, seed);
        let form = canonical_form(&g).unwrap();
        prop_assert_eq!(&form, &canonical_form(&h).unwrap());
        // the decoded representative is in the same class
        prop_assert_eq!(form.clone(), canonical_form(&form.decode().unwrap()).unwrap());
    }

    #[test]
    fn balance_certificates_verify(g in graph(10), seed in any::<u64>()) {
        let r = is_balanced(&g);
        prop_assert!(r.verify(&g).is_ok());
        prop_assert_eq!(r.is_balanced(), is_balanced(&disguise(&g, seed)).is_balanced());
    }

    #[test]
    fn chi_b_cover_is_valid_and_invariant(g in graph(7), seed in any::<u64>()) {
        let r = chi_b(&g).unwrap();
        let cover = r.cover().unwrap();
        prop_assert!(cover.validate(&g).is_ok());
        prop_assert_eq!(r.value(), chi_b(&disguise(&g, seed)).unwrap().value());
        let k = r.value().unwrap();
        // the 0-free colouring lives on the negated graph
        prop_assert!(balanced_to_zero_free(&g, cover).unwrap().verify(&g.negated(), k).is_ok());
        prop_assert!(cover_to_hom(&g, cover).unwrap().verify(&g).is_ok());
    }

    #[test]
    fn circular_lift_of_an_optimal_cover_is_valid(g in graph(7)) {
        let r = chi_b(&g).unwrap();
        let c = lift_to_circular(&g, r.cover().unwrap()).unwrap();
        prop_assert_eq!(verify_circular(&g, &c).unwrap(), CircularCheck::Valid);
    }

    #[test]
    fn fractional_value_is_between_one_and_chi_b(g in graph(7)) {
        let (v, w) = chi_fb(&g).unwrap();
        prop_assert!(w.verify(&g).is_ok());
        prop_assert!(v <= sgchroma_core::rational::int(chi_b_value(&g) as i64));
        prop_assert!(v >= sgchroma_core::rational::int(1));
    }

    #[test]
    fn positive_loops_change_no_colouring_number(g in graph(6), mask in any::<u8>()) {
        let mut looped = g.clone();
        for v in (0..g.n()).filter(|v| mask >> v & 1 == 1) {
            looped.add_edge(v, v, Sign::Pos).unwrap();
        }
        prop_assert_eq!(chi_fb(&g).unwrap().0, chi_fb(&looped).unwrap().0);
        prop_assert_eq!(chi_b_value(&g), chi_b_value(&looped));
    }

    #[test]
    fn quotients_verify_and_never_lower_chi_b(g in graph(6)) {
        let q = balanced_quotient(&g).unwrap();
        prop_assert!(verify_quotient(&g, &q).is_valid());
        // colourings pull back along the homomorphism
        prop_assert!(chi_b_value(&q.quotient) >= chi_b_value(&g));
        for alt in all_quotients(&g).unwrap() {
            prop_assert!(verify_quotient(&g, &alt).is_valid());
        }
    }

    #[test]
    fn minor_certificates_verify(g in graph(7), t in 2usize..=4) {
        if let Some(c) = has_ktilde_minor(&g, t).unwrap() {
            prop_assert!(verify_certificate(&g, &Certificate::Minor(c)).is_valid());
        }
    }

    #[test]
    fn dichotomy_is_total(seed in any::<u64>()) {
        let (g, h, k) = random_dichotomy_instance(9, 3, &mut rng_for(seed, 0));
        let result = negative_path_dichotomy(&g, &h, k).unwrap();
        let cert = Certificate::Dichotomy { h, k, result };
        prop_assert!(verify_certificate(&g, &cert).is_valid());
    }

    #[test]
    fn text_format_round_trips(g in graph(12)) {
        prop_assert_eq!(SignedGraph::parse(&g.to_text()).unwrap(), g);
    }
}
