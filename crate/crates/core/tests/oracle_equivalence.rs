mod common;

use common::{arb_system, plain};
use helly_core::{
    colorful_helly_number, comatching_number, comatching_with_intersection_number,
    complement_incidence, helly_number, minimal_empty_subfamilies, verify_comatching, Comatching,
    SearchBudget,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tau_matches_brute_force(s in arb_system(5, 5)) {
        let (n, m) = plain(&s);
        let r = comatching_number(&s, SearchBudget::UNBOUNDED);
        prop_assert!(r.exact);
        prop_assert_eq!(r.tau, helly_oracle::tau(n, &m));
        prop_assert!(verify_comatching(&s, &r.certificate).unwrap().ok);
    }

    #[test]
    fn tau_matches_induced_matching_enumerator(s in arb_system(4, 4)) {
        let (n, m) = plain(&s);
        let edges = helly_oracle::complement_edges(n, &m);
        prop_assert_eq!(complement_incidence(&s), edges.clone());
        if edges.len() <= 16 {
            let r = comatching_number(&s, SearchBudget::UNBOUNDED);
            prop_assert_eq!(r.tau, helly_oracle::max_induced_matching(&edges));
        }
    }

    #[test]
    fn tau_prime_matches_brute_force(s in arb_system(5, 5)) {
        let (n, m) = plain(&s);
        let r = comatching_with_intersection_number(&s, SearchBudget::UNBOUNDED);
        prop_assert_eq!(r.tau_prime, helly_oracle::tau_prime(n, &m));
    }

    #[test]
    fn minimal_empty_and_helly_match(s in arb_system(5, 5)) {
        let (n, m) = plain(&s);
        let mins: Vec<Vec<usize>> = minimal_empty_subfamilies(&s)
            .iter()
            .map(|sel| sel.indices().to_vec())
            .collect();
        prop_assert_eq!(mins, helly_oracle::minimal_empty_subfamilies(n, &m));
        prop_assert_eq!(helly_number(&s), helly_oracle::helly_number(n, &m));
    }

    #[test]
    fn eta_matches_brute_force(s in arb_system(4, 4)) {
        let (n, m) = plain(&s);
        let r = colorful_helly_number(&s, SearchBudget::UNBOUNDED);
        prop_assert!(r.exact);
        prop_assert_eq!(r.eta, helly_oracle::eta(n, &m));
    }

    /// The verifier accepts exactly the induced matchings of the complement.
    #[test]
    fn verifier_agrees_with_induced_matching_check(
        s in arb_system(6, 6),
        raw in proptest::collection::vec((0usize..6, 0usize..6), 0..4),
    ) {
        let (n, m) = plain(&s);
        let pairs: Vec<(usize, usize)> = raw
            .into_iter()
            .map(|(x, f)| (x % s.ground_len(), f % s.member_count()))
            .collect();
        let edges = helly_oracle::complement_edges(n, &m);
        let verdict = verify_comatching(&s, &Comatching { pairs: pairs.clone() }).unwrap();
        prop_assert_eq!(verdict.ok, helly_oracle::is_induced_matching(&edges, &pairs));
    }
}
