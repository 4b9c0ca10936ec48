mod common;

use common::arb_system;
use helly_core::{
    colorful_helly_number, colorful_transversal_dichotomy, comatching_number,
    comatching_with_intersection_number, find_empty_transversal, helly_number,
    minimal_empty_subfamilies, verify_comatching, verify_comatching_with_intersection,
    verify_dichotomy_outcome, ColorfulInstance, DichotomyOutcome, SearchBudget,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eta_bounded_by_comatching_numbers(s in arb_system(7, 7)) {
        let tau = comatching_number(&s, SearchBudget::UNBOUNDED);
        let tp = comatching_with_intersection_number(&s, SearchBudget::UNBOUNDED);
        let eta = colorful_helly_number(&s, SearchBudget::UNBOUNDED);
        prop_assert!(tau.exact && tp.exact && eta.exact);
        prop_assert!(eta.eta <= 1 + tp.tau_prime);
        prop_assert!(tp.tau_prime <= tau.tau);
        prop_assert!(tau.tau <= tp.tau_prime + 1 || tau.tau == 0);
        prop_assert!(helly_number(&s) <= eta.eta);
        if tau.tau >= 1 && tp.tau_prime + 1 == tau.tau {
            prop_assert_eq!(eta.eta, tau.tau);
        }
    }

    #[test]
    fn certificates_reverify(s in arb_system(6, 6)) {
        let tau = comatching_number(&s, SearchBudget::UNBOUNDED);
        prop_assert!(verify_comatching(&s, &tau.certificate).unwrap().ok);
        let tp = comatching_with_intersection_number(&s, SearchBudget::UNBOUNDED);
        if let Some(c) = tp.certificate {
            prop_assert!(verify_comatching_with_intersection(&s, &c).unwrap().ok);
            // dropping the common point leaves a comatching
            prop_assert!(verify_comatching(&s, &c.base).unwrap().ok);
        }
        let eta = colorful_helly_number(&s, SearchBudget::UNBOUNDED);
        if let Some(inst) = eta.refuting_instance {
            prop_assert_eq!(inst.len() + 1, eta.eta);
            prop_assert!(find_empty_transversal(&s, &inst).unwrap().is_none());
        }
    }

    #[test]
    fn dichotomy_arms_are_sound(s in arb_system(6, 6), picks in proptest::collection::vec(0usize..64, 1..6)) {
        let mins = minimal_empty_subfamilies(&s);
        prop_assume!(!mins.is_empty());
        let inst = ColorfulInstance::new(picks.iter().map(|&p| mins[p % mins.len()].clone()).collect());
        let out = colorful_transversal_dichotomy(&s, &inst).unwrap();
        prop_assert!(verify_dichotomy_outcome(&s, &inst, &out).unwrap().ok);
        let tp = comatching_with_intersection_number(&s, SearchBudget::UNBOUNDED);
        if inst.len() > tp.tau_prime {
            prop_assert!(out.is_transversal());
        }
        if let DichotomyOutcome::Witness(w) = out {
            prop_assert!(w.base.len() <= tp.tau_prime);
        }
    }

    /// If every N-instance has an empty transversal, so does every
    /// (N+1)-instance.
    #[test]
    fn refutation_is_monotone(s in arb_system(5, 5)) {
        let mins = minimal_empty_subfamilies(&s);
        prop_assume!(!mins.is_empty() && mins.len() <= 6);
        let all_tuples = |n: usize| -> Vec<ColorfulInstance> {
            let mut out = vec![Vec::new()];
            for _ in 0..n {
                out = out
                    .into_iter()
                    .flat_map(|t: Vec<usize>| (0..mins.len()).map(move |i| { let mut t = t.clone(); t.push(i); t }))
                    .collect();
            }
            out.into_iter()
                .map(|t| ColorfulInstance::new(t.iter().map(|&i| mins[i].clone()).collect()))
                .collect()
        };
        for n in 1..=3 {
            let all_ok = |k| all_tuples(k).iter().all(|i| find_empty_transversal(&s, i).unwrap().is_some());
            if all_ok(n) {
                prop_assert!(all_ok(n + 1));
            }
        }
    }
}
