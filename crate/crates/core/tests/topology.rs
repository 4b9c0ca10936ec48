mod common;

use common::arb_system;
use helly_core::random::random_complex;
use helly_core::topology::{leray_check_with, LerayOptions};
use helly_core::{
    boundary_matrix, colorful_helly_number, complex_comatching_number, complex_to_set_system,
    comatching_number, find_isomorphism, is_d_collapsible, join, kunneth_betti_check,
    leray_check, nerve, reduced_betti, reduced_euler_characteristic, verify_collapse_sequence,
    verify_leray_witness, ArithmeticMode, CollapseRules, CollapseStatus, KunnethStatus,
    LerayStatus, SearchBudget, SimplicialComplex,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_complex(max_vertices: usize, max_facets: usize, max_size: usize) -> impl Strategy<Value = SimplicialComplex> {
    (any::<u64>(), 1..=max_vertices, 1..=max_facets).prop_map(move |(seed, v, f)| {
        random_complex(&mut ChaCha8Rng::seed_from_u64(seed), v, f, max_size).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_squares_to_zero(k in arb_complex(7, 5, 5)) {
        for i in -1..=k.dim() {
            let prod = boundary_matrix(&k, i).multiply_dense(&boundary_matrix(&k, i + 1));
            prop_assert!(prod.iter().flatten().all(|&v| v == 0));
        }
    }

    #[test]
    fn euler_characteristic_and_prime_agree(k in arb_complex(8, 6, 5)) {
        let p = reduced_betti(&k, ArithmeticMode::ExactRational);
        let alt: i64 = p.reduced_betti.iter().enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        prop_assert_eq!(alt, reduced_euler_characteristic(&k));
        let q = reduced_betti(&k, ArithmeticMode::prime());
        prop_assert_eq!(p.reduced_betti, q.reduced_betti);
    }

    #[test]
    fn kunneth_holds_on_random_pairs(k in arb_complex(5, 4, 3), l in arb_complex(5, 4, 3)) {
        let r = kunneth_betti_check(&k, &l, SearchBudget::UNBOUNDED).unwrap();
        prop_assert_eq!(r.status, KunnethStatus::Agrees);
    }

    #[test]
    fn join_comatching_is_subadditive(k in arb_complex(5, 4, 3), l in arb_complex(5, 4, 3)) {
        let j = join(&k, &l).unwrap();
        prop_assert_eq!(j.facets().len(), k.facets().len() * l.facets().len());
        let tj = complex_comatching_number(&j, SearchBudget::UNBOUNDED).tau;
        let tk = complex_comatching_number(&k, SearchBudget::UNBOUNDED).tau;
        let tl = complex_comatching_number(&l, SearchBudget::UNBOUNDED).tau;
        prop_assert!(tj <= tk + tl);
    }

    #[test]
    fn join_is_associative(a in arb_complex(3, 2, 2), b in arb_complex(3, 2, 2), c in arb_complex(3, 2, 2)) {
        let left = join(&join(&a, &b).unwrap(), &c).unwrap();
        let right = join(&a, &join(&b, &c).unwrap()).unwrap();
        prop_assert!(find_isomorphism(&left, &right, SearchBudget::UNBOUNDED).unwrap().is_some());
    }

    #[test]
    fn complex_comatching_matches_brute_force(k in arb_complex(7, 5, 4)) {
        let facets: Vec<Vec<usize>> = k.facets().iter()
            .map(|&f| (0..k.vertex_count()).filter(|&v| f >> v & 1 == 1).collect())
            .collect();
        let r = complex_comatching_number(&k, SearchBudget::UNBOUNDED);
        prop_assert_eq!(r.tau, helly_oracle::complex_comatching_number(k.vertex_count(), &facets));
    }

    /// Nerve comatchings lift to the system.
    #[test]
    fn nerve_comatching_bounded_by_system(s in arb_system(6, 6)) {
        prop_assume!(s.uncovered_members().is_empty());
        let n = nerve(&s).unwrap();
        let tn = complex_comatching_number(&n, SearchBudget::UNBOUNDED).tau;
        prop_assert!(tn <= comatching_number(&s, SearchBudget::UNBOUNDED).tau);
    }

    /// Converting a complex to a set system and taking the nerve gives the
    /// complex back, and the system's τ is at most max(2, τ_K).
    #[test]
    fn conversion_round_trip(k in arb_complex(6, 5, 4)) {
        prop_assume!(k.isolated_vertices().is_empty());
        let s = complex_to_set_system(&k).unwrap();
        let back = nerve(&s).unwrap();
        prop_assert!(find_isomorphism(&back, &k, SearchBudget::UNBOUNDED).unwrap().is_some());
        let tk = complex_comatching_number(&k, SearchBudget::UNBOUNDED).tau;
        prop_assert!(comatching_number(&s, SearchBudget::UNBOUNDED).tau <= tk.max(2));
    }

    /// Collapsible nerves bound η and are Leray.
    #[test]
    fn collapsible_nerves_bound_eta(s in arb_system(6, 6)) {
        prop_assume!(s.uncovered_members().is_empty());
        let n = nerve(&s).unwrap();
        let eta = colorful_helly_number(&s, SearchBudget::UNBOUNDED);
        for d in 1..=4 {
            let out = is_d_collapsible(&n, CollapseRules::new(d), SearchBudget::nodes(20_000));
            if out.status == CollapseStatus::Proved {
                let seq = out.sequence.unwrap();
                prop_assert!(verify_collapse_sequence(&n, CollapseRules::new(d), &seq).unwrap().ok);
                prop_assert!(eta.eta <= d + 1);
                prop_assert_eq!(leray_check(&n, d, SearchBudget::UNBOUNDED).status, LerayStatus::Holds);
                break;
            }
        }
    }

    #[test]
    fn leray_witnesses_reverify(k in arb_complex(8, 6, 4), d in 0usize..3) {
        let v = leray_check(&k, d, SearchBudget::UNBOUNDED);
        match v.status {
            LerayStatus::Fails => {
                let w = v.witness.unwrap();
                prop_assert!(verify_leray_witness(&k, d, &w).unwrap().ok);
            }
            LerayStatus::Holds => prop_assert!(v.exhaustive),
            LerayStatus::BudgetExhausted => prop_assert!(false, "unbounded budget"),
        }
    }
}

#[test]
fn sampling_mode_never_claims_holds() {
    let k = helly_core::gen_simplex(6).unwrap();
    let opts = LerayOptions { exhaustive_cap: 3, seed: 5 };
    let v = leray_check_with(&k, 1, SearchBudget::nodes(50), opts);
    assert!(!v.exhaustive);
    assert_eq!(v.status, LerayStatus::BudgetExhausted);
    let c = helly_core::gen_cycle_complex(5).unwrap();
    let v = leray_check_with(&c, 1, SearchBudget::nodes(50), opts);
    assert_eq!(v.status, LerayStatus::Fails);
}
