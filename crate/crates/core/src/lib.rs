//! Exact Helly-type invariants of finite set systems.
//!
//! The crate computes the comatching numbers `τ` and `τ′`, the Helly number
//! `h` and the colorful Helly number `η` of a finite set system, each with a
//! certificate that can be re-verified independently. It also provides
//! nerves, joins and induced subcomplexes of abstract simplicial complexes,
//! exact reduced homology, d-collapsibility search and d-Leray checks, plus
//! generators for a handful of extremal examples.
//!
//! ```
//! use helly_core::{colorful_helly_number, comatching_number, gen_cycle_sharpness, SearchBudget};
//!
//! let system = gen_cycle_sharpness(2).unwrap();
//! assert_eq!(comatching_number(&system, SearchBudget::UNBOUNDED).tau, 2);
//! assert_eq!(colorful_helly_number(&system, SearchBudget::UNBOUNDED).eta, 3);
//! ```

pub mod bitset;
pub mod budget;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod linalg;
pub mod random;
pub mod search;
pub mod system;
pub mod topology;

pub use bitset::BitSet;
pub use budget::{Meter, SearchBudget};
pub use complex::{
    complex_comatching_number, complex_to_set_system, faces_of_dim, find_isomorphism,
    induced_subcomplex, isomorphic_by_labels, join, nerve, verify_complex_comatching,
    ComplexComatching, ComplexComatchingResult, ComplexJson, Face, SimplicialComplex,
    MAX_VERTICES,
};
pub use constructions::{
    gen_circle_config, gen_cycle_complex, gen_cycle_sharpness, gen_good_join_complex,
    gen_hamming_system, gen_poly_comatching, gen_simplex, gen_torus_grid_complex,
    gen_torus_grid_system, verify_poly_comatching, GeometricCircleConfig, PolynomialComatching,
};
pub use error::{Error, Result};
pub use search::{
    colorful_helly_number, colorful_transversal_dichotomy, comatching_number,
    comatching_with_intersection_number, find_empty_transversal, fractional_helly_profile,
    helly_number, minimal_empty_subfamilies, verify_dichotomy_outcome, ColorfulHellyResult,
    ColorfulInstance, ComatchingResult, DichotomyOutcome, FractionalHellyProfile,
    IntersectionComatchingResult,
};
pub use system::{
    complement_incidence, intersect_subfamily, verify_comatching,
    verify_comatching_with_intersection, Comatching, ComatchingWithIntersection, Member,
    SetSystem, SetSystemJson, SubfamilySelection, Verdict,
};
pub use topology::{
    boundary_matrix, is_d_collapsible, is_d_good, kunneth_betti_check, kunneth_join_betti,
    leray_check, leray_check_with, leray_number, leray_number_with, reduced_betti,
    reduced_betti_with_budget, reduced_euler_characteristic, torsion_warning,
    verify_collapse_sequence, verify_leray_witness, ArithmeticMode, CollapseOutcome,
    CollapseRules, CollapseSequence, CollapseStatus, CollapseStep, HomologyProfile,
    KunnethCheck, KunnethStatus, LerayNumber, LerayOptions, LerayStatus, LerayVerdict,
    LerayWitness,
};
