mod common;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sturm_count_stays_one_under_refinement(case in common::sturm_cases()) {
        common::sturm_count_stays_one(case)?;
    }

    #[test]
    fn field_reduction_is_a_homomorphism(case in common::ratfun_cases()) {
        common::field_reduction_is_a_homomorphism(case)?;
    }

    #[test]
    fn tiling_sweep_agrees_with_area_sum(case in common::tiling_cases()) {
        common::tiling_sweep_agrees_with_area_sum(case)?;
    }

    #[test]
    fn congruence_is_symmetric_and_rotation_invariant(case in common::rect_pair_cases()) {
        common::congruence_is_symmetric_and_rotation_invariant(case)?;
    }
}
