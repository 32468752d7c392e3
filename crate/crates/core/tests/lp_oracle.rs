mod common;

use common::{random_bounded_lp, to_program, vertex_enumeration, OracleResult};
use l1hom::lp::{solve, LpStatus};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn matches_vertex_enumeration_on_seeded_programs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut optimal = 0;
    for _ in 0..300 {
        let dense = random_bounded_lp(&mut rng);
        let lp = to_program(&dense);
        let sol = solve(&lp);
        match vertex_enumeration(&dense) {
            OracleResult::Infeasible => assert_eq!(sol.status, LpStatus::Infeasible, "{dense:?}"),
            OracleResult::Optimal(v) => {
                assert_eq!(sol.status, LpStatus::Optimal, "{dense:?}");
                assert_eq!(sol.value, v, "{dense:?}");
                assert!(lp.is_primal_feasible(&sol.primal));
                assert!(lp.is_dual_feasible(&sol.dual));
                assert_eq!(lp.dual_value(&sol.dual), sol.value);
                optimal += 1;
            }
        }
    }
    assert!(optimal > 200);
}

#[test]
fn identical_programs_give_identical_solutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let lp = to_program(&random_bounded_lp(&mut rng));
        assert_eq!(solve(&lp), solve(&lp.clone()));
    }
}

proptest! {
    #[test]
    fn strong_duality_on_random_programs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dense = random_bounded_lp(&mut rng);
        let lp = to_program(&dense);
        let sol = solve(&lp);
        if sol.status == LpStatus::Optimal {
            prop_assert!(lp.is_primal_feasible(&sol.primal));
            prop_assert!(lp.is_dual_feasible(&sol.dual));
            prop_assert_eq!(lp.objective_value(&sol.primal), sol.value.clone());
            prop_assert_eq!(lp.dual_value(&sol.dual), sol.value);
        } else {
            prop_assert_eq!(vertex_enumeration(&dense), OracleResult::Infeasible);
        }
    }
}
