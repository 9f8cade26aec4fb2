mod common;

use common::gen::seed;
use common::props;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 1000, max_global_rejects: 100_000, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn universe_is_the_least_fixpoint(sd in seed()) {
        props::universe_is_the_least_fixpoint(&sd)?;
    }

    #[test]
    fn min_env_partitions_the_universe(sd in seed()) {
        props::min_env_partitions_the_universe(&sd)?;
    }

    #[test]
    fn order_respects_dependencies(sd in seed()) {
        props::order_respects_dependencies(&sd)?;
    }

    #[test]
    fn parameter_completion_is_idempotent(sd in seed(), pick in any::<u64>()) {
        props::parameter_completion_is_idempotent(&sd, pick)?;
    }

    #[test]
    fn plans_are_well_scoped(sd in seed()) {
        props::plans_are_well_scoped(&sd)?;
    }

    #[test]
    fn erasure_drops_only_logical_material(sd in seed()) {
        props::erasure_drops_only_logical_material(&sd)?;
    }

    #[test]
    fn flattening_is_idempotent(sd in seed()) {
        props::flattening_is_idempotent(&sd)?;
    }

    #[test]
    fn late_binding_and_invalidation(sd in seed()) {
        props::late_binding_and_invalidation(&sd)?;
    }
}
