mod support;

use proptest::prelude::*;

use support::cases::{self, case};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sortie_length_is_twice_the_station_distances(c in case()) {
        cases::sortie_length_identity(&c)?;
    }

    #[test]
    fn propagation_matches_reference_and_is_deterministic(c in case()) {
        cases::propagation_matches_reference(&c)?;
    }

    #[test]
    fn schedule_is_invariant_under_uniform_scaling(c in case(), factor in 0.1..10.0f64) {
        cases::scaling_invariance(&c, factor)?;
    }

    #[test]
    fn departure_waits_exactly_for_the_last_robot(c in case()) {
        cases::departure_tightness(&c)?;
    }

    #[test]
    fn tardiness_has_closed_form(c in case()) {
        cases::tardiness_closed_form(&c)?;
    }

    #[test]
    fn instance_and_plan_round_trip(c in case()) {
        cases::serialization_round_trip(&c)?;
    }

    #[test]
    fn incremental_schedule_matches_full(
        c in case(),
        moves in prop::collection::vec((0..7usize, 0..3usize, 0..3usize, 0..8usize), 1..6),
    ) {
        cases::incremental_matches_full(&c, &moves)?;
    }
}
