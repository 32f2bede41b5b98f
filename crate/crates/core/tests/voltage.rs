use geodual_core::classify::{classify, realize_group, surface_from_subgroup, SubgroupRecord};
use geodual_core::surface::{FlagSurface, StripKind};
use geodual_core::voltage::{
    lifted_cycle_length, materialize_lift, prop_assignment, validate_assignment, verify_lift,
    CornerVoltageAssignment, VoltageElement, VoltageError, VoltageGroupSpec,
};

fn regular_surface(d: usize) -> FlagSurface {
    let g = realize_group(d, 1000).unwrap();
    surface_from_subgroup(&g, &SubgroupRecord::trivial()).unwrap()
}

#[test]
fn assignment_values_per_face() {
    let s = regular_surface(5);
    for (p, pattern) in [(3, [1, 2, 1, 2, 1, 2]), (5, [1, 4, 1, 4, 3, 2]), (2, [1, 1, 2, 2, 3, 3])] {
        let va = prop_assignment(&s, p).unwrap();
        assert!(validate_assignment(&va).is_valid());
        for (i, face) in s.faces().iter().enumerate() {
            let mut x = face[0];
            for (k, &v) in pattern.iter().enumerate() {
                assert_eq!(va.value(x), &VoltageElement::single(i, v), "p = {p}, face {i}, corner {k}");
                x = if k % 2 == 0 { s.beta().apply(x) } else { s.alpha().apply(x) };
            }
        }
    }
}

#[test]
fn lifted_lengths_match_the_materialized_lift() {
    // the lazy walk and the explicit permutations must agree on cycle lengths
    let s = regular_surface(5);
    for p in [2, 3] {
        let va = prop_assignment(&s, p).unwrap();
        let report = verify_lift(&va).unwrap();
        assert!(report.all_match(), "p = {p}");
        assert_eq!(report.expected, 5 * p as usize);
        let lift = materialize_lift(&va, 1_000_000).unwrap();
        for kind in [StripKind::Umbrella, StripKind::Geodesic] {
            let lengths = lift.strip_step(kind).cycle_lengths();
            assert!(lengths.iter().all(|&l| l == 5 * p as usize), "p = {p}, {kind:?}");
        }
    }
}

#[test]
fn lifts_of_h5_surface() {
    let s = regular_surface(5);
    let va = prop_assignment(&s, 3).unwrap();
    assert_eq!(lifted_cycle_length(&va, 1, StripKind::Umbrella), 15);
    let lift = materialize_lift(&va, 1_000_000).unwrap();
    assert_eq!(lift.stats().uniform_degree, Some(15));
    assert_eq!(lift.flag_count() % 60, 0);
    assert!(FlagSurface::parse(&lift.to_text()).is_ok());

    let va2 = prop_assignment(&s, 2).unwrap();
    assert_eq!(lifted_cycle_length(&va2, 1, StripKind::Geodesic), 10);
    assert!(matches!(materialize_lift(&va2, 1000), Err(VoltageError::LimitExceeded { limit: 1000 })));
}

#[test]
fn lifts_of_h6_surface() {
    let s = regular_surface(6);
    assert_eq!(s.stats().face_count, 18);
    let report = verify_lift(&prop_assignment(&s, 5).unwrap()).unwrap();
    assert_eq!(report.lengths.len(), 2 * 108);
    assert!(report.lengths.iter().all(|&(_, _, l)| l == 30));
}

#[test]
fn identity_voltages_report_mismatch() {
    let s = regular_surface(5);
    let spec = VoltageGroupSpec::for_prime(3, s.stats().face_count).unwrap();
    let va = CornerVoltageAssignment::identity(s, spec);
    let report = verify_lift(&va).unwrap();
    assert!(report.lengths.iter().all(|&(_, _, l)| l == 5));
    assert!(!report.all_match());
    assert!(report.to_string().ends_with("all = 15: no\n"));
}

#[test]
fn length_is_base_length_times_voltage_order() {
    for e in classify(8).unwrap() {
        let s = &e.surface;
        let va = prop_assignment(s, 3).unwrap();
        for x in 1..=s.flag_count() {
            // accumulate the voltage once around the base umbrella
            let mut y = x;
            let mut g = VoltageElement::identity();
            for _ in 0..8 {
                let z = s.gamma().apply(y);
                g = va.spec().mul(va.value(z), &g);
                y = s.beta().apply(z);
            }
            assert_eq!(y, x);
            let order = if g.is_identity() { 1 } else { 3 };
            assert_eq!(lifted_cycle_length(&va, x, StripKind::Umbrella), 8 * order);
        }
    }
}

#[test]
fn lifts_of_every_classified_surface_are_surfaces() {
    for d in [5, 6, 8] {
        for e in classify(d).unwrap() {
            let va = prop_assignment(&e.surface, 2).unwrap();
            match materialize_lift(&va, 200_000) {
                Ok(lift) => assert_eq!(lift.stats().uniform_degree, Some(2 * d)),
                Err(VoltageError::LimitExceeded { .. }) => {}
                Err(other) => panic!("{other}"),
            }
        }
    }
}
