//! Randomized structural properties, runnable on their own via
//! `cargo test --test properties`. Each suite draws 512 cases.

use num_bigint::BigInt;
use proptest::collection::vec as pvec;
use proptest::prelude::*;

use torica_core::adjunction::adjoint_class;
use torica_core::fan::realize_profile;
use torica_core::{DivisorClass, Fan};

/// A random smooth complete fan: a standard seed surface plus up to eight
/// corner blowups.
fn build_fan(seed: usize, corners: &[usize]) -> Fan {
    let mut fan = match seed {
        0 => Fan::projective_plane(),
        a => Fan::hirzebruch(a as u32 - 1),
    };
    for &c in corners {
        let e = fan.euler();
        fan = fan.blowup(c % e);
    }
    fan
}

/// Carries an ample class along the same schedule: at each blowup the
/// doubled pullback minus the new ray stays ample.
fn build_polarized(seed: usize, corners: &[usize]) -> (Fan, DivisorClass) {
    let (mut fan, base): (Fan, Vec<i64>) = match seed {
        0 => (Fan::projective_plane(), vec![0, 0, 1]),
        a => (Fan::hirzebruch(a as u32 - 1), vec![0, 0, 1, 1]),
    };
    let mut coefficients: Vec<BigInt> = base.into_iter().map(BigInt::from).collect();
    for &c in corners {
        let e = fan.euler();
        let corner = c % e;
        let inserted = (&coefficients[corner] + &coefficients[(corner + 1) % e]) * 2 - 1;
        for value in &mut coefficients {
            *value *= 2;
        }
        fan = fan.blowup(corner);
        coefficients.insert(corner + 1, inserted);
    }
    let class = DivisorClass::new(fan.clone(), coefficients).unwrap();
    (fan, class)
}

fn fan_shape() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0usize..5, pvec(0usize..1_000_000, 0..8))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 512, failure_persistence: None, ..ProptestConfig::default() })]

    /// Blowing down the ray a blowup inserted restores the fan exactly.
    #[test]
    fn blowup_then_blowdown_round_trips((seed, corners) in fan_shape(), at in 0usize..1_000_000) {
        let fan = build_fan(seed, &corners);
        let corner = at % fan.euler();
        let up = fan.blowup(corner);
        prop_assert_eq!(up.euler(), fan.euler() + 1);
        let (down, record) = up.blowdown(corner + 1).expect("fresh ray contracts");
        prop_assert_eq!(down.rays(), fan.rays());
        prop_assert_eq!(record.removed_ray, corner + 1);
    }

    /// Realizing a fan's self-intersection profile rebuilds the same
    /// surface up to lattice symmetry.
    #[test]
    fn profile_realize_round_trips((seed, corners) in fan_shape()) {
        let fan = build_fan(seed, &corners);
        let realized = realize_profile(fan.self_intersections().values())
            .expect("profiles of actual fans realize");
        let theirs = realized.canonical_profile();
        let ours = fan.canonical_profile();
        prop_assert_eq!(theirs.values(), ours.values());
    }

    /// The canonical profile is unchanged by relabeling the rays by any
    /// rotation.
    #[test]
    fn canonical_profile_ignores_rotation((seed, corners) in fan_shape(), shift in 0usize..1_000_000) {
        let fan = build_fan(seed, &corners);
        let e = fan.euler();
        let mut rotated = fan.rays().to_vec();
        rotated.rotate_left(shift % e);
        let relabeled = Fan::new(rotated).expect("rotation preserves validity");
        let theirs = relabeled.canonical_profile();
        let ours = fan.canonical_profile();
        prop_assert_eq!(theirs.values(), ours.values());
    }

    /// Degrees determine the class up to linear equivalence.
    #[test]
    fn degrees_rebuild_the_class((seed, corners) in fan_shape(), raw in pvec(-9i64..=9, 12)) {
        let fan = build_fan(seed, &corners);
        let class = DivisorClass::from_i64(&fan, &raw[..fan.euler()]).unwrap();
        let degrees = class.degree_vector();
        let rebuilt = DivisorClass::from_degrees(&fan, degrees.values()).unwrap();
        prop_assert!(rebuilt.linearly_equivalent(&class).unwrap());
        let rebuilt_degrees = rebuilt.degree_vector();
        prop_assert_eq!(rebuilt_degrees.values(), degrees.values());
    }

    /// Normalization reaches a fixed point in one step and stays in the
    /// same linear-equivalence class.
    #[test]
    fn normalize_is_idempotent((seed, corners) in fan_shape(), raw in pvec(-9i64..=9, 12)) {
        let fan = build_fan(seed, &corners);
        let class = DivisorClass::from_i64(&fan, &raw[..fan.euler()]).unwrap();
        let normalized = class.normalize();
        prop_assert!(normalized.linearly_equivalent(&class).unwrap());
        let twice = normalized.normalize();
        prop_assert_eq!(twice.coefficients(), normalized.coefficients());
    }

    /// `(K + L) . L` is even for every class, so the sectional genus is
    /// an integer.
    #[test]
    fn adjoint_product_is_even((seed, corners) in fan_shape(), raw in pvec(-9i64..=9, 12)) {
        let fan = build_fan(seed, &corners);
        let class = DivisorClass::from_i64(&fan, &raw[..fan.euler()]).unwrap();
        let product = class.intersect(&adjoint_class(&class)).unwrap();
        prop_assert!(!product.bit(0), "(K+L).L = {} is odd", product);
    }

    /// Index-theorem inequality `(P.T)^2 >= P^2 T^2` against a carried
    /// ample class `P`.
    #[test]
    fn index_inequality_against_ample((seed, corners) in fan_shape(), raw in pvec(-9i64..=9, 12)) {
        let (fan, ample) = build_polarized(seed, &corners);
        prop_assert!(ample.is_ample());
        let other = DivisorClass::from_i64(&fan, &raw[..fan.euler()]).unwrap();
        let mixed = ample.intersect(&other).unwrap();
        let bound = ample.self_intersection() * other.self_intersection();
        prop_assert!(&mixed * &mixed >= bound);
    }
}
