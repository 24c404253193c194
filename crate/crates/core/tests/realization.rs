//! Randomized round-trip and parity properties of the realization
//! construction.

mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use witt_core::profile::{profiles_equal, signature_profile};
use witt_core::rank::rank_lower_bound;
use witt_core::step::StepSpec;

#[test]
fn random_specs_realize_to_their_own_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for trial in 0..60 {
        let spec = common::random_valid_spec(&mut rng);
        assert!(spec.validate().is_empty(), "generator produced invalid spec");
        let r = spec.r_of_step().unwrap();
        let w = spec.realize().unwrap();
        assert_eq!(w.dimension() as i64, r, "trial {trial}");
        let p = signature_profile(&w);
        assert!(
            profiles_equal(&p, &spec.to_profile()),
            "trial {trial}: realized profile mismatch"
        );
        // the realized form meets its own lower bound exactly
        assert_eq!(rank_lower_bound(&w).r, r, "trial {trial}");
    }
}

#[test]
fn parity_lemma_on_random_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..100 {
        let spec = common::random_valid_spec(&mut rng);
        assert!(spec.parity_holds().unwrap());
    }
}

#[test]
fn profiles_of_random_forms_realize_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for trial in 0..40 {
        let w = common::random_witt(&mut rng, 6);
        let p = signature_profile(&w);
        let spec = StepSpec::from_profile(&p);
        let r = rank_lower_bound(&w).r;
        assert_eq!(spec.r_of_step().unwrap(), r, "trial {trial}");
        let realized = spec.realize().unwrap();
        assert_eq!(realized.dimension() as i64, r);
        assert!(profiles_equal(&signature_profile(&realized), &p));
    }
}

#[test]
fn barrier_factors_never_jump() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..20 {
        let spec = common::random_valid_spec(&mut rng);
        let w = spec.realize().unwrap();
        let p = signature_profile(&w);
        let r = rank_lower_bound(&w).r;
        let group_factors: Vec<_> = spec
            .points()
            .iter()
            .map(|pt| pt.angle.minpoly().clone())
            .collect();
        for (factor, points) in &p.groups {
            let is_barrier = !group_factors.contains(factor);
            for gp in points {
                if is_barrier {
                    assert_eq!(gp.jump, 0, "barrier {factor} must not jump");
                }
            }
            let r_delta: i64 = points.iter().map(|g| g.sigma_point.abs()).max().unwrap()
                + points.iter().map(|g| g.jump.abs()).max().unwrap();
            assert!(r_delta <= r, "no factor may exceed the total rank");
        }
    }
}
