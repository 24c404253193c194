//! Diagonalization fuzzing, congruence certificates, and representative
//! invariance of profiles and ranks.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use witt_core::expr::parse_expr;
use witt_core::hermitian::{
    congruence_apply, normalize_entry, HermitianMatrix, WittDiagonal,
};
use witt_core::laurent::{LaurentPoly, RationalFunction};
use witt_core::profile::{profiles_equal, signature_profile};
use witt_core::rank::{rank_lower_bound, s_norm};
use witt_core::rational::Rational;
use witt_core::Error;

fn random_rational_function(rng: &mut impl Rng) -> RationalFunction {
    // Laurent entries with exponents in [-2, 2] (degree span <= 4)
    let terms: Vec<(i64, Rational)> = (0..rng.gen_range(0..=2))
        .map(|_| {
            (
                rng.gen_range(-2i64..=2),
                Rational::new(rng.gen_range(-2i64..=2).into(), 1.into()),
            )
        })
        .collect();
    RationalFunction::from_poly(LaurentPoly::from_terms(terms))
}

fn random_hermitian(rng: &mut impl Rng, n: usize) -> HermitianMatrix {
    let mut entries = vec![vec![RationalFunction::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            if i == j {
                // symmetric diagonal entry: c (t^k + t^-k) + d
                let k = rng.gen_range(0i64..=2);
                let c = Rational::new(rng.gen_range(-2i64..=2).into(), 1.into());
                let d = Rational::new(rng.gen_range(-2i64..=2).into(), 1.into());
                let poly = &LaurentPoly::from_terms([(k, c.clone()), (-k, c)])
                    + &LaurentPoly::constant(d);
                entries[i][i] = RationalFunction::from_poly(poly);
            } else {
                let e = random_rational_function(rng);
                entries[i][j] = e.clone();
                entries[j][i] = e.involute();
            }
        }
    }
    HermitianMatrix::new(entries).unwrap()
}

#[test]
fn fuzz_diagonalization_with_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut diagonalized = 0;
    for trial in 0..60 {
        let n = rng.gen_range(1..=8);
        let a = random_hermitian(&mut rng, n);
        match a.diagonalize() {
            Ok((d, p)) => {
                diagonalized += 1;
                let out = congruence_apply(&p, a.entries());
                for i in 0..n {
                    for j in 0..n {
                        if i == j {
                            assert_eq!(out[i][j], d[i], "trial {trial}");
                            assert!(d[i].is_symmetric() && !d[i].is_zero());
                        } else {
                            assert!(out[i][j].is_zero(), "trial {trial}");
                        }
                    }
                }
            }
            Err(Error::Singular) => {
                assert!(a.det().is_zero(), "trial {trial}: singular must mean det 0");
            }
            Err(e) => panic!("unexpected error: {e}"),
        }
    }
    assert!(diagonalized > 20, "fuzz should hit plenty of nonsingular cases");
}

#[test]
fn congruence_preserves_profile() {
    // random elementary congruences never change the normal-form profile
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..15 {
        let n = rng.gen_range(2..=4);
        let a = random_hermitian(&mut rng, n);
        if a.det().is_zero() {
            continue;
        }
        // build P = elementary op, B = P A involute(P)^T
        let mut p: Vec<Vec<RationalFunction>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            RationalFunction::one()
                        } else {
                            RationalFunction::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        p[i][j] = random_rational_function(&mut rng);
        let b = congruence_apply(&p, a.entries());
        let b = HermitianMatrix::new(b).unwrap();
        let pa = signature_profile(&a.normal_form().unwrap());
        let pb = signature_profile(&b.normal_form().unwrap());
        assert!(profiles_equal(&pa, &pb));
    }
}

#[test]
fn torus_knot_diagonal_has_four_symmetric_entries() {
    let v = witt_core::knot::SeifertMatrix::from_i64(
        &[
            &[-1, 1, 0, 0],
            &[0, -1, 1, 0],
            &[0, 0, -1, 1],
            &[0, 0, 0, -1],
        ],
        Some("5_1"),
    )
    .unwrap();
    let a = v.hermitianize().unwrap();
    let (d, p) = a.diagonalize().unwrap();
    assert_eq!(d.len(), 4);
    for e in &d {
        assert!(e.is_symmetric());
    }
    let out = congruence_apply(&p, a.entries());
    for i in 0..4 {
        assert_eq!(out[i][i], d[i]);
    }
}

#[test]
fn invariance_under_permutation_stabilization_and_norm_factors() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let w = common::random_witt(&mut rng, 5);
        let reference = signature_profile(&w);
        let r = rank_lower_bound(&w).r;
        let s = s_norm(&w);
        assert!(r >= s);

        // (i) permutation of the diagonal
        let mut entries = w.entries().to_vec();
        for i in (1..entries.len()).rev() {
            let j = rng.gen_range(0..=i);
            entries.swap(i, j);
        }
        let permuted = WittDiagonal::new(entries);
        assert!(profiles_equal(&reference, &signature_profile(&permuted)));
        assert_eq!(rank_lower_bound(&permuted).r, r);

        // (ii) metabolic stabilization by <f> + <-f>
        let f = common::random_entry(&mut rng);
        let stabilized = w.direct_sum(&WittDiagonal::new(vec![f.clone(), f.negate()]));
        assert!(profiles_equal(&reference, &signature_profile(&stabilized)));
        assert_eq!(rank_lower_bound(&stabilized).r, r);
        assert_eq!(s_norm(&stabilized), s);

        // (iii) multiplying an entry by h * involute(h)
        if !w.entries().is_empty() {
            let idx = rng.gen_range(0..w.entries().len());
            let norm_factor = common::random_norm_factor(&mut rng);
            let scaled = RationalFunction::from_poly(w.entries()[idx].represented())
                .mul(&norm_factor);
            let mut entries = w.entries().to_vec();
            entries[idx] = normalize_entry(&scaled).unwrap();
            let twisted = WittDiagonal::new(entries);
            assert!(profiles_equal(&reference, &signature_profile(&twisted)));
            assert_eq!(rank_lower_bound(&twisted).r, r);
            assert_eq!(s_norm(&twisted), s);
        }
    }
}

#[test]
fn normalization_agrees_with_input_signs() {
    // normalize_entry keeps the sign of the input at sample points
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..40 {
        let h = common::random_laurent(&mut rng);
        let sym = &h * &h.involute();
        let d = RationalFunction::from_poly(&sym + &LaurentPoly::one());
        if d.is_zero() || !d.is_symmetric() {
            continue;
        }
        let e = normalize_entry(&d).unwrap();
        // |h|^2 + 1 > 0 on the whole circle
        assert_eq!(e.sign_at_sample(&Rational::new(0.into(), 1.into())), 1);
    }
}

#[test]
fn w1_fixture_normal_form_matches_spec_shape() {
    let entries = [
        "-(t^-2 - t^-1 + 1 - t + t^2)*(t^-1 - 1 + t)",
        "-(t^-1 - 1 + t)",
        "1",
        "1",
    ];
    let diag: Vec<RationalFunction> =
        entries.iter().map(|s| parse_expr(s).unwrap()).collect();
    let m = HermitianMatrix::from_diagonal(diag).unwrap();
    let w = m.normal_form().unwrap();
    let signs: Vec<i64> = w.entries().iter().map(|e| e.sign.as_i64()).collect();
    assert_eq!(signs, vec![-1, -1, 1, 1]);
    let sizes: Vec<usize> = w
        .entries()
        .iter()
        .map(|e| e.circle_factors.len() + e.offcircle_factors.len())
        .collect();
    assert_eq!(sizes, vec![2, 1, 0, 0]);
}
