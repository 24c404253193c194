//! Shared fixtures and randomized generators for the integration suites.
#![allow(dead_code)]

use rand::Rng;

use witt_core::angle::cyclotomic_psi;
use witt_core::expr::parse_expr;
use witt_core::factor::IrreducibleFactor;
use witt_core::hermitian::{normalize_entry, NormalizedEntry, Sign, WittDiagonal};
use witt_core::laurent::{LaurentPoly, RationalFunction};
use witt_core::rational::Rational;
use witt_core::step::{StepPoint, StepSpec};

/// The class with diagonal [-d10 d6, -d6, 1, 1].
pub fn w1() -> WittDiagonal {
    let e = |s: &str| normalize_entry(&parse_expr(s).unwrap()).unwrap();
    WittDiagonal::new(vec![
        e("-(t^-2 - t^-1 + 1 - t + t^2)*(t^-1 - 1 + t)"),
        e("-(t^-1 - 1 + t)"),
        NormalizedEntry::unit(Sign::Pos),
        NormalizedEntry::unit(Sign::Pos),
    ])
}

/// The class with diagonal [-d10, 1].
pub fn w2() -> WittDiagonal {
    let e = |s: &str| normalize_entry(&parse_expr(s).unwrap()).unwrap();
    WittDiagonal::new(vec![
        e("-(t^-2 - t^-1 + 1 - t + t^2)"),
        NormalizedEntry::unit(Sign::Pos),
    ])
}

/// Six cyclotomic-derived irreducibles (orders 5, 6, 7, 8, 10, 12).
pub fn factor_pool() -> Vec<IrreducibleFactor> {
    [5u64, 6, 7, 8, 10, 12]
        .iter()
        .map(|&n| cyclotomic_psi(n).unwrap())
        .collect()
}

/// A random normalized entry over the factor pool.
pub fn random_entry(rng: &mut impl Rng) -> NormalizedEntry {
    let pool = factor_pool();
    let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
    let circle = pool
        .into_iter()
        .filter(|_| rng.gen_bool(1.0 / 3.0))
        .collect();
    NormalizedEntry::new(sign, circle, Default::default()).unwrap()
}

/// A random diagonal with at most `max_entries` entries.
pub fn random_witt(rng: &mut impl Rng, max_entries: usize) -> WittDiagonal {
    let n = rng.gen_range(0..=max_entries);
    WittDiagonal::new((0..n).map(|_| random_entry(rng)).collect())
}

/// A random member of the realizable step class: per group, either all
/// jumps odd (every root listed) or all even (unlisted roots carry the
/// implicit zero).
pub fn random_valid_spec(rng: &mut impl Rng) -> StepSpec {
    let pool = factor_pool();
    let mut points: Vec<StepPoint> = Vec::new();
    let group_count = rng.gen_range(0..=3);
    let mut chosen: Vec<usize> = Vec::new();
    while chosen.len() < group_count {
        let i = rng.gen_range(0..pool.len());
        if !chosen.contains(&i) {
            chosen.push(i);
        }
    }
    for &i in &chosen {
        let odd = rng.gen_bool(0.5);
        for root in witt_core::angle::isolate_circle_roots(&pool[i]) {
            if odd {
                let jump = 2 * rng.gen_range(-1i64..=1) + 1;
                points.push(StepPoint { angle: root, jump });
            } else {
                let jump = 2 * rng.gen_range(-1i64..=1);
                // even groups may leave zero-jump roots unlisted
                if jump != 0 || rng.gen_bool(0.5) {
                    points.push(StepPoint { angle: root, jump });
                }
            }
        }
    }
    let sigma_at_zero = rng.gen_range(-4i64..=4);
    StepSpec::new(sigma_at_zero, points).unwrap()
}

/// A random nonzero Laurent polynomial with small support.
pub fn random_laurent(rng: &mut impl Rng) -> LaurentPoly {
    loop {
        let terms: Vec<(i64, Rational)> = (0..rng.gen_range(1..=3))
            .map(|_| {
                (
                    rng.gen_range(-2i64..=2),
                    Rational::new(rng.gen_range(-3i64..=3).into(), 1.into()),
                )
            })
            .collect();
        let p = LaurentPoly::from_terms(terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// `h * involute(h)` for a random nonzero h: a norm factor, positive on
/// the circle away from its roots.
pub fn random_norm_factor(rng: &mut impl Rng) -> RationalFunction {
    let h = random_laurent(rng);
    RationalFunction::from_poly(&h * &h.involute())
}
