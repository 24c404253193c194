//! The rank lower bound `r`, the norms `s` and `rho_s`, values on rational
//! spans, and exact unit-ball polygons.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::factor::IrreducibleFactor;
use crate::hermitian::WittDiagonal;
use crate::profile::{signature_profile, SignatureProfile};
use crate::rational::{format_rational, rat_int, Rational};
use crate::Result;

/// Which norm a span or ball computation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    /// `s(w) = sup |sigma_w|`.
    S,
    /// `rho_s(w) = r(w)`, the stable rank.
    RhoS,
}

/// Per-factor contribution to the rank bound.
#[derive(Debug, Clone)]
pub struct DeltaReport {
    pub factor: IrreducibleFactor,
    pub max_abs_sigma: i64,
    pub max_abs_jump: i64,
    pub r_delta: i64,
}

/// The full rank report for one form.
#[derive(Debug, Clone)]
pub struct RankReport {
    pub r: i64,
    pub s: i64,
    pub sigma_zero_term: i64,
    pub stable_rank: Rational,
    pub per_delta: Vec<DeltaReport>,
}

impl RankReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "r": self.r,
            "s": self.s,
            "stable_rank": format_rational(&self.stable_rank),
            "sigma_zero": self.sigma_zero_term,
            "per_delta": self.per_delta.iter().map(|d| serde_json::json!({
                "minpoly_x": d.factor.cheb().to_string(),
                "max_abs_sigma": d.max_abs_sigma,
                "max_abs_J": d.max_abs_jump,
                "r_delta": d.r_delta,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Rank report from an already-computed profile.
pub fn rank_of_profile(p: &SignatureProfile) -> RankReport {
    let mut per_delta = Vec::new();
    let mut r = p.sigma_at_zero.abs();
    for (factor, points) in &p.groups {
        // both maxima run over every unit-circle root of the factor,
        // including jump-zero points
        let max_abs_sigma = points.iter().map(|g| g.sigma_point.abs()).max().unwrap_or(0);
        let max_abs_jump = points.iter().map(|g| g.jump.abs()).max().unwrap_or(0);
        let r_delta = max_abs_sigma + max_abs_jump;
        r = r.max(r_delta);
        per_delta.push(DeltaReport {
            factor: factor.clone(),
            max_abs_sigma,
            max_abs_jump,
            r_delta,
        });
    }
    let s = p.max_abs_sigma();
    RankReport {
        r,
        s,
        sigma_zero_term: p.sigma_at_zero.abs(),
        stable_rank: rat_int(r),
        per_delta,
    }
}

/// The rank lower bound `r(w)` with its per-factor breakdown.
pub fn rank_lower_bound(w: &WittDiagonal) -> RankReport {
    rank_of_profile(&signature_profile(w))
}

/// `s(w) = sup |sigma_w|`.
pub fn s_norm(w: &WittDiagonal) -> i64 {
    signature_profile(w).max_abs_sigma()
}

/// The stable rank `r(w)`, exact value of a quarter of the rank of `4w`.
pub fn stable_rank(w: &WittDiagonal) -> Rational {
    rat_int(rank_lower_bound(w).r)
}

/// Union refinement of two profiles: shared interval values and
/// per-factor point data, each as integer pairs (value in first, value in
/// second) that extend linearly over rational spans.
struct UnionData {
    /// Interval values on the common refinement, first gap = values at 0.
    gaps: Vec<(i64, i64)>,
    /// Point-value pairs at every union breakpoint (for `s`).
    point_sigmas: Vec<(i64, i64)>,
    /// Per factor: (sigma pair, jump pair) at every circle root.
    groups: Vec<Vec<((i64, i64), (i64, i64))>>,
}

fn union_data(p1: &SignatureProfile, p2: &SignatureProfile) -> UnionData {
    // Merge the breakpoint angles of both profiles for the gap refinement.
    let mut bp_angles: Vec<crate::angle::AlgebraicAngle> = Vec::new();
    for bp in p1.breakpoints.iter().chain(p2.breakpoints.iter()) {
        if !bp_angles.iter().any(|a| a.cmp_theta(&bp.angle) == Ordering::Equal) {
            bp_angles.push(bp.angle.clone());
        }
    }
    bp_angles.sort_by(|a, b| a.cmp_theta(b));

    let mut gaps = vec![(p1.sigma_at_zero, p2.sigma_at_zero)];
    let mut point_sigmas = Vec::new();
    for angle in &bp_angles {
        let s1 = p1.sigma_at_angle(angle);
        let s2 = p2.sigma_at_angle(angle);
        let j1 = p1.jump_at_angle(angle);
        let j2 = p2.jump_at_angle(angle);
        point_sigmas.push((s1, s2));
        gaps.push((s1 + j1, s2 + j2));
    }

    // Union of appearing factors; each profile's group already enumerates
    // every root of its factors.
    let mut factors: Vec<&IrreducibleFactor> = p1.groups.keys().collect();
    for f in p2.groups.keys() {
        if !factors.contains(&f) {
            factors.push(f);
        }
    }
    let mut groups = Vec::new();
    for f in factors {
        let angles: Vec<crate::angle::AlgebraicAngle> = match (p1.groups.get(f), p2.groups.get(f))
        {
            (Some(g), _) => g.iter().map(|gp| gp.angle.clone()).collect(),
            (None, Some(g)) => g.iter().map(|gp| gp.angle.clone()).collect(),
            (None, None) => unreachable!(),
        };
        let mut pts = Vec::new();
        for angle in &angles {
            let s = (p1.sigma_at_angle(angle), p2.sigma_at_angle(angle));
            let j = (p1.jump_at_angle(angle), p2.jump_at_angle(angle));
            pts.push((s, j));
        }
        groups.push(pts);
    }
    UnionData {
        gaps,
        point_sigmas,
        groups,
    }
}

fn lin(pair: (i64, i64), x: &Rational, y: &Rational) -> Rational {
    x * rat_int(pair.0) + y * rat_int(pair.1)
}

/// The norm value at the rational combination `x w1 + y w2`, computed by
/// linearity of signatures and jumps over the union refinement.
pub fn span_value(
    w1: &WittDiagonal,
    w2: &WittDiagonal,
    x: &Rational,
    y: &Rational,
    norm: Norm,
) -> Rational {
    let p1 = signature_profile(w1);
    let p2 = signature_profile(w2);
    span_value_of_profiles(&p1, &p2, x, y, norm)
}

pub fn span_value_of_profiles(
    p1: &SignatureProfile,
    p2: &SignatureProfile,
    x: &Rational,
    y: &Rational,
    norm: Norm,
) -> Rational {
    let data = union_data(p1, p2);
    match norm {
        Norm::S => {
            let mut best = Rational::zero();
            for g in &data.gaps {
                best = best.max(lin(*g, x, y).abs());
            }
            for p in &data.point_sigmas {
                best = best.max(lin(*p, x, y).abs());
            }
            best
        }
        Norm::RhoS => {
            let mut best = lin(data.gaps[0], x, y).abs();
            for group in &data.groups {
                let max_sigma = group
                    .iter()
                    .map(|(s, _)| lin(*s, x, y).abs())
                    .max()
                    .unwrap_or_else(Rational::zero);
                let max_jump = group
                    .iter()
                    .map(|(_, j)| lin(*j, x, y).abs())
                    .max()
                    .unwrap_or_else(Rational::zero);
                best = best.max(max_sigma + max_jump);
            }
            best
        }
    }
}

/// An exact convex polygon, counterclockwise, starting at the
/// lexicographically smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallPolygon {
    pub vertices: Vec<(Rational, Rational)>,
}

impl BallPolygon {
    pub fn to_json(&self, norm: Norm) -> serde_json::Value {
        serde_json::json!({
            "norm": match norm { Norm::S => "s", Norm::RhoS => "rho_s" },
            "vertices": self.vertices.iter().map(|(x, y)| {
                serde_json::json!([format_rational(x), format_rational(y)])
            }).collect::<Vec<_>>(),
        })
    }

    /// Point membership (boundary counts as inside).
    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let (x1, y1) = &self.vertices[i];
            let (x2, y2) = &self.vertices[(i + 1) % n];
            let cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1);
            if cross.is_negative() {
                return false;
            }
        }
        true
    }
}

/// The unit ball `{(x, y) : norm(x w1 + y w2) <= 1}` as an exact convex
/// polygon, computed by intersecting the half-planes of the linear
/// functionals that make up the norm. Degenerate (unbounded) balls are
/// reported as errors.
pub fn unit_ball(w1: &WittDiagonal, w2: &WittDiagonal, norm: Norm) -> Result<BallPolygon> {
    let p1 = signature_profile(w1);
    let p2 = signature_profile(w2);
    unit_ball_of_profiles(&p1, &p2, norm)
}

pub fn unit_ball_of_profiles(
    p1: &SignatureProfile,
    p2: &SignatureProfile,
    norm: Norm,
) -> Result<BallPolygon> {
    let data = union_data(p1, p2);
    // constraints a x + b y <= 1
    let mut constraints: Vec<(i64, i64)> = Vec::new();
    let mut push = |a: i64, b: i64| {
        if a != 0 || b != 0 {
            constraints.push((a, b));
            constraints.push((-a, -b));
        }
    };
    match norm {
        Norm::S => {
            for g in &data.gaps {
                push(g.0, g.1);
            }
        }
        Norm::RhoS => {
            push(data.gaps[0].0, data.gaps[0].1);
            for group in &data.groups {
                for (s, _) in group {
                    for (_, j) in group {
                        push(s.0 + j.0, s.1 + j.1);
                        push(s.0 - j.0, s.1 - j.1);
                    }
                }
            }
        }
    }
    constraints.sort();
    constraints.dedup();
    // Bounded iff two independent directions appear.
    let independent = constraints.iter().any(|&(a1, b1)| {
        constraints
            .iter()
            .any(|&(a2, b2)| a1 as i128 * b2 as i128 - a2 as i128 * b1 as i128 != 0)
    });
    if !independent {
        return Err(Error::Degenerate(
            "profiles are rationally proportional".into(),
        ));
    }

    // Candidate vertices: pairwise intersections of the boundary lines,
    // kept when they satisfy every constraint.
    let mut candidates: Vec<(Rational, Rational)> = Vec::new();
    for (i, &(a1, b1)) in constraints.iter().enumerate() {
        for &(a2, b2) in &constraints[i + 1..] {
            let det = a1 as i128 * b2 as i128 - a2 as i128 * b1 as i128;
            if det == 0 {
                continue;
            }
            let det = Rational::from_integer(det.into());
            let x = Rational::from_integer((b2 as i128 - b1 as i128).into()) / &det;
            let y = Rational::from_integer((a1 as i128 - a2 as i128).into()) / &det;
            let ok = constraints
                .iter()
                .all(|&(a, b)| rat_int(a) * &x + rat_int(b) * &y <= rat_int(1));
            if ok && !candidates.contains(&(x.clone(), y.clone())) {
                candidates.push((x, y));
            }
        }
    }
    if candidates.len() < 3 {
        return Err(Error::Degenerate("norm ball has empty interior".into()));
    }
    Ok(BallPolygon {
        vertices: convex_hull(candidates),
    })
}

/// Monotone-chain convex hull with exact arithmetic; collinear points are
/// dropped. Output is counterclockwise from the lexicographically
/// smallest vertex.
fn convex_hull(mut pts: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    pts.sort();
    pts.dedup();
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let cross = |o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)| {
        (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
    };
    let mut lower: Vec<(Rational, Rational)> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<(Rational, Rational)> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::hermitian::{normalize_entry, NormalizedEntry, Sign};
    use crate::rational::rat;

    fn w1() -> WittDiagonal {
        let e = |s: &str| normalize_entry(&parse_expr(s).unwrap()).unwrap();
        WittDiagonal::new(vec![
            e("-(t^-2 - t^-1 + 1 - t + t^2)*(t^-1 - 1 + t)"),
            e("-(t^-1 - 1 + t)"),
            NormalizedEntry::unit(Sign::Pos),
            NormalizedEntry::unit(Sign::Pos),
        ])
    }

    fn w2() -> WittDiagonal {
        let e = |s: &str| normalize_entry(&parse_expr(s).unwrap()).unwrap();
        WittDiagonal::new(vec![
            e("-(t^-2 - t^-1 + 1 - t + t^2)"),
            NormalizedEntry::unit(Sign::Pos),
        ])
    }

    #[test]
    fn golden_ranks() {
        assert_eq!(rank_lower_bound(&w1()).r, 4);
        assert_eq!(rank_lower_bound(&w2()).r, 2);
        assert_eq!(rank_lower_bound(&w1().direct_sum(&w2())).r, 6);
        assert_eq!(s_norm(&w1()), 4);
        assert_eq!(s_norm(&w2()), 2);
        assert_eq!(s_norm(&w1().direct_sum(&w2())), 4);
    }

    #[test]
    fn per_delta_breakdown() {
        let report = rank_lower_bound(&w1());
        // delta_10 contributes 3 + 1, delta_6 contributes 2 + 0
        let by_r: Vec<i64> = report.per_delta.iter().map(|d| d.r_delta).collect();
        assert!(by_r.contains(&4) && by_r.contains(&2));
        assert_eq!(report.sigma_zero_term, 0);
    }

    #[test]
    fn stable_rank_examples() {
        assert_eq!(stable_rank(&w1().direct_sum(&w2())), rat(6, 1));
        let combo = w1().negate().direct_sum(&w2().scale(3).unwrap());
        assert_eq!(stable_rank(&combo), rat(6, 1));
        assert_eq!(s_norm(&combo), 4);
        // a metabolic plane has rank bound zero
        let f = normalize_entry(&parse_expr("t^-1 - 1 + t").unwrap()).unwrap();
        let plane = WittDiagonal::new(vec![f.clone(), f.negate()]);
        assert_eq!(stable_rank(&plane), rat(0, 1));
    }

    #[test]
    fn span_formulas_match_closed_forms() {
        let (a, b) = (w1(), w2());
        for (xn, xd, yn, yd) in
            [(1i64, 1i64, 1i64, 1i64), (-1, 1, 3, 1), (1, 4, 1, 4), (2, 3, -1, 5), (0, 1, 1, 1)]
        {
            let x = rat(xn, xd);
            let y = rat(yn, yd);
            let rho = span_value(&a, &b, &x, &y, Norm::RhoS);
            let expect_rho = (&x + &y).abs().max((rat_int(3) * &x + &y).abs())
                + (&x + &y).abs().max((&x - &y).abs());
            assert_eq!(rho, expect_rho);
            let s = span_value(&a, &b, &x, &y, Norm::S);
            let expect_s =
                (rat_int(2) * &x + rat_int(2) * &y).abs().max((rat_int(4) * &x).abs());
            assert_eq!(s, expect_s);
        }
    }

    #[test]
    fn unit_balls() {
        let s_ball = unit_ball(&w1(), &w2(), Norm::S).unwrap();
        assert_eq!(
            s_ball.vertices,
            vec![
                (rat(-1, 4), rat(-1, 4)),
                (rat(1, 4), rat(-3, 4)),
                (rat(1, 4), rat(1, 4)),
                (rat(-1, 4), rat(3, 4)),
            ]
        );
        let rho_ball = unit_ball(&w1(), &w2(), Norm::RhoS).unwrap();
        // (1/6, 1/6) lies exactly on the rho_s boundary
        assert_eq!(
            span_value(&w1(), &w2(), &rat(1, 6), &rat(1, 6), Norm::RhoS),
            rat(1, 1)
        );
        assert!(rho_ball.contains(&rat(1, 6), &rat(1, 6)));
        // vertex-wise containment in the s ball
        for (x, y) in &rho_ball.vertices {
            assert!(span_value(&w1(), &w2(), x, y, Norm::S) <= rat(1, 1));
        }
        // symmetry under negation
        for (x, y) in &rho_ball.vertices {
            assert!(rho_ball.contains(&-x.clone(), &-y.clone()));
        }
        // degenerate: proportional profiles
        assert!(unit_ball(&w2(), &w2(), Norm::S).is_err());
    }

    #[test]
    fn rank_invariants() {
        for w in [w1(), w2(), w1().direct_sum(&w2())] {
            let report = rank_lower_bound(&w);
            assert!(report.r >= report.s);
            assert_eq!((report.r - w.dimension() as i64).rem_euclid(2), 0);
        }
        // homogeneity
        for n in 1..=5u32 {
            assert_eq!(
                rank_lower_bound(&w1().scale(n).unwrap()).r,
                n as i64 * rank_lower_bound(&w1()).r
            );
        }
    }
}
