//! Exact signature step functions of normalized diagonal forms.
//!
//! The signature of `w` at `e^{2 pi i theta}` is constant between
//! consecutive circle roots of the factors appearing in `w`, so the whole
//! function is determined by one exact rational sample per gap. Values at
//! the roots themselves are the averages of the two neighboring interval
//! values, and the half-jumps are their differences.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use crate::angle::{
    angle_from_theta, isolate_circle_roots, rational_between, AlgebraicAngle, AnglePos,
};
use crate::error::Error;
use crate::factor::IrreducibleFactor;
use crate::hermitian::WittDiagonal;
use crate::rational::{format_rational, Rational};
use crate::Result;

/// A discontinuity of the signature function.
#[derive(Debug, Clone)]
pub struct Breakpoint {
    pub angle: AlgebraicAngle,
    pub sigma_point: i64,
    /// Half the jump of the one-sided limits; nonzero by definition.
    pub jump: i64,
}

/// A unit-circle root of an appearing factor, jump zero allowed.
#[derive(Debug, Clone)]
pub struct GroupPoint {
    pub angle: AlgebraicAngle,
    pub sigma_point: i64,
    pub jump: i64,
}

/// The exact signature step function on [0, 1/2).
#[derive(Debug, Clone, Default)]
pub struct SignatureProfile {
    pub sigma_at_zero: i64,
    /// Strictly increasing in theta; every jump nonzero.
    pub breakpoints: Vec<Breakpoint>,
    /// Every circle root of every appearing factor, including jump-zero
    /// points, grouped by minimal polynomial.
    pub groups: BTreeMap<IrreducibleFactor, Vec<GroupPoint>>,
}

impl SignatureProfile {
    /// Interval value immediately to the right of breakpoint `i`
    /// (`sigma_at_zero` left of the first).
    pub fn value_after(&self, i: usize) -> i64 {
        let bp = &self.breakpoints[i];
        bp.sigma_point + bp.jump
    }

    /// The point value of the step function at an arbitrary angle: the
    /// stored average at a breakpoint, the interval value otherwise.
    pub fn sigma_at_angle(&self, angle: &AlgebraicAngle) -> i64 {
        let mut value = self.sigma_at_zero;
        for bp in &self.breakpoints {
            match angle.cmp_theta(&bp.angle) {
                std::cmp::Ordering::Less => return value,
                std::cmp::Ordering::Equal => return bp.sigma_point,
                std::cmp::Ordering::Greater => value = bp.sigma_point + bp.jump,
            }
        }
        value
    }

    /// The half-jump at an arbitrary angle (zero off the breakpoints).
    pub fn jump_at_angle(&self, angle: &AlgebraicAngle) -> i64 {
        for bp in &self.breakpoints {
            match angle.cmp_theta(&bp.angle) {
                std::cmp::Ordering::Less => return 0,
                std::cmp::Ordering::Equal => return bp.jump,
                std::cmp::Ordering::Greater => {}
            }
        }
        0
    }

    /// Largest |value| the function attains, including point averages.
    pub fn max_abs_sigma(&self) -> i64 {
        let mut best = self.sigma_at_zero.abs();
        for (i, bp) in self.breakpoints.iter().enumerate() {
            best = best.max(bp.sigma_point.abs());
            best = best.max(self.value_after(i).abs());
        }
        best
    }

    pub fn is_zero(&self) -> bool {
        self.sigma_at_zero == 0 && self.breakpoints.is_empty()
    }

    /// Exact evaluation at a rational angle in [0, 1/2); the average is
    /// returned when the angle hits a discontinuity exactly.
    pub fn evaluate_sigma(&self, theta: &Rational) -> Result<Rational> {
        if theta < &Rational::zero() || theta >= &Rational::new(1.into(), 2.into()) {
            return Err(Error::InvalidArgument(format!(
                "theta {theta} outside [0, 1/2)"
            )));
        }
        if theta.is_zero() {
            return Ok(Rational::from_integer(self.sigma_at_zero.into()));
        }
        let angle = angle_from_theta(theta)?;
        Ok(Rational::from_integer(self.sigma_at_angle(&angle).into()))
    }

    /// Plot samples: `n` evenly spaced rational angles plus a rational
    /// sample strictly inside every gap between discontinuities (the
    /// flanking samples of each breakpoint). Sorted, deduplicated.
    pub fn sample_plot(&self, n: usize) -> Result<Vec<(Rational, i64)>> {
        if n < 2 {
            return Err(Error::InvalidArgument("need at least 2 samples".into()));
        }
        let mut thetas: Vec<Rational> = (0..n)
            .map(|i| Rational::new(i.into(), (2 * n).into()))
            .collect();
        // one rational angle inside each gap, flanking the breakpoints
        let mut positions = vec![AnglePos::Zero];
        positions.extend(
            self.breakpoints
                .iter()
                .map(|bp| AnglePos::Angle(bp.angle.clone())),
        );
        positions.push(AnglePos::Half);
        for pair in positions.windows(2) {
            thetas.push(simplest_theta_between(&pair[0], &pair[1])?);
        }
        thetas.sort();
        thetas.dedup();
        let mut out = Vec::with_capacity(thetas.len());
        for theta in thetas {
            let v = self.evaluate_sigma(&theta)?;
            debug_assert!(v.is_integer());
            out.push((theta, v.to_integer().to_i64().unwrap()));
        }
        Ok(out)
    }

    /// Profile JSON per the external interface; `plot` appends sample data.
    pub fn to_json(&self, plot: Option<&[(Rational, i64)]>) -> serde_json::Value {
        let breakpoints: Vec<serde_json::Value> = self
            .breakpoints
            .iter()
            .map(|bp| {
                let (lo, hi) = bp.angle.interval();
                serde_json::json!({
                    "minpoly_x": bp.angle.minpoly().cheb().to_string(),
                    "interval": [format_rational(&lo), format_rational(&hi)],
                    "sigma": bp.sigma_point,
                    "J": bp.jump,
                })
            })
            .collect();
        let mut obj = serde_json::json!({
            "sigma_at_zero": self.sigma_at_zero,
            "breakpoints": breakpoints,
        });
        if let Some(samples) = plot {
            obj["plot"] = serde_json::Value::Array(
                samples
                    .iter()
                    .map(|(theta, v)| {
                        serde_json::json!([format_rational(theta), v])
                    })
                    .collect(),
            );
        }
        obj
    }
}

/// The rational angle of smallest denominator strictly between two
/// positions (breakpoints or interval boundaries).
fn simplest_theta_between(a: &AnglePos, b: &AnglePos) -> Result<Rational> {
    use std::cmp::Ordering;
    for denom in 2u64.. {
        for numer in 1..(denom + 1) / 2 {
            if num_integer::Integer::gcd(&numer, &denom) != 1 {
                continue;
            }
            let theta = Rational::new(numer.into(), denom.into());
            let angle = angle_from_theta(&theta)?;
            let pos = AnglePos::Angle(angle);
            if a.cmp_theta(&pos) == Ordering::Less && pos.cmp_theta(b) == Ordering::Less {
                return Ok(theta);
            }
        }
        if denom > 10_000 {
            break;
        }
    }
    Err(Error::InvalidArgument(
        "no small rational angle fits in the gap".into(),
    ))
}

/// Computes the exact signature profile of a normalized diagonal form.
pub fn signature_profile(w: &WittDiagonal) -> SignatureProfile {
    // Collect the circle roots of every appearing factor.
    let factors = w.circle_factors();
    let mut points: Vec<(AlgebraicAngle, IrreducibleFactor)> = Vec::new();
    for f in &factors {
        for angle in isolate_circle_roots(f) {
            points.push((angle, f.clone()));
        }
    }
    // Distinct irreducibles never share roots, so this sort has no ties.
    points.sort_by(|a, b| a.0.cmp_theta(&b.0));

    // One exact sample per gap.
    let mut positions = vec![AnglePos::Zero];
    positions.extend(points.iter().map(|(a, _)| AnglePos::Angle(a.clone())));
    positions.push(AnglePos::Half);
    let samples: Vec<Rational> = positions
        .windows(2)
        .map(|pair| rational_between(&pair[0], &pair[1]))
        .collect();

    // Interval signatures.
    let values: Vec<i64> = samples
        .iter()
        .map(|x| w.entries().iter().map(|e| e.sign_at_sample(x)).sum())
        .collect();

    let sigma_at_zero = values.first().copied().unwrap_or(0);
    let mut breakpoints = Vec::new();
    let mut groups: BTreeMap<IrreducibleFactor, Vec<GroupPoint>> = BTreeMap::new();
    for (i, (angle, factor)) in points.iter().enumerate() {
        let left = values[i];
        let right = values[i + 1];
        debug_assert_eq!((right - left) % 2, 0, "signature jumps are even");
        let jump = (right - left) / 2;
        let sigma_point = (left + right) / 2;
        if jump != 0 {
            breakpoints.push(Breakpoint {
                angle: angle.clone(),
                sigma_point,
                jump,
            });
        }
        groups.entry(factor.clone()).or_default().push(GroupPoint {
            angle: angle.clone(),
            sigma_point,
            jump,
        });
    }
    // Factors with circle roots always contribute a group, even when every
    // jump vanishes; factors without circle roots contribute none.
    SignatureProfile {
        sigma_at_zero,
        breakpoints,
        groups,
    }
}

/// Step-function equality: same value at 0, identical breakpoints (angle,
/// value, jump). Jump-zero group points are representative-dependent and
/// deliberately not compared.
pub fn profiles_equal(a: &SignatureProfile, b: &SignatureProfile) -> bool {
    if a.sigma_at_zero != b.sigma_at_zero || a.breakpoints.len() != b.breakpoints.len() {
        return false;
    }
    a.breakpoints.iter().zip(&b.breakpoints).all(|(x, y)| {
        x.sigma_point == y.sigma_point
            && x.jump == y.jump
            && x.angle.cmp_theta(&y.angle) == std::cmp::Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::hermitian::{normalize_entry, HermitianMatrix, NormalizedEntry, Sign};
    use crate::rational::rat;

    pub(crate) fn w1() -> WittDiagonal {
        let e = |s: &str| normalize_entry(&parse_expr(s).unwrap()).unwrap();
        WittDiagonal::new(vec![
            e("-(t^-2 - t^-1 + 1 - t + t^2)*(t^-1 - 1 + t)"),
            e("-(t^-1 - 1 + t)"),
            NormalizedEntry::unit(Sign::Pos),
            NormalizedEntry::unit(Sign::Pos),
        ])
    }

    pub(crate) fn w2() -> WittDiagonal {
        let e = |s: &str| normalize_entry(&parse_expr(s).unwrap()).unwrap();
        WittDiagonal::new(vec![
            e("-(t^-2 - t^-1 + 1 - t + t^2)"),
            NormalizedEntry::unit(Sign::Pos),
        ])
    }

    #[test]
    fn w1_profile_matches_paper_figure() {
        let p = signature_profile(&w1());
        assert_eq!(p.sigma_at_zero, 0);
        assert_eq!(p.breakpoints.len(), 2);
        assert_eq!(
            (p.breakpoints[0].sigma_point, p.breakpoints[0].jump),
            (1, 1)
        );
        assert_eq!(
            (p.breakpoints[1].sigma_point, p.breakpoints[1].jump),
            (3, 1)
        );
        // delta_6 group point with zero jump at theta = 1/6
        let d6 = crate::factor::IrreducibleFactor::new(crate::laurent::ChebPoly::from_i64(&[
            -1, 1,
        ]))
        .unwrap();
        let group = &p.groups[&d6];
        assert_eq!(group.len(), 1);
        assert_eq!((group[0].sigma_point, group[0].jump), (2, 0));
    }

    #[test]
    fn w2_profile() {
        let p = signature_profile(&w2());
        assert_eq!(p.sigma_at_zero, 0);
        let data: Vec<(i64, i64)> = p
            .breakpoints
            .iter()
            .map(|b| (b.sigma_point, b.jump))
            .collect();
        assert_eq!(data, vec![(1, 1), (1, -1)]);
    }

    #[test]
    fn w1_plus_w2_breakpoints() {
        let sum = w1().direct_sum(&w2());
        let p = signature_profile(&sum);
        // single discontinuity at theta = 1/10 with half-jump 2
        assert_eq!(p.breakpoints.len(), 1);
        assert_eq!(p.breakpoints[0].sigma_point, 2);
        assert_eq!(p.breakpoints[0].jump, 2);
        // the delta_10 group carries the zero-jump point (3/10, sigma 4)
        let d10 = crate::factor::IrreducibleFactor::new(
            crate::laurent::ChebPoly::from_i64(&[-1, -1, 1]),
        )
        .unwrap();
        let group = &p.groups[&d10];
        let sig: Vec<(i64, i64)> = group.iter().map(|g| (g.sigma_point, g.jump)).collect();
        assert_eq!(sig, vec![(2, 2), (4, 0)]);
    }

    #[test]
    fn evaluation() {
        let p = signature_profile(&w1());
        assert_eq!(p.evaluate_sigma(&rat(1, 5)).unwrap(), rat(2, 1));
        assert_eq!(p.evaluate_sigma(&rat(0, 1)).unwrap(), rat(0, 1));
        let sum_profile = signature_profile(&w1().direct_sum(&w2()));
        assert_eq!(sum_profile.evaluate_sigma(&rat(1, 10)).unwrap(), rat(2, 1));
        assert!(p.evaluate_sigma(&rat(1, 2)).is_err());
    }

    #[test]
    fn profile_equality_semantics() {
        let p1 = signature_profile(&w1());
        // adding a metabolic plane <f> + <-f> changes nothing
        let f = normalize_entry(&parse_expr("t^-1 - 1 + t").unwrap()).unwrap();
        let stabilized = w1().direct_sum(&WittDiagonal::new(vec![f.clone(), f.negate()]));
        assert!(profiles_equal(&p1, &signature_profile(&stabilized)));
        assert!(!profiles_equal(&p1, &signature_profile(&w2())));
        assert!(profiles_equal(
            &p1,
            &signature_profile(&w1().negate().negate())
        ));
    }

    #[test]
    fn plotting() {
        let p = signature_profile(&w2());
        let samples = p.sample_plot(5).unwrap();
        let lookup = |n: i64, d: i64| {
            samples
                .iter()
                .find(|(t, _)| t == &rat(n, d))
                .map(|(_, v)| *v)
        };
        assert_eq!(lookup(0, 1), Some(0));
        assert_eq!(lookup(1, 5), Some(2));
        assert_eq!(lookup(2, 5), Some(0));
        // zero form: all samples zero
        let z = signature_profile(&WittDiagonal::zero());
        assert!(z.sample_plot(3).unwrap().iter().all(|(_, v)| *v == 0));
        assert!(z.sample_plot(1).is_err());
    }

    #[test]
    fn parity_invariant() {
        for w in [w1(), w2(), w1().direct_sum(&w2())] {
            let p = signature_profile(&w);
            let dim = w.dimension() as i64;
            assert_eq!(
                (p.sigma_at_zero - dim).rem_euclid(2),
                0,
                "interval parity matches dimension"
            );
            assert!(p.max_abs_sigma() <= dim);
        }
    }

    #[test]
    fn diagonalized_matrix_has_same_profile() {
        // the hermitianized metabolic plane has the zero profile
        let m = HermitianMatrix::new(vec![
            vec![parse_expr("0").unwrap(), parse_expr("1 - t").unwrap()],
            vec![parse_expr("1 - t^-1").unwrap(), parse_expr("0").unwrap()],
        ])
        .unwrap();
        let w = m.normal_form().unwrap();
        assert!(signature_profile(&w).is_zero());
    }
}
