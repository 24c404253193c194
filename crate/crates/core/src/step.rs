//! Validation of prescribed signature step functions and construction of
//! minimal-dimension diagonal forms realizing them.
//!
//! The construction follows the barrier method: start from the diagonal
//! whose first `max |J|` entries carry each group's minimal polynomial,
//! flip signs to hit the value at 0, then sweep the circle roots in
//! increasing angle, multiplying selected entries by a linear barrier
//! `x - c` placed in the gap before each root whenever the sign pattern
//! needs rebalancing. A barrier flips the marked entries beyond it without
//! moving the total, so no new discontinuity appears.

use std::collections::{BTreeMap, BTreeSet};


use crate::angle::{isolate_circle_roots, rational_between, sign_at, AlgebraicAngle, AnglePos};
use crate::error::Error;
use crate::factor::IrreducibleFactor;
use crate::hermitian::{NormalizedEntry, Sign, WittDiagonal};
use crate::profile::{Breakpoint, SignatureProfile};
use crate::rational::{rat_int, Rational};
use crate::Result;

/// A prescribed step function: the value at 0 and the half-jumps at a
/// finite set of algebraic angles. Jump-zero points are allowed as
/// constraints.
#[derive(Debug, Clone)]
pub struct StepSpec {
    sigma_at_zero: i64,
    points: Vec<StepPoint>,
}

#[derive(Debug, Clone)]
pub struct StepPoint {
    pub angle: AlgebraicAngle,
    pub jump: i64,
}

impl StepSpec {
    /// Sorts the points by angle; duplicate angles are malformed input.
    pub fn new(sigma_at_zero: i64, mut points: Vec<StepPoint>) -> Result<Self> {
        points.sort_by(|a, b| a.angle.cmp_theta(&b.angle));
        for pair in points.windows(2) {
            if pair[0].angle.cmp_theta(&pair[1].angle) == std::cmp::Ordering::Equal {
                return Err(Error::InvalidArgument(
                    "duplicate angle in step specification".into(),
                ));
            }
        }
        Ok(StepSpec {
            sigma_at_zero,
            points,
        })
    }

    pub fn sigma_at_zero(&self) -> i64 {
        self.sigma_at_zero
    }

    pub fn points(&self) -> &[StepPoint] {
        &self.points
    }

    /// A step spec carrying exactly the discontinuities of a profile.
    pub fn from_profile(p: &SignatureProfile) -> Self {
        StepSpec {
            sigma_at_zero: p.sigma_at_zero,
            points: p
                .breakpoints
                .iter()
                .map(|bp| StepPoint {
                    angle: bp.angle.clone(),
                    jump: bp.jump,
                })
                .collect(),
        }
    }

    /// The step function as a profile (breakpoints only; no group data).
    pub fn to_profile(&self) -> SignatureProfile {
        let mut breakpoints = Vec::new();
        let mut value = self.sigma_at_zero;
        for p in &self.points {
            if p.jump != 0 {
                breakpoints.push(Breakpoint {
                    angle: p.angle.clone(),
                    sigma_point: value + p.jump,
                    jump: p.jump,
                });
            }
            value += 2 * p.jump;
        }
        SignatureProfile {
            sigma_at_zero: self.sigma_at_zero,
            breakpoints,
            groups: BTreeMap::new(),
        }
    }

    /// Groups the points by minimal polynomial and enumerates every circle
    /// root of each group's polynomial, with jump 0 at unlisted roots.
    fn group_events(&self) -> Vec<GroupData> {
        let mut factors: Vec<IrreducibleFactor> = Vec::new();
        for p in &self.points {
            if !factors.contains(p.angle.minpoly()) {
                factors.push(p.angle.minpoly().clone());
            }
        }
        factors.sort();
        factors
            .into_iter()
            .map(|factor| {
                let roots = isolate_circle_roots(&factor);
                let jumps: Vec<i64> = roots
                    .iter()
                    .map(|root| {
                        self.points
                            .iter()
                            .find(|p| {
                                p.angle.cmp_theta(root) == std::cmp::Ordering::Equal
                            })
                            .map_or(0, |p| p.jump)
                    })
                    .collect();
                GroupData {
                    factor,
                    roots,
                    jumps,
                }
            })
            .collect()
    }

    /// Checks membership in the realizable class. Returns one entry per
    /// violated condition; empty means the spec is realizable.
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        // Conditions (1)-(4) are structural here: the point set is finite,
        // no point sits at 0, jumps are integers, and every angle carries
        // an irreducible minimal polynomial. Condition (5) needs checking:
        // within each group, all jumps (implicit zeros at unlisted roots
        // included) must agree mod 2.
        for g in self.group_events() {
            let parities: BTreeSet<i64> = g.jumps.iter().map(|j| j.rem_euclid(2)).collect();
            if parities.len() > 1 {
                violations.push(format!(
                    "condition (5): jumps at the circle roots of {} differ mod 2",
                    g.factor
                ));
            }
        }
        violations
    }

    fn validated_groups(&self) -> Result<Vec<GroupData>> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidStepSpec(violations));
        }
        Ok(self.group_events())
    }

    /// The minimal realizable dimension
    /// `max over groups of (max |s| + max |J|), |s(0)|` with the maxima
    /// over every circle root of each group's polynomial.
    pub fn r_of_step(&self) -> Result<i64> {
        let groups = self.validated_groups()?;
        let events = merge_events(&groups);
        let mut r = self.sigma_at_zero.abs();
        let mut per_group_sigma: BTreeMap<usize, i64> = BTreeMap::new();
        let mut value = self.sigma_at_zero;
        for ev in &events {
            let point_value = value + ev.jump;
            let slot = per_group_sigma.entry(ev.group).or_insert(0);
            *slot = (*slot).max(point_value.abs());
            value += 2 * ev.jump;
        }
        for (gi, g) in groups.iter().enumerate() {
            let max_sigma = per_group_sigma.get(&gi).copied().unwrap_or(0);
            let max_jump = g.jumps.iter().map(|j| j.abs()).max().unwrap_or(0);
            r = r.max(max_sigma + max_jump);
        }
        Ok(r)
    }

    /// The parity lemma: the realizable dimension and the value at 0
    /// always agree mod 2.
    pub fn parity_holds(&self) -> Result<bool> {
        Ok((self.r_of_step()? - self.sigma_at_zero).rem_euclid(2) == 0)
    }

    /// Builds a diagonal form of dimension exactly `r_of_step` whose
    /// signature function equals the prescribed step function.
    pub fn realize(&self) -> Result<WittDiagonal> {
        let groups = self.validated_groups()?;
        let r = self.r_of_step()?;
        let dim = r as usize;

        // Entry i carries group g's polynomial iff i < max |J| of g.
        let group_m: Vec<i64> = groups
            .iter()
            .map(|g| g.jumps.iter().map(|j| j.abs()).max().unwrap_or(0))
            .collect();
        let mut entry_factors: Vec<BTreeSet<IrreducibleFactor>> = (0..dim)
            .map(|i| {
                groups
                    .iter()
                    .zip(&group_m)
                    .filter(|(_, &m)| (i as i64) < m)
                    .map(|(g, _)| g.factor.clone())
                    .collect()
            })
            .collect();

        // Signs near theta = 0: factor signs there are the signs at x = 2.
        let sign_near_zero = |factors: &BTreeSet<IrreducibleFactor>| -> i64 {
            factors
                .iter()
                .map(|f| sign_at(f.cheb(), &rat_int(2)) as i64)
                .product()
        };
        let mut entry_signs: Vec<Sign> = vec![Sign::Pos; dim];
        let mut current: Vec<i64> = entry_factors.iter().map(|f| sign_near_zero(f)).collect();

        // Flip signs (lowest index first) until the total at 0 is s(0).
        let total: i64 = current.iter().sum();
        debug_assert_eq!(
            (total - self.sigma_at_zero).rem_euclid(2),
            0,
            "parity lemma guarantees matching parities"
        );
        let mut excess = (total - self.sigma_at_zero) / 2;
        for i in 0..dim {
            if excess == 0 {
                break;
            }
            if excess > 0 && current[i] == 1 {
                entry_signs[i] = entry_signs[i].flip();
                current[i] = -1;
                excess -= 1;
            } else if excess < 0 && current[i] == -1 {
                entry_signs[i] = entry_signs[i].flip();
                current[i] = 1;
                excess += 1;
            }
        }
        assert_eq!(
            current.iter().sum::<i64>(),
            self.sigma_at_zero,
            "dimension r admits the value at 0"
        );

        // Sweep every circle root of every appearing polynomial in
        // increasing angle.
        let events = merge_events(&groups);
        let mut value_left = self.sigma_at_zero;
        let mut prev_pos = AnglePos::Zero;
        for ev in &events {
            let g = &groups[ev.group];
            if group_m[ev.group] == 0 {
                // A constraint-only group: no entries carry its polynomial
                // and nothing changes sign at its roots.
                debug_assert_eq!(ev.jump, 0);
                continue;
            }
            let m = group_m[ev.group];
            let n = r - m;
            let jump = ev.jump;
            // Target counts just left of the event.
            let m_plus = (m - jump) / 2;
            let n_plus = (n + value_left + jump) / 2;
            assert!(
                (m - jump) % 2 == 0 && (n + value_left + jump) % 2 == 0,
                "group parity guarantees integral targets"
            );
            assert!(
                (0..=m).contains(&m_plus) && (0..=n).contains(&n_plus),
                "dimension r makes every target count nonnegative"
            );

            // Entries to flip, delta entries first, lowest index first.
            let mut flips: Vec<usize> = Vec::new();
            plan_flips(
                &entry_factors,
                &current,
                |fs| fs.contains(&g.factor),
                m_plus,
                &mut flips,
            );
            plan_flips(
                &entry_factors,
                &current,
                |fs| !fs.contains(&g.factor),
                n_plus,
                &mut flips,
            );

            if !flips.is_empty() {
                // A barrier strictly between the previous event and this
                // root flips exactly the marked entries from here on.
                let c = rational_between(&prev_pos, &AnglePos::Angle(ev.angle.clone()));
                let barrier = barrier_factor(&c)?;
                for &i in &flips {
                    let fresh = entry_factors[i].insert(barrier.clone());
                    debug_assert!(fresh, "each barrier is new to its entries");
                    current[i] = -current[i];
                }
                // The flip set is balanced, so the total is unchanged and
                // the barrier root is not a discontinuity.
                debug_assert_eq!(current.iter().sum::<i64>(), value_left);
            }

            // Cross the root: entries carrying the group polynomial flip.
            for (i, fs) in entry_factors.iter().enumerate() {
                if fs.contains(&g.factor) {
                    current[i] = -current[i];
                }
            }
            value_left += 2 * jump;
            debug_assert_eq!(current.iter().sum::<i64>(), value_left);
            prev_pos = AnglePos::Angle(ev.angle.clone());
        }

        let entries: Vec<NormalizedEntry> = entry_signs
            .into_iter()
            .zip(entry_factors)
            .map(|(sign, circle_factors)| {
                NormalizedEntry::new(sign, circle_factors, BTreeSet::new())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WittDiagonal::new(entries))
    }
}

/// Reads the step-spec JSON: `{"sigma_at_zero":int, "points":[{"J":int,
/// "cyclotomic":[n,k]} | {"J":int, "minpoly_x":str, "interval":[lo,hi]}]}`.
pub fn step_from_json(v: &serde_json::Value) -> Result<StepSpec> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::BadInput("step file must be a JSON object".into()))?;
    let sigma_at_zero = obj
        .get("sigma_at_zero")
        .and_then(|s| s.as_i64())
        .ok_or_else(|| Error::BadInput("step file needs integer \"sigma_at_zero\"".into()))?;
    let mut points = Vec::new();
    for p in obj
        .get("points")
        .and_then(|p| p.as_array())
        .ok_or_else(|| Error::BadInput("step file needs a \"points\" array".into()))?
    {
        let jump = p
            .get("J")
            .and_then(|j| j.as_i64())
            .ok_or_else(|| Error::BadInput("each point needs an integer \"J\"".into()))?;
        let angle = if let Some(cyc) = p.get("cyclotomic") {
            let pair = cyc
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::BadInput("\"cyclotomic\" must be [n, k]".into()))?;
            let n = pair[0]
                .as_u64()
                .ok_or_else(|| Error::BadInput("cyclotomic n must be a positive integer".into()))?;
            let k = pair[1]
                .as_u64()
                .ok_or_else(|| Error::BadInput("cyclotomic k must be a positive integer".into()))?;
            crate::angle::angle_from_cyclotomic(n, k)?
        } else {
            let poly_text = p
                .get("minpoly_x")
                .and_then(|s| s.as_str())
                .ok_or_else(|| {
                    Error::BadInput("each point needs \"cyclotomic\" or \"minpoly_x\"".into())
                })?;
            let interval = p
                .get("interval")
                .and_then(|i| i.as_array())
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::BadInput("\"interval\" must be [lo, hi]".into()))?;
            let lo = crate::rational::parse_rational(
                interval[0]
                    .as_str()
                    .ok_or_else(|| Error::BadInput("interval bounds are strings".into()))?,
            )?;
            let hi = crate::rational::parse_rational(
                interval[1]
                    .as_str()
                    .ok_or_else(|| Error::BadInput("interval bounds are strings".into()))?,
            )?;
            let poly = crate::expr::parse_cheb(poly_text)?;
            // the minimal polynomial must be irreducible; factoring also
            // canonicalizes it
            let (_, factors) = crate::factor::factor_rational(&poly)?;
            if factors.len() != 1 || factors[0].1 != 1 {
                return Err(Error::InvalidStepSpec(vec![format!(
                    "condition (4): {poly_text} is not irreducible over Q"
                )]));
            }
            AlgebraicAngle::from_parts(factors[0].0.clone(), lo, hi)?
        };
        points.push(StepPoint { angle, jump });
    }
    StepSpec::new(sigma_at_zero, points)
}

struct GroupData {
    factor: IrreducibleFactor,
    roots: Vec<AlgebraicAngle>,
    jumps: Vec<i64>,
}

struct Event {
    angle: AlgebraicAngle,
    group: usize,
    jump: i64,
}

/// All group roots merged in increasing angle order.
fn merge_events(groups: &[GroupData]) -> Vec<Event> {
    let mut events: Vec<Event> = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        for (root, &jump) in g.roots.iter().zip(&g.jumps) {
            events.push(Event {
                angle: root.clone(),
                group: gi,
                jump,
            });
        }
    }
    events.sort_by(|a, b| a.angle.cmp_theta(&b.angle));
    events
}

/// Marks flips among the entries selected by `select` (lowest index
/// first) until their positive count matches `target_plus`.
fn plan_flips<F: Fn(&BTreeSet<IrreducibleFactor>) -> bool>(
    entry_factors: &[BTreeSet<IrreducibleFactor>],
    current: &[i64],
    select: F,
    target_plus: i64,
    flips: &mut Vec<usize>,
) {
    let idx: Vec<usize> = (0..entry_factors.len())
        .filter(|&i| select(&entry_factors[i]))
        .collect();
    let have_plus = idx.iter().filter(|&&i| current[i] == 1).count() as i64;
    let mut excess = have_plus - target_plus;
    for &i in &idx {
        if excess == 0 {
            break;
        }
        if excess > 0 && current[i] == 1 {
            flips.push(i);
            excess -= 1;
        } else if excess < 0 && current[i] == -1 {
            flips.push(i);
            excess += 1;
        }
    }
    assert_eq!(excess, 0, "enough entries to reach the target pattern");
}

/// The linear barrier `x - c` as a canonical (primitive, positive-leading)
/// irreducible factor.
fn barrier_factor(c: &Rational) -> Result<IrreducibleFactor> {
    let denom = Rational::from_integer(c.denom().clone());
    let poly = crate::laurent::ChebPoly::new(vec![
        -Rational::from_integer(c.numer().clone()),
        denom,
    ]);
    IrreducibleFactor::new(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::angle_from_cyclotomic;
    use crate::profile::{profiles_equal, signature_profile};
    use crate::rank::rank_lower_bound;

    fn figure1_spec() -> StepSpec {
        let jumps = [1i64, 1, 1, -3, 1];
        let points = (0..5)
            .map(|i| StepPoint {
                angle: angle_from_cyclotomic(22, 2 * i as u64 + 1).unwrap(),
                jump: jumps[i],
            })
            .collect();
        StepSpec::new(0, points).unwrap()
    }

    #[test]
    fn figure1_is_valid_and_has_rank_8() {
        let spec = figure1_spec();
        assert!(spec.validate().is_empty());
        assert_eq!(spec.r_of_step().unwrap(), 8);
        assert!(spec.parity_holds().unwrap());
    }

    #[test]
    fn parity_violations_detected() {
        // J = 1 at 1/10 and J = 2 at 3/10 share the minimal polynomial of
        // the tenth roots but have different parities.
        let spec = StepSpec::new(
            0,
            vec![
                StepPoint {
                    angle: angle_from_cyclotomic(10, 1).unwrap(),
                    jump: 1,
                },
                StepPoint {
                    angle: angle_from_cyclotomic(10, 3).unwrap(),
                    jump: 2,
                },
            ],
        )
        .unwrap();
        let violations = spec.validate();
        assert_eq!(violations.len(), 1);
        assert!(violations[0].contains("condition (5)"));
        assert!(spec.r_of_step().is_err());

        // an odd jump at only one of the two tenth roots also fails (5):
        // the unlisted root carries an implicit zero jump
        let spec2 = StepSpec::new(
            0,
            vec![StepPoint {
                angle: angle_from_cyclotomic(10, 1).unwrap(),
                jump: 1,
            }],
        )
        .unwrap();
        assert!(!spec2.validate().is_empty());
    }

    #[test]
    fn empty_spec() {
        let spec = StepSpec::new(3, vec![]).unwrap();
        assert!(spec.validate().is_empty());
        assert_eq!(spec.r_of_step().unwrap(), 3);
        let w = spec.realize().unwrap();
        assert_eq!(w.dimension(), 3);
        let p = signature_profile(&w);
        assert_eq!(p.sigma_at_zero, 3);
        assert!(p.breakpoints.is_empty());
    }

    #[test]
    fn figure1_realizes_to_dimension_8() {
        let spec = figure1_spec();
        let w = spec.realize().unwrap();
        assert_eq!(w.dimension(), 8);
        let p = signature_profile(&w);
        assert!(profiles_equal(&p, &spec.to_profile()));
        // jumps and point values along the sweep
        let jumps: Vec<i64> = p.breakpoints.iter().map(|b| b.jump).collect();
        assert_eq!(jumps, vec![1, 1, 1, -3, 1]);
        let sigmas: Vec<i64> = p.breakpoints.iter().map(|b| b.sigma_point).collect();
        assert_eq!(sigmas, vec![1, 3, 5, 3, 1]);
        // the realized form meets its own lower bound
        assert_eq!(rank_lower_bound(&w).r, 8);
    }

    #[test]
    fn w2_shape_realizes_without_barriers() {
        let spec = StepSpec::new(
            0,
            vec![
                StepPoint {
                    angle: angle_from_cyclotomic(10, 1).unwrap(),
                    jump: 1,
                },
                StepPoint {
                    angle: angle_from_cyclotomic(10, 3).unwrap(),
                    jump: -1,
                },
            ],
        )
        .unwrap();
        let w = spec.realize().unwrap();
        assert_eq!(w.dimension(), 2);
        let p = signature_profile(&w);
        assert!(profiles_equal(&p, &spec.to_profile()));
        assert_eq!(rank_lower_bound(&w).r, 2);
    }

    #[test]
    fn zero_jump_roots_forced_flat() {
        // w1 + w2 shape: jump 2 at 1/10, jump 0 at 3/10; the realization
        // must keep the function flat across 3/10, which needs a barrier.
        let spec = StepSpec::new(
            0,
            vec![StepPoint {
                angle: angle_from_cyclotomic(10, 1).unwrap(),
                jump: 2,
            }],
        )
        .unwrap();
        assert!(spec.validate().is_empty());
        assert_eq!(spec.r_of_step().unwrap(), 6);
        let w = spec.realize().unwrap();
        assert_eq!(w.dimension(), 6);
        let p = signature_profile(&w);
        assert!(profiles_equal(&p, &spec.to_profile()));
        assert_eq!(rank_lower_bound(&w).r, 6);
    }

    #[test]
    fn realized_barriers_have_zero_jump() {
        let spec = figure1_spec();
        let w = spec.realize().unwrap();
        let p = signature_profile(&w);
        let r = rank_lower_bound(&w).r;
        for (factor, points) in &p.groups {
            if factor.degree() == 1 {
                // barrier factors: every root is jump-free
                for gp in points {
                    assert_eq!(gp.jump, 0, "barrier {} must not jump", factor);
                }
            }
            let r_delta: i64 = points.iter().map(|g| g.sigma_point.abs()).max().unwrap()
                + points.iter().map(|g| g.jump.abs()).max().unwrap();
            assert!(r_delta <= r);
        }
    }
}
