//! Exact points on the open upper unit circle.
//!
//! An angle theta in (0, 1/2) with algebraic `e^{2 pi i theta}` is stored
//! through its x-coordinate `x = 2 cos(2 pi theta)`: the minimal polynomial
//! of x together with an isolating rational interval inside (-2, 2). Since
//! x is strictly decreasing in theta, angle order is reverse x order.
//! All queries are answered exactly with Sturm sequences and interval
//! bisection; nothing is ever evaluated in floating point.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::factor::IrreducibleFactor;
use crate::laurent::{to_chebyshev, ChebPoly, LaurentPoly};
use crate::rational::{rat_int, sign_of, simplest_in_closed, Rational};
use crate::Result;

/// Exact sign of `p` at a rational point.
pub fn sign_at(p: &ChebPoly, x: &Rational) -> i32 {
    sign_of(&p.eval(x))
}

/// Sturm chain of the squarefree part of a polynomial.
pub struct SturmChain {
    chain: Vec<ChebPoly>,
}

impl SturmChain {
    pub fn new(p: &ChebPoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let deriv = p.derivative();
        let g = p.gcd(&deriv);
        let squarefree = p.divrem(&g).0.content_normalized();
        let mut chain = vec![squarefree.clone(), squarefree.derivative().content_normalized()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].divrem(&chain[n - 1]).1;
            // positive scaling keeps every sign in the chain intact
            chain.push(r.neg().content_normalized());
        }
        chain.pop();
        SturmChain { chain }
    }

    /// Number of sign changes in the chain evaluated at `x`
    /// (zero values skipped).
    pub fn variations(&self, x: &Rational) -> usize {
        let signs: Vec<i32> = self
            .chain
            .iter()
            .map(|p| sign_at(p, x))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in `(a, b]`. Endpoints must not be
    /// roots of the squarefree part for the classical count to apply;
    /// callers arrange this.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        assert!(a < b);
        self.variations(a)
            .checked_sub(self.variations(b))
            .expect("sign variations must not increase left to right")
    }
}

/// Number of distinct roots of `p` in the open interval (-2, 2).
pub fn count_circle_roots(p: &ChebPoly) -> usize {
    assert!(!p.is_zero());
    if p.degree() == 0 {
        return 0;
    }
    // Work with the squarefree part, with any roots at the endpoints
    // x = -2 or x = 2 divided out (the open interval excludes them).
    let g = p.gcd(&p.derivative());
    let mut s = p.divrem(&g).0;
    let two = rat_int(2);
    let minus_two = rat_int(-2);
    for endpoint in [&two, &minus_two] {
        if sign_at(&s, endpoint) == 0 {
            let lin = ChebPoly::x_minus(endpoint);
            s = s.divrem(&lin).0;
        }
    }
    if s.degree() == 0 {
        return 0;
    }
    SturmChain::new(&s).count_half_open(&minus_two, &two)
}

/// A point theta in (0, 1/2) with `e^{2 pi i theta}` algebraic, stored as
/// the minimal polynomial of `x0 = 2 cos(2 pi theta)` and an isolating
/// interval `-2 < lo < hi < 2` containing exactly that one root, with
/// non-root endpoints.
#[derive(Debug, Clone)]
pub struct AlgebraicAngle {
    minpoly: IrreducibleFactor,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicAngle {
    fn make(minpoly: IrreducibleFactor, lo: Rational, hi: Rational) -> Self {
        AlgebraicAngle { minpoly, lo, hi }
    }

    /// Builds an angle from an explicit minimal polynomial and isolating
    /// interval, validating every invariant (used by the file readers).
    pub fn from_parts(minpoly: IrreducibleFactor, lo: Rational, hi: Rational) -> Result<Self> {
        let two = rat_int(2);
        if lo >= hi || lo <= -two.clone() || hi >= two {
            return Err(Error::InvalidArgument(format!(
                "isolating interval [{}, {}] must satisfy -2 < lo < hi < 2",
                lo, hi
            )));
        }
        if sign_at(minpoly.cheb(), &lo) == 0 || sign_at(minpoly.cheb(), &hi) == 0 {
            return Err(Error::InvalidArgument(
                "isolating interval endpoints must not be roots".into(),
            ));
        }
        let chain = SturmChain::new(minpoly.cheb());
        if chain.count_half_open(&lo, &hi) != 1 {
            return Err(Error::InvalidArgument(format!(
                "interval [{}, {}] does not isolate one root of {}",
                lo,
                hi,
                minpoly.cheb()
            )));
        }
        Ok(AlgebraicAngle::make(minpoly, lo, hi))
    }

    pub fn minpoly(&self) -> &IrreducibleFactor {
        &self.minpoly
    }

    pub fn interval(&self) -> (Rational, Rational) {
        (self.lo.clone(), self.hi.clone())
    }

    /// Exact x-value when the minimal polynomial is linear.
    pub fn exact_x(&self) -> Option<Rational> {
        if self.minpoly.degree() == 1 {
            let c = self.minpoly.cheb();
            Some(-c.coeff(0) / c.coeff(1))
        } else {
            None
        }
    }

    /// Halves the isolating interval.
    pub fn refine_once(&mut self) {
        let mid = (&self.lo + &self.hi) / rat_int(2);
        match sign_at(self.minpoly.cheb(), &mid) {
            0 => {
                // mid is the (rational) root itself; shrink around it.
                self.lo = (&self.lo + &mid) / rat_int(2);
                self.hi = (&mid + &self.hi) / rat_int(2);
            }
            s => {
                if sign_at(self.minpoly.cheb(), &self.lo) * s < 0 {
                    self.hi = mid;
                } else {
                    self.lo = mid;
                }
            }
        }
    }

    pub fn refine_to_width(&mut self, width: &Rational) {
        while &(&self.hi - &self.lo) > width {
            self.refine_once();
        }
    }

    /// Order by x = 2 cos(2 pi theta).
    fn cmp_x(&self, other: &Self) -> Ordering {
        if self.minpoly == other.minpoly {
            if self.lo == other.lo && self.hi == other.hi {
                return Ordering::Equal;
            }
            // Overlapping intervals around the same minimal polynomial:
            // one root in the hull means the same root.
            if self.lo < other.hi && other.lo < self.hi {
                let hull_lo = self.lo.clone().min(other.lo.clone());
                let hull_hi = self.hi.clone().max(other.hi.clone());
                let chain = SturmChain::new(self.minpoly.cheb());
                if chain.count_half_open(&hull_lo, &hull_hi) == 1 {
                    return Ordering::Equal;
                }
            }
        }
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            a.refine_once();
            b.refine_once();
        }
    }

    /// Total order by theta (reverse of the x order).
    pub fn cmp_theta(&self, other: &Self) -> Ordering {
        self.cmp_x(other).reverse()
    }

    /// Approximate x, for presentation only.
    pub fn approx_x_f64(&self) -> f64 {
        let mut a = self.clone();
        a.refine_to_width(&Rational::new(1.into(), 4096.into()));
        let mid = (&a.lo + &a.hi) / rat_int(2);
        mid.to_f64().unwrap_or(0.0)
    }

    /// Approximate theta in (0, 1/2), for presentation only.
    pub fn approx_theta_f64(&self) -> f64 {
        let x = self.approx_x_f64().clamp(-2.0, 2.0);
        (x / 2.0).acos() / (2.0 * std::f64::consts::PI)
    }
}

impl PartialEq for AlgebraicAngle {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_theta(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicAngle {}

impl PartialOrd for AlgebraicAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_theta(other))
    }
}

impl Ord for AlgebraicAngle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_theta(other)
    }
}

/// One angle per root of `q` in (-2, 2), sorted by increasing theta
/// (decreasing x), with pairwise disjoint isolating intervals.
pub fn isolate_circle_roots(q: &IrreducibleFactor) -> Vec<AlgebraicAngle> {
    let two = rat_int(2);
    let minus_two = rat_int(-2);
    if q.degree() == 1 {
        let c = -q.cheb().coeff(0) / q.cheb().coeff(1);
        if c > minus_two && c < two {
            let lo = (&c + &minus_two) / rat_int(2);
            let hi = (&c + &two) / rat_int(2);
            return vec![AlgebraicAngle::make(q.clone(), lo, hi)];
        }
        return vec![];
    }
    // Degree >= 2 irreducible polynomials have no rational roots, so every
    // rational interval endpoint below is automatically a non-root.
    let chain = SturmChain::new(q.cheb());
    let mut intervals: Vec<(Rational, Rational)> = Vec::new();
    let mut stack = vec![(minus_two.clone(), two.clone())];
    while let Some((a, b)) = stack.pop() {
        match chain.count_half_open(&a, &b) {
            0 => {}
            1 => intervals.push((a, b)),
            _ => {
                let mid = (&a + &b) / rat_int(2);
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    intervals.sort_by(|p, q| p.0.cmp(&q.0));
    let mut out: Vec<AlgebraicAngle> = intervals
        .into_iter()
        .map(|(lo, hi)| {
            let mut angle = AlgebraicAngle::make(q.clone(), lo, hi);
            while angle.lo <= minus_two || angle.hi >= two {
                angle.refine_once();
            }
            angle
        })
        .collect();
    // ascending x -> descending theta; flip for ascending theta
    out.reverse();
    out
}

/// A position on the closed angle interval: the boundary theta = 0
/// (x = 2), a proper algebraic angle, or the boundary theta = 1/2
/// (x = -2).
#[derive(Debug, Clone)]
pub enum AnglePos {
    Zero,
    Angle(AlgebraicAngle),
    Half,
}

impl AnglePos {
    fn rank(&self) -> u8 {
        match self {
            AnglePos::Zero => 0,
            AnglePos::Angle(_) => 1,
            AnglePos::Half => 2,
        }
    }

    pub fn cmp_theta(&self, other: &AnglePos) -> Ordering {
        match (self, other) {
            (AnglePos::Angle(a), AnglePos::Angle(b)) => a.cmp_theta(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

/// A rational x strictly between the x-values of two positions with
/// `a < b` in angle order (so the x of `a` is the larger). Intervals are
/// refined until they separate; the returned rational has the smallest
/// denominator the separated gap allows.
pub fn rational_between(a: &AnglePos, b: &AnglePos) -> Rational {
    assert_eq!(a.cmp_theta(b), Ordering::Less, "rational_between needs a < b");
    match (a, b) {
        (AnglePos::Zero, AnglePos::Half) => Rational::zero(),
        (AnglePos::Zero, AnglePos::Angle(u)) => {
            let hi_bound = (&u.hi + &rat_int(2)) / rat_int(2);
            simplest_in_closed(&u.hi, &hi_bound)
        }
        (AnglePos::Angle(u), AnglePos::Half) => {
            let lo_bound = (&u.lo + &rat_int(-2)) / rat_int(2);
            simplest_in_closed(&lo_bound, &u.lo)
        }
        (AnglePos::Angle(u), AnglePos::Angle(v)) => {
            // theta_u < theta_v means x_u > x_v; separate and sample.
            let mut upper = u.clone();
            let mut lower = v.clone();
            loop {
                if lower.hi <= upper.lo {
                    return simplest_in_closed(&lower.hi, &upper.lo);
                }
                upper.refine_once();
                lower.refine_once();
            }
        }
        _ => unreachable!("ordering asserted above"),
    }
}

// --- cyclotomic constructions ---------------------------------------------

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The n-th cyclotomic polynomial in `t` (ascending, exponents >= 0).
pub fn cyclotomic_t(n: u64) -> LaurentPoly {
    fn go(n: u64, memo: &mut std::collections::BTreeMap<u64, LaurentPoly>) -> LaurentPoly {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        // t^n - 1 divided by the cyclotomic polynomials of proper divisors
        let mut num = LaurentPoly::from_terms([
            (n as i64, Rational::one()),
            (0, -Rational::one()),
        ]);
        for d in 1..n {
            if n % d == 0 {
                let phi_d = go(d, memo);
                num = num.div_exact(&phi_d).expect("cyclotomic division is exact");
            }
        }
        memo.insert(n, num.clone());
        num
    }
    let mut memo = std::collections::BTreeMap::new();
    go(n, &mut memo)
}

/// Minimal polynomial of `2 cos(2 pi / n)` in the Chebyshev coordinate:
/// the cyclotomic polynomial re-centered and pushed through `x = t + 1/t`.
/// Defined for n >= 3.
pub fn cyclotomic_psi(n: u64) -> Result<IrreducibleFactor> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "cyclotomic angle needs n >= 3, got {n}"
        )));
    }
    let phi = euler_phi(n);
    debug_assert!(phi % 2 == 0);
    let centered = cyclotomic_t(n).shift(-((phi / 2) as i64));
    let cheb = to_chebyshev(&centered)?;
    IrreducibleFactor::new(cheb)
}

/// The angle theta = k/n for a reduced fraction in (0, 1/2), carrying the
/// minimal polynomial of `2 cos(2 pi k / n)`.
pub fn angle_from_cyclotomic(n: u64, k: u64) -> Result<AlgebraicAngle> {
    if k == 0 || 2 * k >= n {
        return Err(Error::InvalidArgument(format!(
            "angle {k}/{n} is not in the open interval (0, 1/2)"
        )));
    }
    if k.gcd(&n) != 1 {
        return Err(Error::InvalidArgument(format!(
            "fraction {k}/{n} is not reduced"
        )));
    }
    let psi = cyclotomic_psi(n)?;
    let roots = isolate_circle_roots(&psi);
    debug_assert_eq!(roots.len() as u64, euler_phi(n) / 2);
    // Roots sorted by theta correspond to the residues 1 <= j < n/2
    // coprime to n in increasing order; pick the slot of k.
    let position = (1..k).filter(|j| j.gcd(&n) == 1).count();
    Ok(roots[position].clone())
}

/// The angle for a rational theta = k/n in (0, 1/2).
pub fn angle_from_theta(theta: &Rational) -> Result<AlgebraicAngle> {
    if theta <= &Rational::zero() || theta >= &Rational::new(1.into(), 2.into()) {
        return Err(Error::InvalidArgument(format!(
            "theta {theta} outside (0, 1/2)"
        )));
    }
    let n: u64 = theta
        .denom()
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("theta denominator too large".into()))?;
    let k: u64 = theta
        .numer()
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("theta numerator out of range".into()))?;
    angle_from_cyclotomic(n, k)
}
