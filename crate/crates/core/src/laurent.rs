//! Laurent polynomials over Q, the involution `t -> 1/t`, rational
//! functions, and the Chebyshev-style change of coordinates `x = t + 1/t`
//! for symmetric polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rational::{format_rational, Rational};
use crate::Result;

/// A Laurent polynomial `sum c_k t^k` with exact rational coefficients.
/// Zero coefficients are never stored; the zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        LaurentPoly { coeffs }
    }

    /// The monomial `c * t^k`.
    pub fn monomial(k: i64, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Width of the exponent support; 0 for constants and the zero poly.
    pub fn degree_span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// The involution `t -> 1/t`: exponent `k` maps to `-k`.
    pub fn involute(&self) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, c)| (-k, c.clone()))
                .collect(),
        }
    }

    /// True iff `p(t) = p(1/t)`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(&k, c)| self.coeff(-k) == *c)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, a)| (k, a * c)).collect(),
        }
    }

    /// Evaluate at a nonzero rational point.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() && self.min_exp().is_some_and(|m| m < 0) {
            return Err(Error::DivisionByZero);
        }
        let mut acc = Rational::zero();
        for (k, c) in self.terms() {
            let mut pw = Rational::one();
            let (base, n) = if k >= 0 {
                (x.clone(), k)
            } else {
                (x.recip(), -k)
            };
            for _ in 0..n {
                pw *= &base;
            }
            acc += c * pw;
        }
        Ok(acc)
    }

    /// Scaled by a positive rational so that the coefficients become
    /// integers with gcd 1; the zero polynomial is unchanged. Signs are
    /// preserved.
    pub fn content_normalized(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut denom_lcm = num_bigint::BigInt::one();
        for c in self.coeffs.values() {
            denom_lcm = num_integer::Integer::lcm(&denom_lcm, c.denom());
        }
        let mut numer_gcd = num_bigint::BigInt::zero();
        for c in self.coeffs.values() {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            numer_gcd = num_integer::Integer::gcd(&numer_gcd, &scaled);
        }
        self.scale(&Rational::new(denom_lcm, numer_gcd))
    }

    /// Exact division; error if `d` is zero or does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        // Shift both to ordinary polynomials and long-divide.
        let ns = self.shift(-self.min_exp().unwrap());
        let ds = d.shift(-d.min_exp().unwrap());
        let (q, r) = poly_divrem(&ns, &ds);
        if !r.is_zero() {
            return Err(Error::InvalidArgument(
                "inexact polynomial division".into(),
            ));
        }
        Ok(q.shift(self.min_exp().unwrap() - d.min_exp().unwrap()))
    }
}

/// Long division of ordinary polynomials (nonnegative exponents only).
/// Returns `(quotient, remainder)`.
fn poly_divrem(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    debug_assert!(a.min_exp().unwrap_or(0) >= 0 && b.min_exp().unwrap_or(0) >= 0);
    debug_assert!(!b.is_zero());
    let mut rem = a.clone();
    let mut quo = LaurentPoly::zero();
    let db = b.max_exp().unwrap();
    let lb = b.coeff(db);
    while !rem.is_zero() && rem.max_exp().unwrap() >= db {
        let dr = rem.max_exp().unwrap();
        let c = rem.coeff(dr) / &lb;
        let term = LaurentPoly::monomial(dr - db, c);
        rem = &rem - &(&term * b);
        quo = &quo + &term;
    }
    (quo, rem)
}

/// Monic gcd of two Laurent polynomials viewed as polynomials up to units
/// `c * t^k`. The result has minimum exponent 0 and leading coefficient 1.
/// Remainders are content-normalized each step to keep coefficients small.
pub fn laurent_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return normalize_unit(b);
    }
    if b.is_zero() {
        return normalize_unit(a);
    }
    let mut f = a.shift(-a.min_exp().unwrap()).content_normalized();
    let mut g = b.shift(-b.min_exp().unwrap()).content_normalized();
    while !g.is_zero() {
        let (_, r) = poly_divrem(&f, &g);
        f = g;
        g = r.content_normalized();
    }
    normalize_unit(&f)
}

/// Scale by a unit so that the minimum exponent is 0 and the leading
/// (highest-exponent) coefficient is 1. Zero maps to zero.
fn normalize_unit(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return LaurentPoly::zero();
    }
    let shifted = p.shift(-p.min_exp().unwrap());
    let lc = shifted.coeff(shifted.max_exp().unwrap());
    shifted.scale(&lc.recip())
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical text in the input grammar: ascending exponents,
    /// e.g. `t^-1 - 1 + t`. Parsing the output recovers the polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_part = format_rational(&mag);
            if k == 0 {
                write!(f, "{coeff_part}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{coeff_part}*")?;
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// A reduced fraction of Laurent polynomials. The denominator is nonzero,
/// coprime to the numerator, has minimum exponent 0 and leading
/// coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num: LaurentPoly::zero(),
                den: LaurentPoly::one(),
            };
        }
        let g = laurent_gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let mut den = den.div_exact(&g).expect("gcd divides");
        // Normalize the denominator to min exponent 0, leading coefficient 1.
        let shift = -den.min_exp().unwrap();
        den = den.shift(shift);
        num = num.shift(shift);
        let lc = den.coeff(den.max_exp().unwrap());
        den = den.scale(&lc.recip());
        num = num.scale(&lc.recip());
        RationalFunction { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == LaurentPoly::one()
    }

    pub fn involute(&self) -> Self {
        RationalFunction::reduced(self.num.involute(), self.den.involute())
    }

    /// True iff the function is fixed by the involution.
    pub fn is_symmetric(&self) -> bool {
        self == &self.involute()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RationalFunction::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RationalFunction::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RationalFunction::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction::reduced(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn powi(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(RationalFunction::one());
        }
        let base = if k > 0 {
            self.clone()
        } else {
            if self.is_zero() {
                return Err(Error::DivisionByZero);
            }
            RationalFunction::reduced(self.den.clone(), self.num.clone())
        };
        let mut out = RationalFunction::one();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Combined degree span of numerator and denominator; a cheap size
    /// measure used for pivot selection.
    pub fn complexity(&self) -> i64 {
        self.num.degree_span() + self.den.degree_span()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// A polynomial in the variable `x = t + 1/t`, dense ascending coefficients
/// with a nonzero leading coefficient unless zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ChebPoly {
    coeffs: Vec<Rational>,
}

impl ChebPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ChebPoly { coeffs }
    }

    pub fn zero() -> Self {
        ChebPoly::default()
    }

    pub fn one() -> Self {
        ChebPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        ChebPoly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        ChebPoly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `x - c`.
    pub fn x_minus(c: &Rational) -> Self {
        ChebPoly::new(vec![-c.clone(), Rational::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        ChebPoly::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> ChebPoly {
        if self.coeffs.len() <= 1 {
            return ChebPoly::zero();
        }
        ChebPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &ChebPoly) -> ChebPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ChebPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &ChebPoly) -> ChebPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ChebPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &ChebPoly) -> ChebPoly {
        if self.is_zero() || rhs.is_zero() {
            return ChebPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ChebPoly::new(out)
    }

    pub fn neg(&self) -> ChebPoly {
        ChebPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, c: &Rational) -> ChebPoly {
        ChebPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Long division; panics on zero divisor.
    pub fn divrem(&self, d: &ChebPoly) -> (ChebPoly, ChebPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = vec![Rational::zero(); self.coeffs.len()];
        let lead = d.leading();
        while !rem.is_zero() && rem.coeffs.len() >= d.coeffs.len() {
            let k = rem.coeffs.len() - d.coeffs.len();
            let c = rem.leading() / &lead;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let v = rem.coeffs[k + j].clone() - &c * dc;
                rem.coeffs[k + j] = v;
            }
            while rem.coeffs.last().is_some_and(Zero::is_zero) {
                rem.coeffs.pop();
            }
            quo[k] = c;
        }
        (ChebPoly::new(quo), rem)
    }

    /// Scaled by a positive rational so that the coefficients become
    /// integers with gcd 1. Signs (and hence Sturm variations) are
    /// preserved.
    pub fn content_normalized(&self) -> ChebPoly {
        if self.is_zero() {
            return ChebPoly::zero();
        }
        let mut denom_lcm = num_bigint::BigInt::one();
        for c in &self.coeffs {
            denom_lcm = num_integer::Integer::lcm(&denom_lcm, c.denom());
        }
        let mut numer_gcd = num_bigint::BigInt::zero();
        for c in &self.coeffs {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            numer_gcd = num_integer::Integer::gcd(&numer_gcd, &scaled);
        }
        self.scale(&Rational::new(denom_lcm, numer_gcd))
    }

    /// Monic gcd; remainders are content-normalized to control
    /// coefficient growth.
    pub fn gcd(&self, rhs: &ChebPoly) -> ChebPoly {
        let mut f = self.content_normalized();
        let mut g = rhs.content_normalized();
        while !g.is_zero() {
            let (_, r) = f.divrem(&g);
            f = g;
            g = r.content_normalized();
        }
        if f.is_zero() {
            return f;
        }
        let lc = f.leading();
        f.scale(&lc.recip())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }
}

impl fmt::Display for ChebPoly {
    /// Canonical text in the variable `x`, e.g. `x^2 - x - 1`
    /// (descending exponents, matching handwriting order).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_part = format_rational(&mag);
            if i == 0 {
                write!(f, "{coeff_part}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{coeff_part}*")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// `t^k + t^-k` as a polynomial in `x = t + 1/t`; the trace recursion
/// `E_0 = 2, E_1 = x, E_{k+1} = x E_k - E_{k-1}`.
fn trace_poly(k: usize) -> ChebPoly {
    let mut prev = ChebPoly::constant(Rational::from_integer(2.into()));
    if k == 0 {
        return prev;
    }
    let mut cur = ChebPoly::x();
    for _ in 1..k {
        let next = ChebPoly::x().mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Writes a symmetric Laurent polynomial as a polynomial in `x = t + 1/t`.
/// Rejects non-symmetric input.
pub fn to_chebyshev(p: &LaurentPoly) -> Result<ChebPoly> {
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric(p.to_string()));
    }
    let mut out = ChebPoly::constant(p.coeff(0));
    if let Some(hi) = p.max_exp() {
        for k in 1..=hi.max(0) {
            let c = p.coeff(k);
            if !c.is_zero() {
                out = out.add(&trace_poly(k as usize).scale(&c));
            }
        }
    }
    Ok(out)
}

/// Substitutes `x = t + 1/t`; the inverse of [`to_chebyshev`]. The result
/// is always symmetric.
pub fn from_chebyshev(p: &ChebPoly) -> LaurentPoly {
    let x = LaurentPoly::from_terms([(1, Rational::one()), (-1, Rational::one())]);
    let mut out = LaurentPoly::zero();
    let mut pw = LaurentPoly::one();
    for c in p.coeffs() {
        out = &out + &pw.scale(c);
        pw = &pw * &x;
    }
    out
}
