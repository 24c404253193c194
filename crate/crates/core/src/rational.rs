//! Exact rational scalars and small utilities on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational number. `BigRational` keeps the fraction reduced with a
/// positive denominator, which is exactly the invariant we need.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sign of a rational as -1, 0 or +1.
pub fn sign_of(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Canonical text form `p/q` with the `/q` omitted when `q = 1`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses "p" or "p/q". Used by the JSON readers.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let make_err = || Error::BadInput(format!("cannot parse rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| make_err())?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| make_err())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// The rational of smallest denominator in the closed interval `[a, b]`
/// (ties between integers resolved toward zero). Classic continued-fraction
/// descent; both endpoints are exact so the recursion terminates.
pub fn simplest_in_closed(a: &Rational, b: &Rational) -> Rational {
    assert!(a <= b, "simplest_in_closed requires a <= b");
    if !a.is_positive() && !b.is_negative() {
        return Rational::zero();
    }
    if b.is_negative() {
        return -simplest_in_closed(&-b.clone(), &-a.clone());
    }
    // 0 < a <= b from here on.
    let a_floor = a.floor();
    let n = &a_floor + Rational::one();
    if &n <= b {
        // Smallest integer >= a sits inside; it has denominator 1.
        return if a.is_integer() { a.clone() } else { n };
    }
    if a.is_integer() {
        return a.clone();
    }
    let fa = a - &a_floor;
    let fb = b - &a_floor;
    a_floor + (simplest_in_closed(&fb.recip(), &fa.recip())).recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_prefers_zero_and_integers() {
        assert_eq!(simplest_in_closed(&rat(-3, 5), &rat(3, 2)), rat_int(0));
        assert_eq!(simplest_in_closed(&rat(23, 10), &rat_int(5)), rat_int(3));
        assert_eq!(simplest_in_closed(&rat(-5, 1), &rat(-23, 10)), rat_int(-3));
    }

    #[test]
    fn simplest_fractional_gap() {
        // (1.618.., 2) shrunk to a closed subinterval: 7/4 is the simplest
        // rational in [7/4, 15/8].
        assert_eq!(simplest_in_closed(&rat(7, 4), &rat(15, 8)), rat(7, 4));
        // Denominator 2 beats anything else in [0.4, 0.6].
        assert_eq!(simplest_in_closed(&rat(2, 5), &rat(3, 5)), rat(1, 2));
    }

    #[test]
    fn simplest_endpoint_integer() {
        assert_eq!(simplest_in_closed(&rat_int(2), &rat(5, 2)), rat_int(2));
    }

    #[test]
    fn rational_round_trip() {
        for s in ["5", "-7/3", "0", "12/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
