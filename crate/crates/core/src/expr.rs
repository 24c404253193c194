//! Recursive-descent parser for the input expression grammar.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := unary (('*'|'/') unary)*
//! unary    := '-'? factor
//! factor   := base ('^' signed-integer)?
//! base     := rational | 't' | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Whitespace is insignificant and `^` binds tighter than unary minus.
//! The same grammar with variable `x` (nonnegative exponents only) is used
//! for minimal polynomials in the Chebyshev coordinate.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::laurent::{ChebPoly, LaurentPoly, RationalFunction};
use crate::rational::Rational;
use crate::Result;

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    var: u8,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str, var: u8) -> Self {
        Parser {
            input: input.as_bytes(),
            pos: 0,
            var,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .input
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }


    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let at = self.pos;
                    acc = acc.div(&rhs).map_err(|_| Error::Syntax {
                        position: at,
                        message: "division by the zero polynomial".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat(b'-') {
            Ok(self.factor()?.neg())
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<RationalFunction> {
        let base = self.base()?;
        if self.eat(b'^') {
            let k = self.signed_integer()?;
            let at = self.pos;
            base.powi(k).map_err(|_| Error::Syntax {
                position: at,
                message: "zero raised to a negative power".into(),
            })
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(c) if c == self.var => {
                self.pos += 1;
                Ok(RationalFunction::from_poly(LaurentPoly::monomial(
                    1,
                    Rational::one(),
                )))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer_literal()?;
                // A '/' directly followed by a positive integer is part of
                // the rational literal; anything else is the division
                // operator handled by `term`.
                let save = self.pos;
                if self.eat(b'/') {
                    if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        let den = self.integer_literal()?;
                        if den.is_zero() {
                            return Err(self.err("zero denominator in rational literal"));
                        }
                        return Ok(RationalFunction::constant(Rational::new(num, den)));
                    }
                    self.pos = save;
                }
                Ok(RationalFunction::constant(Rational::from_integer(num)))
            }
            Some(c) => Err(self.err(format!("unexpected character {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer_literal(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self
            .input
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        text.parse().map_err(|_| self.err("malformed integer"))
    }

    fn signed_integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat(b'-');
        let pos = !neg && self.eat(b'+');
        let _ = pos;
        let n = self.integer_literal()?;
        let n: i64 = n
            .try_into()
            .map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn finish(&mut self, value: RationalFunction) -> Result<RationalFunction> {
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(value)
    }
}

/// Parses an expression over `t` into an exact rational function.
pub fn parse_expr(text: &str) -> Result<RationalFunction> {
    let mut p = Parser::new(text, b't');
    let v = p.expr()?;
    p.finish(v)
}

/// Parses an expression over `t` that must reduce to a Laurent polynomial.
pub fn parse_laurent(text: &str) -> Result<LaurentPoly> {
    let f = parse_expr(text)?;
    if !f.is_polynomial() {
        return Err(Error::InvalidArgument(format!(
            "expected a Laurent polynomial, got {f}"
        )));
    }
    Ok(f.num().clone())
}

/// Parses a polynomial in the variable `x` (nonnegative exponents only).
pub fn parse_cheb(text: &str) -> Result<ChebPoly> {
    let mut p = Parser::new(text, b'x');
    let v = p.expr()?;
    let v = p.finish(v)?;
    if !v.is_polynomial() {
        return Err(Error::InvalidArgument(format!(
            "expected a polynomial in x, got denominator {}",
            v.den()
        )));
    }
    let poly = v.num();
    if poly.min_exp().unwrap_or(0) < 0 {
        return Err(Error::InvalidArgument(
            "negative exponent of x not allowed".into(),
        ));
    }
    let deg = poly.max_exp().unwrap_or(0).max(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (k, c) in poly.terms() {
        coeffs[k as usize] = c.clone();
    }
    Ok(ChebPoly::new(coeffs))
}
