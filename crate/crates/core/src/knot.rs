//! Seifert matrices, hermitianization, and knot 4-genus lower bounds.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::hermitian::HermitianMatrix;
use crate::laurent::{LaurentPoly, RationalFunction};
use crate::rank::rank_lower_bound;
use crate::rational::Rational;
use crate::Result;

/// An integer Seifert matrix: even dimension with unimodular
/// antisymmetrization `det(V - V^T) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    v: Vec<Vec<BigInt>>,
    label: Option<String>,
}

impl SeifertMatrix {
    pub fn new(v: Vec<Vec<BigInt>>, label: Option<String>) -> Result<Self> {
        let n = v.len();
        if n % 2 != 0 {
            return Err(Error::InvalidSeifert(format!(
                "dimension {n} is odd; Seifert matrices have even dimension"
            )));
        }
        if v.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSeifert("matrix is not square".into()));
        }
        let mut skew = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                skew[i][j] = &v[i][j] - &v[j][i];
            }
        }
        if det_int(&skew) != BigInt::one() {
            return Err(Error::InvalidSeifert(
                "V - V^T is not unimodular (det must be 1)".into(),
            ));
        }
        Ok(SeifertMatrix { v, label })
    }

    pub fn from_i64(rows: &[&[i64]], label: Option<&str>) -> Result<Self> {
        SeifertMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
            label.map(String::from),
        )
    }

    pub fn dimension(&self) -> usize {
        self.v.len()
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.v
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// The hermitian form `(1-t) V + (1-1/t) V^T` over Q(t).
    pub fn hermitianize(&self) -> Result<HermitianMatrix> {
        let n = self.v.len();
        let one_minus_t =
            LaurentPoly::from_terms([(0, Rational::one()), (1, -Rational::one())]);
        let one_minus_tinv = one_minus_t.involute();
        let mut entries = vec![vec![RationalFunction::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let a = one_minus_t.scale(&Rational::from_integer(self.v[i][j].clone()));
                let b = one_minus_tinv.scale(&Rational::from_integer(self.v[j][i].clone()));
                entries[i][j] = RationalFunction::from_poly(&a + &b);
            }
        }
        HermitianMatrix::new(entries)
    }

    /// The mirror image: `-V^T`. Its hermitianization carries the negated
    /// signature profile.
    pub fn mirror(&self) -> SeifertMatrix {
        let n = self.v.len();
        let v = (0..n)
            .map(|i| (0..n).map(|j| -self.v[j][i].clone()).collect())
            .collect();
        SeifertMatrix {
            v,
            label: self.label.as_ref().map(|l| format!("mirror({l})")),
        }
    }

    /// Connected sum: the block-diagonal sum of the Seifert matrices.
    pub fn connected_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let n = self.v.len();
        let m = other.v.len();
        let mut v = vec![vec![BigInt::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                v[i][j] = self.v[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                v[n + i][n + j] = other.v[i][j].clone();
            }
        }
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("sum({a},{b})")),
            _ => None,
        };
        SeifertMatrix { v, label }
    }

    /// `ceil(r / 2)` for the hermitianized form: the 4-genus lower bound.
    pub fn genus_lower_bound(&self) -> Result<i64> {
        let w = self.hermitianize()?.normal_form()?;
        Ok(genus_bound_from_rank(rank_lower_bound(&w).r))
    }
}

/// Genus bound from a rank value (total on arbitrary forms; on knot
/// classes the rank is even and the ceiling is a no-op).
pub fn genus_bound_from_rank(r: i64) -> i64 {
    (r + 1) / 2
}

/// Reads a fixture file: a JSON array of labeled entries, each one of
/// `{"label":s, "V":[[int,..],..]}`, `{"label":s, "sum":[ref,..]}` or
/// `{"label":s, "mirror":ref}`, where refs name earlier labels. Returns
/// the fixtures in file order.
pub fn fixtures_from_json(v: &serde_json::Value) -> Result<Vec<(String, SeifertMatrix)>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::BadInput("fixture file must be a JSON array".into()))?;
    let mut out: Vec<(String, SeifertMatrix)> = Vec::new();
    let lookup = |out: &[(String, SeifertMatrix)], name: &str| -> Result<SeifertMatrix> {
        out.iter()
            .find(|(l, _)| l == name)
            .map(|(_, m)| m.clone())
            .ok_or_else(|| Error::BadInput(format!("unknown fixture reference {name:?}")))
    };
    for entry in arr {
        let label = entry
            .get("label")
            .and_then(|l| l.as_str())
            .ok_or_else(|| Error::BadInput("each fixture needs a \"label\"".into()))?
            .to_string();
        let matrix = if let Some(v) = entry.get("V") {
            let rows = v
                .as_array()
                .ok_or_else(|| Error::BadInput("\"V\" must be an array of rows".into()))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| Error::BadInput("matrix rows are arrays".into()))?
                        .iter()
                        .map(|c| {
                            c.as_i64()
                                .map(BigInt::from)
                                .ok_or_else(|| Error::BadInput("matrix entries are integers".into()))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            SeifertMatrix::new(rows, Some(label.clone()))?
        } else if let Some(refs) = entry.get("sum") {
            let refs = refs
                .as_array()
                .ok_or_else(|| Error::BadInput("\"sum\" must be an array of refs".into()))?;
            let mut acc: Option<SeifertMatrix> = None;
            for r in refs {
                let name = r
                    .as_str()
                    .ok_or_else(|| Error::BadInput("sum refs are strings".into()))?;
                let m = lookup(&out, name)?;
                acc = Some(match acc {
                    None => m,
                    Some(a) => a.connected_sum(&m),
                });
            }
            acc.ok_or_else(|| Error::BadInput("\"sum\" needs at least one ref".into()))?
        } else if let Some(r) = entry.get("mirror") {
            let name = r
                .as_str()
                .ok_or_else(|| Error::BadInput("\"mirror\" takes a string ref".into()))?;
            lookup(&out, name)?.mirror()
        } else {
            return Err(Error::BadInput(format!(
                "fixture {label:?} needs one of \"V\", \"sum\", \"mirror\""
            )));
        };
        out.push((label, matrix));
    }
    Ok(out)
}

/// Parses a combinator expression over fixture labels:
/// `expr := label | mirror(expr) | sum(expr, expr, ...)`.
pub fn parse_knot_expr(text: &str, fixtures: &[(String, SeifertMatrix)]) -> Result<SeifertMatrix> {
    struct P<'a> {
        s: &'a [u8],
        pos: usize,
        fixtures: &'a [(String, SeifertMatrix)],
    }
    impl<'a> P<'a> {
        fn ws(&mut self) {
            while self.s.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
                self.pos += 1;
            }
        }
        fn err(&self, msg: &str) -> Error {
            Error::Syntax {
                position: self.pos,
                message: msg.into(),
            }
        }
        fn ident(&mut self) -> String {
            let start = self.pos;
            while self
                .s
                .get(self.pos)
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
            {
                self.pos += 1;
            }
            String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
        }
        fn eat(&mut self, c: u8) -> bool {
            self.ws();
            if self.s.get(self.pos) == Some(&c) {
                self.pos += 1;
                true
            } else {
                false
            }
        }
        fn expr(&mut self) -> Result<SeifertMatrix> {
            self.ws();
            let name = self.ident();
            if name.is_empty() {
                return Err(self.err("expected a fixture label, mirror(..) or sum(..)"));
            }
            match name.as_str() {
                "mirror" => {
                    if !self.eat(b'(') {
                        return Err(self.err("mirror needs '('"));
                    }
                    let inner = self.expr()?;
                    if !self.eat(b')') {
                        return Err(self.err("expected ')'"));
                    }
                    Ok(inner.mirror())
                }
                "sum" => {
                    if !self.eat(b'(') {
                        return Err(self.err("sum needs '('"));
                    }
                    let mut acc = self.expr()?;
                    while self.eat(b',') {
                        acc = acc.connected_sum(&self.expr()?);
                    }
                    if !self.eat(b')') {
                        return Err(self.err("expected ')'"));
                    }
                    Ok(acc)
                }
                label => self
                    .fixtures
                    .iter()
                    .find(|(l, _)| l == label)
                    .map(|(_, m)| m.clone())
                    .ok_or_else(|| Error::BadInput(format!("unknown fixture {label:?}"))),
            }
        }
    }
    let mut p = P {
        s: text.as_bytes(),
        pos: 0,
        fixtures,
    };
    let m = p.expr()?;
    p.ws();
    if p.pos != text.len() {
        return Err(Error::Syntax {
            position: p.pos,
            message: "trailing input in knot expression".into(),
        });
    }
    Ok(m)
}

/// Exact integer determinant (fraction-free elimination through rationals).
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect()
        })
        .collect();
    let mut det = Rational::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero());
        let Some(pr) = pivot else {
            return BigInt::zero();
        };
        if pr != k {
            a.swap(k, pr);
            det = -det;
        }
        let p = a[k][k].clone();
        det *= &p;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let sub = &f * &a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    debug_assert!(det.is_integer());
    det.to_integer()
}
