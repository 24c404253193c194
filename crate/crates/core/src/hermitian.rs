//! Hermitian matrices over Q(t), congruence diagonalization, and the
//! normalized diagonal form (signed products of distinct symmetric
//! irreducibles) that every downstream computation consumes.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;

use crate::error::Error;
use crate::factor::{factor_rational, IrreducibleFactor};
use crate::laurent::{from_chebyshev, to_chebyshev, ChebPoly, LaurentPoly, RationalFunction};
use crate::rational::Rational;
use crate::Result;

/// The sign of a diagonal entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Neg => -1,
            Sign::Pos => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn from_i32(s: i32) -> Result<Sign> {
        match s {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            _ => Err(Error::InvalidArgument(format!("sign must be +-1, got {s}"))),
        }
    }
}

/// A normalized diagonal entry: a sign times a product of distinct
/// irreducible factors in the Chebyshev coordinate, split by whether the
/// factor has unit-circle roots.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NormalizedEntry {
    pub sign: Sign,
    pub circle_factors: BTreeSet<IrreducibleFactor>,
    pub offcircle_factors: BTreeSet<IrreducibleFactor>,
}

impl NormalizedEntry {
    pub fn unit(sign: Sign) -> Self {
        NormalizedEntry {
            sign,
            circle_factors: BTreeSet::new(),
            offcircle_factors: BTreeSet::new(),
        }
    }

    pub fn new(
        sign: Sign,
        circle_factors: BTreeSet<IrreducibleFactor>,
        offcircle_factors: BTreeSet<IrreducibleFactor>,
    ) -> Result<Self> {
        for f in &circle_factors {
            if !f.has_circle_roots() {
                return Err(Error::InvalidArgument(format!(
                    "{f} has no unit-circle roots but was listed as a circle factor"
                )));
            }
        }
        for f in &offcircle_factors {
            if f.has_circle_roots() {
                return Err(Error::InvalidArgument(format!(
                    "{f} has unit-circle roots but was listed as off-circle"
                )));
            }
        }
        Ok(NormalizedEntry {
            sign,
            circle_factors,
            offcircle_factors,
        })
    }

    pub fn factors(&self) -> impl Iterator<Item = &IrreducibleFactor> {
        self.circle_factors.iter().chain(self.offcircle_factors.iter())
    }

    /// The symmetric Laurent polynomial this entry stands for.
    pub fn represented(&self) -> LaurentPoly {
        let mut prod = ChebPoly::one();
        for f in self.factors() {
            prod = prod.mul(f.cheb());
        }
        if self.sign == Sign::Neg {
            prod = prod.neg();
        }
        from_chebyshev(&prod)
    }

    /// Exact sign of the entry on the circle at the sample point
    /// `x = 2 cos(2 pi theta)`, which must avoid all factor roots.
    pub fn sign_at_sample(&self, x: &Rational) -> i64 {
        let mut s = self.sign.as_i64();
        for f in self.factors() {
            let v = crate::angle::sign_at(f.cheb(), x);
            debug_assert!(v != 0, "sample point hit a factor root");
            s *= v as i64;
        }
        s
    }

    pub fn negate(&self) -> Self {
        NormalizedEntry {
            sign: self.sign.flip(),
            circle_factors: self.circle_factors.clone(),
            offcircle_factors: self.offcircle_factors.clone(),
        }
    }
}

impl fmt::Display for NormalizedEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.represented())
    }
}

/// A diagonal representative in normalized form. The dimension is the
/// number of entries; the empty diagonal is the zero form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WittDiagonal {
    entries: Vec<NormalizedEntry>,
}

impl WittDiagonal {
    pub fn new(entries: Vec<NormalizedEntry>) -> Self {
        WittDiagonal { entries }
    }

    pub fn zero() -> Self {
        WittDiagonal::default()
    }

    pub fn entries(&self) -> &[NormalizedEntry] {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn direct_sum(&self, other: &WittDiagonal) -> WittDiagonal {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        WittDiagonal { entries }
    }

    pub fn negate(&self) -> WittDiagonal {
        WittDiagonal {
            entries: self.entries.iter().map(NormalizedEntry::negate).collect(),
        }
    }

    /// n-fold direct sum with itself; n = 0 is rejected.
    pub fn scale(&self, n: u32) -> Result<WittDiagonal> {
        if n == 0 {
            return Err(Error::InvalidArgument("scale factor must be positive".into()));
        }
        let mut entries = Vec::with_capacity(self.entries.len() * n as usize);
        for _ in 0..n {
            entries.extend(self.entries.iter().cloned());
        }
        Ok(WittDiagonal { entries })
    }

    /// Count of entries whose factor set contains `f` (the `m` of the
    /// per-factor jump parity).
    pub fn entries_containing(&self, f: &IrreducibleFactor) -> usize {
        self.entries
            .iter()
            .filter(|e| e.circle_factors.contains(f) || e.offcircle_factors.contains(f))
            .count()
    }

    /// All distinct circle factors across entries.
    pub fn circle_factors(&self) -> BTreeSet<IrreducibleFactor> {
        let mut set = BTreeSet::new();
        for e in &self.entries {
            set.extend(e.circle_factors.iter().cloned());
        }
        set
    }
}

/// Reduces a symmetric nonzero rational function to a normalized entry.
/// The result has the same sign as the input at every non-root point of
/// the unit circle; square factors, norm factors `h(t) h(1/t)`, and the
/// magnitude of the rational content are dropped.
pub fn normalize_entry(d: &RationalFunction) -> Result<NormalizedEntry> {
    if d.is_zero() {
        return Err(Error::ZeroInput("cannot normalize the zero entry".into()));
    }
    if !d.is_symmetric() {
        return Err(Error::NotSymmetric(d.to_string()));
    }
    // num/den times the norm factor den*involute(den) gives the symmetric
    // Laurent polynomial num*involute(den) with the same circle signs.
    let p = d.num() * &d.den().involute();
    debug_assert!(p.is_symmetric());
    let cheb = to_chebyshev(&p)?;
    let (content, factors) = factor_rational(&cheb)?;
    let mut sign = if content.is_negative() { Sign::Neg } else { Sign::Pos };
    let mut circle = BTreeSet::new();
    let mut offcircle = BTreeSet::new();
    for (f, mult) in factors {
        if mult % 2 == 0 {
            continue;
        }
        if f.is_x_minus_two() {
            // x - 2 = -(1-t)(1-1/t): a norm factor, negative on the circle.
            sign = sign.flip();
        } else if f.is_x_plus_two() {
            // x + 2 = (1+t)(1+1/t): a norm factor, positive on the circle.
        } else if f.has_circle_roots() {
            circle.insert(f);
        } else {
            offcircle.insert(f);
        }
    }
    Ok(NormalizedEntry {
        sign,
        circle_factors: circle,
        offcircle_factors: offcircle,
    })
}

/// A nonsingular hermitian matrix over Q(t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianMatrix {
    n: usize,
    entries: Vec<Vec<RationalFunction>>,
}

/// True iff the square matrix equals its involuted transpose.
pub fn check_hermitian(entries: &[Vec<RationalFunction>]) -> bool {
    let n = entries.len();
    if entries.iter().any(|row| row.len() != n) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            if entries[i][j] != entries[j][i].involute() {
                return false;
            }
        }
    }
    true
}

impl HermitianMatrix {
    pub fn new(entries: Vec<Vec<RationalFunction>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has length {} in a {n}x{n} matrix",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            for j in i..n {
                if entries[i][j] != entries[j][i].involute() {
                    return Err(Error::NotHermitian(i, j));
                }
            }
        }
        Ok(HermitianMatrix { n, entries })
    }

    pub fn from_diagonal(diag: Vec<RationalFunction>) -> Result<Self> {
        let n = diag.len();
        for (i, d) in diag.iter().enumerate() {
            if !d.is_symmetric() {
                return Err(Error::NotHermitian(i, i));
            }
        }
        let mut entries = vec![vec![RationalFunction::zero(); n]; n];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i][i] = d;
        }
        Ok(HermitianMatrix { n, entries })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Vec<RationalFunction>] {
        &self.entries
    }

    /// Exact determinant by fraction elimination.
    pub fn det(&self) -> RationalFunction {
        let mut m = self.entries.clone();
        let n = self.n;
        let mut det = RationalFunction::one();
        for k in 0..n {
            let pivot_row = (k..n).find(|&i| !m[i][k].is_zero());
            let Some(pr) = pivot_row else {
                return RationalFunction::zero();
            };
            if pr != k {
                m.swap(k, pr);
                det = det.neg();
            }
            let pivot = m[k][k].clone();
            det = det.mul(&pivot);
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let factor = m[i][k].div(&pivot).expect("pivot nonzero");
                for j in k..n {
                    let sub = factor.mul(&m[k][j]);
                    m[i][j] = m[i][j].sub(&sub);
                }
            }
        }
        det
    }

    /// Congruence diagonalization: returns `(D, P)` with
    /// `P * A * involute(P)^T = diag(D)` exactly. Every entry of `D` is
    /// symmetric and nonzero; errors on singular input.
    pub fn diagonalize(&self) -> Result<(Vec<RationalFunction>, Vec<Vec<RationalFunction>>)> {
        let n = self.n;
        let mut a = self.entries.clone();
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

        // congruence row/column operation: row_i += c * row_j (and the
        // involuted column operation), recorded in p
        fn add_row(
            a: &mut [Vec<RationalFunction>],
            p: &mut [Vec<RationalFunction>],
            n: usize,
            i: usize,
            j: usize,
            c: &RationalFunction,
        ) {
            for col in 0..n {
                let add = c.mul(&a[j][col]);
                a[i][col] = a[i][col].add(&add);
            }
            let ci = c.involute();
            for row in 0..n {
                let add = ci.mul(&a[row][j]);
                a[row][i] = a[row][i].add(&add);
            }
            for col in 0..n {
                let add = c.mul(&p[j][col]);
                p[i][col] = p[i][col].add(&add);
            }
        }

        fn swap_rows(
            a: &mut [Vec<RationalFunction>],
            p: &mut [Vec<RationalFunction>],
            n: usize,
            i: usize,
            j: usize,
        ) {
            a.swap(i, j);
            for row in a.iter_mut().take(n) {
                row.swap(i, j);
            }
            p.swap(i, j);
        }

        for k in 0..n {
            // Keep the current diagonal entry when it is usable (so
            // already-diagonal input passes through untouched); otherwise
            // prefer a nonzero diagonal entry of minimal combined degree.
            let pivot = if !a[k][k].is_zero() {
                Some(k)
            } else {
                (k..n)
                    .filter(|&i| !a[i][i].is_zero())
                    .min_by_key(|&i| (a[i][i].complexity(), i))
            };
            match pivot {
                Some(i) => {
                    if i != k {
                        swap_rows(&mut a, &mut p, n, k, i);
                    }
                }
                None => {
                    // All remaining diagonal entries vanish; find any
                    // nonzero off-diagonal entry and create a pivot with
                    // the guaranteed-progress congruence, which makes the
                    // new (i,i) entry 2 a_ij involute(a_ij) != 0.
                    let mut found = None;
                    'search: for i in k..n {
                        for j in i + 1..n {
                            if !a[i][j].is_zero() {
                                found = Some((i, j));
                                break 'search;
                            }
                        }
                    }
                    let Some((i, j)) = found else {
                        return Err(Error::Singular);
                    };
                    let c = a[i][j].clone();
                    add_row(&mut a, &mut p, n, i, j, &c);
                    debug_assert!(!a[i][i].is_zero());
                    if i != k {
                        swap_rows(&mut a, &mut p, n, k, i);
                    }
                }
            }
            let pivot = a[k][k].clone();
            debug_assert!(pivot.is_symmetric());
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let c = a[i][k].div(&pivot).expect("pivot nonzero").neg();
                add_row(&mut a, &mut p, n, i, k, &c);
                debug_assert!(a[i][k].is_zero() && a[k][i].is_zero());
            }
        }
        let diag: Vec<RationalFunction> = (0..n).map(|i| a[i][i].clone()).collect();
        for d in &diag {
            debug_assert!(d.is_symmetric() && !d.is_zero());
        }
        Ok((diag, p))
    }

    /// Diagonalize and normalize each entry.
    pub fn normal_form(&self) -> Result<WittDiagonal> {
        let (diag, _) = self.diagonalize()?;
        let entries = diag
            .iter()
            .map(normalize_entry)
            .collect::<Result<Vec<_>>>()?;
        Ok(WittDiagonal::new(entries))
    }
}

/// Reads the form file JSON: `{"kind":"matrix","entries":[[expr,..],..]}`
/// or `{"kind":"diagonal","entries":[expr,..]}` with expressions in the
/// input grammar.
pub fn form_from_json(v: &serde_json::Value) -> Result<HermitianMatrix> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::BadInput("form file must be a JSON object".into()))?;
    let kind = obj
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| Error::BadInput("form file needs a \"kind\" string".into()))?;
    let entries = obj
        .get("entries")
        .and_then(|e| e.as_array())
        .ok_or_else(|| Error::BadInput("form file needs an \"entries\" array".into()))?;
    match kind {
        "diagonal" => {
            let diag = entries
                .iter()
                .map(|e| {
                    let s = e
                        .as_str()
                        .ok_or_else(|| Error::BadInput("diagonal entries are strings".into()))?;
                    crate::expr::parse_expr(s)
                })
                .collect::<Result<Vec<_>>>()?;
            HermitianMatrix::from_diagonal(diag)
        }
        "matrix" => {
            let rows = entries
                .iter()
                .map(|row| {
                    let row = row
                        .as_array()
                        .ok_or_else(|| Error::BadInput("matrix rows are arrays".into()))?;
                    row.iter()
                        .map(|e| {
                            let s = e.as_str().ok_or_else(|| {
                                Error::BadInput("matrix entries are strings".into())
                            })?;
                            crate::expr::parse_expr(s)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            HermitianMatrix::new(rows)
        }
        other => Err(Error::BadInput(format!(
            "unknown form kind {other:?}; expected \"matrix\" or \"diagonal\""
        ))),
    }
}

/// Writes a normalized diagonal as a re-ingestable diagonal form file.
pub fn witt_to_form_json(w: &WittDiagonal) -> serde_json::Value {
    serde_json::json!({
        "kind": "diagonal",
        "entries": w
            .entries()
            .iter()
            .map(|e| e.represented().to_string())
            .collect::<Vec<_>>(),
    })
}

/// `P * A * involute(P)^T`, for congruence certificates in tests.
pub fn congruence_apply(
    p: &[Vec<RationalFunction>],
    a: &[Vec<RationalFunction>],
) -> Vec<Vec<RationalFunction>> {
    let n = a.len();
    let mut pa = vec![vec![RationalFunction::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = RationalFunction::zero();
            for k in 0..n {
                acc = acc.add(&p[i][k].mul(&a[k][j]));
            }
            pa[i][j] = acc;
        }
    }
    let mut out = vec![vec![RationalFunction::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = RationalFunction::zero();
            for k in 0..n {
                acc = acc.add(&pa[i][k].mul(&p[j][k].involute()));
            }
            out[i][j] = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::rational::rat_int;

    fn rf(s: &str) -> RationalFunction {
        parse_expr(s).unwrap()
    }

    fn matrix(rows: &[&[&str]]) -> Vec<Vec<RationalFunction>> {
        rows.iter()
            .map(|r| r.iter().map(|s| rf(s)).collect())
            .collect()
    }

    #[test]
    fn hermitian_checks() {
        assert!(check_hermitian(&matrix(&[&["t^-1 - 1 + t"]])));
        assert!(check_hermitian(&matrix(&[
            &["0", "1 - t"],
            &["1 - t^-1", "0"]
        ])));
        assert!(!check_hermitian(&matrix(&[
            &["0", "1 - t"],
            &["1 - t", "0"]
        ])));
    }

    #[test]
    fn diagonal_matrices_pass_through() {
        let m = HermitianMatrix::from_diagonal(vec![
            rf("-(t^-2 - t^-1 + 1 - t + t^2)"),
            rf("1"),
        ])
        .unwrap();
        let (d, p) = m.diagonalize().unwrap();
        assert_eq!(d[0], rf("-(t^-2 - t^-1 + 1 - t + t^2)"));
        assert_eq!(d[1], rf("1"));
        // identity congruence
        for (i, row) in p.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(e.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn metabolic_plane_diagonalizes() {
        let m = HermitianMatrix::new(matrix(&[&["0", "1 - t"], &["1 - t^-1", "0"]])).unwrap();
        let (d, p) = m.diagonalize().unwrap();
        assert_eq!(d.len(), 2);
        // certificate: P A involute(P)^T = diag(D)
        let out = congruence_apply(&p, m.entries());
        for i in 0..2 {
            for j in 0..2 {
                if i == j {
                    assert_eq!(out[i][j], d[i]);
                } else {
                    assert!(out[i][j].is_zero());
                }
            }
        }
        // the two entries have opposite signs at every circle point:
        // normalized signs must cancel
        let e0 = normalize_entry(&d[0]).unwrap();
        let e1 = normalize_entry(&d[1]).unwrap();
        let sample = rat_int(0);
        assert_eq!(
            e0.sign_at_sample(&sample) + e1.sign_at_sample(&sample),
            0
        );
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = HermitianMatrix::new(matrix(&[&["1", "1"], &["1", "1"]])).unwrap();
        assert_eq!(m.diagonalize().unwrap_err(), Error::Singular);
    }

    #[test]
    fn normalize_entry_examples() {
        // -delta_10 * delta_6 -> sign -, circle factors {x^2-x-1, x-1}
        let d = rf("-(t^-2 - t^-1 + 1 - t + t^2)*(t^-1 - 1 + t)");
        let e = normalize_entry(&d).unwrap();
        assert_eq!(e.sign, Sign::Neg);
        assert_eq!(e.circle_factors.len(), 2);
        assert!(e.offcircle_factors.is_empty());

        // t - 2 + t^-1 = x - 2: a square times a unit, negative on the circle
        let e2 = normalize_entry(&rf("t - 2 + t^-1")).unwrap();
        assert_eq!(e2.sign, Sign::Neg);
        assert!(e2.circle_factors.is_empty() && e2.offcircle_factors.is_empty());

        // 9 * delta_6^2: positive square
        let e3 = normalize_entry(&rf("9*(t^-1 - 1 + t)^2")).unwrap();
        assert_eq!(e3.sign, Sign::Pos);
        assert!(e3.circle_factors.is_empty() && e3.offcircle_factors.is_empty());

        // rejects non-symmetric and zero input
        assert!(normalize_entry(&rf("1 - t")).is_err());
        assert!(normalize_entry(&rf("0")).is_err());
    }

    #[test]
    fn normalize_entry_keeps_offcircle_factors() {
        // (t-3)(t^-1-3) = 10 - 3(t + 1/t) = -(3x - 10): off-circle factor
        let e = normalize_entry(&rf("(t - 3)*(t^-1 - 3)")).unwrap();
        assert!(e.circle_factors.is_empty());
        assert_eq!(e.offcircle_factors.len(), 1);
        // the represented polynomial is positive at x = 0 like the input
        assert_eq!(e.sign_at_sample(&rat_int(0)), 1);
    }

    #[test]
    fn normalize_idempotent() {
        let d = rf("-(t^-2 - t^-1 + 1 - t + t^2)*(t^-1 - 1 + t)");
        let e = normalize_entry(&d).unwrap();
        let again = normalize_entry(&RationalFunction::from_poly(e.represented())).unwrap();
        assert_eq!(e, again);
    }

    #[test]
    fn witt_diagonal_operations() {
        let d = rf("-(t^-2 - t^-1 + 1 - t + t^2)");
        let w2 = WittDiagonal::new(vec![
            normalize_entry(&d).unwrap(),
            NormalizedEntry::unit(Sign::Pos),
        ]);
        assert_eq!(w2.dimension(), 2);
        assert_eq!(w2.direct_sum(&w2).dimension(), 4);
        assert_eq!(w2.negate().negate(), w2);
        assert_eq!(w2.scale(3).unwrap().dimension(), 6);
        assert!(w2.scale(0).is_err());
    }
}
