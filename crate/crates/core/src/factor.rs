//! Exact factorization of polynomials in the Chebyshev coordinate over Q.
//!
//! The pipeline is squarefree decomposition (Yun), then factorization of
//! each squarefree part over the integers by the classical route: reduce
//! modulo a suitable prime, factor with Berlekamp's algorithm, Hensel-lift
//! to a precision beyond the Landau-Mignotte coefficient bound, and
//! recombine lifted factors by trial division. Inputs at desk scale
//! (degree up to a few dozen) factor instantly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::angle::count_circle_roots;
use crate::error::Error;
use crate::laurent::ChebPoly;
use crate::rational::Rational;
use crate::Result;

/// An irreducible factor in the Chebyshev coordinate: primitive integer
/// coefficients, positive leading coefficient. Identity (equality, order,
/// map keys) is the coefficient sequence.
#[derive(Debug, Clone)]
pub struct IrreducibleFactor {
    cheb: ChebPoly,
    has_circle_roots: bool,
}

impl IrreducibleFactor {
    /// Wraps a polynomial that is already known to be irreducible over Q.
    /// Normalizes to the canonical primitive, positive-leading form and
    /// computes whether it has a root in the open interval (-2, 2).
    pub fn new(cheb: ChebPoly) -> Result<Self> {
        if cheb.is_zero() || cheb.degree() == 0 {
            return Err(Error::InvalidArgument(
                "irreducible factor must have positive degree".into(),
            ));
        }
        let (_, prim) = to_primitive(&cheb);
        let has_circle_roots = count_circle_roots(&prim) > 0;
        Ok(IrreducibleFactor {
            cheb: prim,
            has_circle_roots,
        })
    }

    pub fn cheb(&self) -> &ChebPoly {
        &self.cheb
    }

    pub fn has_circle_roots(&self) -> bool {
        self.has_circle_roots
    }

    pub fn degree(&self) -> usize {
        self.cheb.degree()
    }

    /// `x - 2`, the Chebyshev image of the doubled root at t = 1.
    pub fn is_x_minus_two(&self) -> bool {
        self.cheb == ChebPoly::from_i64(&[-2, 1])
    }

    /// `x + 2`, the Chebyshev image of the doubled root at t = -1.
    pub fn is_x_plus_two(&self) -> bool {
        self.cheb == ChebPoly::from_i64(&[2, 1])
    }
}

impl PartialEq for IrreducibleFactor {
    fn eq(&self, other: &Self) -> bool {
        self.cheb == other.cheb
    }
}

impl Eq for IrreducibleFactor {}

impl PartialOrd for IrreducibleFactor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IrreducibleFactor {
    /// Deterministic order: by degree, then lexicographically on the
    /// coefficient sequence (ascending powers).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.cheb.coeffs().cmp(other.cheb.coeffs()))
    }
}

impl std::hash::Hash for IrreducibleFactor {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.cheb.coeffs().hash(state);
    }
}

impl fmt::Display for IrreducibleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cheb)
    }
}

/// Splits a rational polynomial into content and primitive positive-leading
/// integer part.
pub fn to_primitive(p: &ChebPoly) -> (Rational, ChebPoly) {
    assert!(!p.is_zero());
    let mut denom_lcm = BigInt::one();
    for c in p.coeffs() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    let mut content = Rational::new(g.clone(), denom_lcm);
    let mut prim: Vec<Rational> = ints
        .iter()
        .map(|c| Rational::from_integer(c / &g))
        .collect();
    if prim.last().unwrap().is_negative() {
        content = -content;
        for c in &mut prim {
            *c = -c.clone();
        }
    }
    (content, ChebPoly::new(prim))
}

/// Content and primitive part of an integer-coefficient polynomial,
/// with positive leading coefficient.
fn primitive_int(p: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return vec![];
    }
    if p.last().unwrap().is_negative() {
        g = -g;
    }
    p.iter().map(|c| c / &g).collect()
}

fn cheb_from_ints(p: &[BigInt]) -> ChebPoly {
    ChebPoly::new(p.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

fn ints_from_cheb(p: &ChebPoly) -> Vec<BigInt> {
    debug_assert!(p.coeffs().iter().all(|c| c.is_integer()));
    p.coeffs().iter().map(|c| c.numer().clone()).collect()
}

/// Yun's squarefree decomposition over Q. Returns monic squarefree parts
/// with their multiplicities; parts of degree zero are omitted.
fn squarefree_parts(p: &ChebPoly) -> Vec<(ChebPoly, u32)> {
    let monic = p.scale(&p.leading().recip());
    let deriv = monic.derivative();
    let g = monic.gcd(&deriv);
    if g.degree() == 0 {
        return vec![(monic, 1)];
    }
    let mut out = Vec::new();
    let mut b = monic.divrem(&g).0;
    let mut c = deriv.divrem(&g).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1u32;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        if a.degree() > 0 {
            out.push((a.clone(), i));
        }
        b = b.divrem(&a).0;
        c = d.divrem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

// --- arithmetic in F_p[x] for a small odd prime p ------------------------

type PolyP = Vec<u64>;

fn p_trim(mut v: PolyP) -> PolyP {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn p_deg(v: &PolyP) -> usize {
    v.len().saturating_sub(1)
}

fn p_from_ints(p: &[BigInt], m: u64) -> PolyP {
    let mp = BigInt::from(m);
    p_trim(
        p.iter()
            .map(|c| {
                let r = c.mod_floor(&mp);
                r.to_u64().unwrap()
            })
            .collect(),
    )
}

fn p_mul(a: &PolyP, b: &PolyP, m: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % m;
        }
    }
    p_trim(out)
}

fn p_sub(a: &PolyP, b: &PolyP, m: u64) -> PolyP {
    let n = a.len().max(b.len());
    p_trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + m - y) % m
            })
            .collect(),
    )
}

fn p_scale(a: &PolyP, c: u64, m: u64) -> PolyP {
    p_trim(a.iter().map(|&x| x * c % m).collect())
}

fn p_inv_scalar(c: u64, m: u64) -> u64 {
    // Fermat inverse; m is prime.
    let mut base = c % m;
    let mut exp = m - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn p_divrem(a: &PolyP, b: &PolyP, m: u64) -> (PolyP, PolyP) {
    assert!(!b.is_empty());
    let mut rem = a.clone();
    let mut quo = vec![0u64; a.len()];
    let lead_inv = p_inv_scalar(*b.last().unwrap(), m);
    while rem.len() >= b.len() && !rem.is_empty() {
        let k = rem.len() - b.len();
        let c = rem.last().unwrap() * lead_inv % m;
        for (j, &bc) in b.iter().enumerate() {
            rem[k + j] = (rem[k + j] + m - c * bc % m) % m;
        }
        rem = p_trim(rem);
        if k < quo.len() {
            quo[k] = c;
        }
    }
    (p_trim(quo), rem)
}

fn p_gcd(a: &PolyP, b: &PolyP, m: u64) -> PolyP {
    let mut f = a.clone();
    let mut g = b.clone();
    while !g.is_empty() {
        let (_, r) = p_divrem(&f, &g, m);
        f = g;
        g = r;
    }
    if f.is_empty() {
        return f;
    }
    let inv = p_inv_scalar(*f.last().unwrap(), m);
    p_scale(&f, inv, m)
}

/// Extended Euclid in F_p[x]: returns (s, t) with s*a + t*b = 1.
/// Requires gcd(a, b) = 1.
fn p_bezout(a: &PolyP, b: &PolyP, m: u64) -> (PolyP, PolyP) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = p_divrem(&r0, &r1, m);
        let s = p_sub(&s0, &p_mul(&q, &s1, m), m);
        let t = p_sub(&t0, &p_mul(&q, &t1, m), m);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    assert_eq!(p_deg(&r0), 0, "p_bezout requires coprime inputs");
    let inv = p_inv_scalar(r0[0], m);
    (p_scale(&s0, inv, m), p_scale(&t0, inv, m))
}

fn p_powmod_x(exp: u64, f: &PolyP, m: u64) -> PolyP {
    // x^exp mod f
    let mut result = vec![1u64];
    let mut base = p_divrem(&vec![0, 1], f, m).1;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = p_divrem(&p_mul(&result, &base, m), f, m).1;
        }
        base = p_divrem(&p_mul(&base, &base, m), f, m).1;
        e >>= 1;
    }
    result
}

/// Berlekamp factorization of a monic squarefree polynomial over F_p.
fn berlekamp(f: &PolyP, p: u64) -> Vec<PolyP> {
    let d = p_deg(f);
    if d <= 1 {
        return vec![f.clone()];
    }
    // Matrix with columns x^{jp} mod f, as coefficient vectors.
    let xp = p_powmod_x(p, f, p);
    let mut cols: Vec<PolyP> = Vec::with_capacity(d);
    let mut cur = vec![1u64];
    for _ in 0..d {
        cols.push(cur.clone());
        cur = p_divrem(&p_mul(&cur, &xp, p), f, p).1;
    }
    // Nullspace of (Q - I): rows indexed by coefficient, columns by j.
    let mut mat = vec![vec![0u64; d]; d];
    for (j, col) in cols.iter().enumerate() {
        for (i, &c) in col.iter().enumerate() {
            mat[i][j] = c;
        }
        mat[j][j] = (mat[j][j] + p - 1) % p;
    }
    let basis = p_nullspace(&mat, p);
    let r = basis.len();
    let mut factors: Vec<PolyP> = vec![f.clone()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        if p_deg(v) == 0 {
            continue; // the constant vector never splits anything
        }
        let mut next: Vec<PolyP> = Vec::new();
        for u in factors {
            if p_deg(&u) <= 1 {
                next.push(u);
                continue;
            }
            let mut remaining = u;
            for s in 0..p {
                if p_deg(&remaining) == 0 {
                    break;
                }
                let mut shifted = v.clone();
                if shifted.is_empty() {
                    shifted = vec![0];
                }
                shifted[0] = (shifted[0] + p - s) % p;
                let g = p_gcd(&remaining, &p_trim(shifted), p);
                if p_deg(&g) > 0 && p_deg(&g) < p_deg(&remaining) {
                    remaining = p_divrem(&remaining, &g, p).0;
                    next.push(g);
                }
            }
            if p_deg(&remaining) > 0 {
                next.push(remaining);
            }
        }
        factors = next;
    }
    for f in &mut factors {
        let inv = p_inv_scalar(*f.last().unwrap(), p);
        *f = p_scale(f, inv, p);
    }
    factors.sort();
    factors
}

/// Nullspace basis of a square matrix over F_p (vectors as polynomials).
fn p_nullspace(mat: &[Vec<u64>], p: u64) -> Vec<PolyP> {
    let n = mat.len();
    let mut m: Vec<Vec<u64>> = mat.to_vec();
    let mut pivot_col_of_row = vec![usize::MAX; n];
    let mut row = 0;
    for col in 0..n {
        let mut pivot = None;
        for r in row..n {
            if m[r][col] != 0 {
                pivot = Some(r);
                break;
            }
        }
        let Some(pr) = pivot else { continue };
        m.swap(row, pr);
        let inv = p_inv_scalar(m[row][col], p);
        for c in 0..n {
            m[row][c] = m[row][c] * inv % p;
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..n {
                    m[r][c] = (m[r][c] + p - factor * m[row][c] % p) % p;
                }
            }
        }
        pivot_col_of_row[row] = col;
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row[..row].to_vec();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (p - m[r][free] % p) % p;
        }
        basis.push(p_trim(v));
    }
    basis
}

// --- Hensel lifting -------------------------------------------------------

fn z_mod_reduce(p: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = p.iter().map(|c| c.mod_floor(modulus)).collect();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn z_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn z_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigInt> = (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_else(BigInt::zero)
                - b.get(i).cloned().unwrap_or_else(BigInt::zero)
        })
        .collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn ints_to_polyp(p: &[BigInt], m: u64) -> PolyP {
    p_from_ints(p, m)
}

fn polyp_to_ints(p: &PolyP) -> Vec<BigInt> {
    p.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f = g*h (mod p)` with monic g, h to the same congruence mod
/// `p^k`, one linear step at a time. All of f, g, h are monic.
fn hensel_pair(
    f: &[BigInt],
    g0: &PolyP,
    h0: &PolyP,
    p: u64,
    k: u32,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (_, t) = p_bezout(g0, h0, p);
    let mut g = polyp_to_ints(g0);
    let mut h = polyp_to_ints(h0);
    let mut modulus = BigInt::from(p);
    let big_p = BigInt::from(p);
    for _ in 1..k {
        // e = (f - g*h) / modulus, reduced mod p
        let diff = z_sub(f, &z_mul(&g, &h));
        let e_big: Vec<BigInt> = diff.iter().map(|c| c / &modulus).collect();
        let e = ints_to_polyp(&e_big, p);
        if !e.is_empty() {
            // u = (t*e) rem g0, v = (e - h0*u) / g0 over F_p
            let te = p_mul(&t, &e, p);
            let (_, u) = p_divrem(&te, g0, p);
            let hu = p_mul(h0, &u, p);
            let num = p_sub(&e, &hu, p);
            let (v, rem) = p_divrem(&num, g0, p);
            debug_assert!(rem.is_empty(), "hensel correction must divide exactly");
            // deg u < deg g and deg v < deg h, so monic leads are safe
            for (i, &c) in u.iter().enumerate() {
                g[i] += &modulus * BigInt::from(c);
            }
            for (i, &c) in v.iter().enumerate() {
                h[i] += &modulus * BigInt::from(c);
            }
        }
        modulus *= &big_p;
        g = z_mod_reduce(&g, &modulus);
        h = z_mod_reduce(&h, &modulus);
        // restore monic leading terms dropped by reduction
        fix_monic(&mut g, p_deg(g0));
        fix_monic(&mut h, p_deg(h0));
    }
    (g, h)
}

fn fix_monic(v: &mut Vec<BigInt>, deg: usize) {
    while v.len() < deg + 1 {
        v.push(BigInt::zero());
    }
    debug_assert!(v[deg].is_one(), "lift must stay monic");
}

/// Balanced representative in (-m/2, m/2].
fn balance(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn z_divides(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    // Exact division test over Z for a monic-or-not denominator; uses
    // rational division and integrality check.
    if den.is_empty() {
        return None;
    }
    let a = cheb_from_ints(num);
    let b = cheb_from_ints(den);
    let (q, r) = a.divrem(&b);
    if !r.is_zero() {
        return None;
    }
    if q.coeffs().iter().all(|c| c.is_integer()) {
        Some(ints_from_cheb(&q))
    } else {
        None
    }
}

/// Factorization of a primitive squarefree integer polynomial with
/// positive leading coefficient into irreducible factors (primitive,
/// positive leading coefficient).
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let d = f.len() - 1;
    if d <= 1 {
        return vec![f.to_vec()];
    }
    // Make monic by the classical substitution y = lc * x:
    // f*(y) = lc^(d-1) f(y / lc) is monic with integer coefficients
    // lc^(d-1-i) * f_i.
    let lc = f.last().unwrap().clone();
    let mut monic: Vec<BigInt> = Vec::with_capacity(d + 1);
    for (i, c) in f.iter().enumerate() {
        if i == d {
            monic.push(BigInt::one());
        } else {
            monic.push(c * lc.pow((d - 1 - i) as u32));
        }
    }

    // Choose an odd prime where the reduction stays squarefree.
    let p = choose_prime(&monic);
    let fp = ints_to_polyp(&monic, p);
    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // Coefficient bound for monic factors of `monic` (Mignotte-style,
    // deliberately generous) and the lifting precision.
    let norm1: BigInt = monic.iter().map(|c| c.abs()).sum();
    let bound: BigInt = (BigInt::one() << (d + 1)) * norm1 + 1i32;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= &bound * 2 {
        pk *= p;
        k += 1;
    }

    // Lift factors one at a time against the product of the rest.
    let mut lifted: Vec<Vec<BigInt>> = Vec::with_capacity(modular.len());
    let mut current: Vec<BigInt> = monic.clone();
    for i in 0..modular.len() - 1 {
        let mut rest = vec![1u64];
        for m in &modular[i + 1..] {
            rest = p_mul(&rest, m, p);
        }
        let (g, h) = hensel_pair(&current, &modular[i], &rest, p, k);
        lifted.push(g);
        current = h;
    }
    lifted.push(current);

    // Recombination by trial division over Z.
    let pk_big = pk.clone();
    let mut remaining = monic.clone();
    let mut pool: Vec<Vec<BigInt>> = lifted;
    let mut out_monic: Vec<Vec<BigInt>> = Vec::new();
    let mut size = 1usize;
    while 2 * size <= pool.len() {
        let mut advanced = false;
        for combo in combinations(pool.len(), size) {
            let mut prod = vec![BigInt::one()];
            for &idx in &combo {
                prod = z_mod_reduce(&z_mul(&prod, &pool[idx]), &pk_big);
            }
            let candidate: Vec<BigInt> = prod.iter().map(|c| balance(c, &pk_big)).collect();
            let candidate = trim_ints(candidate);
            if candidate.is_empty() {
                continue;
            }
            if let Some(q) = z_divides(&remaining, &candidate) {
                out_monic.push(candidate);
                remaining = q;
                let keep: Vec<Vec<BigInt>> = pool
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                pool = keep;
                advanced = true;
                break;
            }
        }
        if !advanced {
            size += 1;
        }
    }
    if remaining.len() > 1 {
        out_monic.push(remaining);
    }

    // Undo the monicizing substitution: a factor G(y) of f* maps to the
    // primitive part of G(lc * x).
    out_monic
        .into_iter()
        .map(|g| {
            let mapped: Vec<BigInt> = g
                .iter()
                .enumerate()
                .map(|(i, c)| c * lc.pow(i as u32))
                .collect();
            primitive_int(&mapped)
        })
        .collect()
}

fn trim_ints(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k as isize - 1;
        while i >= 0 && idx[i as usize] == (i as usize) + n - k {
            i -= 1;
        }
        if i < 0 {
            return out;
        }
        let i = i as usize;
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn choose_prime(monic: &[BigInt]) -> u64 {
    let mut p = 3u64;
    loop {
        if is_prime_u64(p) {
            let fp = ints_to_polyp(monic, p);
            if p_deg(&fp) == monic.len() - 1 {
                let deriv: PolyP = p_trim(
                    fp.iter()
                        .enumerate()
                        .skip(1)
                        .map(|(i, &c)| (i as u64 % p) * c % p)
                        .collect(),
                );
                if !deriv.is_empty() && p_deg(&p_gcd(&fp, &deriv, p)) == 0 {
                    return p;
                }
            }
        }
        p += 2;
    }
}

/// Factors a nonzero rational polynomial into content and irreducible
/// factors with multiplicities. The factors are primitive with positive
/// leading coefficients and are sorted by degree, then lexicographically
/// on coefficients. `content * prod factor^mult = input` exactly.
pub fn factor_rational(p: &ChebPoly) -> Result<(Rational, Vec<(IrreducibleFactor, u32)>)> {
    if p.is_zero() {
        return Err(Error::ZeroInput("cannot factor the zero polynomial".into()));
    }
    if p.degree() == 0 {
        return Ok((p.coeff(0), vec![]));
    }
    let mut factors: Vec<(IrreducibleFactor, u32)> = Vec::new();
    for (part, mult) in squarefree_parts(p) {
        let (_, prim) = to_primitive(&part);
        for irr in zassenhaus(&ints_from_cheb(&prim)) {
            let f = IrreducibleFactor::new(cheb_from_ints(&irr))?;
            factors.push((f, mult));
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    // Exact content from the leading coefficients.
    let mut lead_prod = Rational::one();
    for (f, m) in &factors {
        for _ in 0..*m {
            lead_prod *= f.cheb().leading();
        }
    }
    let content = p.leading() / lead_prod;
    #[cfg(debug_assertions)]
    {
        let mut check = ChebPoly::constant(content.clone());
        for (f, m) in &factors {
            for _ in 0..*m {
                check = check.mul(f.cheb());
            }
        }
        debug_assert_eq!(&check, p, "factorization identity failed");
    }
    Ok((content, factors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn factor_i64(coeffs: &[i64]) -> (Rational, Vec<(Vec<i64>, u32)>) {
        let (c, fs) = factor_rational(&ChebPoly::from_i64(coeffs)).unwrap();
        let fs = fs
            .into_iter()
            .map(|(f, m)| {
                (
                    f.cheb()
                        .coeffs()
                        .iter()
                        .map(|c| {
                            assert!(c.is_integer());
                            c.numer().try_into().unwrap()
                        })
                        .collect::<Vec<i64>>(),
                    m,
                )
            })
            .collect();
        (c, fs)
    }

    #[test]
    fn golden_ratio_poly_is_irreducible() {
        let (c, fs) = factor_i64(&[-1, -1, 1]);
        assert_eq!(c, rat_int(1));
        assert_eq!(fs, vec![(vec![-1, -1, 1], 1)]);
    }

    #[test]
    fn splits_difference_of_squares() {
        // 2x^2 - 2 = 2 (x-1)(x+1)
        let (c, fs) = factor_i64(&[-2, 0, 2]);
        assert_eq!(c, rat_int(2));
        assert_eq!(fs, vec![(vec![-1, 1], 1), (vec![1, 1], 1)]);
    }

    #[test]
    fn squarefree_multiplicities() {
        // (x-1)^2
        let (c, fs) = factor_i64(&[1, -2, 1]);
        assert_eq!(c, rat_int(1));
        assert_eq!(fs, vec![(vec![-1, 1], 2)]);
    }

    #[test]
    fn factors_rational_content() {
        // (3/2) (x-1)(x^2-x-1)
        let p = ChebPoly::from_i64(&[-1, 1])
            .mul(&ChebPoly::from_i64(&[-1, -1, 1]))
            .scale(&rat(3, 2));
        let (c, fs) = factor_rational(&p).unwrap();
        assert_eq!(c, rat(3, 2));
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn zero_input_rejected() {
        assert!(factor_rational(&ChebPoly::zero()).is_err());
    }

    #[test]
    fn nontrivial_leading_coefficient() {
        // (2x - 1)(3x + 1) = 6x^2 - x - 1
        let (c, fs) = factor_i64(&[-1, -1, 6]);
        assert_eq!(c, rat_int(1));
        assert_eq!(fs, vec![(vec![-1, 2], 1), (vec![1, 3], 1)]);
    }

    #[test]
    fn deep_product_recombination() {
        // x^4 - 10x^2 + 1 = minimal poly of sqrt(2)+sqrt(3): irreducible,
        // but splits into four linears mod every prime.
        let (c, fs) = factor_i64(&[1, 0, -10, 0, 1]);
        assert_eq!(c, rat_int(1));
        assert_eq!(fs, vec![(vec![1, 0, -10, 0, 1], 1)]);
    }

    #[test]
    fn cyclotomic_like_products() {
        // (x^2 - 2)(x^2 - 3)(x - 1)
        let p = ChebPoly::from_i64(&[-2, 0, 1])
            .mul(&ChebPoly::from_i64(&[-3, 0, 1]))
            .mul(&ChebPoly::from_i64(&[-1, 1]));
        let (c, fs) = factor_rational(&p).unwrap();
        assert_eq!(c, rat_int(1));
        let degs: Vec<usize> = fs.iter().map(|(f, _)| f.degree()).collect();
        assert_eq!(degs, vec![1, 2, 2]);
    }
}
