//! Integer polynomial arithmetic specialized to cyclotomic polynomials, the
//! quotients `Psi_d = (x^d - 1)/Phi_d`, and the root-of-unity inflation of
//! characteristic polynomials.
//!
//! Inflation is computed by exact arithmetic in Z[Y]/Phi_d(Y) (a norm-form
//! determinant over Z[X]); the eigenvalues themselves are never materialized.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::{Error, Result};

/// Integer polynomial, coefficients in ascending degree order.  The zero
/// polynomial is stored with an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn x() -> Self {
        IntPoly::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    /// Strips trailing zeros so the representation is canonical.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// x^n + c
    pub fn x_pow_plus(n: usize, c: i64) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(c);
        coeffs[n] = BigInt::one();
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: usize) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; panics if `other` does not divide `self` over Z.
    pub fn exact_div(&self, other: &IntPoly) -> IntPoly {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        assert!(
            self.degree() >= other.degree(),
            "exact_div: degree underflow"
        );
        let mut rem = self.coeffs.clone();
        let qlen = self.degree() - other.degree() + 1;
        let mut q = vec![BigInt::zero(); qlen];
        let lead = other.coeffs.last().unwrap().clone();
        for k in (0..qlen).rev() {
            let top = rem[k + other.degree()].clone();
            if top.is_zero() {
                continue;
            }
            let (c, r) = (&top / &lead, &top % &lead);
            assert!(r.is_zero(), "exact_div: inexact leading division");
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            q[k] = c;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "exact_div: nonzero remainder");
        IntPoly::from_coeffs(q)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Companion matrix (requires monic, degree >= 1); columns map basis
    /// vectors, i.e. the matrix acts on column vectors.
    pub fn companion(&self) -> crate::exactlinalg::IntMatrix {
        assert!(self.is_monic() && self.degree() >= 1);
        let n = self.degree();
        let mut m = crate::exactlinalg::IntMatrix::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, BigInt::one());
        }
        for i in 0..n {
            m.set(i, n - 1, -self.coeff(i));
        }
        m
    }
}

/// Mobius function.
pub fn mobius(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Precondition("mobius: n must be >= 1".into()));
    }
    let mut n = n;
    let mut primes = 0i64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    Ok(if primes % 2 == 0 { 1 } else { -1 })
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    for p in prime_divisors(n) {
        result = result / p * (p - 1);
    }
    result
}

/// The d-th cyclotomic polynomial, by recursive division of x^d - 1.
pub fn cyclotomic(d: u64) -> IntPoly {
    assert!(d >= 1);
    if d == 1 {
        return IntPoly::from_i64(&[-1, 1]);
    }
    let mut result = IntPoly::x_pow_plus(d as usize, -1);
    for e in divisors(d) {
        if e < d {
            result = result.exact_div(&cyclotomic(e));
        }
    }
    result
}

/// Psi_d = (x^d - 1) / Phi_d.
pub fn psi(d: u64) -> IntPoly {
    assert!(d >= 1);
    IntPoly::x_pow_plus(d as usize, -1).exact_div(&cyclotomic(d))
}

/// Given monic `f` with roots `a_i`, returns the monic integer polynomial
/// `prod_{i, zeta} (X - a_i zeta)^(phi(r)/phi(d))` with `zeta` running over
/// the primitive d-th roots of unity.  Computed as the norm of the
/// homogenization of `f` down from Z[X][Y]/Phi_d(Y) to Z[X], raised to the
/// power phi(r)/phi(d).
pub fn inflate_charpoly(f: &IntPoly, r: u64, d: u64) -> Result<IntPoly> {
    if !f.is_monic() {
        return Err(Error::Precondition("inflate_charpoly: f must be monic".into()));
    }
    if d == 0 || r == 0 || r % d != 0 {
        return Err(Error::Precondition("inflate_charpoly: d must divide r".into()));
    }
    let exponent = (euler_phi(r) / euler_phi(d)) as usize;
    let n = f.degree();
    let phi_d = cyclotomic(d);
    let m = phi_d.degree(); // = phi(d)

    // u = Y^n f(X/Y) mod Phi_d(Y), an element of Z[Y]/Phi_d with Z[X]
    // coefficients: sum_j f_j X^j Y^(n-j)
    // Precompute Y^k mod Phi_d for k = 0..n as integer coefficient vectors.
    let mut ypows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    let mut cur = vec![BigInt::zero(); m];
    if m > 0 {
        cur[0] = BigInt::one();
    }
    ypows.push(cur.clone());
    for _ in 1..=n {
        cur = mul_by_y(&cur, &phi_d);
        ypows.push(cur.clone());
    }
    // u as a vector of Z[X] entries in the basis 1, Y, ..., Y^(m-1)
    let mut u: Vec<IntPoly> = vec![IntPoly::zero(); m.max(1)];
    for j in 0..=n {
        let fj = f.coeff(j);
        if fj.is_zero() {
            continue;
        }
        let xj = {
            let mut c = vec![BigInt::zero(); j + 1];
            c[j] = fj;
            IntPoly::from_coeffs(c)
        };
        if m == 0 {
            // d = 1 would give m = 1; m = 0 cannot happen for d >= 1
            unreachable!();
        }
        for (k, yc) in ypows[n - j].iter().enumerate() {
            if !yc.is_zero() {
                u[k] = u[k].add(&xj.scale(yc));
            }
        }
    }

    // multiplication-by-u matrix on the basis 1, Y, ..., Y^(m-1): column k
    // holds u * Y^k reduced mod Phi_d
    let mut cols: Vec<Vec<IntPoly>> = Vec::with_capacity(m);
    let mut shifted = u.clone();
    cols.push(shifted.clone());
    for _ in 1..m {
        shifted = mul_poly_vec_by_y(&shifted, &phi_d);
        cols.push(shifted.clone());
    }
    let mut mat = vec![vec![IntPoly::zero(); m]; m];
    for (k, col) in cols.iter().enumerate() {
        for (i, entry) in col.iter().enumerate() {
            mat[i][k] = entry.clone();
        }
    }
    let norm = bareiss_det_poly(mat);
    Ok(norm.pow(exponent))
}

/// Multiply an element of Z[Y]/Phi (integer coefficients) by Y.
fn mul_by_y(v: &[BigInt], phi: &IntPoly) -> Vec<BigInt> {
    let m = phi.degree();
    let mut out = vec![BigInt::zero(); m];
    for i in 0..m - 1 {
        out[i + 1] = v[i].clone();
    }
    let top = v[m - 1].clone();
    if !top.is_zero() {
        // Y^m = -sum phi_i Y^i (phi monic)
        for i in 0..m {
            out[i] -= &top * phi.coeff(i);
        }
    }
    out
}

/// Same, for an element with Z[X] coefficients.
fn mul_poly_vec_by_y(v: &[IntPoly], phi: &IntPoly) -> Vec<IntPoly> {
    let m = phi.degree();
    let mut out = vec![IntPoly::zero(); m];
    for i in 0..m - 1 {
        out[i + 1] = v[i].clone();
    }
    let top = v[m - 1].clone();
    if !top.is_zero() {
        for i in 0..m {
            out[i] = out[i].sub(&top.scale(&phi.coeff(i)));
        }
    }
    out
}

/// Fraction-free determinant of a matrix with polynomial entries (Bareiss);
/// every division is exact in Z[X].
fn bareiss_det_poly(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut sign = 1i64;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return IntPoly::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// |f(1)|
pub fn eval_at_one_abs(f: &IntPoly) -> BigInt {
    f.eval(&BigInt::one()).abs()
}
