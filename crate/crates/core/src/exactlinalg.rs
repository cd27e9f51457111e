//! Exact integer-matrix linear algebra: Hermite and Smith normal forms,
//! kernels, saturation, lattice intersection and index.
//!
//! All entries are arbitrary-precision integers; intermediate entries in a
//! normal-form computation can exceed 64 bits even for small inputs, so no
//! fixed-width arithmetic is used anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        IntMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<BigInt> {
        self.row(r).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row(r).iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.at(r, c) + a * other.at(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] += &other.data[i];
        }
        out
    }

    pub fn neg(&self) -> IntMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = -std::mem::take(v);
        }
        out
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Put `other` to the right of `self`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.at(r, c).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                out.set(r - r0, c - c0, self.at(r, c).clone());
            }
        }
        out
    }

    /// Kronecker product; block (i,j) is `self[i][j] * other`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.at(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for c in 0..self.cols {
                out[c] += x * self.at(r, c);
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply_col(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![BigInt::zero(); self.rows];
        for r in 0..self.rows {
            for (c, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    out[r] += self.at(r, c) * x;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.at(i, c).clone();
            self.set(i, c, v);
        }
    }

    /// row_i += q * row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.at(i, c) + q * self.at(j, c);
            self.set(i, c, v);
        }
    }

    /// Replace rows (i, j) by (x*r_i + y*r_j, z*r_i + w*r_j).
    fn combine_rows(&mut self, i: usize, j: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for c in 0..self.cols {
            let a = self.at(i, c).clone();
            let b = self.at(j, c).clone();
            self.set(i, c, x * &a + y * &b);
            self.set(j, c, z * &a + w * &b);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn negate_col(&mut self, i: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, i).clone();
            self.set(r, i, v);
        }
    }

    /// col_i += q * col_j
    fn add_col_multiple(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.at(r, i) + q * self.at(r, j);
            self.set(r, i, v);
        }
    }

    fn combine_cols(&mut self, i: usize, j: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for r in 0..self.rows {
            let a = self.at(r, i).clone();
            let b = self.at(r, j).clone();
            self.set(r, i, x * &a + y * &b);
            self.set(r, j, z * &a + w * &b);
        }
    }
}

/// A sublattice of Z^ambient given by its canonical basis: row-style Hermite
/// normal form with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`.  Two generating sets span the same lattice iff their stored
/// bases are equal.  The zero lattice is stored with zero basis rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMatrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMatrix::identity(ambient),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coords_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient);
        let mut t = v.to_vec();
        let mut coords = vec![BigInt::zero(); self.rank()];
        for i in 0..self.rank() {
            let pc = pivot_col(&self.basis, i)?;
            // columns left of pc are zero in row i; t must already be zero there
            let p = self.basis.at(i, pc);
            let (q, rem) = t[pc].div_rem(p);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for c in 0..self.ambient {
                    t[c] -= &q * self.basis.at(i, c);
                }
            }
            coords[i] = q;
        }
        if t.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords_of(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        (0..other.rank()).all(|i| self.contains(other.basis.row(i)))
    }
}

fn pivot_col(m: &IntMatrix, r: usize) -> Option<usize> {
    (0..m.cols()).find(|&c| !m.at(r, c).is_zero())
}

/// Hermite normal form with a unimodular transform: returns `(h, u)` with
/// `u * m = h`, `u` unimodular, `h` in row echelon with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.  Zero rows of `h` are
/// at the bottom.
pub fn hnf_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pr = 0usize;
    for pc in 0..m.cols() {
        if pr == h.rows() {
            break;
        }
        // find a row at or below pr with a nonzero entry in column pc
        let Some(sel) = (pr..h.rows()).find(|&r| !h.at(r, pc).is_zero()) else {
            continue;
        };
        h.swap_rows(pr, sel);
        u.swap_rows(pr, sel);
        for r in pr + 1..h.rows() {
            if h.at(r, pc).is_zero() {
                continue;
            }
            let a = h.at(pr, pc).clone();
            let b = h.at(r, pc).clone();
            let eg = a.extended_gcd(&b);
            let (d, x, y) = (eg.gcd, eg.x, eg.y);
            let z = -(&b / &d);
            let w = &a / &d;
            h.combine_rows(pr, r, &x, &y, &z, &w);
            u.combine_rows(pr, r, &x, &y, &z, &w);
        }
        if h.at(pr, pc).is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        let p = h.at(pr, pc).clone();
        for r in 0..pr {
            let q = -h.at(r, pc).div_floor(&p);
            h.add_row_multiple(r, pr, &q);
            u.add_row_multiple(r, pr, &q);
        }
        pr += 1;
    }
    (h, u)
}

/// Canonical form of the row lattice of `m`.
pub fn hnf(m: &IntMatrix) -> Lattice {
    let (h, _) = hnf_with_transform(m);
    let rank = (0..h.rows()).take_while(|&r| !h.row_is_zero(r)).count();
    Lattice {
        ambient: m.cols(),
        basis: h.submatrix(0, rank, 0, m.cols()),
    }
}

pub fn lattice_from_rows(ambient: usize, rows: Vec<Vec<BigInt>>) -> Lattice {
    if rows.is_empty() {
        return Lattice::zero(ambient);
    }
    hnf(&IntMatrix::from_rows(rows))
}

/// Left kernel `{ x : x * m = 0 }`.  Always saturated in its ambient Z^rows.
pub fn kernel(m: &IntMatrix) -> Lattice {
    let (h, u) = hnf_with_transform(m);
    let mut rows = Vec::new();
    for r in 0..h.rows() {
        if h.row_is_zero(r) {
            rows.push(u.row_vec(r));
        }
    }
    lattice_from_rows(m.rows(), rows)
}

/// Right kernel `{ y : m * y = 0 }` as a lattice of row vectors in Z^cols.
pub fn right_kernel(m: &IntMatrix) -> Lattice {
    kernel(&m.transpose())
}

/// `(l tensor Q) intersect Z^ambient`: the smallest saturated lattice
/// containing `l`.
pub fn saturate(l: &Lattice) -> Lattice {
    if l.is_zero() {
        return l.clone();
    }
    let orth = right_kernel(l.basis());
    if orth.is_zero() {
        return Lattice::full(l.ambient_rank());
    }
    // over Q, the double orthogonal complement is the row space of the basis
    kernel(&orth.basis().transpose())
}

pub fn intersect(a: &Lattice, b: &Lattice) -> Lattice {
    assert_eq!(a.ambient_rank(), b.ambient_rank());
    if a.is_zero() || b.is_zero() {
        return Lattice::zero(a.ambient_rank());
    }
    let stacked = a.basis().vstack(b.basis());
    let ker = kernel(&stacked);
    let mut rows = Vec::new();
    for r in 0..ker.rank() {
        let coeffs = ker.basis().row(r);
        let v = a.basis().apply_row(&coeffs[..a.rank()]);
        rows.push(v);
    }
    lattice_from_rows(a.ambient_rank(), rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

/// The index `[b : a]`, requiring `a` to be a sublattice of `b`.
pub fn index_in(a: &Lattice, b: &Lattice) -> Result<Index> {
    assert_eq!(a.ambient_rank(), b.ambient_rank());
    let mut coord_rows = Vec::new();
    for r in 0..a.rank() {
        let coords = b
            .coords_of(a.basis().row(r))
            .ok_or_else(|| Error::Precondition("index_in: a is not contained in b".into()))?;
        coord_rows.push(coords);
    }
    if a.rank() < b.rank() {
        return Ok(Index::Infinite);
    }
    // a and b have equal rank; index is |det| of the coordinate matrix
    let m = IntMatrix::from_rows(coord_rows);
    let l = hnf(&m);
    if l.rank() < b.rank() {
        return Ok(Index::Infinite);
    }
    let mut det = BigInt::one();
    for i in 0..l.rank() {
        let pc = pivot_col(l.basis(), i).expect("nonzero row");
        det *= l.basis().at(i, pc);
    }
    Ok(Index::Finite(det))
}

/// Elementary divisors `d_1 | d_2 | ...` of `m`, length `min(rows, cols)`,
/// nonnegative, with zeros (if any) at the end.
pub fn snf_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let t = snf_with_row_transform(m);
    t.divisors
}

/// Smith normal form with the row transform tracked: `x * m * y = diag(divisors)`
/// for some unimodular `y` (not returned), with `x` unimodular and
/// `x_inv = x^-1`.
pub struct SnfDecomposition {
    pub divisors: Vec<BigInt>,
    pub x: IntMatrix,
    pub x_inv: IntMatrix,
}

pub fn snf_with_row_transform(m: &IntMatrix) -> SnfDecomposition {
    let mut a = m.clone();
    let n = m.rows();
    let mut x = IntMatrix::identity(n);
    let mut xinv = IntMatrix::identity(n);
    let dim = m.rows().min(m.cols());

    let mut t = 0usize;
    'outer: while t < dim {
        // locate a nonzero entry in the trailing submatrix
        let mut found = None;
        'search: for r in t..a.rows() {
            for c in t..a.cols() {
                if !a.at(r, c).is_zero() {
                    found = Some((r, c));
                    break 'search;
                }
            }
        }
        let Some((pr, pc)) = found else {
            break 'outer;
        };
        if pr != t {
            a.swap_rows(t, pr);
            x.swap_rows(t, pr);
            xinv.swap_cols(t, pr);
        }
        if pc != t {
            a.swap_cols(t, pc);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..a.rows() {
                if a.at(r, t).is_zero() {
                    continue;
                }
                let p = a.at(t, t).clone();
                let b = a.at(r, t).clone();
                if (&b % &p).is_zero() {
                    let q = -(&b / &p);
                    a.add_row_multiple(r, t, &q);
                    x.add_row_multiple(r, t, &q);
                    // xinv: col_t += q... inverse of (r += q*t) is (r -= q*t);
                    // right-multiplying by it adds -(-q) * col_r to col_t
                    let negq = -q;
                    xinv.add_col_multiple(t, r, &negq);
                } else {
                    let eg = p.extended_gcd(&b);
                    let (d, cx, cy) = (eg.gcd, eg.x, eg.y);
                    let cz = -(&b / &d);
                    let cw = &p / &d;
                    a.combine_rows(t, r, &cx, &cy, &cz, &cw);
                    x.combine_rows(t, r, &cx, &cy, &cz, &cw);
                    // inverse of [[cx,cy],[cz,cw]] (det 1) is [[cw,-cy],[-cz,cx]];
                    // right-multiply xinv by it embedded at (t, r)
                    let (ncy, ncz) = (-cy, -cz);
                    xinv.combine_cols(t, r, &cw, &ncz, &ncy, &cx);
                    dirty = true;
                }
            }
            for c in t + 1..a.cols() {
                if a.at(t, c).is_zero() {
                    continue;
                }
                let p = a.at(t, t).clone();
                let b = a.at(t, c).clone();
                if (&b % &p).is_zero() {
                    let q = -(&b / &p);
                    a.add_col_multiple(c, t, &q);
                } else {
                    let eg = p.extended_gcd(&b);
                    let (d, cx, cy) = (eg.gcd, eg.x, eg.y);
                    let cz = -(&b / &d);
                    let cw = &p / &d;
                    a.combine_cols(t, c, &cx, &cy, &cz, &cw);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // row and column t are clean; enforce divisibility of the rest
            let p = a.at(t, t).clone();
            let mut fixed = true;
            'div: for r in t + 1..a.rows() {
                for c in t + 1..a.cols() {
                    if !(a.at(r, c) % &p).is_zero() {
                        // fold row r into row t and restart the cleanup
                        let one = BigInt::one();
                        a.add_row_multiple(t, r, &one);
                        x.add_row_multiple(t, r, &one);
                        let negone = -BigInt::one();
                        xinv.add_col_multiple(r, t, &negone);
                        fixed = false;
                        break 'div;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a.at(t, t).is_negative() {
            a.negate_row(t);
            x.negate_row(t);
            xinv.negate_col(t);
        }
        t += 1;
    }
    let divisors = (0..dim).map(|i| a.at(i, i).abs()).collect();
    SnfDecomposition {
        divisors,
        x,
        x_inv: xinv,
    }
}

/// Exact inverse of a unimodular integer matrix.
pub fn inverse_unimodular(m: &IntMatrix) -> Option<IntMatrix> {
    if m.rows() != m.cols() {
        return None;
    }
    let (h, u) = hnf_with_transform(m);
    if h == IntMatrix::identity(m.rows()) {
        Some(u)
    } else {
        None
    }
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    inverse_unimodular(m).is_some()
}

/// Characteristic polynomial coefficients (ascending degree, monic) via the
/// Faddeev-LeVerrier recurrence; all divisions are exact over Z.
pub fn charpoly_coeffs(m: &IntMatrix) -> Vec<BigInt> {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut coeffs_desc = vec![BigInt::one()];
    let mut acc = IntMatrix::identity(n);
    for k in 1..=n {
        let am = m.mul(&acc);
        let c = -am.trace() / BigInt::from(k as i64);
        acc = am;
        for i in 0..n {
            let v = acc.at(i, i) + &c;
            acc.set(i, i, v);
        }
        coeffs_desc.push(c);
    }
    coeffs_desc.reverse();
    coeffs_desc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(ambient: usize, rows: &[&[i64]]) -> Lattice {
        if rows.is_empty() {
            Lattice::zero(ambient)
        } else {
            hnf(&IntMatrix::from_i64_rows(rows))
        }
    }

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_already_canonical() {
        let l = lat(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(l.basis(), &IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]));
    }

    #[test]
    fn hnf_rank_one_row_space() {
        let l = lat(2, &[&[1, -1], &[-1, 1]]);
        assert_eq!(l.rank(), 1);
        assert!(l.contains(&v(&[1, -1])));
    }

    #[test]
    fn hnf_membership_equivalence() {
        // [[2,4],[1,3]]: output must span the same lattice as the input rows
        let m = IntMatrix::from_i64_rows(&[&[2, 4], &[1, 3]]);
        let l = hnf(&m);
        assert!(l.contains(&v(&[2, 4])));
        assert!(l.contains(&v(&[1, 3])));
        // and conversely the basis rows are integer combinations of the input
        let back = lat(2, &[&[2, 4], &[1, 3]]);
        for r in 0..l.rank() {
            assert!(back.contains(l.basis().row(r)));
        }
        assert_eq!(
            index_in(&l, &Lattice::full(2)).unwrap(),
            Index::Finite(BigInt::from(2))
        );
    }

    #[test]
    fn hnf_idempotent() {
        let m = IntMatrix::from_i64_rows(&[&[6, 10, 15], &[2, 4, 8], &[3, 9, 27]]);
        let l = hnf(&m);
        let l2 = hnf(l.basis());
        assert_eq!(l, l2);
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            snf_diagonal(&IntMatrix::identity(2)),
            vec![BigInt::one(), BigInt::one()]
        );
        // gcd-of-minors oracle: d1 = gcd of entries = 1, d1*d2 = |det| = 6
        assert_eq!(
            snf_diagonal(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]])),
            vec![BigInt::one(), BigInt::from(6)]
        );
        assert_eq!(
            snf_diagonal(&IntMatrix::from_i64_rows(&[&[2]])),
            vec![BigInt::from(2)]
        );
    }

    #[test]
    fn snf_divisibility_chain() {
        let m = IntMatrix::from_i64_rows(&[&[4, 6, 0], &[6, 4, 2], &[0, 2, 8]]);
        let d = snf_diagonal(&m);
        for i in 1..d.len() {
            if !d[i].is_zero() {
                assert!((&d[i] % &d[i - 1]).is_zero(), "not a chain: {:?}", d);
            }
        }
        // product of divisors = |det| (det = 4*(32-4) - 6*48 + 0 = -176)
        let prod: BigInt = d.iter().product();
        assert_eq!(prod, BigInt::from(176));
    }

    #[test]
    fn snf_transform_consistency() {
        let m = IntMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let dec = snf_with_row_transform(&m);
        assert!(is_unimodular(&dec.x));
        assert_eq!(dec.x.mul(&dec.x_inv), IntMatrix::identity(3));
        // x * m has the same column span as diag(divisors) padded
        let xm = dec.x.mul(&m);
        let d_from_xm = snf_diagonal(&xm);
        assert_eq!(d_from_xm, dec.divisors);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&IntMatrix::from_i64_rows(&[&[1], &[1]]));
        assert_eq!(k.rank(), 1);
        assert!(k.contains(&v(&[1, -1])));

        assert!(kernel(&IntMatrix::identity(3)).is_zero());

        // 2 rows x 1 col [[2],[4]]: kernel spans (2,-1)
        let k = kernel(&IntMatrix::from_i64_rows(&[&[2], &[4]]));
        assert_eq!(k.rank(), 1);
        assert!(k.contains(&v(&[2, -1])));
        // saturation via snf: kernel basis has elementary divisor 1
        assert_eq!(snf_diagonal(k.basis()), vec![BigInt::one()]);
    }

    #[test]
    fn kernel_is_saturated() {
        let m = IntMatrix::from_i64_rows(&[&[2, 3], &[4, 6], &[1, 1], &[0, 0]]);
        let k = kernel(&m);
        assert_eq!(saturate(&k), k);
    }

    #[test]
    fn saturate_examples() {
        let l = lat(2, &[&[2, 0]]);
        assert_eq!(saturate(&l), lat(2, &[&[1, 0]]));

        let l = lat(2, &[&[1, 1]]);
        assert_eq!(saturate(&l), l);

        // full-rank sublattices saturate to the whole ambient lattice
        let l = lat(2, &[&[2, 4], &[0, 6]]);
        let s = saturate(&l);
        assert_eq!(s, Lattice::full(2));
        assert_eq!(index_in(&l, &s).unwrap(), Index::Finite(BigInt::from(12)));

        let l = lat(3, &[&[2, 4, 6]]);
        let s = saturate(&l);
        assert_eq!(s, lat(3, &[&[1, 2, 3]]));
        assert_eq!(index_in(&l, &s).unwrap(), Index::Finite(BigInt::from(2)));
        assert_eq!(saturate(&s), s);
    }

    #[test]
    fn intersect_examples() {
        assert!(intersect(&lat(2, &[&[1, 0]]), &lat(2, &[&[0, 1]])).is_zero());
        assert!(intersect(&lat(2, &[&[1, 1]]), &lat(2, &[&[1, -1]])).is_zero());
        let a = lat(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(
            index_in(&a, &Lattice::full(2)).unwrap(),
            Index::Finite(BigInt::from(4))
        );
        // nontrivial intersection: 2Z^2 and the diagonal
        let d = lat(2, &[&[1, 1]]);
        let i = intersect(&a, &d);
        assert_eq!(i, lat(2, &[&[2, 2]]));
    }

    #[test]
    fn index_in_rejects_noncontainment() {
        let a = lat(2, &[&[1, 0]]);
        let b = lat(2, &[&[0, 1]]);
        assert!(index_in(&a, &b).is_err());
    }

    #[test]
    fn index_infinite_for_lower_rank() {
        let a = lat(2, &[&[2, 0]]);
        let b = Lattice::full(2);
        assert_eq!(index_in(&a, &b).unwrap(), Index::Infinite);
        let b2 = lat(2, &[&[1, 0]]);
        assert_eq!(index_in(&a, &b2).unwrap(), Index::Finite(BigInt::from(2)));
    }

    #[test]
    fn full_rank_index_is_det() {
        let a = lat(3, &[&[2, 1, 0], &[0, 3, 1], &[0, 0, 5]]);
        assert_eq!(
            index_in(&a, &Lattice::full(3)).unwrap(),
            Index::Finite(BigInt::from(30))
        );
    }

    #[test]
    fn inverse_unimodular_roundtrip() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2], &[1, 3]]);
        let inv = inverse_unimodular(&m).unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));
        let not_uni = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert!(inverse_unimodular(&not_uni).is_none());
    }

    #[test]
    fn charpoly_small() {
        // [[0,1],[-1,0]] has charpoly x^2 + 1
        let m = IntMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        assert_eq!(charpoly_coeffs(&m), v(&[1, 0, 1]));
        // companion of x^2 - 3x + 5
        let m = IntMatrix::from_i64_rows(&[&[0, -5], &[1, 3]]);
        assert_eq!(charpoly_coeffs(&m), v(&[5, -3, 1]));
    }
}
