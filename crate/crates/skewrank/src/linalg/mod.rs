//! Dense exact linear algebra over Q and Q(sqrt(D)), canonical subspaces,
//! and fraction-free rank computation.

pub mod modp;
pub mod poly;

use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Scalar>>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![vec![Scalar::zero(); cols]; rows] }
    }

    pub fn from_rows(data: Vec<Vec<Scalar>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        ExactMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i][j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        self.data[i][j] = &self.data[i][j] + v;
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn matmul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self.data[i][k] * &other.data[k][j];
                    out.add_at(i, j, &p);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|row| {
                let mut acc = Scalar::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduction to reduced row echelon form.
    /// Returns the rank and the pivot column of each nonzero row.
    pub fn rref(&mut self) -> (usize, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = self.data[r][c].inv();
            for j in c..self.cols {
                self.data[r][j] = &self.data[r][j] * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self.data[i][c].is_zero() {
                    let f = self.data[i][c].clone();
                    for j in c..self.cols {
                        let sub = &self.data[r][j] * &f;
                        self.data[i][j] = &self.data[i][j] - &sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        (r, pivots)
    }

    /// Rank; fraction-free Bareiss elimination when all entries are rational,
    /// plain field elimination otherwise. Deterministic in both branches.
    pub fn rank(&self) -> usize {
        if let Some(int_rows) = self.integer_rows() {
            return bareiss_rank(int_rows);
        }
        let mut m = self.clone();
        m.rref().0
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        if let Some(int_rows) = self.integer_rows() {
            let (num, scale) = bareiss_det(int_rows);
            // determinant = num / scale
            return Scalar::from_rational(BigRational::new(num, scale));
        }
        // field elimination tracking the product of pivots
        let mut m = self.clone();
        let mut det = Scalar::one();
        let n = m.rows;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.data[i][c].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.data.swap(c, p);
                det = -det;
            }
            det = &det * &m.data[c][c];
            let inv = m.data[c][c].inv();
            for i in (c + 1)..n {
                if m.data[i][c].is_zero() {
                    continue;
                }
                let f = &m.data[i][c] * &inv;
                for j in c..n {
                    let sub = &m.data[c][j] * &f;
                    m.data[i][j] = &m.data[i][j] - &sub;
                }
            }
        }
        det
    }

    /// Canonical basis of the right kernel.
    pub fn kernel(&self) -> Subspace {
        let mut m = self.clone();
        let (_, pivots) = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_set.contains(&f) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m.data[r][f];
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.cols, basis)
    }

    /// Canonical basis of the column space, as a subspace of the row-index space.
    pub fn image(&self) -> Subspace {
        Subspace::from_spanning(self.rows, self.transpose().data)
    }

    /// Lex-least solution of `self * x = b` in the echelon parametrization
    /// (free variables set to zero), if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len());
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][self.cols] = b[i].clone();
        }
        let (_, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.data[r][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][n + i] = Scalar::one();
        }
        let (rank, _) = aug.rref();
        if rank < n {
            return None;
        }
        let mut out = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[i][j] = aug.data[i][n + j].clone();
            }
        }
        Some(out)
    }

    /// Integer rows with common denominators cleared, when all entries are
    /// rational; None when any entry lives in a quadratic extension.
    fn integer_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        let mut out = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut lcm = BigInt::one();
            for v in row {
                let r = v.as_rational()?;
                lcm = num_integer::lcm(lcm, r.denom().clone());
            }
            out.push(
                row.iter()
                    .map(|v| {
                        let r = v.as_rational().unwrap();
                        r.numer() * (&lcm / r.denom())
                    })
                    .collect(),
            );
        }
        Some(out)
    }
}

/// Fraction-free Bareiss elimination rank of an integer matrix.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let t = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = &t / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Bareiss determinant of a square integer matrix, returned as
/// (determinant, 1) — the scale is kept for symmetry with callers.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> (BigInt, BigInt) {
    let n = m.len();
    if n == 0 {
        return (BigInt::one(), BigInt::one());
    }
    assert!(m.iter().all(|r| r.len() == n));
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return (BigInt::zero(), BigInt::one());
        };
        if p != c {
            m.swap(c, p);
            sign = -sign;
        }
        for i in (c + 1)..n {
            for j in (c + 1)..n {
                let t = &m[c][c] * &m[i][j] - &m[i][c] * &m[c][j];
                m[i][j] = &t / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[c][c].clone();
    }
    let d = m[n - 1][n - 1].clone();
    (if sign < 0 { -d } else { d }, BigInt::one())
}

/// A linear subspace in canonical reduced-row-echelon representation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn from_spanning(ambient: usize, rows: Vec<Vec<Scalar>>) -> Self {
        if rows.is_empty() {
            return Subspace { ambient, basis: Vec::new() };
        }
        assert!(rows.iter().all(|r| r.len() == ambient));
        let mut m = ExactMatrix::from_rows(rows);
        let (rank, _) = m.rref();
        m.data.truncate(rank);
        Subspace { ambient, basis: m.data }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_spanning(ambient, ExactMatrix::identity(ambient).data)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // reduce v against the echelon basis
        let mut v = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).unwrap();
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..self.ambient {
                    let sub = &row[j] * &f;
                    v[j] = &v[j] - &sub;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.clone());
        Subspace::from_spanning(self.ambient, rows)
    }

    /// Orthogonal complement under the coordinate dot pairing.
    pub fn perp(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        ExactMatrix::from_rows(self.basis.clone()).kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.perp().sum(&other.perp()).perp()
    }
}

/// Characteristic polynomial of a square rational matrix by the
/// Faddeev-LeVerrier recursion; returned monic, low degree first.
pub fn charpoly(m: &ExactMatrix) -> Vec<BigRational> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = ExactMatrix::identity(n);
    for k in 1..=n {
        mk = m.matmul(&mk);
        // trace
        let mut tr = BigRational::zero();
        for i in 0..n {
            tr += mk.data[i][i].as_rational().expect("charpoly needs rational entries");
        }
        let ck = -tr / BigRational::from_integer(BigInt::from(k as i64));
        coeffs[n - k] = ck.clone();
        for i in 0..n {
            mk.data[i][i] = &mk.data[i][i] + &Scalar::from_rational(ck.clone());
        }
    }
    coeffs
}

/// Rational reconstruction of `a mod m` into p/q with |p|, |q| <= sqrt(m/2).
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if num_integer::gcd(r1.clone(), t1.abs()) != BigInt::one() && !r1.is_zero() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

use num_integer::Integer;
use num_integer::Roots;

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect(),
        )
    }

    #[test]
    fn kernel_basic() {
        let m = mat(&[&[1, 0], &[0, 0]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis[0], vec![Scalar::zero(), Scalar::one()]);
    }

    #[test]
    fn rank_and_det() {
        let m = mat(&[&[2, 1, 1], &[1, 3, 2], &[1, 0, 0]]);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.det(), Scalar::from_int(-1));
        let s = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.det(), Scalar::zero());
    }

    #[test]
    fn subspace_ops() {
        let a = Subspace::from_spanning(3, vec![
            vec![Scalar::from_int(1), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::from_int(1), Scalar::zero()],
        ]);
        let b = Subspace::from_spanning(3, vec![
            vec![Scalar::zero(), Scalar::from_int(1), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::from_int(1)],
        ]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[Scalar::zero(), Scalar::one(), Scalar::zero()]));
        let p = a.perp();
        assert_eq!(p.dim(), 1);
        assert!(p.contains(&[Scalar::zero(), Scalar::zero(), Scalar::one()]));
    }

    #[test]
    fn canonical_echelon_from_different_spans() {
        let a = Subspace::from_spanning(3, vec![
            vec![Scalar::from_int(1), Scalar::from_int(1), Scalar::zero()],
            vec![Scalar::from_int(1), Scalar::from_int(-1), Scalar::zero()],
        ]);
        let b = Subspace::from_spanning(3, vec![
            vec![Scalar::from_int(3), Scalar::from_int(7), Scalar::zero()],
            vec![Scalar::from_int(2), Scalar::from_int(0), Scalar::zero()],
        ]);
        assert_eq!(a, b);
    }

    #[test]
    fn charpoly_companion() {
        // companion matrix of x^2 - 3x + 2
        let m = mat(&[&[0, -2], &[1, 3]]);
        let cp = charpoly(&m);
        let as_i: Vec<i64> = cp
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                c.to_integer().try_into().unwrap()
            })
            .collect();
        assert_eq!(as_i, vec![2, -3, 1]);
    }

    #[test]
    fn reconstruct() {
        // 1/2 mod 101*103 = 10403: a = inverse of 2 mod 10403 = 5202
        let m = BigInt::from(10403);
        let a = BigInt::from(5202);
        let r = rational_reconstruct(&a, &m).unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(1), BigInt::from(2)));
    }
}
