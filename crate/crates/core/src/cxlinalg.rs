//! Dense complex matrix kernel.
//!
//! Everything here is desk scale (`n ≤ 10`), double precision, and written
//! for auditability rather than speed: upper-triangular Cholesky via index
//! reversal, determinant by partially pivoted LU, permanent by Ryser's
//! formula (with a direct-enumeration cross-check), and a cyclic complex
//! Jacobi eigensolver for Hermitian matrices.
//!
//! Conventions: matrices are row major and 0-indexed in code; error messages
//! and the public index arguments (`delete_rc`) are 1-based to match the
//! rest of the crate. The inner product is linear in the first argument and
//! conjugates the second.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Dense complex matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row vectors, rejecting ragged or non-finite input.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = CMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::RaggedRows {
                    row: i + 1,
                    len: row.len(),
                    expected: c,
                });
            }
            for (j, &z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite {
                        row: i + 1,
                        col: j + 1,
                    });
                }
                m[(i, j)] = z;
            }
        }
        Ok(m)
    }

    /// Convenience constructor from real entries (tests and catalogs).
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        CMatrix::from_fn(r, c, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn conj_transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Largest `|A(i,j) - conj(A(j,i))|` together with its 1-based entry.
    pub fn hermitian_asymmetry(&self) -> (f64, usize, usize) {
        let mut worst = (0.0f64, 1, 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst.0 {
                    worst = (d, i + 1, j + 1);
                }
            }
        }
        worst
    }

    /// Hermitian within `tol` relative to `max|A|`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_asymmetry().0 <= tol * self.max_abs().max(1e-300)
    }

    pub fn require_hermitian(&self, tol: f64) -> Result<()> {
        self.require_square()?;
        let (residual, row, col) = self.hermitian_asymmetry();
        if residual > tol * self.max_abs().max(1e-300) {
            return Err(Error::NotHermitian { residual, row, col });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn scale(&self, k: Complex64) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * k)
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - other[(i, j)]).norm());
            }
        }
        worst
    }

    /// Largest magnitude strictly below the diagonal (0 for upper triangular).
    pub fn lower_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..i.min(self.cols) {
                worst = worst.max(self[(i, j)].norm());
            }
        }
        worst
    }

    pub fn require_upper_triangular(&self, tol: f64) -> Result<()> {
        let scale = self.max_abs().max(1e-300);
        for i in 0..self.rows {
            for j in 0..i.min(self.cols) {
                if self[(i, j)].norm() > tol * scale {
                    return Err(Error::NotUpperTriangular {
                        row: i + 1,
                        col: j + 1,
                        value: self[(i, j)].norm(),
                    });
                }
            }
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

// Wire format: row-major nested arrays with complex entries as [re, im].
impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<Complex64> = (0..self.cols).map(|j| self[(i, j)]).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct MatrixVisitor;
        impl<'de> Visitor<'de> for MatrixVisitor {
            type Value = CMatrix;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a nested array of [re, im] complex entries")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<CMatrix, A::Error> {
                let mut rows: Vec<Vec<Complex64>> = Vec::new();
                while let Some(row) = seq.next_element::<Vec<Complex64>>()? {
                    rows.push(row);
                }
                CMatrix::from_rows(rows).map_err(de::Error::custom)
            }
        }
        deserializer.deserialize_seq(MatrixVisitor)
    }
}

/// Inner product linear in `x`, conjugating `y`.
pub fn vec_inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn require_unit(u: &[Complex64], tol: f64) -> Result<()> {
    let norm = vec_norm(u);
    if (norm - 1.0).abs() > tol {
        return Err(Error::NotUnit { norm });
    }
    Ok(())
}

/// `A B*`: the Gram-style product, `(AB*)(i,j) = Σ_t A(i,t) conj(B(j,t))`.
///
/// `ab_star(A, A)` is the Gram matrix of the rows of `A`.
pub fn ab_star(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::ShapeMismatch(a.rows, a.cols, b.rows, b.cols));
    }
    let mut out = CMatrix::zeros(a.rows, b.rows);
    for i in 0..a.rows {
        for j in 0..b.rows {
            out[(i, j)] = (0..a.cols).map(|t| a[(i, t)] * b[(j, t)].conj()).sum();
        }
    }
    Ok(out)
}

/// Upper-triangular Cholesky factor `A` with `A A* = H` and a strictly
/// positive real diagonal.
///
/// Computed as the index reversal of the standard lower factorization:
/// `A = J L J` where `L` is the lower factor of `J H J` and `J` flips the
/// index order. A failed pivot reports the 1-based index in the original
/// ordering.
pub fn upper_cholesky(h: &CMatrix, tol: f64) -> Result<CMatrix> {
    h.require_hermitian(tol)?;
    let n = h.rows;
    let scale = h.max_abs().max(1e-300);
    // reversed matrix J H J
    let rev = CMatrix::from_fn(n, n, |i, j| h[(n - 1 - i, n - 1 - j)]);
    let mut lower = CMatrix::zeros(n, n);
    for j in 0..n {
        let mut diag = rev[(j, j)].re;
        for k in 0..j {
            diag -= lower[(j, k)].norm_sqr();
        }
        if diag <= tol * scale {
            return Err(Error::NotPositiveDefinite {
                index: n - j,
                pivot: diag,
            });
        }
        let d = diag.sqrt();
        lower[(j, j)] = Complex64::new(d, 0.0);
        for i in (j + 1)..n {
            let mut s = rev[(i, j)];
            for k in 0..j {
                s -= lower[(i, k)] * lower[(j, k)].conj();
            }
            lower[(i, j)] = s / d;
        }
    }
    Ok(CMatrix::from_fn(n, n, |i, j| {
        lower[(n - 1 - i, n - 1 - j)]
    }))
}

/// Determinant by LU with partial pivoting; exact diagonal product for
/// triangular input up to rounding.
pub fn det(a: &CMatrix) -> Result<Complex64> {
    let n = a.require_square()?;
    let mut lu = a.clone();
    let mut sign = 1.0f64;
    for k in 0..n {
        let mut piv = k;
        let mut best = lu[(k, k)].norm();
        for i in (k + 1)..n {
            let v = lu[(i, k)].norm();
            if v > best {
                best = v;
                piv = i;
            }
        }
        if best == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if piv != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = tmp;
            }
            sign = -sign;
        }
        let d = lu[(k, k)];
        for i in (k + 1)..n {
            let m = lu[(i, k)] / d;
            lu[(i, k)] = m;
            for j in (k + 1)..n {
                let sub = m * lu[(k, j)];
                lu[(i, j)] -= sub;
            }
        }
    }
    let mut p = Complex64::new(sign, 0.0);
    for k in 0..n {
        p *= lu[(k, k)];
    }
    Ok(p)
}

pub const PERMANENT_MAX_N: usize = 10;

/// Permanent by Ryser's inclusion-exclusion formula, `n ≤ 10`.
pub fn permanent(k: &CMatrix) -> Result<Complex64> {
    let n = k.require_square()?;
    if n > PERMANENT_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: PERMANENT_MAX_N,
        });
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for mask in 1u32..(1 << n) {
        let mut prod = Complex64::new(1.0, 0.0);
        for i in 0..n {
            let mut row_sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    row_sum += k[(i, j)];
                }
            }
            prod *= row_sum;
        }
        let parity = if mask.count_ones() as usize % 2 == n % 2 {
            1.0
        } else {
            -1.0
        };
        total += prod * parity;
    }
    Ok(total)
}

/// Permanent by direct enumeration over `S_n`; reference route for `n ≤ 6`.
pub fn permanent_direct(k: &CMatrix) -> Result<Complex64> {
    let n = k.require_square()?;
    if n > 6 {
        return Err(Error::TooLarge { n, max: 6 });
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut perm: Vec<usize> = (0..n).collect();
    permute_sum(&mut perm, 0, k, &mut total);
    Ok(total)
}

fn permute_sum(perm: &mut Vec<usize>, pos: usize, k: &CMatrix, total: &mut Complex64) {
    let n = perm.len();
    if pos == n {
        let mut prod = Complex64::new(1.0, 0.0);
        for (i, &j) in perm.iter().enumerate() {
            prod *= k[(i, j)];
        }
        *total += prod;
        return;
    }
    for i in pos..n {
        perm.swap(pos, i);
        permute_sum(perm, pos + 1, k, total);
        perm.swap(pos, i);
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the unitary matrix whose
/// columns are the matching eigenvectors. Converges when the off-diagonal
/// Frobenius norm falls below `1e-12 · ‖H‖`, with at most 50 sweeps.
pub fn herm_eig(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    h.require_hermitian(crate::Tolerances::default().linalg)?;
    let n = h.rows;
    // symmetrize away the representable asymmetry before iterating
    let mut a = CMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = CMatrix::identity(n);
    let norm = h.frobenius().max(1e-300);
    let target = 1e-12 * norm;

    for _sweep in 0..50 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let z = a[(p, q)];
                let az = z.norm();
                if az <= 1e-300 {
                    continue;
                }
                let phase = z / az;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // rotation angle for the phase-absorbed real 2x2 block
                let theta = (aqq - app) / (2.0 * az);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // R differs from I only at rows/cols p,q:
                //   R[p][p] = c          R[p][q] = s
                //   R[q][p] = -s*conj(phase)   R[q][q] = c*conj(phase)
                // A <- R* A R, V <- V R
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * c - aqj * phase * s;
                    a[(q, j)] = apj * s + aqj * phase * c;
                }
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c - aiq * phase.conj() * s;
                    a[(i, q)] = aip * s + aiq * phase.conj() * c;
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * phase.conj() * s;
                    v[(i, q)] = vip * s + viq * phase.conj() * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((eigenvalues, vectors))
}

/// The submatrix `A(p|p)`: row `p` and column `p` deleted (`p` 1-based).
pub fn delete_rc(a: &CMatrix, p: usize) -> Result<CMatrix> {
    let n = a.require_square()?;
    if p == 0 || p > n {
        return Err(Error::IndexOutOfRange { index: p, n });
    }
    let p0 = p - 1;
    Ok(CMatrix::from_fn(n - 1, n - 1, |i, j| {
        let si = if i < p0 { i } else { i + 1 };
        let sj = if j < p0 { j } else { j + 1 };
        a[(si, sj)]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-10;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// 3x3 positive definite Hermitian fixture: det = 2, per = 4, single
    /// off-diagonal pair at (2,3).
    fn example_h() -> CMatrix {
        CMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(3.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 0.0), c(0.0, -1.0), c(1.0, 0.0)],
        ])
        .unwrap()
    }

    #[test]
    fn cholesky_identity() {
        let a = upper_cholesky(&CMatrix::identity(3), TOL).unwrap();
        assert!(a.max_abs_diff(&CMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn cholesky_example_h() {
        let h = example_h();
        let a = upper_cholesky(&h, TOL).unwrap();
        assert_eq!(a.lower_residual(), 0.0);
        let rebuilt = ab_star(&a, &a).unwrap();
        assert!(rebuilt.max_abs_diff(&h) <= 1e-10 * h.max_abs());
        let da = det(&a).unwrap();
        assert!((da.norm_sqr() - 2.0).abs() < 1e-10);
        for i in 0..3 {
            assert!(a[(i, i)].re > 0.0);
            assert!(a[(i, i)].im.abs() < 1e-15);
        }
    }

    #[test]
    fn cholesky_two_by_two() {
        // solve a11^2 + a12^2 = 2, a12*a22 = 1, a22^2 = 2 for the upper factor
        let h = CMatrix::from_real(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let a = upper_cholesky(&h, TOL).unwrap();
        let expected = CMatrix::from_real(&[
            &[(1.5f64).sqrt(), 1.0 / (2.0f64).sqrt()],
            &[0.0, (2.0f64).sqrt()],
        ]);
        assert!(a.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn cholesky_rejects_non_hermitian() {
        let m = CMatrix::from_real(&[&[1.0, 2.0], &[0.0, 1.0]]);
        match upper_cholesky(&m, TOL) {
            Err(Error::NotHermitian { row, col, .. }) => {
                assert!((row, col) == (1, 2) || (row, col) == (2, 1));
            }
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let m = CMatrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]]);
        match upper_cholesky(&m, TOL) {
            Err(Error::NotPositiveDefinite { index, .. }) => assert_eq!(index, 2),
            other => panic!("expected NotPositiveDefinite, got {other:?}"),
        }
    }

    #[test]
    fn det_examples() {
        assert!((det(&CMatrix::identity(4)).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        assert!((det(&example_h()).unwrap() - c(2.0, 0.0)).norm() < 1e-12);
        let swap = CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!((det(&swap).unwrap() - c(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn permanent_examples() {
        assert!((permanent(&CMatrix::identity(3)).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        let ones = CMatrix::from_fn(3, 3, |_, _| c(1.0, 0.0));
        assert!((permanent(&ones).unwrap() - c(6.0, 0.0)).norm() < 1e-12);
        // direct 6-term sum over S3 gives 1*(3*1 + i*(-i)) = 4
        assert!((permanent(&example_h()).unwrap() - c(4.0, 0.0)).norm() < 1e-12);
        assert!((permanent_direct(&example_h()).unwrap() - c(4.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn permanent_too_large() {
        let m = CMatrix::identity(11);
        assert!(matches!(permanent(&m), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn eig_identity() {
        let (vals, _) = herm_eig(&CMatrix::identity(2)).unwrap();
        assert_eq!(vals, vec![1.0, 1.0]);
    }

    #[test]
    fn eig_known_two_by_two() {
        let s3 = 3.0f64.sqrt();
        let m = CMatrix::from_real(&[&[2.5, s3 / 2.0], &[s3 / 2.0, 3.5]]);
        let (vals, vecs) = herm_eig(&m).unwrap();
        assert!((vals[0] - 2.0).abs() < 1e-12);
        assert!((vals[1] - 4.0).abs() < 1e-12);
        // minimal eigenvector proportional to (-sqrt(3)/2, 1/2)
        let u = [vecs[(0, 0)], vecs[(1, 0)]];
        let reference = [c(-s3 / 2.0, 0.0), c(0.5, 0.0)];
        let overlap = vec_inner(&u, &reference).norm();
        assert!((overlap - 1.0).abs() < 1e-12);
        // residual and unitarity
        let mv = m.mul_vec(&u);
        let res: f64 = mv
            .iter()
            .zip(&u)
            .map(|(a, b)| (a - b * vals[0]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(res < 1e-10 * m.frobenius());
        let vv = ab_star(&vecs.conj_transpose(), &vecs.conj_transpose()).unwrap();
        assert!(vv.max_abs_diff(&CMatrix::identity(2)) < 1e-10);
    }

    #[test]
    fn eig_complex_hermitian() {
        let h = example_h();
        let (vals, vecs) = herm_eig(&h).unwrap();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let sum: f64 = vals.iter().sum();
        assert!((sum - h.trace().re).abs() < 1e-10 * h.trace().re.abs());
        let prod: f64 = vals.iter().product();
        assert!((prod - 2.0).abs() < 1e-9 * 2.0);
        for (k, &lambda) in vals.iter().enumerate() {
            let u: Vec<Complex64> = (0..3).map(|i| vecs[(i, k)]).collect();
            let hv = h.mul_vec(&u);
            let res: f64 = hv
                .iter()
                .zip(&u)
                .map(|(a, b)| (a - b * lambda).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res <= 1e-10 * h.frobenius());
        }
    }

    #[test]
    fn delete_rc_examples() {
        let i2 = delete_rc(&CMatrix::identity(3), 2).unwrap();
        assert!(i2.max_abs_diff(&CMatrix::identity(2)) == 0.0);
        let a = CMatrix::from_real(&[&[1.0, 2.0, 0.0], &[0.0, 3.0, 4.0], &[0.0, 0.0, 5.0]]);
        let d = delete_rc(&a, 2).unwrap();
        assert!(d.max_abs_diff(&CMatrix::from_real(&[&[1.0, 0.0], &[0.0, 5.0]])) == 0.0);
        assert!(matches!(
            delete_rc(&a, 4),
            Err(Error::IndexOutOfRange { .. })
        ));
        // deleting the first row/col of the example factor matches the
        // factor of the trailing 2x2 block
        let h = example_h();
        let factor = upper_cholesky(&h, TOL).unwrap();
        let trailing = delete_rc(&h, 1).unwrap();
        let sub = upper_cholesky(&trailing, TOL).unwrap();
        assert!(delete_rc(&factor, 1).unwrap().max_abs_diff(&sub) < 1e-12);
    }

    #[test]
    fn ab_star_examples() {
        let i3 = CMatrix::identity(3);
        assert!(ab_star(&i3, &i3).unwrap().max_abs_diff(&i3) == 0.0);
        let a = CMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert!(ab_star(&a, &CMatrix::identity(2)).unwrap().max_abs_diff(&a) == 0.0);
        // 2x2 hand multiplication
        let g = ab_star(&a, &a).unwrap();
        let expected = CMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert!(g.max_abs_diff(&expected) < 1e-14);
        // oracle multiply: A * conj_transpose(A)
        let oracle = a.matmul(&a.conj_transpose()).unwrap();
        assert!(g.max_abs_diff(&oracle) < 1e-14);
    }

    #[test]
    fn json_round_trip() {
        let h = example_h();
        let text = serde_json::to_string(&h).unwrap();
        assert!(text.starts_with("[[[1.0,0.0],"));
        let back: CMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(h, back);
        let ragged: std::result::Result<CMatrix, _> = serde_json::from_str("[[[1,0]],[]]");
        assert!(ragged.is_err());
    }
}
