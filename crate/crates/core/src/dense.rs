//! Small dense complex matrices: products, determinant, thin QR and
//! singular values. Sizes here are tiny (a handful of rows), so everything
//! is straightforward row-major loops.

use alloc::vec;
use alloc::vec::Vec;
use libm::sqrt;
use num_complex::Complex64;

use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMat { rows, cols, data }
    }

    /// Builds from row-major data; `data.len()` must equal `rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, actual: data.len() });
        }
        Ok(CMat { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_row_major(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { Complex64::new(values[i], 0.0) } else { ZERO })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, rhs: &CMat) -> Result<CMat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: rhs.rows });
        }
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// `self^* rhs` without materializing the adjoint.
    pub fn adjoint_mul(&self, rhs: &CMat) -> Result<CMat> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, actual: rhs.rows });
        }
        let mut out = CMat::zeros(self.cols, rhs.cols);
        for k in 0..self.rows {
            for i in 0..self.cols {
                let a = self[(k, i)].conj();
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius inner product `tr(self^* rhs)`.
    pub fn frobenius_inner(&self, rhs: &CMat) -> Result<Complex64> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch { expected: self.data.len(), actual: rhs.data.len() });
        }
        Ok(self.data.iter().zip(&rhs.data).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum()
    }

    /// Largest entrywise deviation from the identity.
    pub fn max_dev_from_identity(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((self[(i, j)] - target).norm());
            }
        }
        worst
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Result<Complex64> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, actual: self.cols });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot =
                (col..n).max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm())).unwrap_or(col);
            if a[pivot * n + col] == ZERO {
                return Ok(ZERO);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in col + 1..n {
                let factor = a[r * n + col] / p;
                if factor == ZERO {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= factor * v;
                }
            }
        }
        Ok(det)
    }

    /// Orthonormalizes the columns (modified Gram-Schmidt, two passes).
    /// Requires `rows >= cols` and full column rank.
    pub fn thin_q(&self) -> Result<CMat> {
        if self.rows < self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: self.rows });
        }
        let (m, n) = (self.rows, self.cols);
        let mut q = self.clone();
        for j in 0..n {
            for _pass in 0..2 {
                for i in 0..j {
                    let mut proj = ZERO;
                    for r in 0..m {
                        proj += q[(r, i)].conj() * q[(r, j)];
                    }
                    for r in 0..m {
                        let qi = q[(r, i)];
                        q[(r, j)] -= proj * qi;
                    }
                }
            }
            let norm = sqrt((0..m).map(|r| q[(r, j)].norm_sqr()).sum::<f64>());
            if !(norm > 1e-300) {
                return Err(Error::NoConvergence("thin QR: rank-deficient input"));
            }
            for r in 0..m {
                q[(r, j)] /= norm;
            }
        }
        Ok(q)
    }

    /// Singular values in descending order, by one-sided (Hestenes) Jacobi.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        // Work on the orientation with at least as many rows as columns.
        let mut a = if self.rows >= self.cols { self.clone() } else { self.adjoint() };
        let (m, n) = (a.rows, a.cols);
        let eps = 1e-15;
        let mut converged = false;
        for _sweep in 0..80 {
            let mut rotated = false;
            for i in 0..n {
                for j in i + 1..n {
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = ZERO;
                    for r in 0..m {
                        alpha += a[(r, i)].norm_sqr();
                        beta += a[(r, j)].norm_sqr();
                        gamma += a[(r, i)].conj() * a[(r, j)];
                    }
                    let g = gamma.norm();
                    if g <= eps * sqrt(alpha * beta) || g == 0.0 {
                        continue;
                    }
                    rotated = true;
                    let phase = gamma / g;
                    let zeta = (beta - alpha) / (2.0 * g);
                    let t = zeta.signum() / (zeta.abs() + sqrt(1.0 + zeta * zeta));
                    let c = 1.0 / sqrt(1.0 + t * t);
                    let s = c * t;
                    for r in 0..m {
                        let ai = a[(r, i)];
                        let aj = a[(r, j)] * phase.conj();
                        a[(r, i)] = ai * c - aj * s;
                        a[(r, j)] = (ai * s + aj * c) * phase;
                    }
                }
            }
            if !rotated {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence("one-sided Jacobi SVD"));
        }
        let mut sv: Vec<f64> = (0..n).map(|j| sqrt((0..m).map(|r| a[(r, j)].norm_sqr()).sum::<f64>())).collect();
        sv.sort_by(|x, y| y.total_cmp(x));
        Ok(sv)
    }

    /// Trace norm `tr |X|` with `|X| = (X^* X)^{1/2}`.
    pub fn trace_norm(&self) -> Result<f64> {
        Ok(self.singular_values()?.iter().sum())
    }
}

impl core::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn det_of_small_matrices() {
        let m = CMat::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_abs_diff_eq!(m.det().unwrap().re, -2.0, epsilon = 1e-14);
        let m = CMat::from_real(3, 3, &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 2.0]).unwrap();
        assert_abs_diff_eq!(m.det().unwrap().re, -2.0, epsilon = 1e-14);
        let m = CMat::from_row_major(2, 2, vec![c(0.0, 1.0), ZERO, ZERO, c(0.0, 1.0)]).unwrap();
        assert_abs_diff_eq!(m.det().unwrap().re, -1.0, epsilon = 1e-14);
        assert_eq!(CMat::zeros(3, 3).det().unwrap(), ZERO);
    }

    #[test]
    fn singular_values_of_diagonal_and_rank_one() {
        let m = CMat::diag(&[3.0, -2.0, 0.5]);
        let sv = m.singular_values().unwrap();
        assert_abs_diff_eq!(sv[0], 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(sv[1], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(sv[2], 0.5, epsilon = 1e-14);

        // u v^* with |u| = sqrt(2), |v| = sqrt(5)
        let u = [c(1.0, 0.0), c(0.0, 1.0)];
        let v = [c(1.0, 0.0), c(2.0, 0.0)];
        let m = CMat::from_fn(2, 2, |i, j| u[i] * v[j].conj());
        let sv = m.singular_values().unwrap();
        assert_abs_diff_eq!(sv[0], sqrt(10.0), epsilon = 1e-13);
        assert_abs_diff_eq!(sv[1], 0.0, epsilon = 1e-13);
    }

    #[test]
    fn singular_values_match_eigenvalues_of_gram() {
        let m = CMat::from_row_major(
            3,
            2,
            vec![c(1.0, 0.5), c(-0.3, 0.0), c(0.2, -1.0), c(0.7, 0.1), c(0.0, 0.4), c(1.5, 0.0)],
        )
        .unwrap();
        let sv = m.singular_values().unwrap();
        // sum of squares equals the Frobenius norm, product equals sqrt(det(M^*M))
        let fro: f64 = sv.iter().map(|s| s * s).sum();
        assert_abs_diff_eq!(fro, m.frobenius_norm_sqr(), epsilon = 1e-12);
        let g = m.adjoint_mul(&m).unwrap();
        assert_abs_diff_eq!(sv[0] * sv[0] * sv[1] * sv[1], g.det().unwrap().re, epsilon = 1e-12);
    }

    #[test]
    fn thin_q_is_orthonormal() {
        let m = CMat::from_row_major(
            3,
            2,
            vec![c(1.0, 0.5), c(-0.3, 0.0), c(0.2, -1.0), c(0.7, 0.1), c(0.0, 0.4), c(1.5, 0.0)],
        )
        .unwrap();
        let q = m.thin_q().unwrap();
        assert!(q.adjoint_mul(&q).unwrap().max_dev_from_identity() < 1e-14);
        assert!(CMat::zeros(3, 2).thin_q().is_err());
    }
}
