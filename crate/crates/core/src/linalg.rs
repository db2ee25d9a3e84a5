//! Vectors, inner products, Gram matrices and positivity tests.
//!
//! Inner products are linear in the first argument:
//! `<u, v> = sum_j u_j * conj(v_j)`. Every inequality in this crate depends
//! only on `|<u, v>|` or `Re <u, v>`, which do not depend on that choice.

use alloc::vec::Vec;
use libm::{pow, sqrt};
use num_complex::Complex64;

use crate::dense::CMat;
use crate::eigen::hermitian_eigenvalues;
use crate::{Certificate, Error, Result, PSD3_TOL, PSD_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// The smallest field holding both operands.
    pub fn join(self, other: Field) -> Field {
        if self == Field::Real && other == Field::Real {
            Field::Real
        } else {
            Field::Complex
        }
    }
}

fn check_entries(entries: &[Complex64], field: Field) -> Result<()> {
    for (i, z) in entries.iter().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite(i));
        }
        if field == Field::Real && z.im != 0.0 {
            return Err(Error::ImaginaryInReal(i));
        }
    }
    Ok(())
}

/// An element of R^n or C^n.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    entries: Vec<Complex64>,
    field: Field,
}

impl Vector {
    pub fn new(entries: Vec<Complex64>, field: Field) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty("vector"));
        }
        check_entries(&entries, field)?;
        Ok(Vector { entries, field })
    }

    pub fn real(xs: &[f64]) -> Result<Self> {
        Self::new(xs.iter().map(|&x| Complex64::new(x, 0.0)).collect(), Field::Real)
    }

    pub fn complex(entries: Vec<Complex64>) -> Result<Self> {
        Self::new(entries, Field::Complex)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.entries.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// `s * self`. Multiplying a real vector by a non-real scalar lifts it to
    /// the complex field.
    pub fn scaled(&self, s: Complex64) -> Vector {
        let field = if s.im == 0.0 { self.field } else { Field::Complex };
        Vector { entries: self.entries.iter().map(|z| z * s).collect(), field }
    }

    /// Same vector viewed over the complex field.
    pub fn to_complex(&self) -> Vector {
        Vector { entries: self.entries.clone(), field: Field::Complex }
    }

    pub fn normalized(&self) -> Result<Vector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }
}

/// `<u, v> = sum_j u_j conj(v_j)`.
pub fn inner_product(u: &Vector, v: &Vector) -> Result<Complex64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), actual: v.len() });
    }
    if u.field != v.field {
        return Err(Error::FieldMismatch);
    }
    Ok(u.entries.iter().zip(&v.entries).map(|(a, b)| a * b.conj()).sum())
}

/// Inner product after lifting both operands to their common field.
pub(crate) fn inner_lifted(u: &Vector, v: &Vector) -> Result<Complex64> {
    if u.field == v.field {
        inner_product(u, v)
    } else {
        inner_product(&u.to_complex(), &v.to_complex())
    }
}

/// Hermitian matrix stored as its packed lower triangle; the upper triangle
/// is the conjugate mirror, so Hermitian symmetry is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    field: Field,
    lower: Vec<Complex64>,
}

#[inline]
fn packed(i: usize, j: usize) -> usize {
    debug_assert!(i >= j);
    i * (i + 1) / 2 + j
}

impl HermitianMatrix {
    /// Builds from a rule for the lower triangle (`i >= j`). Diagonal
    /// imaginary parts are dropped.
    pub fn from_lower_fn(n: usize, field: Field, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty("matrix"));
        }
        let mut lower = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in 0..=i {
                let z = f(i, j);
                lower.push(if i == j { Complex64::new(z.re, 0.0) } else { z });
            }
        }
        check_entries(&lower, field)?;
        Ok(HermitianMatrix { n, field, lower })
    }

    /// Builds from full row-major entries, rejecting anything that is not
    /// Hermitian to within `1e-12` relative to the largest entry.
    pub fn from_row_major(n: usize, field: Field, entries: &[Complex64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty("matrix"));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, actual: entries.len() });
        }
        check_entries(entries, field)?;
        let scale = entries.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for i in 0..n {
            for j in 0..=i {
                let lo = entries[i * n + j];
                let up = entries[j * n + i].conj();
                if (lo - up).norm() > 1e-12 * scale {
                    return Err(Error::NotHermitian(i, j));
                }
            }
        }
        Self::from_lower_fn(n, field, |i, j| entries[i * n + j])
    }

    pub fn from_real_rows(n: usize, entries: &[f64]) -> Result<Self> {
        let z: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_row_major(n, Field::Real, &z)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_lower_fn(n.max(1), Field::Real, |i, j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
            .expect("identity is finite")
    }

    /// The unit-diagonal 3x3 matrix `[[1, a, b], [a, 1, c], [b, c, 1]]`.
    pub fn from_sym3(s: &Sym3) -> Result<Self> {
        let (a, b, c) = (s.a, s.b, s.c);
        Self::from_lower_fn(3, Field::Real, |i, j| {
            let v = match (i, j) {
                (1, 0) => a,
                (2, 0) => b,
                (2, 1) => c,
                _ => 1.0,
            };
            Complex64::new(v, 0.0)
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if i >= j {
            self.lower[packed(i, j)]
        } else {
            self.lower[packed(j, i)].conj()
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i).re).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.lower.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> CMat {
        CMat::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(self.n, |i, j| self.get(i, j))
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?[0])
    }

    /// Entrywise real part; still Hermitian (it is the average of `A` and
    /// its conjugate).
    pub fn real_part(&self) -> HermitianMatrix {
        HermitianMatrix {
            n: self.n,
            field: Field::Real,
            lower: self.lower.iter().map(|z| Complex64::new(z.re, 0.0)).collect(),
        }
    }
}

/// Spectral positivity test: passes iff
/// `min eig >= -tol * n * max|entry|`.
///
/// The certificate reads `0 <= min_eig` with the effective tolerance stored
/// in `tol`.
pub fn is_psd(m: &HermitianMatrix, tol: f64) -> Result<Certificate> {
    let min_eig = m.min_eigenvalue()?;
    let eff = tol * m.n as f64 * m.max_abs();
    Ok(Certificate::new("psd.spectral", 0.0, min_eig, eff).with("n", m.n).with("min_eig", min_eig))
}

pub fn gram(vs: &[Vector]) -> Result<HermitianMatrix> {
    let first = vs.first().ok_or(Error::Empty("vector list"))?;
    for v in vs {
        if v.len() != first.len() {
            return Err(Error::DimensionMismatch { expected: first.len(), actual: v.len() });
        }
        if v.field != first.field {
            return Err(Error::FieldMismatch);
        }
    }
    let mut err = None;
    let m = HermitianMatrix::from_lower_fn(vs.len(), first.field, |i, j| match inner_product(&vs[i], &vs[j]) {
        Ok(z) => z,
        Err(e) => {
            err = Some(e);
            Complex64::new(0.0, 0.0)
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

pub fn principal_submatrix(m: &HermitianMatrix, idx: &[usize]) -> Result<HermitianMatrix> {
    if idx.is_empty() {
        return Err(Error::Empty("index set"));
    }
    for (k, &i) in idx.iter().enumerate() {
        if i >= m.n {
            return Err(Error::IndexOutOfRange { index: i, n: m.n });
        }
        if idx[..k].contains(&i) {
            return Err(Error::DuplicateIndex(i));
        }
    }
    HermitianMatrix::from_lower_fn(idx.len(), m.field, |r, c| m.get(idx[r], idx[c]))
}

/// Hermitian PSD matrix with every diagonal entry exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    base: HermitianMatrix,
}

impl CorrelationMatrix {
    /// Validates unit diagonal and positivity at `tol`.
    pub fn new(base: HermitianMatrix, tol: f64) -> Result<Self> {
        for (i, d) in base.diagonal().into_iter().enumerate() {
            if d != 1.0 {
                return Err(Error::BadDiagonal { index: i, value: d, expected: "1" });
            }
        }
        let cert = is_psd(&base, tol)?;
        if !cert.pass {
            return Err(Error::NotPsd { min_eig: cert.rhs });
        }
        Ok(CorrelationMatrix { base })
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.base.get(i, j)
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.base
    }

    pub fn into_hermitian(self) -> HermitianMatrix {
        self.base
    }

    /// Off-diagonal entries of the principal submatrix on `{i, p, q}`:
    /// `a = m_ip`, `b = m_iq`, `c = m_pq`.
    pub fn triple(&self, i: usize, p: usize, q: usize) -> [Complex64; 3] {
        [self.get(i, p), self.get(i, q), self.get(p, q)]
    }
}

/// Scales `M` to `D^{-1/2} M D^{-1/2}` with `D = diag(M)`; the diagonal of
/// the result is set to exactly 1.
pub fn to_correlation(m: &HermitianMatrix, tol: f64) -> Result<CorrelationMatrix> {
    let d = m.diagonal();
    for (i, &di) in d.iter().enumerate() {
        if !(di > 0.0) {
            return Err(Error::BadDiagonal { index: i, value: di, expected: "> 0" });
        }
    }
    let inv: Vec<f64> = d.iter().map(|&x| 1.0 / sqrt(x)).collect();
    let base = HermitianMatrix::from_lower_fn(m.n, m.field, |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            m.get(i, j) * (inv[i] * inv[j])
        }
    })?;
    CorrelationMatrix::new(base, tol)
}

/// Off-diagonal triple `(a, b, c)` of the unit-diagonal 3x3 matrix
/// `[[1, a, b], [a, 1, c], [b, c, 1]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Sym3 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Sym3 {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Sym3 { a, b, c }
    }

    /// The determinant `1 + 2abc - a^2 - b^2 - c^2`.
    pub fn det(&self) -> f64 {
        let Sym3 { a, b, c } = *self;
        1.0 + 2.0 * a * b * c - a * a - b * b - c * c
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite()
    }

    pub fn abs(&self) -> Sym3 {
        Sym3::new(self.a.abs(), self.b.abs(), self.c.abs())
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }
}

/// Closed-form 3x3 positivity: all entries in `[-1, 1]` and
/// `1 + 2abc >= a^2 + b^2 + c^2`, both up to [`PSD3_TOL`].
pub fn is_psd_3x3(s: &Sym3) -> bool {
    let bound = 1.0 + PSD3_TOL;
    s.is_finite() && s.a.abs() <= bound && s.b.abs() <= bound && s.c.abs() <= bound && s.det() >= -PSD3_TOL
}

/// A [`Sym3`] that passed [`is_psd_3x3`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdSym3(Sym3);

impl PsdSym3 {
    pub fn new(s: Sym3) -> Result<Self> {
        if is_psd_3x3(&s) {
            Ok(PsdSym3(s))
        } else {
            Err(Error::NotPsd {
                min_eig: HermitianMatrix::from_sym3(&s).and_then(|m| m.min_eigenvalue()).unwrap_or(f64::NAN),
            })
        }
    }

    pub fn from_entries(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(Sym3::new(a, b, c))
    }

    pub fn get(&self) -> Sym3 {
        self.0
    }
}

impl core::ops::Deref for PsdSym3 {
    type Target = Sym3;
    fn deref(&self) -> &Sym3 {
        &self.0
    }
}

/// `(|a|, |b|, |c|)`; positivity is preserved for 3x3 matrices.
pub fn entrywise_abs3(s: &PsdSym3) -> Result<PsdSym3> {
    PsdSym3::new(s.abs())
}

/// Hadamard power `(a^r, b^r, c^r)` of a nonnegative PSD triple, `r >= 1`.
pub fn hadamard_power3(s: &PsdSym3, r: f64) -> Result<PsdSym3> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(Error::OutOfRange { what: "Hadamard exponent (needs r >= 1)", value: r });
    }
    for v in s.to_array() {
        if v < 0.0 {
            return Err(Error::OutOfRange { what: "Hadamard power entry (needs >= 0)", value: v });
        }
    }
    PsdSym3::new(Sym3::new(pow(s.a, r), pow(s.b, r), pow(s.c, r)))
}

/// Default-tolerance convenience for [`is_psd`].
pub fn is_psd_default(m: &HermitianMatrix) -> Result<Certificate> {
    is_psd(m, PSD_TOL)
}
