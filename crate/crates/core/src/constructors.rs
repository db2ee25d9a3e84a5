//! Correlation matrices built from density-matrix factors and partial
//! isometries.
//!
//! For factors `H_1, ..., H_n` with `tr(H_i^* H_i) = 1` the matrices
//! `(tr H_i^* H_j)` and `(tr |H_i^* H_j|)` are correlation matrices; for
//! partial isometries (`H_i^* H_i = I`) so is `(det H_i^* H_j)`.

use alloc::vec::Vec;
use num_complex::Complex64;
use rand::Rng;

use crate::dense::CMat;
use crate::linalg::{is_psd, to_correlation};
use crate::sampling::{density_factor_matrix, isometry_matrix, sample_correlation, stream_rng};
use crate::{Certificate, CorrelationMatrix, Error, Field, HermitianMatrix, Result, PSD_TOL};

/// Tolerance on the trace and isometry invariants.
pub const FACTOR_TOL: f64 = 1e-9;

/// A square `H` with `tr(H^* H) = 1`, so `H^* H` is a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityFactor(CMat);

impl DensityFactor {
    pub fn new(h: CMat) -> Result<Self> {
        if h.rows() != h.cols() {
            return Err(Error::DimensionMismatch { expected: h.rows(), actual: h.cols() });
        }
        if h.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(0));
        }
        let t = h.frobenius_norm_sqr();
        if (t - 1.0).abs() > FACTOR_TOL {
            return Err(Error::TraceNotOne(t));
        }
        Ok(DensityFactor(h))
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }
}

/// An `m x n` matrix `H` with `H^* H = I_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialIsometry(CMat);

impl PartialIsometry {
    pub fn new(h: CMat) -> Result<Self> {
        if h.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(0));
        }
        let dev = h.adjoint_mul(&h)?.max_dev_from_identity();
        if !(dev <= FACTOR_TOL) {
            return Err(Error::NotIsometry(dev));
        }
        Ok(PartialIsometry(h))
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }
}

fn uniform_shape<'a>(ms: impl Iterator<Item = &'a CMat>) -> Result<(usize, usize)> {
    let mut shape = None;
    for m in ms {
        match shape {
            None => shape = Some((m.rows(), m.cols())),
            Some((r, c)) if (r, c) != (m.rows(), m.cols()) => {
                let (expected, actual) = if r != m.rows() { (r, m.rows()) } else { (c, m.cols()) };
                return Err(Error::DimensionMismatch { expected, actual });
            }
            _ => {}
        }
    }
    shape.ok_or(Error::Empty("factor list"))
}

fn field_of<'a>(ms: impl Iterator<Item = &'a CMat>) -> Field {
    let complex = ms.flat_map(|m| m.as_slice()).any(|z| z.im != 0.0);
    if complex {
        Field::Complex
    } else {
        Field::Real
    }
}

/// Hermitian matrix from the lower triangle `f(i, j)`, `i >= j`, rescaled to
/// unit diagonal.
fn normalized_gram(n: usize, field: Field, f: impl FnMut(usize, usize) -> Complex64) -> Result<CorrelationMatrix> {
    to_correlation(&HermitianMatrix::from_lower_fn(n, field, f)?, PSD_TOL)
}

/// `(tr H_i^* H_j)`. The diagonal is 1 up to the factor tolerance and is
/// rescaled to exactly 1.
pub fn trace_gram(factors: &[DensityFactor]) -> Result<CorrelationMatrix> {
    uniform_shape(factors.iter().map(|f| &f.0))?;
    let field = field_of(factors.iter().map(|f| &f.0));
    normalized_gram(factors.len(), field, |i, j| factors[i].0.frobenius_inner(&factors[j].0).unwrap())
}

/// `(tr |H_i^* H_j|)` with its positivity certificate. The entries are real
/// and the diagonal is exactly 1; positivity is checked rather than assumed.
/// It is known for three factors and can fail for four or more.
#[derive(Debug, Clone)]
pub struct AbsTraceGram {
    pub matrix: HermitianMatrix,
    pub psd: Certificate,
}

impl AbsTraceGram {
    pub fn into_correlation(self, tol: f64) -> Result<CorrelationMatrix> {
        CorrelationMatrix::new(self.matrix, tol)
    }
}

pub fn abs_trace_gram(factors: &[DensityFactor], tol: f64) -> Result<AbsTraceGram> {
    uniform_shape(factors.iter().map(|f| &f.0))?;
    let n = factors.len();
    let mut lower = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in 0..i {
            lower.push(factors[i].0.adjoint_mul(&factors[j].0)?.trace_norm()?);
        }
        lower.push(1.0);
    }
    let mut it = lower.into_iter();
    let matrix = HermitianMatrix::from_lower_fn(n, Field::Real, |_, _| Complex64::new(it.next().unwrap(), 0.0))?;
    let psd = is_psd(&matrix, tol)?;
    Ok(AbsTraceGram { matrix, psd })
}

/// `(det H_i^* H_j)`, rescaled to exactly unit diagonal.
pub fn det_gram(isos: &[PartialIsometry]) -> Result<CorrelationMatrix> {
    uniform_shape(isos.iter().map(|h| &h.0))?;
    let field = field_of(isos.iter().map(|h| &h.0));
    let n = isos.len();
    let mut lower = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in 0..=i {
            lower.push(isos[i].0.adjoint_mul(&isos[j].0)?.det()?);
        }
    }
    let mut it = lower.into_iter();
    normalized_gram(n, field, |_, _| it.next().unwrap())
}

/// Gram matrix of `n` i.i.d. unit vectors in dimension `d`, deterministic in
/// `seed`.
pub fn random_correlation(n: usize, d: usize, field: Field, seed: u64) -> Result<CorrelationMatrix> {
    if n == 0 || d == 0 {
        return Err(Error::Empty("random correlation dimensions"));
    }
    sample_correlation(&mut stream_rng(seed, "random_correlation", 0), n, d, field)
}

pub fn random_density_factors<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    dim: usize,
    field: Field,
) -> Result<Vec<DensityFactor>> {
    (0..count).map(|_| DensityFactor::new(density_factor_matrix(rng, dim, field))).collect()
}

pub fn random_isometries<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    rows: usize,
    cols: usize,
    field: Field,
) -> Result<Vec<PartialIsometry>> {
    (0..count).map(|_| PartialIsometry::new(isometry_matrix(rng, rows, cols, field)?)).collect()
}
