//! Seeded random inputs for the randomized sweeps.
//!
//! Every sample draws from its own ChaCha8 stream keyed by
//! `(seed, family, index)`, so a sweep produces the same samples however it
//! is split across threads.

use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::sqrt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

pub use rand_chacha::ChaCha8Rng;

use crate::dense::CMat;
use crate::linalg::{gram, to_correlation};
use crate::{CorrelationMatrix, Field, Result, Sym3, Vector, PSD_TOL};

/// FNV-1a, used to turn a family name into key material.
fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// The RNG for sample `index` of `family` under `seed`.
pub fn stream_rng(seed: u64, family: &str, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&fnv1a(family).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

fn normal_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Complex64 {
    match field {
        Field::Real => Complex64::new(normal(rng), 0.0),
        Field::Complex => Complex64::new(normal(rng), normal(rng)),
    }
}

/// Vector with i.i.d. standard normal entries (real and imaginary parts
/// independent in the complex case).
pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, d: usize, field: Field) -> Result<Vector> {
    Vector::new((0..d).map(|_| normal_scalar(rng, field)).collect(), field)
}

/// Uniform on the unit sphere of `R^d` or `C^d`.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, d: usize, field: Field) -> Result<Vector> {
    loop {
        let v = gaussian_vector(rng, d, field)?;
        // a norm this small has probability zero, but would amplify rounding
        if v.norm() > 1e-8 {
            return v.normalized();
        }
    }
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, field: Field) -> CMat {
    CMat::from_fn(rows, cols, |_, _| normal_scalar(rng, field))
}

/// Gram matrix of `n` i.i.d. unit vectors in dimension `d`, rescaled so the
/// diagonal is exactly 1.
pub fn sample_correlation<R: Rng + ?Sized>(rng: &mut R, n: usize, d: usize, field: Field) -> Result<CorrelationMatrix> {
    let vs = (0..n).map(|_| unit_vector(rng, d, field)).collect::<Result<Vec<_>>>()?;
    to_correlation(&gram(&vs)?, PSD_TOL)
}

/// `A / sqrt(tr(A^* A))` for Gaussian `A`, so that `tr(H^* H) = 1`.
pub fn density_factor_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field) -> CMat {
    loop {
        let a = gaussian_matrix(rng, n, n, field);
        let f = a.frobenius_norm_sqr();
        if f > 1e-12 {
            return a.scale(Complex64::new(1.0 / sqrt(f), 0.0));
        }
    }
}

/// `rows x cols` matrix with orthonormal columns, from thin QR of a Gaussian
/// matrix.
pub fn isometry_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, field: Field) -> Result<CMat> {
    loop {
        match gaussian_matrix(rng, rows, cols, field).thin_q() {
            Ok(q) => return Ok(q),
            Err(crate::Error::NoConvergence(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// Real correlation triple: the Gram matrix of three unit vectors in `R^3`,
/// which reaches every real 3x3 correlation matrix.
pub fn random_psd_sym3<R: Rng + ?Sized>(rng: &mut R) -> Sym3 {
    let mut u = [[0.0f64; 3]; 3];
    for row in u.iter_mut() {
        loop {
            for x in row.iter_mut() {
                *x = normal(rng);
            }
            let n = sqrt(row.iter().map(|x| x * x).sum());
            if n > 1e-8 {
                row.iter_mut().for_each(|x| *x /= n);
                break;
            }
        }
    }
    let dot = |p: usize, q: usize| (0..3).map(|j| u[p][j] * u[q][j]).sum::<f64>().clamp(-1.0, 1.0);
    Sym3::new(dot(0, 1), dot(0, 2), dot(1, 2))
}

/// Uniform point of `[lo, hi]^3`.
pub fn uniform_cube<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> [f64; 3] {
    let mut x = [0.0; 3];
    for v in x.iter_mut() {
        *v = rng.random_range(lo..=hi);
    }
    x
}

/// Triangle triple `(a, b, c)` with `a, b` uniform in `[0, scale]` and `c`
/// uniform in `[|a - b|, a + b]`, in a random arrangement.
pub fn random_triangle<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> [f64; 3] {
    let a = rng.random_range(0.0..=scale);
    let b = rng.random_range(0.0..=scale);
    let (lo, hi) = ((a - b).abs(), a + b);
    let c = if hi > lo { rng.random_range(lo..=hi) } else { lo };
    let mut t = [a, b, c];
    let r = rng.random_range(0..3usize);
    t.rotate_left(r);
    t
}

/// Uniform phase `exp(i phi)`.
pub fn random_phase<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI))
}
