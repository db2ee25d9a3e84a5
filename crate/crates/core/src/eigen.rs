//! Eigenvalues of small Hermitian matrices.
//!
//! `n <= 2` uses the closed form. Larger matrices go through cyclic Jacobi,
//! complex ones on the real symmetric embedding `[[Re A, -Im A], [Im A, Re A]]`, whose spectrum
//! is the spectrum of `A` with every eigenvalue doubled.

use alloc::vec;
use alloc::vec::Vec;
use libm::sqrt;
use num_complex::Complex64;

use crate::{Error, Result};

/// Eigenvalues in ascending order. `entry(i, j)` must describe a Hermitian
/// matrix; only the upper triangle and the real part of the diagonal are read.
pub fn hermitian_eigenvalues(n: usize, entry: impl Fn(usize, usize) -> Complex64) -> Result<Vec<f64>> {
    let mut eig = match n {
        0 => return Err(Error::Empty("matrix")),
        1 => vec![entry(0, 0).re],
        2 => closed_form_2(entry(0, 0).re, entry(1, 1).re, entry(0, 1)).to_vec(),
        _ => {
            let real = (0..n).all(|i| (i..n).all(|j| entry(i, j).im == 0.0));
            if real {
                let mut a = vec![0.0; n * n];
                for i in 0..n {
                    for j in i..n {
                        a[i * n + j] = entry(i, j).re;
                        a[j * n + i] = entry(i, j).re;
                    }
                }
                jacobi_symmetric(n, a)?
            } else {
                let m = 2 * n;
                let mut a = vec![0.0; m * m];
                for i in 0..n {
                    for j in i..n {
                        let z = if i == j { Complex64::new(entry(i, i).re, 0.0) } else { entry(i, j) };
                        let zt = z.conj();
                        // top-left and bottom-right: Re, off blocks: -Im / Im
                        a[i * m + j] = z.re;
                        a[j * m + i] = zt.re;
                        a[(i + n) * m + (j + n)] = z.re;
                        a[(j + n) * m + (i + n)] = zt.re;
                        a[i * m + (j + n)] = -z.im;
                        a[j * m + (i + n)] = -zt.im;
                        a[(i + n) * m + j] = z.im;
                        a[(j + n) * m + i] = zt.im;
                    }
                }
                let doubled = jacobi_symmetric(m, a)?;
                doubled.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect()
            }
        }
    };
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

fn closed_form_2(a: f64, d: f64, b: Complex64) -> [f64; 2] {
    let mean = 0.5 * (a + d);
    let half_diff = 0.5 * (a - d);
    let r = sqrt(half_diff * half_diff + b.norm_sqr());
    [mean - r, mean + r]
}

/// Cyclic Jacobi on a dense real symmetric matrix (row-major).
/// Returns eigenvalues in ascending order.
pub fn jacobi_symmetric(n: usize, mut a: Vec<f64>) -> Result<Vec<f64>> {
    debug_assert_eq!(a.len(), n * n);
    let scale: f64 = a.iter().map(|x| x * x).sum();
    if scale == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let mut converged = false;
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off <= 1e-30 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + sqrt(theta * theta + 1.0));
                let c = 1.0 / sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence("symmetric Jacobi eigenvalues"));
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}
