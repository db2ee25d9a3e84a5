use alloc::vec::Vec;
use core::f64::consts::SQRT_2;
use libm::{acos, cos, pow, sin, sqrt};

use super::{sqrt_one_minus, sqrt_one_minus_sq};
use crate::angles::unit_inner;
use crate::linalg::{CorrelationMatrix, PsdSym3, Vector};
use crate::{Certificate, Error, Result};

/// Determinant-type inequalities for the Gram matrix of three vectors,
/// after normalizing each to unit length. With `x = <u,v>`, `y = <v,w>`,
/// `z = <w,u>`:
///
/// * `gram.abs_det`: `|x|^2 + |y|^2 + |z|^2 <= 1 + 2|x||y||z|`
/// * `gram.re_det`: `|x|^2 + |y|^2 + |z|^2 <= 1 + 2 Re(xyz)`
/// * `gram.re_le_abs`: `Re(xyz) <= |xyz|`, so the second implies the first
pub fn gram_triple_certificates(u: &Vector, v: &Vector, w: &Vector, tol: f64) -> Result<Vec<Certificate>> {
    let x = unit_inner(u, v)?;
    let y = unit_inner(v, w)?;
    let z = unit_inner(w, u)?;
    let sumsq = x.norm_sqr() + y.norm_sqr() + z.norm_sqr();
    let prod = x * y * z;
    let scale = |c: Certificate| c.with("norm_u", u.norm()).with("norm_v", v.norm()).with("norm_w", w.norm());
    Ok(alloc::vec![
        scale(Certificate::new("gram.abs_det", sumsq, 1.0 + 2.0 * x.norm() * y.norm() * z.norm(), tol)),
        scale(Certificate::new("gram.re_det", sumsq, 1.0 + 2.0 * prod.re, tol)),
        Certificate::new("gram.re_le_abs", prod.re, prod.norm(), tol),
    ])
}

fn check_power(k: f64, min: f64) -> Result<()> {
    if !k.is_finite() || k < min {
        return Err(Error::OutOfRange { what: "power k", value: k });
    }
    Ok(())
}

fn is_integer(k: f64) -> bool {
    k.is_finite() && k == libm::trunc(k)
}

/// Entrywise-power bounds for a PSD triple:
///
/// * `power.abs_lin`: `||a| - |b|| <= sqrt(1 - |c|^2)`
/// * `power.sqrt2`: `sqrt(1 - |c|^2) <= sqrt(2) sqrt(1 - |c|)`
/// * `power.abs_pow` (real `k >= 2`): `||a|^k - |b|^k| <= sqrt(1 - |c|^k)`
/// * `power.cos_sin` (integer `k >= 1`): with `alpha, beta, gamma` the
///   arccosines of `|a|, |b|, |c|`,
///   `|cos^k alpha - cos^k beta| <= sqrt(k) sin gamma`
///
/// Fails with [`Error::OutOfRange`] for `k < 1` and for fractional `k < 2`,
/// where neither power form applies.
pub fn power_certificates(s: &PsdSym3, k: f64, tol: f64) -> Result<Vec<Certificate>> {
    check_power(k, 1.0)?;
    let integer = is_integer(k);
    if !integer && k < 2.0 {
        return Err(Error::OutOfRange { what: "power k (fractional k needs k >= 2)", value: k });
    }
    let (a, b, c) = (s.a.abs().min(1.0), s.b.abs().min(1.0), s.c.abs().min(1.0));
    let mut out = Vec::with_capacity(4);
    out.push(Certificate::new("power.abs_lin", (a - b).abs(), sqrt_one_minus_sq(c), tol));
    out.push(Certificate::new("power.sqrt2", sqrt_one_minus_sq(c), SQRT_2 * sqrt_one_minus(c), tol));
    if k >= 2.0 {
        out.push(
            Certificate::new("power.abs_pow", (pow(a, k) - pow(b, k)).abs(), sqrt_one_minus(pow(c, k)), tol)
                .with("k", k),
        );
    }
    if integer {
        let (alpha, beta, gamma) = (acos(a), acos(b), acos(c));
        let lhs = (pow(cos(alpha), k) - pow(cos(beta), k)).abs();
        out.push(Certificate::new("power.cos_sin", lhs, sqrt(k) * sin(gamma), tol).with("k", k));
    }
    Ok(out)
}

/// Entry inequalities on every 3x3 principal submatrix `{i, p, q}`,
/// `i < p < q`, with `a = m_ip`, `b = m_iq`, `c = m_pq`:
///
/// * `entry.abs_lin`: `||a| - |b|| <= sqrt(1 - |c|^2)`
/// * `entry.abs_sqrt2`: `sqrt(1 - |c|^2) <= sqrt(2) sqrt(1 - |c|)`
/// * `entry.abs_pow`: `||a|^k - |b|^k| <= sqrt(1 - |c|^k)`
///
/// and the same three with `Re` in place of the entries (`entry.re_*`).
/// Requires `k >= 2`.
pub fn entry_certificates(m: &CorrelationMatrix, k: f64, tol: f64) -> Result<Vec<Certificate>> {
    check_power(k, 2.0)?;
    let n = m.n();
    let mut out = Vec::new();
    for i in 0..n {
        for p in i + 1..n {
            for q in p + 1..n {
                let [a, b, c] = m.triple(i, p, q);
                let abs = [a.norm(), b.norm(), c.norm()];
                let re = [a.re, b.re, c.re];
                for (ids, [x, y, z]) in [(ABS_IDS, abs), (RE_IDS, re)] {
                    let (x, y, z) = (x.abs().min(1.0), y.abs().min(1.0), z.abs().min(1.0));
                    let tag = |c: Certificate| c.with("i", i).with("p", p).with("q", q);
                    out.push(tag(Certificate::new(ids[0], (x - y).abs(), sqrt_one_minus_sq(z), tol)));
                    out.push(tag(Certificate::new(ids[1], sqrt_one_minus_sq(z), SQRT_2 * sqrt_one_minus(z), tol)));
                    out.push(
                        tag(Certificate::new(ids[2], (pow(x, k) - pow(y, k)).abs(), sqrt_one_minus(pow(z, k)), tol))
                            .with("k", k),
                    );
                }
            }
        }
    }
    Ok(out)
}

const ABS_IDS: [&str; 3] = ["entry.abs_lin", "entry.abs_sqrt2", "entry.abs_pow"];
const RE_IDS: [&str; 3] = ["entry.re_lin", "entry.re_sqrt2", "entry.re_pow"];

/// A violation of `||m_ip| - |m_iq|| <= sqrt(1 - |m_jq|^2)` for an index
/// `j != p` with `i < j < q`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GeneralIndexWitness {
    pub i: usize,
    pub j: usize,
    pub p: usize,
    pub q: usize,
    pub lhs: f64,
    pub rhs: f64,
}

/// Exploratory scan of the entry inequality with the bounding entry taken
/// from a row `j` other than `p`. That reading is not a theorem: the Gram
/// matrix of `e1, e2, e1, e1` already violates it. Violations are returned,
/// not treated as failures.
pub fn general_index_counterexamples(m: &CorrelationMatrix, tol: f64) -> Vec<GeneralIndexWitness> {
    let n = m.n();
    let mut out = Vec::new();
    for i in 0..n {
        for q in i + 2..n {
            for p in i + 1..q {
                for j in i + 1..q {
                    if j == p {
                        continue;
                    }
                    let lhs = (m.get(i, p).norm() - m.get(i, q).norm()).abs();
                    let rhs = sqrt_one_minus_sq(m.get(j, q).norm());
                    if lhs > rhs + tol {
                        out.push(GeneralIndexWitness { i, j, p, q, lhs, rhs });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{gram, to_correlation, HermitianMatrix};
    use crate::{Complex64, PSD_TOL};
    use approx::assert_abs_diff_eq;
    use std::vec;

    fn r(xs: &[f64]) -> Vector {
        Vector::real(xs).unwrap()
    }

    fn e(n: usize, i: usize) -> Vector {
        let mut x = vec![0.0; n];
        x[i] = 1.0;
        r(&x)
    }

    #[test]
    fn gram_triple_orthonormal_and_equal() {
        let certs = gram_triple_certificates(&e(3, 0), &e(3, 1), &e(3, 2), 1e-12).unwrap();
        assert!(certs.iter().all(|c| c.pass));
        assert_eq!((certs[0].lhs, certs[0].rhs), (0.0, 1.0));
        assert_eq!((certs[1].lhs, certs[1].rhs), (0.0, 1.0));

        let u = r(&[0.6, 0.8, 0.0]);
        let certs = gram_triple_certificates(&u, &u, &u, 1e-12).unwrap();
        for c in &certs[..2] {
            assert_abs_diff_eq!(c.lhs, 3.0, epsilon = 1e-14);
            assert_abs_diff_eq!(c.rhs, 3.0, epsilon = 1e-14);
            assert!(c.pass);
        }
    }

    #[test]
    fn gram_triple_normalizes_and_records_scaling() {
        let u = r(&[3.0, 0.0]);
        let certs = gram_triple_certificates(&u, &e(2, 1), &e(2, 0), 1e-12).unwrap();
        assert_eq!(certs[0].context.get("norm_u"), Some(crate::CtxValue::Real(3.0)));
        assert!(certs.iter().all(|c| c.pass));
        assert_eq!(gram_triple_certificates(&u, &r(&[0.0, 0.0]), &u, 1e-12), Err(Error::ZeroVector));
    }

    #[test]
    fn power_examples() {
        let s = PsdSym3::from_entries(0.5, 0.5, 0.5).unwrap();
        let certs = power_certificates(&s, 2.0, 1e-9).unwrap();
        assert_eq!(certs.len(), 4);
        assert!(certs.iter().all(|c| c.pass));
        assert_eq!(certs[2].lhs, 0.0);

        let s = PsdSym3::from_entries(1.0, 0.1, 0.1).unwrap();
        let certs = power_certificates(&s, 3.0, 1e-9).unwrap();
        let pow3 = certs.iter().find(|c| c.id == "power.abs_pow").unwrap();
        assert_abs_diff_eq!(pow3.lhs, 0.999, epsilon = 1e-12);
        assert_abs_diff_eq!(pow3.rhs, 0.999f64.sqrt(), epsilon = 1e-12);
        assert!(certs.iter().all(|c| c.pass));

        // sqrt(2) form on (0, 0.4, 0.91)
        let s = PsdSym3::from_entries(0.0, 0.4, 0.91).unwrap();
        let certs = power_certificates(&s, 2.0, 1e-9).unwrap();
        assert!(certs.iter().all(|c| c.pass));
    }

    #[test]
    fn power_k_ranges() {
        let s = PsdSym3::from_entries(0.5, 0.5, 0.5).unwrap();
        let ids = |k| power_certificates(&s, k, 1e-9).unwrap().iter().map(|c| c.id).collect::<Vec<_>>();
        assert_eq!(ids(1.0), ["power.abs_lin", "power.sqrt2", "power.cos_sin"]);
        assert_eq!(ids(5.5), ["power.abs_lin", "power.sqrt2", "power.abs_pow"]);
        assert!(power_certificates(&s, 1.5, 1e-9).is_err());
        assert!(power_certificates(&s, 0.5, 1e-9).is_err());
        assert!(power_certificates(&s, f64::NAN, 1e-9).is_err());
    }

    #[test]
    fn sqrt_k_factor_tends_to_be_needed() {
        // alpha = beta + eps near tan(beta) = 1 / sqrt(k - 1): ratio approaches the
        // diagonal supremum, which exceeds 1 for k >= 3
        let k = 6.0;
        let beta = libm::atan(1.0 / sqrt(k - 1.0));
        let gamma = 1e-4;
        let alpha = beta + gamma;
        let s = PsdSym3::from_entries(cos(alpha), cos(beta), cos(gamma)).unwrap();
        let c = power_certificates(&s, k, 1e-12).unwrap().into_iter().find(|c| c.id == "power.cos_sin").unwrap();
        assert!(c.pass);
        assert!(c.lhs > sin(gamma), "unit factor would fail: {} vs {}", c.lhs, sin(gamma));
    }

    #[test]
    fn entry_examples() {
        let id = CorrelationMatrix::new(HermitianMatrix::identity(4), PSD_TOL).unwrap();
        let certs = entry_certificates(&id, 3.0, 1e-12).unwrap();
        assert_eq!(certs.len(), 4 * 6);
        assert!(certs.iter().all(|c| c.pass && (c.lhs == 0.0 || c.id.ends_with("sqrt2"))));

        let cm = CorrelationMatrix::new(
            HermitianMatrix::from_real_rows(3, &[1.0, 1.0, 0.1, 1.0, 1.0, 0.1, 0.1, 0.1, 1.0]).unwrap(),
            PSD_TOL,
        )
        .unwrap();
        // (a, b, c) = (m_01, m_02, m_12) = (1, 0.1, 0.1)
        let certs = entry_certificates(&cm, 2.0, 1e-9).unwrap();
        assert!(certs.iter().all(|c| c.pass));
        let pow = certs.iter().find(|c| c.id == "entry.abs_pow").unwrap();
        assert_abs_diff_eq!(pow.lhs, 0.99, epsilon = 1e-12);
        assert_abs_diff_eq!(pow.rhs, 0.99f64.sqrt(), epsilon = 1e-12);
        assert!(entry_certificates(&cm, 1.5, 1e-9).is_err());
    }

    #[test]
    fn entry_handles_complex_matrices() {
        let i = Complex64::new(0.0, 1.0);
        let u = Vector::complex(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
        let v = Vector::complex(vec![i * 0.6, Complex64::new(0.8, 0.0)]).unwrap();
        let w = Vector::complex(vec![Complex64::new(0.0, 0.0), i]).unwrap();
        let cm = to_correlation(&gram(&[u, v, w]).unwrap(), PSD_TOL).unwrap();
        let certs = entry_certificates(&cm, 2.0, 1e-12).unwrap();
        assert!(certs.iter().all(|c| c.pass), "{certs:?}");
    }

    #[test]
    fn general_index_reading_has_a_counterexample() {
        let vs = [e(2, 0), e(2, 1), e(2, 0), e(2, 0)];
        let g = gram(&vs).unwrap();
        let cm = CorrelationMatrix::new(g, PSD_TOL).unwrap();
        let w = general_index_counterexamples(&cm, 1e-12);
        let hit = w.iter().find(|w| (w.i, w.p, w.q, w.j) == (0, 1, 3, 2)).expect("counterexample found");
        assert_eq!((hit.lhs, hit.rhs), (1.0, 0.0));
        // the j = p reading holds on the same matrix
        assert!(entry_certificates(&cm, 2.0, 1e-12).unwrap().iter().all(|c| c.pass));
    }
}
