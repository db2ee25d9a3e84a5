//! Fixed inputs with known verdicts.
//!
//! Some are counterexamples: inequalities that look plausible but are false,
//! and must keep failing so that an implementation that is too lenient gets
//! caught. The others pin down the bounds that do hold on the same inputs.

use anglekit_core::angles::AngleKind;
use anglekit_core::corr_ineq::{affine_bound_certificates, completion_interval, pair_bound_certificates};
use anglekit_core::linalg::CorrelationMatrix;
use anglekit_core::metric_fn::{
    cos_sum_certificate, cos_sum_witness, signed_cos_sin_certificate, unit_angle_certificates,
};
use anglekit_core::{Certificate, Complex64, PsdSym3, Vector};
use anyhow::{anyhow, Result};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Regression {
    pub name: &'static str,
    /// Expected verdict of the certificate.
    pub expect_pass: bool,
    /// Whether the certificate matched its expected verdict.
    pub ok: bool,
    pub certificate: Certificate,
}

impl Regression {
    fn new(name: &'static str, expect_pass: bool, certificate: Certificate) -> Self {
        Regression { name, expect_pass, ok: certificate.pass == expect_pass, certificate }
    }
}

fn find(certs: Vec<Certificate>, id: &str) -> Result<Certificate> {
    certs.into_iter().find(|c| c.id == id).ok_or_else(|| anyhow!("no {id} certificate"))
}

fn sqrt_1m_sq(c: f64) -> f64 {
    (1.0 - c * c).sqrt()
}

/// `a = 1`, `b = c = 0.1`, the boundary matrix `[[1, 1, .1], [1, 1, .1],
/// [.1, .1, 1]]`. Linear and square differences stay under
/// `sqrt(1 - c^2)`; the cube difference does not.
pub fn matrix_c(tol: f64) -> Result<Vec<Regression>> {
    let (a, b, c) = (1.0, 0.1, 0.1);
    let s = PsdSym3::from_entries(a, b, c)?;
    let pairs = pair_bound_certificates(&s, tol)?;
    let cube = Certificate::new("regress.cube_vs_sqrt", f64::abs(a * a * a - b * b * b), sqrt_1m_sq(c), tol)
        .with("a", a)
        .with("b", b)
        .with("c", c);
    Ok(vec![
        Regression::new("matrix_c.linear", true, find(pairs.clone(), "pair.lin_nonneg")?),
        Regression::new(
            "matrix_c.square",
            true,
            pairs.into_iter().find(|c| c.id == "pair.sq_any" && c.lhs == f64::abs(a * a - b * b)).unwrap(),
        ),
        Regression::new("matrix_c.cube", false, cube),
    ])
}

/// `a = 0`, `b = 0.4`, `c = 0.91`: `|a - b| = 0.4` exceeds `sqrt(1 - c) =
/// 0.3` but not `sqrt 2 * sqrt(1 - c)`.
pub fn matrix_d(tol: f64) -> Result<Vec<Regression>> {
    let (a, b, c) = (0.0, 0.4, 0.91);
    let s = PsdSym3::from_entries(a, b, c)?;
    let sqrt2 = pair_bound_certificates(&s, tol)?
        .into_iter()
        .find(|x| x.id == "pair.lin_sqrt2_any" && x.lhs == f64::abs(a - b))
        .ok_or_else(|| anyhow!("no sqrt 2 certificate for (a, b)"))?;
    let unit = Certificate::new("regress.unit_for_sqrt2", f64::abs(a - b), (1.0 - c).sqrt(), tol)
        .with("a", a)
        .with("b", b)
        .with("c", c);
    Ok(vec![Regression::new("matrix_d.sqrt2", true, sqrt2), Regression::new("matrix_d.unit", false, unit)])
}

/// `a = 1`, `b = c = -1`: positive semidefinite, but `|a - b| = 2` while
/// `sqrt(1 - c^2) = 0`. The linear bound needs nonnegative entries.
pub fn signed_linear(tol: f64) -> Result<Vec<Regression>> {
    let (a, b, c) = (1.0, -1.0, -1.0);
    PsdSym3::from_entries(a, b, c)?;
    let cert = Certificate::new("regress.lin_signed", f64::abs(a - b), sqrt_1m_sq(c), tol);
    Ok(vec![Regression::new("signed_entries.linear", false, cert)])
}

/// The affine majorant `1 + (sqrt(1 - c+^2) - 1) x / c+` with `c+ < 0`:
/// `a = -sqrt(0.55)`, `b = sqrt(0.55)` give `[c-, c+] = [-1, -0.1]` and at
/// `c = c- = -1` the linear form fails.
pub fn affine_negative_cplus(tol: f64) -> Result<Vec<Regression>> {
    let r = 0.55f64.sqrt();
    let (a, b) = (-r, r);
    let ci = completion_interval(a, b)?;
    let c = ci.c_minus;
    let s = PsdSym3::from_entries(a, b, c)?;
    let f = 1.0 + (sqrt_1m_sq(ci.c_plus) - 1.0) * c / ci.c_plus;
    let lin = Certificate::new("regress.affine_negative_cplus", f64::abs(a - b), (1.0 - ci.c_minus).sqrt() * f, tol)
        .with("c_plus", ci.c_plus)
        .with("c_minus", ci.c_minus);
    Ok(vec![
        Regression::new("affine.square", true, find(affine_bound_certificates(&s, tol)?, "pair.affine_sq")?),
        Regression::new("affine.linear_negative_cplus", false, lin),
    ])
}

/// `u = (0,0,1)`, `v = (1,0,1)/sqrt 2`, `w = (0,1,0)`: the cosine sum fails
/// by `1/sqrt 2` while the angle, sine and mixed forms hold for both kinds.
pub fn cos_sum(tol: f64) -> Result<Vec<Regression>> {
    let [u, v, w] = cos_sum_witness();
    let mut out =
        vec![Regression::new("cos_sum.counterexample", false, cos_sum_certificate(&u, &v, &w, AngleKind::Theta, tol)?)];
    for kind in AngleKind::ALL {
        for c in unit_angle_certificates(&u, &v, &w, kind, tol)? {
            out.push(Regression::new("cos_sum.companions", true, c));
        }
    }
    Ok(out)
}

/// `u = v`, `w = -u`: with signed cosines of the real-part angle,
/// `cos 0 <= cos pi + sin pi` reads `1 <= -1`.
pub fn signed_cos_sin(tol: f64) -> Result<Vec<Regression>> {
    let u = Vector::real(&[0.6, 0.8])?;
    let w = u.scaled(Complex64::new(-1.0, 0.0));
    Ok(vec![
        Regression::new(
            "cos_sin.signed_cap_theta",
            false,
            signed_cos_sin_certificate(&u, &u, &w, AngleKind::CapTheta, tol)?,
        ),
        Regression::new("cos_sin.signed_theta", true, signed_cos_sin_certificate(&u, &u, &w, AngleKind::Theta, tol)?),
    ])
}

/// Gram matrix of `e1, e2, e1, e1`. Bounding `||m_ip| - |m_iq||` by an
/// entry from a row `j != p` fails at `(i, p, q, j) = (0, 1, 3, 2)`.
pub fn general_index(tol: f64) -> Result<Vec<Regression>> {
    let e = |k: usize| {
        let mut x = [0.0; 2];
        x[k] = 1.0;
        Vector::real(&x)
    };
    let vs = [e(0)?, e(1)?, e(0)?, e(0)?];
    let m = CorrelationMatrix::new(anglekit_core::linalg::gram(&vs)?, tol)?;
    let (i, p, q, j) = (0, 1, 3, 2);
    let lhs = (m.get(i, p).norm() - m.get(i, q).norm()).abs();
    let rhs = sqrt_1m_sq(m.get(j, q).norm());
    let cert =
        Certificate::new("regress.general_index", lhs, rhs, tol).with("i", i).with("p", p).with("q", q).with("j", j);
    Ok(vec![Regression::new("general_index.e1_e2_e1_e1", false, cert)])
}

pub fn all(tol: f64) -> Result<Vec<Regression>> {
    let mut out = Vec::new();
    for part in [matrix_c, matrix_d, signed_linear, affine_negative_cplus, cos_sum, signed_cos_sin, general_index] {
        out.extend(part(tol)?);
    }
    Ok(out)
}
