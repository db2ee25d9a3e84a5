use alloc::vec::Vec;
use libm::sqrt;

use super::{sqrt_one_minus, sqrt_one_minus_sq};
use crate::linalg::PsdSym3;
use crate::{Certificate, Error, Result};

/// The set of `c` that keep `[[1, a, b], [a, 1, c], [b, c, 1]]` positive
/// semidefinite, for fixed `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CompletionInterval {
    pub c_minus: f64,
    pub c_plus: f64,
}

impl CompletionInterval {
    pub fn contains(&self, c: f64) -> bool {
        self.c_minus <= c && c <= self.c_plus
    }

    pub fn width(&self) -> f64 {
        self.c_plus - self.c_minus
    }
}

/// `Delta = max(sqrt(1 - c-^2), sqrt(1 - c+^2))`, `delta` the min.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DeltaBounds {
    pub big_delta: f64,
    pub small_delta: f64,
}

fn check_unit(what: &'static str, x: f64) -> Result<()> {
    if !(x.abs() <= 1.0) {
        return Err(Error::OutOfRange { what, value: x });
    }
    Ok(())
}

/// `c+- = ab +- sqrt((1 - a^2)(1 - b^2))`.
pub fn completion_interval(a: f64, b: f64) -> Result<CompletionInterval> {
    check_unit("completion entry a (needs |a| <= 1)", a)?;
    check_unit("completion entry b (needs |b| <= 1)", b)?;
    let r = sqrt(((1.0 - a * a) * (1.0 - b * b)).max(0.0));
    let ab = a * b;
    Ok(CompletionInterval { c_minus: (ab - r).max(-1.0), c_plus: (ab + r).min(1.0) })
}

pub fn delta_bounds(a: f64, b: f64) -> Result<DeltaBounds> {
    let ci = completion_interval(a, b)?;
    let lo = sqrt_one_minus_sq(ci.c_minus);
    let hi = sqrt_one_minus_sq(ci.c_plus);
    Ok(DeltaBounds { big_delta: lo.max(hi), small_delta: lo.min(hi) })
}

/// The three ways to pick an ordered pair `(x, y)` and the remaining entry
/// `z` from `(a, b, c)`.
pub(crate) fn arrangements(a: f64, b: f64, c: f64) -> [(f64, f64, f64); 3] {
    [(a, b, c), (a, c, b), (b, c, a)]
}

/// Bounds on `a` and `b` given the third entry `c`, for a PSD triple:
///
/// * `pair.sq_delta`: `|a^2 - b^2| <= Delta_{a,b} sqrt(1 - c^2)`
/// * `pair.lin_cminus`: `|a - b| <= sqrt(1 - c-) sqrt(1 - c)`
/// * `pair.lin_nonneg`: `|a - b| <= sqrt(1 - c^2)`, only when `a, b, c >= 0`
/// * `pair.sq_any`: `|x^2 - y^2| <= sqrt(1 - z^2)` for every arrangement
/// * `pair.lin_sqrt2_any`: `|x - y| <= sqrt(2) sqrt(1 - z)` for every arrangement
pub fn pair_bound_certificates(s: &PsdSym3, tol: f64) -> Result<Vec<Certificate>> {
    let (a, b, c) = (s.a, s.b, s.c);
    let ci = completion_interval(a.clamp(-1.0, 1.0), b.clamp(-1.0, 1.0))?;
    let db = delta_bounds(a.clamp(-1.0, 1.0), b.clamp(-1.0, 1.0))?;
    let mut out = Vec::with_capacity(9);
    out.push(Certificate::new("pair.sq_delta", (a * a - b * b).abs(), db.big_delta * sqrt_one_minus_sq(c), tol));
    out.push(
        Certificate::new("pair.lin_cminus", (a - b).abs(), sqrt_one_minus(ci.c_minus) * sqrt_one_minus(c), tol)
            .with("c_minus", ci.c_minus),
    );
    if a >= 0.0 && b >= 0.0 && c >= 0.0 {
        out.push(Certificate::new("pair.lin_nonneg", (a - b).abs(), sqrt_one_minus_sq(c), tol));
    }
    for (i, (x, y, z)) in arrangements(a, b, c).into_iter().enumerate() {
        out.push(
            Certificate::new("pair.sq_any", (x * x - y * y).abs(), sqrt_one_minus_sq(z), tol).with("arrangement", i),
        );
        out.push(
            Certificate::new("pair.lin_sqrt2_any", (x - y).abs(), core::f64::consts::SQRT_2 * sqrt_one_minus(z), tol)
                .with("arrangement", i),
        );
    }
    Ok(out)
}

/// The affine majorant `f(x) = 1 + (sqrt(1 - c+^2) - 1) x / c+` plugged into
/// the function-parameterized forms:
///
/// * `pair.affine_sq`: `|a^2 - b^2| <= Delta_{a,b} f(c)`
/// * `pair.affine_lin`: `|a - b| <= sqrt(1 - c-) f(c)`, only when `c+ > 0`
///
/// For `c+ < 0` the affine function can drop below `sqrt(1 - c+)` on
/// `[c-, c+]`, and the linear form really fails there (see the
/// `regress.affine_negative_cplus` regression), so it is not emitted.
/// Returns an empty list when `c+ = 0`.
pub fn affine_bound_certificates(s: &PsdSym3, tol: f64) -> Result<Vec<Certificate>> {
    let (a, b, c) = (s.a.clamp(-1.0, 1.0), s.b.clamp(-1.0, 1.0), s.c);
    let ci = completion_interval(a, b)?;
    let db = delta_bounds(a, b)?;
    let mut out = Vec::new();
    if ci.c_plus == 0.0 {
        return Ok(out);
    }
    let f = affine_majorant(ci.c_plus, c);
    out.push(
        Certificate::new("pair.affine_sq", (a * a - b * b).abs(), db.big_delta * f, tol).with("c_plus", ci.c_plus),
    );
    if ci.c_plus > 0.0 {
        out.push(
            Certificate::new("pair.affine_lin", (a - b).abs(), sqrt_one_minus(ci.c_minus) * f, tol)
                .with("c_plus", ci.c_plus),
        );
    }
    Ok(out)
}

pub(crate) fn affine_majorant(c_plus: f64, x: f64) -> f64 {
    1.0 + (sqrt_one_minus_sq(c_plus) - 1.0) * x / c_plus
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{is_psd, HermitianMatrix, Sym3};
    use crate::PSD_TOL;
    use approx::assert_abs_diff_eq;

    /// Independent oracle: scan c over [-1, 1] and keep the PSD range
    /// according to the spectral test.
    fn scan_interval(a: f64, b: f64, step: f64) -> Option<(f64, f64)> {
        let n = (2.0 / step).round() as usize;
        let mut lo = None;
        let mut hi = None;
        for i in 0..=n {
            let c = -1.0 + i as f64 * step;
            let m = HermitianMatrix::from_sym3(&Sym3::new(a, b, c)).unwrap();
            if is_psd(&m, PSD_TOL).unwrap().pass {
                lo.get_or_insert(c);
                hi = Some(c);
            }
        }
        Some((lo?, hi?))
    }

    #[test]
    fn completion_examples() {
        assert_eq!(completion_interval(0.0, 0.0).unwrap(), CompletionInterval { c_minus: -1.0, c_plus: 1.0 });
        assert_eq!(completion_interval(1.0, 0.0).unwrap(), CompletionInterval { c_minus: 0.0, c_plus: 0.0 });
        let ci = completion_interval(0.5, 0.5).unwrap();
        let (lo, hi) = scan_interval(0.5, 0.5, 1e-4).unwrap();
        assert_abs_diff_eq!(lo, -0.5, epsilon = 1e-4);
        assert_abs_diff_eq!(hi, 1.0, epsilon = 1e-4);
        assert_abs_diff_eq!(ci.c_minus, lo, epsilon = 1e-4);
        assert_abs_diff_eq!(ci.c_plus, hi, epsilon = 1e-4);
        assert_abs_diff_eq!(ci.c_minus, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(ci.c_plus, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn completion_rejects_out_of_range() {
        assert!(matches!(completion_interval(1.1, 0.0), Err(Error::OutOfRange { .. })));
        assert!(matches!(completion_interval(0.0, f64::NAN), Err(Error::OutOfRange { .. })));
        assert!(delta_bounds(-1.5, 0.0).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_bounds(0.0, 0.0).unwrap(), DeltaBounds { big_delta: 0.0, small_delta: 0.0 });
        let d = delta_bounds(0.5, 0.5).unwrap();
        assert_abs_diff_eq!(d.big_delta, 0.75f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(d.small_delta, 0.0, epsilon = 1e-7);
        assert_eq!(delta_bounds(1.0, 0.0).unwrap(), DeltaBounds { big_delta: 1.0, small_delta: 1.0 });
    }

    fn find<'a>(certs: &'a [Certificate], id: &str) -> impl Iterator<Item = &'a Certificate> + 'a {
        let id = alloc::string::String::from(id);
        certs.iter().filter(move |c| c.id == id)
    }

    #[test]
    fn pair_bounds_on_rank_two_example() {
        let s = PsdSym3::from_entries(1.0, 0.1, 0.1).unwrap();
        let certs = pair_bound_certificates(&s, 1e-9).unwrap();
        assert!(certs.iter().all(|c| c.pass));
        let sq = find(&certs, "pair.sq_any").next().unwrap();
        assert_abs_diff_eq!(sq.lhs, 0.99, epsilon = 1e-12);
        assert_abs_diff_eq!(sq.rhs, 0.99f64.sqrt(), epsilon = 1e-12);
        assert!(find(&certs, "pair.lin_nonneg").next().is_some());
    }

    #[test]
    fn pair_bounds_on_zero_triple() {
        let s = PsdSym3::from_entries(0.0, 0.0, 0.0).unwrap();
        let certs = pair_bound_certificates(&s, 1e-9).unwrap();
        assert_eq!(certs.len(), 9);
        for c in &certs {
            assert!(c.pass && c.lhs == 0.0 && c.slack >= 0.0, "{c:?}");
        }
    }

    #[test]
    fn sqrt2_factor_is_needed() {
        // (a, b, c) = (0, 0.4, 0.91): sqrt(1 - c) = 0.3 < |a - b| = 0.4
        let s = PsdSym3::from_entries(0.0, 0.4, 0.91).unwrap();
        let certs = pair_bound_certificates(&s, 1e-9).unwrap();
        assert!(certs.iter().all(|c| c.pass));
        let lin = find(&certs, "pair.lin_sqrt2_any").next().unwrap();
        assert_abs_diff_eq!(lin.lhs, 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(lin.rhs, 2f64.sqrt() * 0.3, epsilon = 1e-12);
        assert!(0.4 > sqrt_one_minus(0.91));
    }

    #[test]
    fn equality_case_is_tight() {
        // a = 1, b = c = 0 makes both the squared and the c- form tight
        let s = PsdSym3::from_entries(1.0, 0.0, 0.0).unwrap();
        let certs = pair_bound_certificates(&s, 0.0).unwrap();
        for id in ["pair.sq_delta", "pair.lin_cminus"] {
            let c = find(&certs, id).next().unwrap();
            assert_abs_diff_eq!(c.slack, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn affine_majorant_holds_for_positive_cplus() {
        let s = PsdSym3::from_entries(0.3, 0.6, 0.5).unwrap();
        let certs = affine_bound_certificates(&s, 1e-12).unwrap();
        assert_eq!(certs.len(), 2);
        assert!(certs.iter().all(|c| c.pass), "{certs:?}");
        // f passes through (0, 1) and (c+, sqrt(1 - c+^2))
        let cp = completion_interval(0.3, 0.6).unwrap().c_plus;
        assert_abs_diff_eq!(affine_majorant(cp, 0.0), 1.0);
        assert_abs_diff_eq!(affine_majorant(cp, cp), sqrt_one_minus_sq(cp), epsilon = 1e-15);
    }
}
