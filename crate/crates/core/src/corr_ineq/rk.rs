//! The ratio `R_k = |cos^k alpha - cos^k beta| / sin gamma` over triangle
//! triples in `[0, pi/2]^3`, and its supremum.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;
use libm::{atan, cos, pow, sin, sqrt};

use crate::{Error, Result};

/// Absolute slack allowed on the triangle condition `|alpha - beta| <=
/// gamma <= alpha + beta` when validating `rk_value` arguments.
const TRIANGLE_TOL: f64 = 1e-12;

pub fn rk_value(alpha: f64, beta: f64, gamma: f64, k: u32) -> Result<f64> {
    if k < 1 {
        return Err(Error::OutOfRange { what: "R_k power (needs k >= 1)", value: k as f64 });
    }
    for x in [alpha, beta, gamma] {
        if !(0.0..=FRAC_PI_2).contains(&x) {
            return Err(Error::OutOfRange { what: "R_k angle (needs [0, pi/2])", value: x });
        }
    }
    if gamma == 0.0 {
        return Err(Error::OutOfRange { what: "R_k gamma (needs gamma != 0)", value: gamma });
    }
    if (alpha - beta).abs() > gamma + TRIANGLE_TOL || gamma > alpha + beta + TRIANGLE_TOL {
        return Err(Error::NotTriangle);
    }
    let num = pow(cos(alpha), k as f64) - pow(cos(beta), k as f64);
    Ok((num / sin(gamma)).abs())
}

/// `R_k(alpha, beta) = (cos^k beta - cos^k alpha) / sin(alpha - beta)`,
/// symmetric in its arguments, with the continuous extension
/// `k sin t cos^(k-1) t` on the diagonal `alpha = beta = t`.
pub fn rk_pair(alpha: f64, beta: f64, k: u32) -> f64 {
    let (hi, lo) = if alpha >= beta { (alpha, beta) } else { (beta, alpha) };
    let k = k as f64;
    if hi == lo {
        return k * sin(lo) * pow(cos(lo), k - 1.0);
    }
    (pow(cos(lo), k) - pow(cos(hi), k)) / sin(hi - lo)
}

/// `sup R_k = k / sqrt(k - 1) * (1 - 1/k)^(k/2)`, attained on the diagonal at
/// `tan t = 1 / sqrt(k - 1)`.
pub fn rk_sup_closed_form(k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::OutOfRange { what: "R_k supremum (needs k >= 2)", value: k as f64 });
    }
    let k = k as f64;
    Ok(k / sqrt(k - 1.0) * pow(1.0 - 1.0 / k, k / 2.0))
}

/// The diagonal maximizer `t = arctan(1 / sqrt(k - 1))`.
pub fn rk_diagonal_maximizer(k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::OutOfRange { what: "R_k maximizer (needs k >= 2)", value: k as f64 });
    }
    Ok(atan(1.0 / sqrt(k as f64 - 1.0)))
}

/// Result of a grid search over `{pi/2 >= alpha >= beta >= 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RkGrid {
    pub k: u32,
    pub grid_n: usize,
    pub max: f64,
    /// `(alpha, beta)` of the overall maximum; the first hit in row-major
    /// order when several grid points tie.
    pub argmax: (f64, f64),
    pub diagonal_max: f64,
    pub diagonal_argmax: f64,
}

/// Maximum of [`rk_pair`] over a `grid_n x grid_n` uniform grid of the
/// triangle `pi/2 >= alpha >= beta >= 0`, including the diagonal.
pub fn rk_sup_grid(k: u32, grid_n: usize) -> Result<RkGrid> {
    if k < 2 {
        return Err(Error::OutOfRange { what: "R_k grid power (needs k >= 2)", value: k as f64 });
    }
    if grid_n < 10 {
        return Err(Error::OutOfRange { what: "R_k grid size (needs >= 10)", value: grid_n as f64 });
    }
    let h = FRAC_PI_2 / (grid_n - 1) as f64;
    let kf = k as f64;
    let t: Vec<f64> = (0..grid_n).map(|i| i as f64 * h).collect();
    let cos_k: Vec<f64> = t.iter().map(|&x| pow(cos(x), kf)).collect();
    let sin_gap: Vec<f64> = t.iter().map(|&x| sin(x)).collect();

    let mut out = RkGrid {
        k,
        grid_n,
        max: f64::NEG_INFINITY,
        argmax: (0.0, 0.0),
        diagonal_max: f64::NEG_INFINITY,
        diagonal_argmax: 0.0,
    };
    for i in 0..grid_n {
        let diag = rk_pair(t[i], t[i], k);
        if diag > out.diagonal_max {
            out.diagonal_max = diag;
            out.diagonal_argmax = t[i];
        }
        if diag > out.max {
            out.max = diag;
            out.argmax = (t[i], t[i]);
        }
        for j in 0..i {
            // alpha = t[i] > beta = t[j]; the gap t[i] - t[j] is t[i - j] on a uniform grid
            let r = (cos_k[j] - cos_k[i]) / sin_gap[i - j];
            if r > out.max {
                out.max = r;
                out.argmax = (t[i], t[j]);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::{E, FRAC_PI_3, FRAC_PI_6, PI};

    #[test]
    fn rk_value_examples() {
        assert_eq!(rk_value(0.7, 0.7, 0.3, 4).unwrap(), 0.0);
        assert_abs_diff_eq!(rk_value(FRAC_PI_2, 0.0, FRAC_PI_2, 1).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rk_value(FRAC_PI_3, FRAC_PI_6, FRAC_PI_6, 2).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn rk_value_errors() {
        assert!(rk_value(0.3, 0.3, 0.0, 2).is_err());
        assert_eq!(rk_value(1.0, 0.1, 0.2, 2), Err(Error::NotTriangle));
        assert_eq!(rk_value(0.1, 0.1, 0.3, 2), Err(Error::NotTriangle));
        assert!(rk_value(2.0, 1.0, 1.0, 2).is_err());
        assert!(rk_value(0.5, 0.5, 0.5, 0).is_err());
    }

    #[test]
    fn rk_pair_is_continuous_at_the_diagonal() {
        for k in [2, 3, 7] {
            for t in [0.1, 0.5, 1.2] {
                let on = rk_pair(t, t, k);
                let near = rk_pair(t + 1e-7, t, k);
                assert_abs_diff_eq!(on, near, epsilon = 1e-6);
                assert_eq!(rk_pair(t + 0.1, t, k), rk_pair(t, t + 0.1, k));
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_abs_diff_eq!(rk_sup_closed_form(2).unwrap(), 1.0, epsilon = 1e-15);
        let c100 = rk_sup_closed_form(100).unwrap();
        assert_abs_diff_eq!(c100, 6.0805, epsilon = 1e-4);
        assert_abs_diff_eq!(c100 / sqrt(100.0 / E), 1.0025, epsilon = 1e-4);
        let ratio = rk_sup_closed_form(1000).unwrap() / sqrt(1000.0 / E);
        assert!((1.0..=1.0 + 3e-4).contains(&ratio), "{ratio}");
        assert!(rk_sup_closed_form(1).is_err());
    }

    #[test]
    fn grid_examples() {
        let g = rk_sup_grid(2, 2000).unwrap();
        assert_abs_diff_eq!(g.max, 1.0, epsilon = 1e-3);
        let g = rk_sup_grid(10, 2000).unwrap();
        assert_abs_diff_eq!(g.max, 10.0 / 3.0 * pow(0.9, 5.0), epsilon = 1e-3);
        let t = rk_diagonal_maximizer(10).unwrap();
        assert!((g.diagonal_argmax - t).abs() <= 2.0 * PI / 2000.0);
    }

    #[test]
    fn grid_never_exceeds_supremum() {
        for k in [2, 3, 5, 10, 100] {
            for n in [10, 57, 400] {
                let g = rk_sup_grid(k, n).unwrap();
                assert!(g.max <= rk_sup_closed_form(k).unwrap() + 1e-12, "k={k} n={n}: {}", g.max);
            }
        }
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert!(rk_sup_grid(1, 100).is_err());
        assert!(rk_sup_grid(2, 9).is_err());
    }
}
