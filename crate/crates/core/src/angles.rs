//! The two angle functions between nonzero vectors.
//!
//! * `theta(u, v) = arccos(|<u, v>| / (|u| |v|))`, valued in `[0, pi/2]`.
//! * `cap_theta(u, v) = arccos(Re <u, v> / (|u| |v|))`, valued in `[0, pi]`.
//!
//! Where the cosine is near `+-1`, `arccos` would amplify rounding by
//! `1/sqrt(eps)`; there the angle comes from the chord between the
//! normalized vectors instead, `2 arcsin(|u/|u| - s v/|v||/2)`.

use core::f64::consts::PI;
use libm::{acos, asin, cos, sin, sqrt};
use num_complex::Complex64;

use crate::linalg::{inner_lifted, Vector};
use crate::{Certificate, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum AngleKind {
    /// Absolute-value form, `theta`.
    Theta,
    /// Real-part form, `cap_theta`.
    CapTheta,
}

impl AngleKind {
    pub const ALL: [AngleKind; 2] = [AngleKind::Theta, AngleKind::CapTheta];

    pub fn name(self) -> &'static str {
        match self {
            AngleKind::Theta => "theta",
            AngleKind::CapTheta => "cap_theta",
        }
    }

    /// Largest value the angle can take.
    pub fn max_angle(self) -> f64 {
        match self {
            AngleKind::Theta => PI / 2.0,
            AngleKind::CapTheta => PI,
        }
    }
}

/// `(angle(u, v), angle(v, w), angle(w, u))` for one [`AngleKind`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AngleTriple {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub kind: AngleKind,
}

impl AngleTriple {
    pub fn to_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }
}

/// Normalized inner product `<u, v> / (|u| |v|)`.
pub(crate) fn unit_inner(u: &Vector, v: &Vector) -> Result<Complex64> {
    let (nu, nv) = (u.norm(), v.norm());
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(inner_lifted(u, v)? / (nu * nv))
}

/// `2 arcsin(|u/|u| - s v/|v|| / 2)`, the angle between `u` and `s v`.
fn chord_angle(u: &Vector, v: &Vector, s: Complex64) -> f64 {
    let (nu, nv) = (u.norm(), v.norm());
    let d2: f64 = u.entries().iter().zip(v.entries()).map(|(x, y)| (x / nu - s * y / nv).norm_sqr()).sum();
    2.0 * asin((sqrt(d2) / 2.0).min(1.0))
}

pub fn theta(u: &Vector, v: &Vector) -> Result<f64> {
    let z = unit_inner(u, v)?;
    let r = z.norm();
    Ok(if r < 0.5 { acos(r) } else { chord_angle(u, v, z / r) })
}

pub fn cap_theta(u: &Vector, v: &Vector) -> Result<f64> {
    let c = unit_inner(u, v)?.re;
    Ok(if c.abs() < 0.5 {
        acos(c)
    } else if c > 0.0 {
        chord_angle(u, v, Complex64::new(1.0, 0.0))
    } else {
        PI - chord_angle(u, v, Complex64::new(-1.0, 0.0))
    })
}

pub fn angle(u: &Vector, v: &Vector, kind: AngleKind) -> Result<f64> {
    match kind {
        AngleKind::Theta => theta(u, v),
        AngleKind::CapTheta => cap_theta(u, v),
    }
}

/// Minimum of `cap_theta(p u, v)` over the phases `p = exp(2 pi i m / grid)`.
///
/// The result lies in `[theta(u, v), theta(u, v) + pi / grid]`.
pub fn phase_min_theta(u: &Vector, v: &Vector, grid: usize) -> Result<f64> {
    if grid < 4 {
        return Err(Error::OutOfRange { what: "phase grid size (needs >= 4)", value: grid as f64 });
    }
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut best = f64::INFINITY;
    for m in 0..grid {
        let phi = 2.0 * PI * m as f64 / grid as f64;
        let p = Complex64::new(cos(phi), sin(phi));
        best = best.min(cap_theta(&u.scaled(p), v)?);
    }
    Ok(best)
}

/// The exact minimizing phase `<v, u> / |<v, u>|`, or `None` when `u` and
/// `v` are orthogonal (every phase attains the minimum then).
pub fn optimal_phase(u: &Vector, v: &Vector) -> Result<Option<Complex64>> {
    let z = unit_inner(v, u)?;
    let r = z.norm();
    Ok(if r == 0.0 { None } else { Some(z / r) })
}

pub fn angle_triple(u: &Vector, v: &Vector, w: &Vector, kind: AngleKind) -> Result<AngleTriple> {
    Ok(AngleTriple { alpha: angle(u, v, kind)?, beta: angle(v, w, kind)?, gamma: angle(w, u, kind)?, kind })
}

/// Checks all three cyclic triangle inequalities at once. The certificate
/// reports the tightest one: `lhs` is the largest angle and `rhs` the sum of
/// the other two.
pub fn check_triangle_inequalities(t: &AngleTriple, tol: f64) -> Certificate {
    let id = match t.kind {
        AngleKind::Theta => "angle.triangle.theta",
        AngleKind::CapTheta => "angle.triangle.cap_theta",
    };
    let x = t.to_array();
    let (mut worst, mut worst_slack) = (0, f64::INFINITY);
    for i in 0..3 {
        let slack = x[(i + 1) % 3] + x[(i + 2) % 3] - x[i];
        // NaN compares false and would be skipped; keep it visible
        if slack < worst_slack || slack.is_nan() {
            worst = i;
            worst_slack = slack;
            if slack.is_nan() {
                break;
            }
        }
    }
    let lhs = x[worst];
    let rhs = x[(worst + 1) % 3] + x[(worst + 2) % 3];
    Certificate::new(id, lhs, rhs, tol).with("side", worst)
}
