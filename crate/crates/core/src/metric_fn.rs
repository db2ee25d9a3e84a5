//! Triangle triplets and functions that carry them to triangle triplets.
//!
//! A triplet `(a, b, c)` of nonnegative reals is a triangle if
//! `|a - b| <= c <= a + b`. Two gates decide which catalog functions may be
//! used in the pipeline `PSD triple -> f^-1 -> g -> triangle`:
//!
//! * [`CosineLike`]: `f` is strictly decreasing onto `[-1, 1]` and satisfies
//!   `f(p + q) = f(p) f(q) - sqrt(1 - f(p)^2) sqrt(1 - f(q)^2)`.
//!   Then `(f^-1(a), f^-1(b), f^-1(c))` is a triangle for every PSD triple.
//! * [`TrianglePreserver`]: `g` is nondecreasing, subadditive, `g(0) = 0`
//!   and `g > 0` away from 0. This is a sufficient condition only; a sampled
//!   grid cannot decide metric preservation.
//!
//! Both gates are checked on a finite grid.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use libm::{acos, cos, pow, sqrt};

use crate::angles::{angle, unit_inner, AngleKind};
use crate::{Certificate, Error, PsdSym3, Result, Vector};

/// Default tolerance on property residuals.
pub const PROPERTY_TOL: f64 = 1e-9;

/// Absolute accuracy of [`CosineLike::inverse`].
pub const INVERSE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TriangleTriplet {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TriangleTriplet {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        for x in [a, b, c] {
            if !(x >= 0.0) || x.is_infinite() {
                return Err(Error::OutOfRange { what: "triplet entry (needs finite, >= 0)", value: x });
            }
        }
        Ok(TriangleTriplet { a, b, c })
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// Smallest of `b + c - a`, `a + c - b`, `a + b - c`, with the index of
    /// the entry on the left-hand side.
    pub fn triangle_slack(&self) -> (f64, usize) {
        let x = self.to_array();
        let mut best = (f64::INFINITY, 0);
        for i in 0..3 {
            let s = x[(i + 1) % 3] + x[(i + 2) % 3] - x[i];
            if s < best.0 || s.is_nan() {
                best = (s, i);
            }
        }
        best
    }

    pub fn certificate(&self, id: &'static str, tol: f64) -> Certificate {
        let (_, i) = self.triangle_slack();
        let x = self.to_array();
        Certificate::new(id, x[i], x[(i + 1) % 3] + x[(i + 2) % 3], tol).with("side", i)
    }
}

/// All three cyclic inequalities within `tol`.
pub fn is_triangle(t: &TriangleTriplet, tol: f64) -> bool {
    t.triangle_slack().0 >= -tol
}

/// Closed catalog of one-variable functions, each with its natural domain.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "fn", rename_all = "snake_case"))]
pub enum Func1D {
    /// `cos(r t)` on `[0, pi / r]`, `r > 0`.
    CosR { r: f64 },
    /// `(1 - cos^k t)^(1/k)` on `[0, pi/2]`, 1 beyond; domain `[0, inf)`.
    #[cfg_attr(feature = "serde", serde(rename = "p_k"))]
    PK { k: f64 },
    /// `arccos t` on `[-1, 1]`.
    Arccos,
    /// `slope * t + intercept` on `[0, inf)`.
    Affine { slope: f64, intercept: f64 },
    /// `t^p` on `[0, inf)`, `p > 0`.
    Power { p: f64 },
    /// `min(t, cap)` on `[0, inf)`.
    MinCap { cap: f64 },
    /// `1 / (1 + t)` on `[0, inf)`.
    InvOnePlus,
    /// `t` on `[0, inf)`.
    Identity,
    /// Linear interpolation through `(t, f(t))` points with strictly
    /// increasing `t`; domain is `[t_first, t_last]`.
    UserSampled { points: Vec<(f64, f64)> },
}

impl Func1D {
    pub fn name(&self) -> &'static str {
        match self {
            Func1D::CosR { .. } => "cos_r",
            Func1D::PK { .. } => "p_k",
            Func1D::Arccos => "arccos",
            Func1D::Affine { .. } => "affine",
            Func1D::Power { .. } => "power",
            Func1D::MinCap { .. } => "min_cap",
            Func1D::InvOnePlus => "inv_one_plus",
            Func1D::Identity => "identity",
            Func1D::UserSampled { .. } => "user_sampled",
        }
    }

    /// Checks the parameters.
    pub fn validate(&self) -> Result<()> {
        let positive = |what, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::OutOfRange { what, value: v })
            }
        };
        match self {
            Func1D::CosR { r } => positive("cos_r parameter r (needs > 0)", *r),
            Func1D::PK { k } => positive("p_k parameter k (needs > 0)", *k),
            Func1D::Power { p } => positive("power exponent p (needs > 0)", *p),
            Func1D::MinCap { cap } => positive("min_cap parameter (needs > 0)", *cap),
            Func1D::Affine { slope, intercept } => {
                if slope.is_finite() && intercept.is_finite() {
                    Ok(())
                } else {
                    Err(Error::NonFinite(0))
                }
            }
            Func1D::UserSampled { points } => {
                if points.len() < 2 {
                    return Err(Error::Empty("user_sampled points (needs >= 2)"));
                }
                for (i, &(t, y)) in points.iter().enumerate() {
                    if !t.is_finite() || !y.is_finite() {
                        return Err(Error::NonFinite(i));
                    }
                    if i > 0 && !(t > points[i - 1].0) {
                        return Err(Error::Precondition(format!(
                            "user_sampled abscissae must be strictly increasing (point {i})"
                        )));
                    }
                }
                Ok(())
            }
            Func1D::Arccos | Func1D::InvOnePlus | Func1D::Identity => Ok(()),
        }
    }

    /// `(lo, hi)`; `hi` may be infinite.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Func1D::CosR { r } => (0.0, PI / r),
            Func1D::Arccos => (-1.0, 1.0),
            Func1D::UserSampled { points } => {
                (points.first().map_or(f64::NAN, |p| p.0), points.last().map_or(f64::NAN, |p| p.0))
            }
            _ => (0.0, f64::INFINITY),
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        let (lo, hi) = self.domain();
        t >= lo && t <= hi
    }

    /// Value at `t`; outside the domain is an error.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !self.contains(t) {
            return Err(Error::OutOfRange { what: "argument outside the function's domain", value: t });
        }
        Ok(self.eval_unchecked(t))
    }

    fn eval_unchecked(&self, t: f64) -> f64 {
        match self {
            Func1D::CosR { r } => cos(r * t),
            Func1D::PK { k } => p_k(*k, t),
            Func1D::Arccos => acos(t),
            Func1D::Affine { slope, intercept } => slope * t + intercept,
            Func1D::Power { p } => pow(t, *p),
            Func1D::MinCap { cap } => t.min(*cap),
            Func1D::InvOnePlus => 1.0 / (1.0 + t),
            Func1D::Identity => t,
            Func1D::UserSampled { points } => interpolate(points, t),
        }
    }
}

/// `p_k(t) = (1 - cos^k t)^(1/k)` for `t <= pi/2`, and 1 beyond.
pub fn p_k(k: f64, t: f64) -> f64 {
    if t > FRAC_PI_2 {
        return 1.0;
    }
    pow((1.0 - pow(cos(t).max(0.0), k)).max(0.0), 1.0 / k)
}

fn interpolate(points: &[(f64, f64)], t: f64) -> f64 {
    let i = points.partition_point(|p| p.0 <= t);
    if i == 0 {
        return points[0].1;
    }
    if i == points.len() {
        return points[i - 1].1;
    }
    let (t0, y0) = points[i - 1];
    let (t1, y1) = points[i];
    y0 + (y1 - y0) * (t - t0) / (t1 - t0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Spacing {
    #[default]
    Uniform,
    /// Chebyshev-Lobatto nodes, clustered at both ends.
    Chebyshev,
}

/// Sample points for the grid checks. Without a window the function's
/// domain is used, which must then be bounded.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridSpec {
    pub count: usize,
    pub spacing: Spacing,
    pub window: Option<(f64, f64)>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { count: 1000, spacing: Spacing::Uniform, window: None }
    }
}

impl GridSpec {
    pub fn uniform(count: usize) -> Self {
        GridSpec { count, ..Self::default() }
    }

    pub fn with_window(mut self, lo: f64, hi: f64) -> Self {
        self.window = Some((lo, hi));
        self
    }

    pub fn points(&self, f: &Func1D) -> Result<Vec<f64>> {
        if self.count < 2 {
            return Err(Error::Empty("grid (needs >= 2 points)"));
        }
        let (dlo, dhi) = f.domain();
        let (lo, hi) = match self.window {
            Some((lo, hi)) => {
                if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                    return Err(Error::Precondition(format!("grid window [{lo}, {hi}] is empty or unbounded")));
                }
                if lo < dlo || hi > dhi {
                    return Err(Error::Precondition(format!(
                        "grid window [{lo}, {hi}] leaves the domain [{dlo}, {dhi}] of {}",
                        f.name()
                    )));
                }
                (lo, hi)
            }
            None if dhi.is_infinite() => return Err(Error::UnboundedDomain),
            None => (dlo, dhi),
        };
        let m = (self.count - 1) as f64;
        Ok((0..self.count)
            .map(|i| match self.spacing {
                Spacing::Uniform if i == self.count - 1 => hi,
                Spacing::Uniform => lo + (hi - lo) * (i as f64 / m),
                Spacing::Chebyshev => lo + (hi - lo) * 0.5 * (1.0 - cos(PI * i as f64 / m)),
            })
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Property {
    /// `f(s + t) <= f(s) + f(t)`.
    Subadditive,
    /// `f((x + y) / 2) >= (f(x) + f(y)) / 2`.
    MidpointConcave,
    /// `f(x) <= f(y)` for adjacent grid points `x < y`.
    Nondecreasing,
    /// `f(p + q) = f(p) f(q) - sqrt(1 - f(p)^2) sqrt(1 - f(q)^2)`.
    CosineAddition,
    /// The [`TrianglePreserver`] gate.
    TrianglePreserving,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Subadditive,
        Property::MidpointConcave,
        Property::Nondecreasing,
        Property::CosineAddition,
        Property::TrianglePreserving,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Subadditive => "subadditive",
            Property::MidpointConcave => "midpoint_concave",
            Property::Nondecreasing => "nondecreasing",
            Property::CosineAddition => "cosine_addition",
            Property::TrianglePreserving => "triangle_preserving",
        }
    }

    pub fn from_name(s: &str) -> Result<Property> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown property '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FunctionVerdict {
    pub property: Property,
    pub pass: bool,
    /// Where the largest violation occurred; always present on failure.
    pub witness: Option<(f64, f64)>,
    /// Largest residual seen (negative when every check held with room).
    pub max_violation: f64,
}

/// Running maximum of a residual; ties keep the first witness.
struct Worst {
    value: f64,
    at: Option<(f64, f64)>,
}

impl Worst {
    fn new() -> Self {
        Worst { value: f64::NEG_INFINITY, at: None }
    }

    fn see(&mut self, value: f64, at: (f64, f64)) {
        if value > self.value || (value.is_nan() && !self.value.is_nan()) {
            self.value = value;
            self.at = Some(at);
        }
    }

    fn verdict(self, property: Property, tol: f64) -> FunctionVerdict {
        let pass = self.value <= tol;
        FunctionVerdict { property, pass, witness: if pass { None } else { self.at }, max_violation: self.value }
    }
}

/// Residual of `property` at the pair `(s, t)`, or `None` when the pair is
/// outside the property's range. Positive means violated.
pub fn residual(f: &Func1D, property: Property, s: f64, t: f64) -> Option<f64> {
    let e = |x| f.eval_unchecked(x);
    match property {
        Property::Subadditive => f.contains(s + t).then(|| e(s + t) - e(s) - e(t)),
        Property::MidpointConcave => Some(0.5 * (e(s) + e(t)) - e(0.5 * (s + t))),
        Property::Nondecreasing => Some(if s <= t { e(s) - e(t) } else { e(t) - e(s) }),
        Property::CosineAddition => f.contains(s + t).then(|| {
            let (fp, fq) = (e(s), e(t));
            let rhs = fp * fq - sqrt((1.0 - fp * fp).max(0.0)) * sqrt((1.0 - fq * fq).max(0.0));
            let out_of_range = (fp.abs() - 1.0).max(fq.abs() - 1.0).max(0.0);
            (e(s + t) - rhs).abs() + out_of_range
        }),
        Property::TrianglePreserving => None,
    }
}

fn check_pairs(f: &Func1D, property: Property, xs: &[f64], tol: f64) -> FunctionVerdict {
    let mut worst = Worst::new();
    for (i, &s) in xs.iter().enumerate() {
        for &t in &xs[i..] {
            if let Some(r) = residual(f, property, s, t) {
                worst.see(r, (s, t));
            }
        }
    }
    worst.verdict(property, tol)
}

fn check_adjacent(f: &Func1D, xs: &[f64], tol: f64) -> FunctionVerdict {
    let mut worst = Worst::new();
    for w in xs.windows(2) {
        worst.see(f.eval_unchecked(w[0]) - f.eval_unchecked(w[1]), (w[0], w[1]));
    }
    worst.verdict(Property::Nondecreasing, tol)
}

/// `g(0) = 0` and `g(t) > 0` for grid points `t > 0`. The witness is
/// `(t, g(t))`.
fn check_zero_and_positive(f: &Func1D, xs: &[f64], tol: f64) -> FunctionVerdict {
    let mut worst = Worst::new();
    if !f.contains(0.0) {
        worst.see(f64::INFINITY, (0.0, f64::NAN));
    } else {
        let g0 = f.eval_unchecked(0.0);
        worst.see(g0.abs(), (0.0, g0));
    }
    for &t in xs.iter().filter(|&&t| t > 0.0) {
        let g = f.eval_unchecked(t);
        // strict positivity: a zero value is a violation of size tol + margin
        let r = if g > 0.0 { -g } else { tol - g + f64::EPSILON };
        worst.see(r, (t, g));
    }
    worst.verdict(Property::TrianglePreserving, tol)
}

/// Grid-exhaustive test of one property. Pairs range over `s <= t` in the
/// grid; subadditivity and the functional equation skip pairs whose sum
/// leaves the domain.
pub fn check_function(f: &Func1D, property: Property, grid: &GridSpec, tol: f64) -> Result<FunctionVerdict> {
    f.validate()?;
    let xs = grid.points(f)?;
    Ok(match property {
        Property::Nondecreasing => check_adjacent(f, &xs, tol),
        Property::TrianglePreserving => {
            let parts = [
                check_zero_and_positive(f, &xs, tol),
                check_adjacent(f, &xs, tol),
                check_pairs(f, Property::Subadditive, &xs, tol),
            ];
            let failed = parts.iter().find(|v| !v.pass);
            let max = parts.iter().map(|v| v.max_violation).fold(f64::NEG_INFINITY, f64::max);
            FunctionVerdict {
                property,
                pass: failed.is_none(),
                witness: failed.and_then(|v| v.witness),
                max_violation: max,
            }
        }
        p => check_pairs(f, p, &xs, tol),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Implication {
    /// Midpoint concave and nondecreasing on the grid.
    Holds,
    /// Midpoint concave but not nondecreasing: a counterexample.
    Violated,
    /// Midpoint concavity already fails.
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ImplicationVerdict {
    pub concave: FunctionVerdict,
    pub nondecreasing: FunctionVerdict,
    pub outcome: Implication,
}

/// On a half-line, a nonnegative midpoint-concave function is
/// nondecreasing. Checks the implication on the grid. On a bounded interval
/// the statement is false (`1 - t` on `[0, 1]`), so `f` must live on
/// `[lo, inf)` and the grid needs a window.
pub fn concavity_implies_monotone_check(f: &Func1D, grid: &GridSpec, tol: f64) -> Result<ImplicationVerdict> {
    f.validate()?;
    if f.domain().1.is_finite() {
        return Err(Error::Precondition(format!("{} is not defined on a half-line", f.name())));
    }
    let xs = grid.points(f)?;
    if let Some(&x) = xs.iter().find(|&&x| f.eval_unchecked(x) < -tol) {
        return Err(Error::Precondition(format!("{} is negative at {x}", f.name())));
    }
    let concave = check_pairs(f, Property::MidpointConcave, &xs, tol);
    let nondecreasing = check_adjacent(f, &xs, tol);
    let outcome = match (concave.pass, nondecreasing.pass) {
        (false, _) => Implication::NotApplicable,
        (true, true) => Implication::Holds,
        (true, false) => Implication::Violated,
    };
    Ok(ImplicationVerdict { concave, nondecreasing, outcome })
}

/// A function that passed the checks for `f` in the pipeline
/// `x -> f^-1(x)`: strictly decreasing, `f(lo) = 1`, `f(hi) = -1` and the
/// functional equation, all on a grid of a bounded domain.
#[derive(Debug, Clone, PartialEq)]
pub struct CosineLike {
    f: Func1D,
    lo: f64,
    hi: f64,
}

impl CosineLike {
    pub fn certify(f: Func1D, grid: &GridSpec, tol: f64) -> Result<Self> {
        f.validate()?;
        let (lo, hi) = f.domain();
        if hi.is_infinite() {
            return Err(Error::UnboundedDomain);
        }
        let grid = GridSpec { window: None, ..*grid };
        let xs = grid.points(&f)?;
        for w in xs.windows(2) {
            if !(f.eval_unchecked(w[1]) < f.eval_unchecked(w[0])) {
                return Err(Error::Precondition(format!("{} is not strictly decreasing near {}", f.name(), w[0])));
            }
        }
        let (top, bottom) = (f.eval_unchecked(lo), f.eval_unchecked(hi));
        if (top - 1.0).abs() > tol || (bottom + 1.0).abs() > tol {
            return Err(Error::Precondition(format!("{} has range [{bottom}, {top}], expected [-1, 1]", f.name())));
        }
        let v = check_pairs(&f, Property::CosineAddition, &xs, tol);
        if !v.pass {
            return Err(Error::Precondition(format!(
                "{} fails the addition law by {} at {:?}",
                f.name(),
                v.max_violation,
                v.witness
            )));
        }
        Ok(CosineLike { f, lo, hi })
    }

    pub fn function(&self) -> &Func1D {
        &self.f
    }

    /// `f^-1(y)` by bisection to [`INVERSE_TOL`]; `y` is clamped into
    /// `[-1, 1]`, so the result lies in `[f^-1(1), f^-1(-1)]`.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !(y.abs() <= 1.0 + 1e-12) {
            return Err(Error::OutOfRange { what: "value outside the range [-1, 1]", value: y });
        }
        let y = y.clamp(-1.0, 1.0);
        let (mut lo, mut hi) = (self.lo, self.hi);
        while hi - lo > INVERSE_TOL {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.f.eval_unchecked(mid) > y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// `(f^-1(a), f^-1(b), f^-1(c))`.
pub fn inverse_triplet(s: &PsdSym3, f: &CosineLike) -> Result<TriangleTriplet> {
    TriangleTriplet::new(f.inverse(s.a)?, f.inverse(s.b)?, f.inverse(s.c)?)
}

/// A function that passed the sufficient condition for carrying triangle
/// triplets to triangle triplets: `g(0) = 0`, `g > 0` on the grid away from
/// 0, nondecreasing and subadditive on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TrianglePreserver(Func1D);

impl TrianglePreserver {
    pub fn certify(g: Func1D, grid: &GridSpec, tol: f64) -> Result<Self> {
        let v = check_function(&g, Property::TrianglePreserving, grid, tol)?;
        if !v.pass {
            return Err(Error::Precondition(format!(
                "{} fails the triangle-preserving gate by {} at {:?}",
                g.name(),
                v.max_violation,
                v.witness
            )));
        }
        Ok(TrianglePreserver(g))
    }

    pub fn function(&self) -> &Func1D {
        &self.0
    }
}

/// `(g(a), g(b), g(c))`.
pub fn transform_triplet(t: &TriangleTriplet, g: &TrianglePreserver) -> Result<TriangleTriplet> {
    TriangleTriplet::new(g.0.eval(t.a)?, g.0.eval(t.b)?, g.0.eval(t.c)?)
}

/// `h(a) <= h(b) + h(c)` with `h = g o f^-1`, tightest arrangement.
pub fn composed_triplet_certificate(
    s: &PsdSym3,
    f: &CosineLike,
    g: &TrianglePreserver,
    tol: f64,
) -> Result<Certificate> {
    Ok(transform_triplet(&inverse_triplet(s, f)?, g)?.certificate("triplet.composed", tol))
}

fn root_dist(x: f64, k: f64) -> f64 {
    pow((1.0 - pow(x.abs().min(1.0), k)).max(0.0), 1.0 / k)
}

fn check_k(k: f64) -> Result<()> {
    if k >= 2.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange { what: "root exponent k (needs k >= 2)", value: k })
    }
}

/// `(1 - |x|^k)^(1/k) <= (1 - |y|^k)^(1/k) + (1 - |z|^k)^(1/k)` for every
/// choice of `x` among the entries of a PSD triple; reports the tightest.
pub fn root_triplet_certificates(s: &PsdSym3, k: f64, tol: f64) -> Result<Certificate> {
    check_k(k)?;
    let mut worst: Option<Certificate> = None;
    for (n, (x, y, z)) in [(s.a, s.b, s.c), (s.b, s.c, s.a), (s.c, s.a, s.b)].into_iter().enumerate() {
        let c = Certificate::new("triplet.root", root_dist(x, k), root_dist(y, k) + root_dist(z, k), tol)
            .with("k", k)
            .with("arrangement", n);
        if worst.as_ref().is_none_or(|w| c.slack < w.slack || c.slack.is_nan()) {
            worst = Some(c);
        }
    }
    Ok(worst.unwrap())
}

/// `(1 - |<u,v>|^k)^(1/k) <= (1 - |<u,w>|^k)^(1/k) + (1 - |<w,v>|^k)^(1/k)`,
/// and the same with `|Re <.,.>|`. Vectors are normalized first.
pub fn root_distance_certificates(u: &Vector, v: &Vector, w: &Vector, k: f64, tol: f64) -> Result<[Certificate; 2]> {
    check_k(k)?;
    let (uv, uw, wv) = (unit_inner(u, v)?, unit_inner(u, w)?, unit_inner(w, v)?);
    let abs = Certificate::new(
        "unit.root_dist.abs",
        root_dist(uv.norm(), k),
        root_dist(uw.norm(), k) + root_dist(wv.norm(), k),
        tol,
    )
    .with("k", k);
    let re = Certificate::new("unit.root_dist.re", root_dist(uv.re, k), root_dist(uw.re, k) + root_dist(wv.re, k), tol)
        .with("k", k);
    Ok([abs, re])
}

/// `|cos|` of the angle between unit vectors: `|<x,y>|` for `theta` and
/// `|Re <x,y>|` for `cap_theta`.
fn abs_cos(z: num_complex::Complex64, kind: AngleKind) -> f64 {
    match kind {
        AngleKind::Theta => z.norm().min(1.0),
        AngleKind::CapTheta => z.re.abs().min(1.0),
    }
}

/// Angles of `(u,v), (v,w), (w,u)`.
fn cyclic_angles(u: &Vector, v: &Vector, w: &Vector, kind: AngleKind) -> Result<[f64; 3]> {
    Ok([angle(u, v, kind)?, angle(v, w, kind)?, angle(w, u, kind)?])
}

/// With `alpha, beta, gamma` the angles of `(u,v), (v,w), (w,u)`:
///
/// * `unit.angle_sum.*`: `alpha <= beta + gamma`;
/// * `unit.sin_sum.*`: `sin alpha <= sin beta + sin gamma`;
/// * `unit.cos_sin.*`: `|cos alpha| <= |cos beta| + sin gamma`.
///
/// Each is checked over all arrangements and the tightest is reported. The
/// third uses `|cos|`: for `cap_theta` the signed form fails (see
/// [`signed_cos_sin_certificate`]).
pub fn unit_angle_certificates(
    u: &Vector,
    v: &Vector,
    w: &Vector,
    kind: AngleKind,
    tol: f64,
) -> Result<[Certificate; 3]> {
    let z = [unit_inner(u, v)?, unit_inner(v, w)?, unit_inner(w, u)?];
    let ang = cyclic_angles(u, v, w, kind)?;
    let sin = z.map(|x| match kind {
        AngleKind::Theta => sqrt((1.0 - x.norm_sqr()).max(0.0)),
        AngleKind::CapTheta => sqrt((1.0 - x.re * x.re).max(0.0)),
    });
    let cs = z.map(|x| abs_cos(x, kind));
    let (id_sum, id_sin, id_cs) = match kind {
        AngleKind::Theta => ("unit.angle_sum.theta", "unit.sin_sum.theta", "unit.cos_sin.theta"),
        AngleKind::CapTheta => ("unit.angle_sum.cap_theta", "unit.sin_sum.cap_theta", "unit.cos_sin.cap_theta"),
    };
    let tightest = |id, lhs: &dyn Fn(usize, usize, usize) -> (f64, f64)| {
        let mut worst: Option<Certificate> = None;
        // (x, y, z): y shares a vector with x, z is the remaining pair
        for (n, (x, y, r)) in [(0, 1, 2), (1, 0, 2), (1, 2, 0), (2, 1, 0), (2, 0, 1), (0, 2, 1)].into_iter().enumerate()
        {
            let (l, rr) = lhs(x, y, r);
            let c = Certificate::new(id, l, rr, tol).with("arrangement", n);
            if worst.as_ref().is_none_or(|w| c.slack < w.slack || c.slack.is_nan()) {
                worst = Some(c);
            }
        }
        worst.unwrap()
    };
    Ok([
        tightest(id_sum, &|x, y, r| (ang[x], ang[y] + ang[r])),
        tightest(id_sin, &|x, y, r| (sin[x], sin[y] + sin[r])),
        tightest(id_cs, &|x, y, r| (cs[x], cs[y] + sin[r])),
    ])
}

/// `cos alpha <= cos beta + cos gamma`, literally, for the angles of
/// `(u,v), (v,w), (w,u)`. Not a valid inequality; kept as a regression that
/// must fail on its witness.
pub fn cos_sum_certificate(u: &Vector, v: &Vector, w: &Vector, kind: AngleKind, tol: f64) -> Result<Certificate> {
    let c = cyclic_angles(u, v, w, kind)?.map(cos);
    Ok(Certificate::new("regress.cos_sum", c[0], c[1] + c[2], tol).with("kind", kind.name()))
}

/// `cos alpha <= cos beta + sin gamma` with signed cosines. Holds for
/// `theta`, fails for `cap_theta` (`u = v`, `w = -u`); kept as a regression.
pub fn signed_cos_sin_certificate(
    u: &Vector,
    v: &Vector,
    w: &Vector,
    kind: AngleKind,
    tol: f64,
) -> Result<Certificate> {
    let a = cyclic_angles(u, v, w, kind)?;
    Ok(Certificate::new("regress.cos_sin_signed", cos(a[0]), cos(a[1]) + libm::sin(a[2]), tol)
        .with("kind", kind.name()))
}

/// `u = (0,0,1)`, `v = (1,0,1)/sqrt 2`, `w = (0,1,0)`: the cosine sum fails
/// by `1/sqrt 2`.
pub fn cos_sum_witness() -> [Vector; 3] {
    let h = core::f64::consts::FRAC_1_SQRT_2;
    [
        Vector::real(&[0.0, 0.0, 1.0]).unwrap(),
        Vector::real(&[h, 0.0, h]).unwrap(),
        Vector::real(&[0.0, 1.0, 0.0]).unwrap(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3};
    use num_complex::Complex64;
    use std::vec;

    fn tt(a: f64, b: f64, c: f64) -> TriangleTriplet {
        TriangleTriplet::new(a, b, c).unwrap()
    }

    #[test]
    fn is_triangle_examples() {
        assert!(is_triangle(&tt(0.0, 0.0, 0.0), 0.0));
        assert!(is_triangle(&tt(PI, PI, PI), 0.0));
        assert!(!is_triangle(&tt(1.0, 0.2, 0.2), 1e-9));
        assert!(!is_triangle(&tt(0.2, 1.0, 0.2), 1e-9));
        assert!(TriangleTriplet::new(-0.1, 0.0, 0.0).is_err());
        assert!(TriangleTriplet::new(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn p_k_values() {
        assert_abs_diff_eq!(p_k(2.0, FRAC_PI_3), sqrt(0.75), epsilon = 1e-15);
        assert_eq!(p_k(3.0, 2.0), 1.0);
        assert_eq!(p_k(2.0, 0.0), 0.0);
        assert_abs_diff_eq!(p_k(5.0, FRAC_PI_2), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn cosine_addition_law_holds_on_a_grid() {
        let v =
            check_function(&Func1D::CosR { r: 1.0 }, Property::CosineAddition, &GridSpec::uniform(200), 1e-12).unwrap();
        assert!(v.pass, "{v:?}");
        assert!(v.max_violation < 1e-12);
        let v = check_function(
            &Func1D::Power { p: 0.5 },
            Property::CosineAddition,
            &GridSpec::uniform(50).with_window(0.0, 1.0),
            1e-9,
        )
        .unwrap();
        assert!(!v.pass);
    }

    #[test]
    fn p_k_is_subadditive_and_nondecreasing() {
        let g = GridSpec::uniform(1000).with_window(0.0, PI);
        for p in [Property::Subadditive, Property::Nondecreasing, Property::TrianglePreserving] {
            let v = check_function(&Func1D::PK { k: 2.0 }, p, &g, PROPERTY_TOL).unwrap();
            assert!(v.pass, "{v:?}");
        }
    }

    #[test]
    fn square_is_not_subadditive() {
        let g = GridSpec::uniform(11).with_window(0.0, 1.0);
        let f = Func1D::Power { p: 2.0 };
        let v = check_function(&f, Property::Subadditive, &g, PROPERTY_TOL).unwrap();
        assert!(!v.pass);
        assert_eq!(v.witness, Some((1.0, 1.0)));
        assert_abs_diff_eq!(v.max_violation, 2.0, epsilon = 1e-15);
        let (s, t) = v.witness.unwrap();
        assert!(residual(&f, Property::Subadditive, s, t).unwrap() > PROPERTY_TOL);
    }

    #[test]
    fn grid_errors() {
        let f = Func1D::PK { k: 2.0 };
        assert_eq!(
            check_function(&f, Property::Subadditive, &GridSpec::uniform(10), 1e-9),
            Err(Error::UnboundedDomain)
        );
        assert!(check_function(&f, Property::Subadditive, &GridSpec::uniform(1).with_window(0.0, 1.0), 1e-9).is_err());
        assert!(Property::from_name("convex").is_err());
        assert_eq!(Property::from_name("subadditive"), Ok(Property::Subadditive));
        let bad = GridSpec::uniform(10).with_window(-1.0, 1.0);
        assert!(check_function(&f, Property::Subadditive, &bad, 1e-9).is_err());
    }

    #[test]
    fn chebyshev_nodes_cover_the_window() {
        let xs = GridSpec { count: 5, spacing: Spacing::Chebyshev, window: Some((0.0, 2.0)) }
            .points(&Func1D::Identity)
            .unwrap();
        assert_abs_diff_eq!(xs[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(xs[2], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(xs[4], 2.0, epsilon = 1e-15);
        assert!(xs[1] < 0.5);
    }

    #[test]
    fn concavity_implication_examples() {
        let g = GridSpec::uniform(1000).with_window(0.0, 100.0);
        let v = concavity_implies_monotone_check(&Func1D::Power { p: 0.5 }, &g, PROPERTY_TOL).unwrap();
        assert_eq!(v.outcome, Implication::Holds);
        let g = GridSpec::uniform(400).with_window(0.0, 4.0);
        let v = concavity_implies_monotone_check(&Func1D::PK { k: 3.0 }, &g, PROPERTY_TOL).unwrap();
        assert_eq!(v.outcome, Implication::Holds);
        let v = concavity_implies_monotone_check(&Func1D::InvOnePlus, &g, PROPERTY_TOL).unwrap();
        assert_eq!(v.outcome, Implication::NotApplicable);
        assert!(!v.concave.pass);
        let neg = Func1D::Affine { slope: 1.0, intercept: -1.0 };
        assert!(matches!(concavity_implies_monotone_check(&neg, &g, PROPERTY_TOL), Err(Error::Precondition(_))));
        let bounded = Func1D::CosR { r: 1.0 };
        assert!(concavity_implies_monotone_check(&bounded, &GridSpec::uniform(10), PROPERTY_TOL).is_err());
    }

    fn cos1() -> CosineLike {
        CosineLike::certify(Func1D::CosR { r: 1.0 }, &GridSpec::uniform(200), PROPERTY_TOL).unwrap()
    }

    #[test]
    fn inverse_triplet_examples() {
        let t = inverse_triplet(&PsdSym3::from_entries(0.5, 0.5, 0.5).unwrap(), &cos1()).unwrap();
        for x in t.to_array() {
            assert_abs_diff_eq!(x, FRAC_PI_3, epsilon = 1e-11);
        }
        assert!(is_triangle(&t, 1e-9));
        let t = inverse_triplet(&PsdSym3::from_entries(1.0, 1.0, 1.0).unwrap(), &cos1()).unwrap();
        for x in t.to_array() {
            assert_abs_diff_eq!(x, 0.0, epsilon = 1e-11);
        }
        let f = CosineLike::certify(Func1D::CosR { r: 2.0 }, &GridSpec::uniform(200), PROPERTY_TOL).unwrap();
        let t = inverse_triplet(&PsdSym3::from_entries(1.0, 0.1, 0.1).unwrap(), &f).unwrap();
        assert_abs_diff_eq!(t.a, 0.0, epsilon = 1e-11);
        assert_abs_diff_eq!(t.b, acos(0.1) / 2.0, epsilon = 1e-11);
        assert_abs_diff_eq!(t.c, acos(0.1) / 2.0, epsilon = 1e-11);
        assert!(is_triangle(&t, 1e-9));
    }

    #[test]
    fn cosine_like_gate_rejects() {
        let g = GridSpec::uniform(100);
        assert!(CosineLike::certify(Func1D::Arccos, &g, PROPERTY_TOL).is_err());
        let lin = Func1D::UserSampled { points: vec![(0.0, 1.0), (2.0, -1.0)] };
        assert!(CosineLike::certify(lin, &g, PROPERTY_TOL).is_err());
        assert_eq!(CosineLike::certify(Func1D::Identity, &g, PROPERTY_TOL), Err(Error::UnboundedDomain));
    }

    #[test]
    fn transform_triplet_examples() {
        let grid = GridSpec::uniform(500).with_window(0.0, 4.0);
        let id = TrianglePreserver::certify(Func1D::Identity, &grid, PROPERTY_TOL).unwrap();
        let t = tt(0.3, 0.4, 0.5);
        assert_eq!(transform_triplet(&t, &id).unwrap(), t);
        let p2 = TrianglePreserver::certify(Func1D::PK { k: 2.0 }, &grid, PROPERTY_TOL).unwrap();
        let out = transform_triplet(&tt(FRAC_PI_3, FRAC_PI_3, FRAC_PI_3), &p2).unwrap();
        for x in out.to_array() {
            assert_abs_diff_eq!(x, 0.8660254037844386, epsilon = 1e-15);
        }
        assert!(TrianglePreserver::certify(Func1D::Power { p: 2.0 }, &grid, PROPERTY_TOL).is_err());
        assert!(TrianglePreserver::certify(Func1D::InvOnePlus, &grid, PROPERTY_TOL).is_err());
        let shifted = Func1D::Affine { slope: 1.0, intercept: 1.0 };
        assert!(TrianglePreserver::certify(shifted, &grid, PROPERTY_TOL).is_err());
        let flat = Func1D::UserSampled { points: vec![(0.0, 0.0), (1.0, 0.0), (4.0, 1.0)] };
        assert!(TrianglePreserver::certify(flat, &grid, PROPERTY_TOL).is_err());
    }

    #[test]
    fn composed_pipeline_gives_root_inequality() {
        let grid = GridSpec::uniform(400).with_window(0.0, 4.0);
        let p3 = TrianglePreserver::certify(Func1D::PK { k: 3.0 }, &grid, PROPERTY_TOL).unwrap();
        let s = PsdSym3::from_entries(0.9, 0.6, 0.3).unwrap();
        let via_pipeline = composed_triplet_certificate(&PsdSym3::new(s.abs()).unwrap(), &cos1(), &p3, 1e-9).unwrap();
        assert!(via_pipeline.pass);
        let direct = root_triplet_certificates(&s, 3.0, 1e-9).unwrap();
        assert!(direct.pass);
        assert_abs_diff_eq!(via_pipeline.slack, direct.slack, epsilon = 1e-9);
    }

    #[test]
    fn root_distance_examples() {
        let e = |i: usize| {
            let mut x = [0.0; 3];
            x[i] = 1.0;
            Vector::real(&x).unwrap()
        };
        let [a, r] = root_distance_certificates(&e(0), &e(1), &e(2), 2.0, 1e-9).unwrap();
        assert_eq!((a.lhs, a.rhs), (1.0, 2.0));
        assert!(a.pass && r.pass);
        let u = Vector::complex(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap();
        let w = Vector::complex(vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)]).unwrap();
        for k in [2.0, 3.0, 7.0] {
            let [a, r] = root_distance_certificates(&u, &u, &w, k, 1e-9).unwrap();
            assert!(a.lhs < 1e-7 && a.pass && r.pass);
        }
        assert!(root_distance_certificates(&u, &u, &w, 1.5, 1e-9).is_err());
        let z = Vector::complex(vec![Complex64::new(0.0, 0.0); 2]).unwrap();
        assert_eq!(root_distance_certificates(&u, &z, &w, 2.0, 1e-9).unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn unit_angle_examples() {
        let [u, v, w] = cos_sum_witness();
        let c = cos_sum_certificate(&u, &v, &w, AngleKind::Theta, 1e-9).unwrap();
        assert!(!c.pass);
        assert_abs_diff_eq!(c.lhs - c.rhs, FRAC_1_SQRT_2, epsilon = 1e-12);
        for kind in AngleKind::ALL {
            for cert in unit_angle_certificates(&u, &v, &w, kind, 1e-9).unwrap() {
                assert!(cert.pass, "{cert:?}");
            }
        }

        for kind in AngleKind::ALL {
            for cert in unit_angle_certificates(&u, &u, &u, kind, 1e-9).unwrap() {
                assert!(cert.pass);
                assert!(cert.lhs.abs() < 1e-7 || cert.id.starts_with("unit.cos_sin"));
            }
        }
    }

    #[test]
    fn signed_cos_sin_fails_only_for_the_real_part_angle() {
        let u = Vector::real(&[0.6, 0.8]).unwrap();
        let w = u.scaled(Complex64::new(-1.0, 0.0));
        let signed = signed_cos_sin_certificate(&u, &u, &w, AngleKind::CapTheta, 1e-9).unwrap();
        assert!(!signed.pass);
        assert_abs_diff_eq!(signed.lhs, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(signed.rhs, -1.0, epsilon = 1e-7);
        assert!(signed_cos_sin_certificate(&u, &u, &w, AngleKind::Theta, 1e-9).unwrap().pass);
        for cert in unit_angle_certificates(&u, &u, &w, AngleKind::CapTheta, 1e-9).unwrap() {
            assert!(cert.pass, "{cert:?}");
        }
    }

    #[test]
    fn user_sampled_interpolates() {
        let f = Func1D::UserSampled { points: vec![(0.0, 0.0), (1.0, 2.0), (3.0, 3.0)] };
        f.validate().unwrap();
        assert_eq!(f.eval(0.5).unwrap(), 1.0);
        assert_eq!(f.eval(2.0).unwrap(), 2.5);
        assert_eq!(f.eval(3.0).unwrap(), 3.0);
        assert!(f.eval(3.5).is_err());
        let bad = Func1D::UserSampled { points: vec![(0.0, 0.0), (0.0, 1.0)] };
        assert!(bad.validate().is_err());
    }
}
