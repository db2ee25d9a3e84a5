//! Inequalities on the entries of correlation matrices.
//!
//! Everything reduces to the unit-diagonal 3x3 matrix with off-diagonal
//! entries `(a, b, c)`: the completion interval of `c` given `(a, b)`, the
//! bounds built from it, the entrywise-power forms, the entry inequalities
//! on every 3x3 principal submatrix of a larger correlation matrix, and the
//! supremum of `R_k`.

mod completion;
mod entries;
mod rk;

pub use completion::{
    affine_bound_certificates, completion_interval, delta_bounds, pair_bound_certificates, CompletionInterval,
    DeltaBounds,
};
pub use entries::{
    entry_certificates, general_index_counterexamples, gram_triple_certificates, power_certificates,
    GeneralIndexWitness,
};
pub use rk::{rk_diagonal_maximizer, rk_pair, rk_sup_closed_form, rk_sup_grid, rk_value, RkGrid};

use libm::sqrt;

/// `sqrt(1 - x)` with `x` clamped into `[-1, 1]`.
pub(crate) fn sqrt_one_minus(x: f64) -> f64 {
    sqrt(1.0 - x.clamp(-1.0, 1.0))
}

/// `sqrt(1 - x^2)` with `x` clamped into `[-1, 1]`.
pub(crate) fn sqrt_one_minus_sq(x: f64) -> f64 {
    let x = x.clamp(-1.0, 1.0);
    sqrt((1.0 - x * x).max(0.0))
}
