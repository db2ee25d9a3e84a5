//! Angle metrics on inner-product spaces and entrywise inequalities for
//! correlation matrices.
//!
//! The crate is `no_std` and only needs `alloc`. Every check produces a
//! [`Certificate`] carrying the two sides of the inequality and the signed
//! slack, so tolerance decisions stay auditable by the caller.
//!
//! Modules:
//!
//! * [`linalg`]: vectors, Hermitian and correlation matrices, positivity tests.
//! * [`angles`]: the absolute-value angle `theta`, the real-part angle
//!   `cap_theta`, phase minimization and triangle certificates.
//! * [`corr_ineq`]: completion intervals, bounds on 3x3 correlation entries,
//!   Hadamard powers and the `R_k` supremum.
//! * [`constructors`]: correlation matrices built from density-matrix factors
//!   and partial isometries, plus seeded random sampling.
//! * [`metric_fn`]: triangle triplets, subadditive and metric-preserving
//!   function checks, and the unit-vector inequalities built on them.

#![no_std]
#![forbid(unsafe_code)]
// `!(x >= 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod angles;
pub mod certificate;
pub mod constructors;
pub mod corr_ineq;
pub mod dense;
pub mod eigen;
mod error;
pub mod linalg;
pub mod metric_fn;
pub mod sampling;

pub use certificate::{Certificate, Context, CtxValue};
pub use error::{Error, Result};
pub use linalg::{CorrelationMatrix, Field, HermitianMatrix, PsdSym3, Sym3, Vector};

pub use num_complex::Complex64;

/// Default relative tolerance of the spectral positivity test.
pub const PSD_TOL: f64 = 1e-10;

/// Absolute slack on `1 + 2abc >= a^2 + b^2 + c^2` in the 3x3 closed form.
pub const PSD3_TOL: f64 = 1e-12;

/// Default tolerance for inequality certificates in randomized sweeps.
pub const CERT_TOL: f64 = 1e-9;
