//! Numerical machinery for the renormalized Φ⁴ equations of motion in
//! four-dimensional Euclidean momentum space.
//!
//! The crate builds the pieces needed to run the fixed-point construction at
//! desk scale: partition combinatorics for the tree expansion of the global
//! terms, closed-form splitting-sequence bounds, the zero-dimensional mapping
//! and its Φ-iteration, renormalized one- and two-loop integrals, tree-type
//! Green's-function sequences, the Banach norm and ball radius, one
//! application of the re-solved mapping on a sampled sequence, the iteration
//! driver, and numerical certificates for every closed-form contraction
//! inequality.
//!
//! Everything works in units of the mass, `m = 1`. Momentum variables are
//! always squared invariants `q² ≥ 0` unless a function documents otherwise
//! (a few kernels continue analytically to `q² + m² = 0`).

pub mod certify;
pub mod combinatorics;
pub mod config;
pub mod grid;
pub mod iteration;
pub mod loops;
pub mod mapping4d;
pub mod norms;
mod par;
pub mod splitting;
pub mod trees;
pub mod zerodim;

pub use config::RunConfig;

/// Errors produced by the numerical layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid order n = {0}: {1}")]
    InvalidOrder(i64, &'static str),
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("vanishing denominator in {0}")]
    ZeroDenominator(&'static str),
    #[error("iteration failed: {0}")]
    Iteration(String),
    #[error("sequence left the admissible subset: {0}")]
    Membership(String),
}

pub type Result<T> = std::result::Result<T, Error>;
