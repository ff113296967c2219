//! Numerics on the quantum Euclidean space `R^d_θ`.
//!
//! The crate realizes the Weyl quantization `λ_θ(f) = ∫ f(t) U_θ(t) dt` as
//! finite matrices, measures noncommutative `L^p` and weak `L^p` norms through
//! singular values, evaluates Mittag-Leffler propagators of Caputo-fractional
//! heat, Schrödinger and wave equations, and runs Picard iteration for the
//! nonlinear heat/wave problems `∂_t u = h |Au|^p`, `∂_t² u = h |Au|^p`.

pub mod config;
pub mod error;
pub mod evolution;
pub mod experiments;
pub mod grid;
pub mod lebesgue;
pub mod mittag;
pub mod multipliers;
pub mod nonlinear;
pub mod quadrature;
pub mod theta;
pub mod validation;
pub mod weyl;

pub use error::{Error, Result};
pub use num_complex::Complex64;
