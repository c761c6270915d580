//! Spectra, ε-pseudospectra and resolvent-norm estimates for the complex
//! harmonic oscillator `H_c = −d²/dx² + c·x²` with `Re(c) > 0`.
//!
//! The crate discretizes `H_c` by Chebyshev spectral collocation on
//! `[-L, L]` with Dirichlet conditions, computes its spectrum and σ_min
//! fields with dense complex linear algebra written for this scale, traces
//! resolvent norms along curves `z_η = b·η + c·η^p`, and numerically
//! verifies the semiclassical Schur-test kernel bounds behind the
//! `O(|z|^{-1/3})` resolvent decay in the critical sector.
//!
//! All numerics are generic over the real scalar type via [`scalar::Real`]
//! (`f32` or `f64`); the `*64` aliases below fix the default precision.

pub mod chebyshev;
pub mod error;
pub mod fit;
pub mod kernelbound;
pub mod linalg;
pub mod matrix;
pub mod operator;
pub mod pseudospectra;
pub mod quad;
pub mod scalar;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Real;

/// Default-precision complex scalar.
pub type C64 = Complex<f64>;
/// Default-precision collocation grid.
pub type ChebGrid64 = chebyshev::ChebGrid<f64>;
/// Default-precision differentiation matrix.
pub type DiffMatrix64 = chebyshev::DiffMatrix<f64>;
/// Default-precision dense complex matrix.
pub type CMatrix64 = matrix::CMatrix<f64>;
/// Default-precision oscillator parameters.
pub type OscillatorParams64 = operator::OscillatorParams<f64>;
/// Default-precision discretized operator.
pub type Operator64 = operator::DiscretizedOperator<f64>;
/// Default-precision σ_min field.
pub type Field64 = pseudospectra::PseudospectrumField<f64>;
/// Default-precision complex-plane window.
pub type Window64 = pseudospectra::ComplexWindow<f64>;
/// Default-precision curve trace.
pub type CurveTrace64 = pseudospectra::CurveTrace<f64>;
/// Default-precision semiclassical parameters.
pub type SemiclassicalParams64 = kernelbound::SemiclassicalParams<f64>;
