//! ε-pseudospectra of the discretized oscillator: σ_min fields over
//! complex-plane windows, contour extraction, resolvent-norm traces along
//! `z_η = b·η + c·η^p` with exponent fits, region predicates, and the
//! perturbation containment harness.

mod contour;
mod curve;
mod field;
mod perturb;
mod region;

pub use contour::{contours, LevelContours};
pub use curve::{
    curve_point, eta_samples, fit_exponent, mark_stability, trace_curve,
    trace_curve_with_stability, CurveTrace, ExponentFit, Spacing,
};
pub use field::{
    compute_field, resolvent_norm_at, ComplexWindow, OperatorFingerprint, PseudospectrumField,
};
pub use perturb::{perturbation_check, PerturbationReport, PerturbationTrial};
pub use region::{omega_anchor, omega_region_membership, sector_membership};
