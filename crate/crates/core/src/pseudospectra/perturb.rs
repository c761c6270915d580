//! Perturbation containment harness.
//!
//! The ε-pseudospectrum equals the union of spectra of all perturbations
//! `A + ΔA` with `‖ΔA‖ ≤ ε` (an exact theorem), so every eigenvalue of a
//! random perturbation rescaled to `‖ΔA‖₂ = ε` must satisfy
//! `σ_min(A − λ̂I) ≤ ε` up to roundoff. Violations mean a broken kernel,
//! never a broken theorem.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, matrix_two_norm, smallest_singular_value};
use crate::matrix::CMatrix;
use crate::operator::DiscretizedOperator;
use crate::scalar::Real;

/// Numerical slack on the exact containment σ_min ≤ ε.
const CONTAINMENT_SLACK: f64 = 1e-6;

/// Outcome of one perturbation trial.
#[derive(Debug, Clone)]
pub struct PerturbationTrial<R: Real> {
    pub trial: usize,
    /// Perturbed eigenvalues with their σ_min(A − λ̂I).
    pub eigenvalues: Vec<(Complex<R>, R)>,
    pub max_ratio: R,
}

/// Containment report over all trials.
#[derive(Debug, Clone)]
pub struct PerturbationReport<R: Real> {
    pub eps: R,
    pub trials: Vec<PerturbationTrial<R>>,
    /// Largest σ_min(A − λ̂I)/ε over every perturbed eigenvalue.
    pub max_ratio: R,
}

impl<R: Real> PerturbationReport<R> {
    /// True when containment holds within the numerical slack.
    pub fn passed(&self) -> bool {
        self.max_ratio <= R::one() + R::cst(CONTAINMENT_SLACK)
    }

    /// Error out on violation; containment is an exact theorem.
    pub fn ensure_containment(&self) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::PropertyViolation(format!(
                "Roch-Silbermann containment violated: max σ_min/ε = {}",
                self.max_ratio
            )))
        }
    }
}

/// Uniform complex perturbation rescaled to exact 2-norm `eps`. One seeded
/// stream per trial keeps the ensemble independent of evaluation order.
fn random_perturbation<R: Real>(n: usize, eps: R, seed: u64, trial: usize) -> CMatrix<R> {
    let stream = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(trial as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    let raw = CMatrix::from_fn(n, n, |_, _| {
        Complex::new(
            R::cst(rng.gen_range(-1.0..1.0)),
            R::cst(rng.gen_range(-1.0..1.0)),
        )
    });
    let norm = matrix_two_norm(&raw);
    raw.scale(Complex::new(eps / norm, R::zero()))
}

/// Eigenvalues of `matrix + pert` with their σ_min against the unperturbed
/// matrix.
pub(crate) fn containment_of_perturbation<R: Real>(
    matrix: &CMatrix<R>,
    pert: &CMatrix<R>,
) -> Result<Vec<(Complex<R>, R)>> {
    let perturbed = matrix.add(pert);
    let eig = eigenvalues(&perturbed)?;
    Ok(eig
        .eigenvalues()
        .iter()
        .map(|&lambda| (lambda, smallest_singular_value(&matrix.shifted(lambda))))
        .collect())
}

/// Run `trials` random perturbations of size `eps` and report the worst
/// σ_min/ε ratio over all perturbed eigenvalues.
pub fn perturbation_check<R: Real>(
    op: &DiscretizedOperator<R>,
    eps: R,
    trials: usize,
    seed: u64,
) -> Result<PerturbationReport<R>> {
    if !(eps > R::zero()) || !eps.is_finite() {
        return Err(Error::invalid("perturbation size eps must be positive"));
    }
    if trials == 0 {
        return Err(Error::invalid("need at least one perturbation trial"));
    }
    let n = op.dim();
    let results: Result<Vec<PerturbationTrial<R>>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let pert = random_perturbation(n, eps, seed, trial);
            let eigenvalues = containment_of_perturbation(op.matrix(), &pert)?;
            let max_ratio = eigenvalues
                .iter()
                .map(|&(_, sigma)| sigma / eps)
                .fold(R::zero(), |a, b| a.max(b));
            Ok(PerturbationTrial {
                trial,
                eigenvalues,
                max_ratio,
            })
        })
        .collect();
    let trials_out = results?;
    let max_ratio = trials_out
        .iter()
        .map(|t| t.max_ratio)
        .fold(R::zero(), |a, b| a.max(b));
    Ok(PerturbationReport {
        eps,
        trials: trials_out,
        max_ratio,
    })
}
