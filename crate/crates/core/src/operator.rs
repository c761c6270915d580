//! The complex harmonic oscillator `H_c = −d²/dx² + c·x²` with `Re(c) > 0`:
//! exact spectral data and its Chebyshev collocation discretization
//! `H_c^N = −D_N⁽²⁾ + diag(c·x_i²)` on `[-L, L]` with Dirichlet boundary
//! conditions (boundary rows and columns removed).
//!
//! All fractional powers of `c` take the principal branch; since
//! `Re(c) > 0`, every power used here stays on a continuous branch and the
//! eigenvalue ray sits at argument `arg(c)/2`.

use num_complex::Complex;

use crate::chebyshev::{cheb_points, diff_matrix};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{vec_norm, CMatrix};
use crate::scalar::Real;

/// Residual above which an eigenfunction sample is considered unresolved by
/// the grid rather than wrong.
const UNDER_RESOLVED_THRESHOLD: f64 = 1e-2;

/// Potential coefficient `c` with the sectoriality constraint `Re(c) > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams<R: Real> {
    c: Complex<R>,
}

impl<R: Real> OscillatorParams<R> {
    pub fn new(c: Complex<R>) -> Result<Self> {
        if !(c.re > R::zero()) || !c.re.is_finite() || !c.im.is_finite() {
            return Err(Error::invalid(format!(
                "potential coefficient must have Re(c) > 0, got {c}"
            )));
        }
        Ok(Self { c })
    }

    pub fn c(&self) -> Complex<R> {
        self.c
    }

    /// `Im(c) ≠ 0` marks the non-normal regime.
    pub fn is_nonnormal(&self) -> bool {
        !self.c.im.is_zero()
    }
}

/// Dirichlet discretization of `H_c` on the interior collocation nodes.
#[derive(Debug, Clone)]
pub struct DiscretizedOperator<R: Real> {
    params: OscillatorParams<R>,
    n_intervals: usize,
    half_width: R,
    interior_points: Vec<R>,
    matrix: CMatrix<R>,
}

impl<R: Real> DiscretizedOperator<R> {
    pub fn params(&self) -> &OscillatorParams<R> {
        &self.params
    }

    pub fn c(&self) -> Complex<R> {
        self.params.c
    }

    pub fn n_intervals(&self) -> usize {
        self.n_intervals
    }

    pub fn half_width(&self) -> R {
        self.half_width
    }

    pub fn interior_points(&self) -> &[R] {
        &self.interior_points
    }

    /// The dense `(N−1)×(N−1)` matrix `−D⁽²⁾ + diag(c·x_i²)`.
    pub fn matrix(&self) -> &CMatrix<R> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Largest exact eigenvalue modulus the discretization is trusted to
    /// resolve (index `⌊N/10⌋`): spectral discretizations of unbounded
    /// operators only capture the low-lying spectrum.
    pub fn trust_modulus(&self) -> R {
        exact_eigenvalue(&self.params, self.n_intervals / 10).norm()
    }
}

/// Build `H_c^N` on the interior nodes of the `(N, L)` Chebyshev grid.
pub fn discretize<R: Real>(
    params: &OscillatorParams<R>,
    n: usize,
    half_width: R,
) -> Result<DiscretizedOperator<R>> {
    let grid = cheb_points(n, half_width)?;
    let d2 = diff_matrix(n, 2, half_width)?;
    let interior: Vec<R> = grid.interior_points().to_vec();
    let c = params.c;
    let dim = n - 1;
    let matrix = CMatrix::from_fn(dim, dim, |i, j| {
        let mut v = Complex::new(-d2.entry(i + 1, j + 1), R::zero());
        if i == j {
            let x = interior[i];
            v = v + c * x * x;
        }
        v
    });
    Ok(DiscretizedOperator {
        params: *params,
        n_intervals: n,
        half_width,
        interior_points: interior,
        matrix,
    })
}

/// Exact eigenvalue `λ_n = c^{1/2}·(2n+1)` (principal branch).
pub fn exact_eigenvalue<R: Real>(params: &OscillatorParams<R>, n: usize) -> Complex<R> {
    params.c.sqrt() * R::of_usize(2 * n + 1)
}

/// Exact eigenfunction `Ψ_n(x) = c^{1/8}·H_n(c^{1/4}x)·e^{−c^{1/2}x²/2}`.
///
/// The Hermite polynomial is evaluated by the upward three-term recurrence
/// `H_{k+1}(ξ) = 2ξH_k(ξ) − 2kH_{k−1}(ξ)` at the complex argument
/// `ξ = c^{1/4}x`, and multiplied by the Gaussian factor at the end. If the
/// Gaussian underflows, the value is exactly zero.
pub fn exact_eigenfunction<R: Real>(params: &OscillatorParams<R>, n: usize, x: R) -> Complex<R> {
    let c = params.c;
    let eighth = c.powf(R::cst(0.125));
    let quarter = c.powf(R::cst(0.25));
    let half = c.sqrt();

    let two = R::cst(2.0);
    let exponent = -half * x * x / two;
    // Gaussian underflow guard.
    if exponent.re < R::min_positive_value().ln() {
        return Complex::new(R::zero(), R::zero());
    }
    let gaussian = exponent.exp();

    let xi = quarter * x;
    let mut h_prev = Complex::new(R::one(), R::zero());
    if n == 0 {
        return eighth * h_prev * gaussian;
    }
    let mut h = xi * two;
    for k in 1..n {
        let next = xi * two * h - h_prev * (two * R::of_usize(k));
        h_prev = h;
        h = next;
    }
    eighth * h * gaussian
}

/// Residual of the sampled exact eigenpair against the discretized operator.
#[derive(Debug, Clone, Copy)]
pub struct ResidualReport<R: Real> {
    /// `‖H_c^N ψ − λ_n ψ‖₂ / ‖ψ‖₂` with ψ the nodal samples of `Ψ_n`.
    pub residual: R,
    /// Set when the residual exceeds 1e-2: the grid is too coarse for this
    /// mode, not necessarily a defect.
    pub under_resolved: bool,
}

/// How well the discretization reproduces the exact eigenpair `(λ_n, Ψ_n)`.
///
/// Meaningful for modes the grid can resolve (roughly `n ≤ N/10`).
pub fn eigenfunction_residual<R: Real>(op: &DiscretizedOperator<R>, n: usize) -> ResidualReport<R> {
    let psi: Vec<Complex<R>> = op
        .interior_points
        .iter()
        .map(|&x| exact_eigenfunction(&op.params, n, x))
        .collect();
    let lambda = exact_eigenvalue(&op.params, n);
    let a_psi = op.matrix.mul_vec(&psi);
    let diff: Vec<Complex<R>> = a_psi
        .iter()
        .zip(&psi)
        .map(|(ap, p)| ap - lambda * p)
        .collect();
    let norm = vec_norm(&psi);
    let residual = if norm > R::zero() {
        vec_norm(&diff) / norm
    } else {
        R::infinity()
    };
    ResidualReport {
        residual,
        under_resolved: residual > R::cst(UNDER_RESOLVED_THRESHOLD),
    }
}

/// Computed spectrum of the discretized operator, sorted by ascending
/// modulus, with backward-error estimates available on demand.
#[derive(Debug, Clone)]
pub struct SpectrumResult<R: Real> {
    eigenvalues: Vec<Complex<R>>,
}

impl<R: Real> SpectrumResult<R> {
    pub fn eigenvalues(&self) -> &[Complex<R>] {
        &self.eigenvalues
    }

    /// Backward error `σ_min(H − λI)/‖H‖₂` of one computed eigenvalue.
    pub fn backward_error(&self, op: &DiscretizedOperator<R>, index: usize) -> R {
        let scale = linalg::matrix_two_norm(op.matrix());
        let sigma =
            linalg::smallest_singular_value(&op.matrix().shifted(self.eigenvalues[index]));
        if scale > R::zero() {
            sigma / scale
        } else {
            sigma
        }
    }

    /// Leading eigenvalues trusted by the `N/10` heuristic: modulus within
    /// the trust region and backward error at most `tol`.
    pub fn converged(&self, op: &DiscretizedOperator<R>, tol: R) -> Vec<Complex<R>> {
        let trust = op.trust_modulus();
        let scale = linalg::matrix_two_norm(op.matrix());
        self.eigenvalues
            .iter()
            .copied()
            .take_while(|l| l.norm() <= trust)
            .filter(|&l| {
                let sigma = linalg::smallest_singular_value(&op.matrix().shifted(l));
                sigma <= tol * scale
            })
            .collect()
    }
}

/// All eigenvalues of `H_c^N`.
pub fn compute_spectrum<R: Real>(op: &DiscretizedOperator<R>) -> Result<SpectrumResult<R>> {
    let eig = linalg::eigenvalues(op.matrix())?;
    Ok(SpectrumResult {
        eigenvalues: eig.eigenvalues().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn params(re: f64, im: f64) -> OscillatorParams<f64> {
        OscillatorParams::new(c(re, im)).unwrap()
    }

    #[test]
    fn rejects_nonsectorial_coefficient() {
        assert!(OscillatorParams::new(c(0.0, 1.0)).is_err());
        assert!(OscillatorParams::new(c(-1.0, 5.0)).is_err());
        assert!(OscillatorParams::new(c(f64::NAN, 0.0)).is_err());
        assert!(params(1.0, 5.0).is_nonnormal());
        assert!(!params(2.0, 0.0).is_nonnormal());
    }

    #[test]
    fn smallest_discretization_is_scalar_two() {
        // N=2, L=1: single interior node x=0, so the potential vanishes and
        // −D⁽²⁾ contributes its middle entry 2.
        for im in [5.0, 0.0] {
            let op = discretize(&params(1.0, im), 2, 1.0).unwrap();
            assert_eq!(op.dim(), 1);
            assert!((op.matrix()[(0, 0)] - c(2.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn dirichlet_removes_two_nodes() {
        let op = discretize(&params(1.0, 5.0), 200, 6.0).unwrap();
        assert_eq!(op.dim(), 199);
        assert_eq!(op.interior_points().len(), 199);
        assert!(op.params().is_nonnormal());
    }

    #[test]
    fn exact_eigenvalues_real_case() {
        let p = params(1.0, 0.0);
        assert!((exact_eigenvalue(&p, 0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((exact_eigenvalue(&p, 3) - c(7.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn exact_eigenvalue_principal_branch() {
        let p = params(1.0, 5.0);
        let l0 = exact_eigenvalue(&p, 0);
        // Algebraic oracle: a² = (1+√26)/2 and b = 5/(2a) solve (a+bi)² = 1+5i.
        let a = ((1.0 + 26.0f64.sqrt()) / 2.0).sqrt();
        let b = 5.0 / (2.0 * a);
        assert!((l0 - c(a, b)).norm() < 1e-14);
        // Frozen oracle digits.
        assert!((l0 - c(1.7462845577958914, 1.4316108957382214)).norm() < 1e-12);
        let l1 = exact_eigenvalue(&p, 1);
        assert!((l1 - l0 * 3.0).norm() < 1e-14);
        assert!((l1 - c(5.238853673387674, 4.294832687214664)).norm() < 1e-12);
        // The whole ray sits at arg(c)/2.
        assert!((l0.arg() - c(1.0, 5.0).arg() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn constant_gap_along_ray() {
        let p = params(3.0, -2.0);
        let gap = 2.0 * c(3.0, -2.0).norm().sqrt();
        for n in 0..10 {
            let d = (exact_eigenvalue(&p, n + 1) - exact_eigenvalue(&p, n)).norm();
            assert!((d - gap).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenfunction_ground_state_values() {
        let p = params(1.0, 0.0);
        assert!((exact_eigenfunction(&p, 0, 0.0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(exact_eigenfunction(&p, 1, 0.0).norm() < 1e-15);

        // (1+5i)^{1/8} in polar form: modulus 26^{1/16}, argument atan2(5,1)/8.
        let p = params(1.0, 5.0);
        let modulus = 26.0f64.powf(1.0 / 16.0);
        let theta = 5.0f64.atan2(1.0) / 8.0;
        let expected = c(modulus * theta.cos(), modulus * theta.sin());
        assert!((exact_eigenfunction(&p, 0, 0.0) - expected).norm() < 1e-14);
    }

    #[test]
    fn eigenfunction_underflow_guard() {
        let p = params(1.0, 5.0);
        let v = exact_eigenfunction(&p, 2, 1e6);
        assert_eq!(v, c(0.0, 0.0));
    }

    #[test]
    fn eigenpair_satisfies_ode_to_second_order() {
        // Finite-difference check of −Ψ″ + cx²Ψ − λΨ = 0; the residual must
        // shrink by ~4 when the step halves.
        let p = params(1.0, 5.0);
        let n = 3;
        let lambda = exact_eigenvalue(&p, n);
        let x = 0.7;
        let resid = |delta: f64| {
            let f = |t: f64| exact_eigenfunction(&p, n, t);
            let second = (f(x + delta) - f(x) * 2.0 + f(x - delta)) / (delta * delta);
            (-second + f(x) * c(1.0, 5.0) * x * x - lambda * f(x)).norm()
        };
        let r1 = resid(1e-3);
        let r2 = resid(5e-4);
        assert!(r1 < 1e-2);
        let ratio = r1 / r2;
        assert!((ratio - 4.0).abs() < 0.5, "convergence order ratio {ratio}");
    }

    #[test]
    fn residuals_small_on_fine_grid() {
        let op = discretize(&params(1.0, 5.0), 200, 6.0).unwrap();
        let r = eigenfunction_residual(&op, 0);
        assert!(r.residual < 1e-6, "residual {:e}", r.residual);
        assert!(!r.under_resolved);

        let op_real = discretize(&params(1.0, 0.0), 200, 10.0).unwrap();
        let r = eigenfunction_residual(&op_real, 1);
        assert!(r.residual < 1e-6, "residual {:e}", r.residual);
    }

    #[test]
    fn narrow_domain_truncation_is_flagged() {
        // With c = 1 the Gaussian decays as e^{-x²/2}; at L = 6 the n = 1
        // mode still carries ~1e-7 relative boundary mass, and the boundary
        // cardinal functions amplify it by ~N⁴/L², so the residual is large
        // and the under-resolution flag must fire.
        let op_real = discretize(&params(1.0, 0.0), 200, 6.0).unwrap();
        let r = eigenfunction_residual(&op_real, 1);
        assert!(r.residual > 1e-2, "residual {:e}", r.residual);
        assert!(r.under_resolved);
    }

    #[test]
    fn coarse_grid_flags_under_resolution() {
        let op = discretize(&params(1.0, 5.0), 16, 6.0).unwrap();
        let r = eigenfunction_residual(&op, 10);
        assert!(r.residual > 1e-2);
        assert!(r.under_resolved);
    }
}
