//! σ_min fields over rectangular complex-plane windows.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::smallest_singular_value;
use crate::matrix::CMatrix;
use crate::operator::DiscretizedOperator;
use crate::scalar::Real;

/// Rectangular window in the complex plane with a sampling resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexWindow<R: Real> {
    pub re_min: R,
    pub re_max: R,
    pub im_min: R,
    pub im_max: R,
    pub nx: usize,
    pub ny: usize,
}

impl<R: Real> ComplexWindow<R> {
    pub fn new(re_min: R, re_max: R, im_min: R, im_max: R, nx: usize, ny: usize) -> Result<Self> {
        if !(re_min < re_max) || !(im_min < im_max) {
            return Err(Error::invalid("window bounds must satisfy min < max"));
        }
        if ![re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite()) {
            return Err(Error::invalid("window bounds must be finite"));
        }
        if nx < 2 || ny < 2 {
            return Err(Error::invalid("window resolution must be at least 2×2"));
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
            nx,
            ny,
        })
    }

    pub fn re_at(&self, ix: usize) -> R {
        self.re_min + (self.re_max - self.re_min) * R::of_usize(ix) / R::of_usize(self.nx - 1)
    }

    pub fn im_at(&self, iy: usize) -> R {
        self.im_min + (self.im_max - self.im_min) * R::of_usize(iy) / R::of_usize(self.ny - 1)
    }

    pub fn point(&self, ix: usize, iy: usize) -> Complex<R> {
        Complex::new(self.re_at(ix), self.im_at(iy))
    }

    /// Grid spacing (dre, dim).
    pub fn spacing(&self) -> (R, R) {
        (
            (self.re_max - self.re_min) / R::of_usize(self.nx - 1),
            (self.im_max - self.im_min) / R::of_usize(self.ny - 1),
        )
    }
}

/// Operator parameters a field was computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorFingerprint<R: Real> {
    pub c: Complex<R>,
    pub n_intervals: usize,
    pub half_width: R,
}

/// `σ_min(H_c^N − zI)` sampled over a window. Values are stored row-major
/// by imaginary part: index `iy·nx + ix`.
#[derive(Debug, Clone)]
pub struct PseudospectrumField<R: Real> {
    window: ComplexWindow<R>,
    values: Vec<R>,
    fingerprint: OperatorFingerprint<R>,
}

impl<R: Real> PseudospectrumField<R> {
    pub fn window(&self) -> &ComplexWindow<R> {
        &self.window
    }

    pub fn fingerprint(&self) -> &OperatorFingerprint<R> {
        &self.fingerprint
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn value(&self, ix: usize, iy: usize) -> R {
        self.values[iy * self.window.nx + ix]
    }

    pub fn min_value(&self) -> R {
        self.values.iter().fold(R::infinity(), |a, &b| a.min(b))
    }

    pub fn max_value(&self) -> R {
        self.values.iter().fold(R::zero(), |a, &b| a.max(b))
    }

    /// Bilinear interpolation of the field at an arbitrary window point.
    pub fn interpolate(&self, z: Complex<R>) -> R {
        let (dre, dim) = self.window.spacing();
        let fx = ((z.re - self.window.re_min) / dre)
            .max(R::zero())
            .min(R::of_usize(self.window.nx - 1));
        let fy = ((z.im - self.window.im_min) / dim)
            .max(R::zero())
            .min(R::of_usize(self.window.ny - 1));
        let ix = fx.floor().to_usize().unwrap().min(self.window.nx - 2);
        let iy = fy.floor().to_usize().unwrap().min(self.window.ny - 2);
        let tx = fx - R::of_usize(ix);
        let ty = fy - R::of_usize(iy);
        let one = R::one();
        self.value(ix, iy) * (one - tx) * (one - ty)
            + self.value(ix + 1, iy) * tx * (one - ty)
            + self.value(ix, iy + 1) * (one - tx) * ty
            + self.value(ix + 1, iy + 1) * tx * ty
    }
}

/// σ_min of `m − zI`.
pub(crate) fn sigma_min_at<R: Real>(m: &CMatrix<R>, z: Complex<R>) -> R {
    smallest_singular_value(&m.shifted(z))
}

/// Compute the σ_min field of the operator over a window.
///
/// Grid points are independent pure evaluations fanned out over the ambient
/// rayon pool; results are assembled in index order, so the output is
/// identical for every worker count.
pub fn compute_field<R: Real>(
    op: &DiscretizedOperator<R>,
    window: &ComplexWindow<R>,
) -> Result<PseudospectrumField<R>> {
    let total = window.nx * window.ny;
    let values: Vec<R> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let ix = idx % window.nx;
            let iy = idx / window.nx;
            sigma_min_at(op.matrix(), window.point(ix, iy))
        })
        .collect();
    if values.iter().any(|v| !v.is_finite() || *v < R::zero()) {
        return Err(Error::PropertyViolation(
            "pseudospectrum field contains non-finite or negative σ_min".into(),
        ));
    }
    Ok(PseudospectrumField {
        window: *window,
        values,
        fingerprint: OperatorFingerprint {
            c: op.c(),
            n_intervals: op.n_intervals(),
            half_width: op.half_width(),
        },
    })
}

/// `‖(H − zI)^{-1}‖₂ = 1/σ_min(H − zI)`; infinite exactly on the computed
/// spectrum.
pub fn resolvent_norm_at<R: Real>(op: &DiscretizedOperator<R>, z: Complex<R>) -> R {
    resolvent_norm_of_matrix(op.matrix(), z)
}

pub(crate) fn resolvent_norm_of_matrix<R: Real>(m: &CMatrix<R>, z: Complex<R>) -> R {
    let sigma = sigma_min_at(m, z);
    if sigma.is_zero() {
        R::infinity()
    } else {
        R::one() / sigma
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{discretize, OscillatorParams};

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn scalar_op() -> DiscretizedOperator<f64> {
        // 1×1 operator [[2]] from the N=2, L=1 discretization.
        discretize(&OscillatorParams::new(c(1.0, 5.0)).unwrap(), 2, 1.0).unwrap()
    }

    #[test]
    fn window_validation() {
        assert!(ComplexWindow::new(0.0, 1.0, 0.0, 1.0, 2, 2).is_ok());
        assert!(ComplexWindow::new(1.0, 0.0, 0.0, 1.0, 2, 2).is_err());
        assert!(ComplexWindow::new(0.0, 1.0, 0.0, 1.0, 1, 2).is_err());
    }

    #[test]
    fn scalar_operator_field_is_distance() {
        let op = scalar_op();
        assert_eq!(sigma_min_at(op.matrix(), c(2.0, 0.0)), 0.0);
        assert!((sigma_min_at(op.matrix(), c(2.0, 1.0)) - 1.0).abs() < 1e-12);

        let window = ComplexWindow::new(0.0, 4.0, -2.0, 2.0, 9, 9).unwrap();
        let field = compute_field(&op, &window).unwrap();
        for iy in 0..9 {
            for ix in 0..9 {
                let z = window.point(ix, iy);
                let expected = (z - c(2.0, 0.0)).norm();
                assert!(
                    (field.value(ix, iy) - expected).abs() <= 1e-10 * (1.0 + expected),
                    "at {z}"
                );
            }
        }
    }

    #[test]
    fn scalar_resolvent_norms() {
        let op = scalar_op();
        assert!((resolvent_norm_at(&op, c(0.0, 0.0)) - 0.5).abs() < 1e-12);
        assert!(resolvent_norm_at(&op, c(2.0, 0.0)).is_infinite());
    }

    #[test]
    fn normal_matrix_resolvent_is_inverse_distance() {
        let m = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(3.0, 0.0)],
        ]);
        assert!((resolvent_norm_of_matrix(&m, c(2.0, 0.0)) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn field_deterministic_across_worker_counts() {
        let op = discretize(&OscillatorParams::new(c(1.0, 5.0)).unwrap(), 24, 6.0).unwrap();
        let window = ComplexWindow::new(0.0, 8.0, 0.0, 6.0, 7, 5).unwrap();
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| compute_field(&op, &window).unwrap())
        };
        let f1 = run(1);
        let f4 = run(4);
        assert_eq!(f1.values(), f4.values());
        let again = run(1);
        assert_eq!(f1.values(), again.values());
    }

    #[test]
    fn interpolation_matches_grid_values() {
        let op = scalar_op();
        let window = ComplexWindow::new(0.0, 4.0, -2.0, 2.0, 5, 5).unwrap();
        let field = compute_field(&op, &window).unwrap();
        let z = window.point(2, 3);
        assert!((field.interpolate(z) - field.value(2, 3)).abs() < 1e-12);
    }
}
