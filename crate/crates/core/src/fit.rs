//! Ordinary least squares for straight-line fits (used on log-log data to
//! extract asymptotic exponents).

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Result of a straight-line least-squares fit `y ≈ slope·x + intercept`.
#[derive(Debug, Clone, Copy)]
pub struct LineFit<R: Real> {
    pub slope: R,
    pub intercept: R,
    /// Root-mean-square residual of the fit.
    pub residual: R,
}

/// Fit `y ≈ slope·x + intercept` by ordinary least squares.
pub fn linear_fit<R: Real>(xs: &[R], ys: &[R]) -> Result<LineFit<R>> {
    if xs.len() != ys.len() {
        return Err(Error::invalid("x/y sample length mismatch"));
    }
    let n = xs.len();
    if n < 2 {
        return Err(Error::FitRefused(format!(
            "need at least 2 samples for a line fit, got {n}"
        )));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::invalid("fit samples must be finite"));
    }
    let nf = R::of_usize(n);
    let sum_x = xs.iter().fold(R::zero(), |a, &b| a + b);
    let sum_y = ys.iter().fold(R::zero(), |a, &b| a + b);
    let mean_x = sum_x / nf;
    let mean_y = sum_y / nf;
    let mut sxx = R::zero();
    let mut sxy = R::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        sxx += dx * dx;
        sxy += dx * (y - mean_y);
    }
    if sxx.is_zero() {
        return Err(Error::FitRefused("all x samples coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let sse = xs
        .iter()
        .zip(ys)
        .fold(R::zero(), |acc, (&x, &y)| {
            let r = y - (slope * x + intercept);
            acc + r * r
        });
    Ok(LineFit {
        slope,
        intercept,
        residual: (sse / nf).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line_recovered() {
        let xs: Vec<f64> = (0..20).map(|i| i as f64 * 0.3 - 2.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| -x / 3.0 + 1.25).collect();
        let fit = linear_fit(&xs, &ys).unwrap();
        assert!((fit.slope + 1.0 / 3.0).abs() < 1e-12);
        assert!((fit.intercept - 1.25).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn constant_data_has_zero_slope() {
        let xs: Vec<f64> = (1..12).map(|i| i as f64).collect();
        let ys = vec![4.0; 11];
        let fit = linear_fit(&xs, &ys).unwrap();
        assert_eq!(fit.slope, 0.0);
        assert!((fit.intercept - 4.0).abs() < 1e-13);
    }

    #[test]
    fn least_squares_optimality() {
        // Perturbing the fitted line by ±1e-6 in either coefficient must not
        // reduce the sum of squared residuals.
        let xs: Vec<f64> = (0..40).map(|i| i as f64 * 0.08).collect();
        let ys: Vec<f64> = xs.iter().enumerate().map(|(i, x)| 2.0 * x + ((i % 5) as f64) * 0.1).collect();
        let fit = linear_fit(&xs, &ys).unwrap();
        let sse = |s: f64, b: f64| -> f64 {
            xs.iter()
                .zip(&ys)
                .map(|(&x, &y)| (y - s * x - b).powi(2))
                .sum()
        };
        let base = sse(fit.slope, fit.intercept);
        for ds in [-1e-6, 1e-6] {
            for db in [-1e-6, 1e-6] {
                assert!(sse(fit.slope + ds, fit.intercept + db) >= base - 1e-15);
            }
        }
    }

    #[test]
    fn refuses_degenerate_inputs() {
        assert!(linear_fit(&[1.0f64], &[2.0]).is_err());
        assert!(linear_fit(&[1.0f64, 1.0], &[2.0, 3.0]).is_err());
        assert!(linear_fit(&[1.0f64, f64::NAN], &[2.0, 3.0]).is_err());
    }
}
