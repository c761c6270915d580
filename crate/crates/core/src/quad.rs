//! Composite Simpson quadrature with interval doubling: refine until two
//! successive refinements agree to the requested relative tolerance. The
//! integrands of this crate are smooth and rapidly decaying, so doubling on
//! a pre-truncated window converges quickly.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Outcome of a converged quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<R: Real> {
    pub value: R,
    /// Relative agreement between the last two refinements.
    pub rel_error: R,
    pub evaluations: usize,
}

/// Integrate `f` over `[a, b]`, doubling the panel count until successive
/// values agree to `rel_tol` (relative, with a tiny absolute floor for
/// integrals near zero).
pub fn simpson_doubling<R: Real>(
    f: impl Fn(R) -> R,
    a: R,
    b: R,
    rel_tol: R,
) -> Result<QuadResult<R>> {
    const MAX_DOUBLINGS: usize = 22;
    if !(b >= a) || !a.is_finite() || !b.is_finite() {
        return Err(Error::invalid("bad integration interval"));
    }
    if a == b {
        return Ok(QuadResult {
            value: R::zero(),
            rel_error: R::zero(),
            evaluations: 0,
        });
    }
    let two = R::cst(2.0);
    let four = R::cst(4.0);
    let six = R::cst(6.0);

    let mut n = 8usize; // panels
    let mut evaluations = 0usize;
    let mut prev = R::nan();
    let mut achieved = R::infinity();
    for _ in 0..=MAX_DOUBLINGS {
        let h = (b - a) / R::of_usize(n);
        let mut sum = R::zero();
        // Per-panel Simpson; midpoint-based so panel doubling stays simple.
        for i in 0..n {
            let x0 = a + h * R::of_usize(i);
            let x1 = x0 + h;
            let xm = x0 + h / two;
            sum += (f(x0) + four * f(xm) + f(x1)) * h / six;
        }
        evaluations += 3 * n;
        if prev.is_finite() {
            let denom = sum.abs().max(R::min_positive_value().sqrt());
            achieved = (sum - prev).abs() / denom;
            if achieved <= rel_tol {
                return Ok(QuadResult {
                    value: sum,
                    rel_error: achieved,
                    evaluations,
                });
            }
        }
        prev = sum;
        n *= 2;
    }
    Err(Error::QuadratureAccuracy {
        requested: rel_tol.to_f64().unwrap_or(f64::NAN),
        achieved: achieved.to_f64().unwrap_or(f64::NAN),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        // Simpson is exact on cubics: one refinement agreement is immediate.
        let q = simpson_doubling(|x: f64| x * x * x - x, 0.0, 2.0, 1e-12).unwrap();
        assert!((q.value - 2.0).abs() < 1e-13);
    }

    #[test]
    fn integrates_gaussian_like_decay() {
        let q = simpson_doubling(|x: f64| (-x * x * x).exp(), 0.0, 4.0, 1e-9).unwrap();
        // Γ(4/3) minus the (negligible) tail beyond 4.
        assert!((q.value - 0.8929795115692492).abs() < 1e-8);
    }

    #[test]
    fn empty_interval_is_zero() {
        let q = simpson_doubling(|_: f64| 1.0, 1.5, 1.5, 1e-9).unwrap();
        assert_eq!(q.value, 0.0);
    }

    #[test]
    fn rejects_reversed_interval() {
        assert!(simpson_doubling(|_: f64| 1.0, 1.0, 0.0, 1e-9).is_err());
    }
}
