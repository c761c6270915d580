//! Numerical verification of the semiclassical kernel machinery: the weight
//! function g, the parametrix kernel, Schur-test sup-integrals with their
//! `h^{-2/3}` scaling, the elementary cubic inequality, the weighted
//! exponent inequality, and the cubic-tail integrals.
//!
//! Everything here works with the leading-order model
//! `Λ(x, μ) = −(c/2)x² + iμ/2`; its antiderivative-based weight is
//! normalized by `g(0) = 0`, so `g(x) = (1/(2h))·(−Im(c)·x³/3 + μ·x)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fit::linear_fit;
use crate::quad::simpson_doubling;
use crate::scalar::Real;

/// Exponent drop below the peak at which integrands are truncated
/// (`e^{-46} ≈ 1e-20` of the peak).
const TRUNCATION_DROP: f64 = 46.0;
/// Mesh density realizing the sup over x (or y) in the Schur integrals.
const SUP_MESH: usize = 2001;

/// Parameters of the semiclassical regime `h = 1/Re(z)`, `μ = Im(z)/Re(z)`.
#[derive(Debug, Clone, Copy)]
pub struct SemiclassicalParams<R: Real> {
    /// Semiclassical parameter, positive.
    pub h: R,
    /// Spectral parameter; small in the verified regime.
    pub mu: R,
    /// Potential coefficient with `Im(c) > 0`.
    pub c: Complex<R>,
    /// Right endpoint of the kernel support interval, `0 < a ≤ a0`.
    pub a: R,
    /// Half-width of the microlocal interval `[-a0, a0]`.
    pub a0: R,
}

impl<R: Real> SemiclassicalParams<R> {
    pub fn new(h: R, mu: R, c: Complex<R>, a: R, a0: R) -> Result<Self> {
        if !(h > R::zero()) || !h.is_finite() {
            return Err(Error::invalid("semiclassical parameter h must be positive"));
        }
        if !(c.im > R::zero()) {
            return Err(Error::invalid("kernel bounds require Im(c) > 0"));
        }
        if !(a > R::zero()) || !(a <= a0) {
            return Err(Error::invalid("cutoffs must satisfy 0 < a <= a0"));
        }
        if !mu.is_finite() {
            return Err(Error::invalid("mu must be finite"));
        }
        Ok(Self { h, mu, c, a, a0 })
    }

    pub fn with_h(&self, h: R) -> Self {
        Self { h, ..*self }
    }
}

/// Leading-order symbol root `Λ(x, μ) = −(c/2)x² + iμ/2`.
pub fn lambda_symbol<R: Real>(x: R, mu: R, c: Complex<R>) -> Complex<R> {
    let half = R::cst(0.5);
    -c * (x * x * half) + Complex::new(R::zero(), mu * half)
}

/// Weight `g(x) = Re(F(x))` for the leading-order model, `g(0) = 0`:
/// `g(x) = (1/(2h))·(−Im(c)·x³/3 + μ·x)`.
pub fn g_function<R: Real>(x: R, params: &SemiclassicalParams<R>) -> R {
    let third = R::cst(3.0);
    (-params.c.im * x * x * x / third + params.mu * x) / (R::cst(2.0) * params.h)
}

/// Kernel magnitude `|K(x,y)| = (1/h)·e^{−g(x)+g(y)}` on `x ≤ y ≤ a`, else 0.
/// Overflowing exponents return the +∞ sentinel.
pub fn kernel_value<R: Real>(x: R, y: R, params: &SemiclassicalParams<R>) -> R {
    if !(x <= y) || !(y <= params.a) {
        return R::zero();
    }
    let exponent = g_function(y, params) - g_function(x, params);
    if exponent > R::max_value().ln() {
        return R::infinity();
    }
    exponent.exp() / params.h
}

/// ∫ exp(e(t)) dt over `[lo, hi]`, factored as `e^{peak}·I` with the
/// integrand normalized to at most 1; `crit` lists interior stationary
/// points of `e`, so each sub-piece is monotone and can be clipped to the
/// region within `TRUNCATION_DROP` of the peak before quadrature.
fn integral_of_exp<R: Real>(
    e: &impl Fn(R) -> R,
    lo: R,
    hi: R,
    crit: &[R],
    rel_tol: R,
) -> Result<(R, R, R)> {
    if hi <= lo {
        return Ok((R::zero(), R::zero(), R::zero()));
    }
    let mut cuts = vec![lo];
    for &c in crit {
        if c > lo && c < hi {
            cuts.push(c);
        }
    }
    cuts.push(hi);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let peak = cuts
        .iter()
        .map(|&t| e(t))
        .fold(R::neg_infinity(), |a, b| a.max(b));
    let threshold = peak - R::cst(TRUNCATION_DROP);

    // Clip each monotone piece to {e >= threshold} by bisection.
    let clip = |mut inside: R, mut outside: R| -> R {
        for _ in 0..80 {
            let mid = (inside + outside) / R::cst(2.0);
            if e(mid) >= threshold {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        inside
    };

    let mut total = R::zero();
    let mut worst_err = R::zero();
    for pair in cuts.windows(2) {
        let (mut a, mut b) = (pair[0], pair[1]);
        let ea = e(a);
        let eb = e(b);
        if ea < threshold && eb < threshold {
            continue; // at most 1e-20·peak per unit length
        }
        if ea < threshold {
            a = clip(b, a);
        } else if eb < threshold {
            b = clip(a, b);
        }
        let q = simpson_doubling(|t| (e(t) - peak).exp(), a, b, rel_tol)?;
        total += q.value;
        worst_err = worst_err.max(q.rel_error);
    }
    Ok((total, peak, worst_err))
}

/// Schur sup-integrals: `S1 = sup_x ∫ₓᵃ |K| dy`, `S2 = sup_y ∫ |K| dx`.
#[derive(Debug, Clone, Copy)]
pub struct SchurBounds<R: Real> {
    pub s1: R,
    pub s2: R,
    /// Worst relative quadrature error among the sup-achieving integrals.
    pub rel_error: R,
}

/// Evaluate both Schur sup-integrals. The sup is realized on a 2001-point
/// uniform mesh with one refinement pass around the coarse argmax; inner
/// integrals refine until successive doublings agree to `rel_tol`.
pub fn schur_bound<R: Real>(
    params: &SemiclassicalParams<R>,
    rel_tol: R,
) -> Result<SchurBounds<R>> {
    if !(rel_tol > R::zero()) {
        return Err(Error::invalid("quadrature tolerance must be positive"));
    }
    // Stationary points of g: ±√(μ/Im c) when μ > 0.
    let crit: Vec<R> = if params.mu > R::zero() {
        let root = (params.mu / params.c.im).sqrt();
        vec![-root, root]
    } else {
        Vec::new()
    };

    // S1(x) = (1/h)·∫ₓᵃ e^{g(y)−g(x)} dy for x ≤ a, zero beyond a.
    let s1_at = |x: R| -> Result<(R, R, R)> {
        if x >= params.a {
            return Ok((R::zero(), R::zero(), R::zero()));
        }
        let e = |y: R| g_function(y, params) - g_function(x, params);
        integral_of_exp(&e, x, params.a, &crit, rel_tol)
    };
    // S2(y) = (1/h)·∫_{−a0}^y e^{g(y)−g(x)} dx for y ≤ a.
    let s2_at = |y: R| -> Result<(R, R, R)> {
        if y > params.a {
            return Ok((R::zero(), R::zero(), R::zero()));
        }
        let e = |x: R| g_function(y, params) - g_function(x, params);
        integral_of_exp(&e, -params.a0, y, &crit, rel_tol)
    };

    let sup_of = |f: &dyn Fn(R) -> Result<(R, R, R)>, lo: R, hi: R| -> Result<(R, R)> {
        let mesh = |a: R, b: R| -> Vec<R> {
            (0..SUP_MESH)
                .map(|i| a + (b - a) * R::of_usize(i) / R::of_usize(SUP_MESH - 1))
                .collect()
        };
        let scan = |points: &[R]| -> Result<(R, R, R)> {
            let mut best = (R::neg_infinity(), points[0], R::zero());
            for &t in points {
                let (val, peak, err) = f(t)?;
                // Compare in log scale to dodge overflow of e^{peak}·val.
                let log_total = if val > R::zero() {
                    peak + val.ln()
                } else {
                    R::neg_infinity()
                };
                if log_total > best.0 {
                    best = (log_total, t, err);
                }
            }
            Ok(best)
        };
        let coarse = scan(&mesh(lo, hi))?;
        let step = (hi - lo) / R::of_usize(SUP_MESH - 1);
        let fine = scan(&mesh(
            (coarse.1 - step).max(lo),
            (coarse.1 + step).min(hi),
        ))?;
        let best = if fine.0 > coarse.0 { fine } else { coarse };
        Ok((best.0.exp() / params.h, best.2))
    };

    let (s1, err1) = sup_of(&s1_at, -params.a0, params.a)?;
    let (s2, err2) = sup_of(&s2_at, -params.a0, params.a)?;
    Ok(SchurBounds {
        s1,
        s2,
        rel_error: err1.max(err2),
    })
}

/// Schur bounds across an h-sweep with the fitted `log S1` vs `log h` slope.
#[derive(Debug, Clone)]
pub struct KernelScalingReport<R: Real> {
    /// Swept h values, descending.
    pub h_samples: Vec<R>,
    /// `(S1, S2)` bounds per h, aligned with `h_samples`.
    pub bounds: Vec<SchurBounds<R>>,
    pub fitted_slope: R,
    pub intercept: R,
    /// RMS residual of the log-log fit.
    pub fit_residual: R,
    /// Worst relative quadrature error across the sweep.
    pub max_quad_error: R,
}

/// Sweep h, fit the scaling exponent of S1 (theory: −2/3 at μ = 0).
///
/// Requires at least 6 samples spanning two decades, μ = 0 for the pure
/// power law, and refuses the fit if any quadrature error exceeds 1e-4.
pub fn scaling_fit<R: Real>(
    h_samples: &[R],
    base: &SemiclassicalParams<R>,
    rel_tol: R,
) -> Result<KernelScalingReport<R>> {
    if h_samples.len() < 6 {
        return Err(Error::FitRefused(format!(
            "need at least 6 h samples, got {}",
            h_samples.len()
        )));
    }
    if h_samples.iter().any(|h| !(*h > R::zero())) {
        return Err(Error::invalid("h samples must be positive"));
    }
    let (lo, hi) = h_samples.iter().fold((R::infinity(), R::zero()), |(l, u), &h| {
        (l.min(h), u.max(h))
    });
    if hi / lo < R::cst(100.0) {
        return Err(Error::FitRefused(
            "h samples must span at least two decades".into(),
        ));
    }
    if !base.mu.is_zero() {
        return Err(Error::FitRefused(
            "pure-power scaling fit requires mu = 0".into(),
        ));
    }

    let mut hs = h_samples.to_vec();
    hs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut bounds = Vec::with_capacity(hs.len());
    let mut max_quad_error = R::zero();
    for &h in &hs {
        let b = schur_bound(&base.with_h(h), rel_tol)?;
        max_quad_error = max_quad_error.max(b.rel_error);
        bounds.push(b);
    }
    if max_quad_error > R::cst(1e-4) {
        return Err(Error::FitRefused(format!(
            "quadrature error {max_quad_error:e} exceeds 1e-4"
        )));
    }
    let xs: Vec<R> = hs.iter().map(|h| h.ln()).collect();
    let ys: Vec<R> = bounds.iter().map(|b| b.s1.ln()).collect();
    let fit = linear_fit(&xs, &ys)?;
    Ok(KernelScalingReport {
        h_samples: hs,
        bounds,
        fitted_slope: fit.slope,
        intercept: fit.intercept,
        fit_residual: fit.residual,
        max_quad_error,
    })
}

/// The weighted exponent inequality
/// `−g(x) + g(y) ≤ (λ/h)(x³ − y³) + C·μ^{3/2}/h` for the supplied pair.
pub fn theorem2_inequality_check<R: Real>(
    x: R,
    y: R,
    params: &SemiclassicalParams<R>,
    lambda_const: R,
    c_const: R,
) -> bool {
    debug_assert!(y >= x && x.abs().max(y.abs()) <= params.a0);
    let lhs = g_function(y, params) - g_function(x, params);
    let mu_term = if params.mu > R::zero() {
        c_const * params.mu.powf(R::cst(1.5)) / params.h
    } else {
        R::zero()
    };
    let rhs = lambda_const / params.h * (x * x * x - y * y * y) + mu_term;
    lhs <= rhs
}

/// The elementary inequality `s − t ≤ ε(s³ − t³) + 1/ε` for `s ≥ t`,
/// `0 < ε < 1`.
pub fn lemma1_check<R: Real>(s: R, t: R, eps: R) -> bool {
    debug_assert!(s >= t && eps > R::zero() && eps < R::one());
    s - t <= eps * (s * s * s - t * t * t) + R::one() / eps
}

/// `I(x) = ∫ₓ^∞ e^{−λ(y³−x³)} dy` by quadrature on `[x, Y]` with
/// `Y = max(1, (x³ + 46/λ)^{1/3})`; beyond Y the integrand is below
/// `e^{-46}` of its peak and the analytic tail bound `e^{-46}/(3λY²)` is
/// checked against the requested 1e-8 relative accuracy.
pub fn airy_tail_integral<R: Real>(x: R, lambda_const: R) -> Result<R> {
    if !(lambda_const > R::zero()) {
        return Err(Error::invalid("tail integral requires lambda > 0"));
    }
    let drop = R::cst(TRUNCATION_DROP);
    let y_max = (x * x * x + drop / lambda_const).cbrt().max(R::one());
    let integrand = |y: R| (-lambda_const * (y * y * y - x * x * x)).exp();
    let q = simpson_doubling(integrand, x, y_max, R::cst(1e-9))?;
    let tail_bound = (-lambda_const * (y_max * y_max * y_max - x * x * x)).exp()
        / (R::cst(3.0) * lambda_const * y_max * y_max);
    if tail_bound > R::cst(1e-8) * q.value {
        return Err(Error::QuadratureAccuracy {
            requested: 1e-8,
            achieved: (tail_bound / q.value).to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(q.value)
}
