//! Resolvent-norm traces along the curves `z_η = b·η + c·η^p` and the
//! log-log exponent fits extracted from them.
//!
//! Matrix resolvent norms are trusted as operator resolvent norms only where
//! they are discretization-stable: a sample must change `log(‖R‖)` by less
//! than 1e-2 when recomputed at `(N′, L′) = (2N, L·√2)`, and samples with
//! `|z_η|` beyond the modulus of the `⌊N/10⌋`-th exact eigenvalue are
//! distrusted a priori.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fit::linear_fit;
use crate::operator::{discretize, DiscretizedOperator, OscillatorParams};
use crate::scalar::Real;

/// Log-threshold for discretization stability of a trace sample.
const STABILITY_LOG_TOL: f64 = 1e-2;

/// η sampling layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// Resolvent norms sampled along `z_η = b·η + c·η^p`.
#[derive(Debug, Clone)]
pub struct CurveTrace<R: Real> {
    pub b: R,
    pub p: R,
    pub c: Complex<R>,
    pub n_intervals: usize,
    pub half_width: R,
    pub eta_samples: Vec<R>,
    pub z_values: Vec<Complex<R>>,
    pub sigma_min: Vec<R>,
    pub resolvent_norms: Vec<R>,
    /// A-priori trust flags: `|z_η|` within the resolved part of the spectrum.
    pub trusted: Vec<bool>,
    /// Two-resolution stability flags; `None` until a refined trace is
    /// compared in.
    pub stable: Option<Vec<bool>>,
}

impl<R: Real> CurveTrace<R> {
    pub fn len(&self) -> usize {
        self.eta_samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eta_samples.is_empty()
    }

    pub fn untrusted_count(&self) -> usize {
        self.trusted.iter().filter(|t| !**t).count()
    }

    /// Indices of discretization-stable samples.
    pub fn stable_indices(&self) -> Vec<usize> {
        match &self.stable {
            Some(flags) => (0..self.len()).filter(|&i| flags[i]).collect(),
            None => Vec::new(),
        }
    }

    /// Synthetic trace with prescribed norms, all samples stable. Used by
    /// fit self-tests.
    pub fn synthetic(z_values: Vec<Complex<R>>, resolvent_norms: Vec<R>) -> Self {
        assert_eq!(z_values.len(), resolvent_norms.len());
        let n = z_values.len();
        CurveTrace {
            b: R::one(),
            p: R::one(),
            c: Complex::new(R::zero(), R::zero()),
            n_intervals: 0,
            half_width: R::zero(),
            eta_samples: (0..n).map(|i| R::of_usize(i + 1)).collect(),
            sigma_min: resolvent_norms.iter().map(|&r| R::one() / r).collect(),
            z_values,
            resolvent_norms,
            trusted: vec![true; n],
            stable: Some(vec![true; n]),
        }
    }
}

/// The curve point `z_η = b·η + c·η^p`.
pub fn curve_point<R: Real>(b: R, p: R, c: Complex<R>, eta: R) -> Complex<R> {
    let eta_p = eta.powf(p);
    Complex::new(b * eta, R::zero()) + c * eta_p
}

/// η samples over `[eta_min, eta_max]`.
pub fn eta_samples<R: Real>(
    eta_min: R,
    eta_max: R,
    samples: usize,
    spacing: Spacing,
) -> Result<Vec<R>> {
    if !(eta_min > R::zero()) || !(eta_max > eta_min) {
        return Err(Error::invalid("need 0 < eta_min < eta_max"));
    }
    if samples < 2 {
        return Err(Error::invalid("need at least 2 eta samples"));
    }
    let nf = R::of_usize(samples - 1);
    Ok((0..samples)
        .map(|i| {
            let t = R::of_usize(i) / nf;
            match spacing {
                Spacing::Linear => eta_min + (eta_max - eta_min) * t,
                Spacing::Log => (eta_min.ln() + (eta_max.ln() - eta_min.ln()) * t).exp(),
            }
        })
        .collect())
}

/// Sample the resolvent norm of `op` along the curve. Samples are pure and
/// independent; they are evaluated in parallel and assembled in order.
pub fn trace_curve<R: Real>(
    op: &DiscretizedOperator<R>,
    b: R,
    p: R,
    etas: &[R],
) -> Result<CurveTrace<R>> {
    if !(b > R::zero()) || !b.is_finite() {
        return Err(Error::invalid("curve slope b must be positive"));
    }
    if etas.iter().any(|e| !(*e > R::zero())) {
        return Err(Error::invalid("eta values must be positive"));
    }
    let c = op.c();
    let z_values: Vec<Complex<R>> = etas.iter().map(|&eta| curve_point(b, p, c, eta)).collect();
    let sigma_min: Vec<R> = z_values
        .par_iter()
        .map(|&z| super::field::sigma_min_at(op.matrix(), z))
        .collect();
    let resolvent_norms: Vec<R> = sigma_min
        .iter()
        .map(|&s| if s.is_zero() { R::infinity() } else { R::one() / s })
        .collect();
    let trust = op.trust_modulus();
    let trusted = z_values.iter().map(|z| z.norm() <= trust).collect();
    Ok(CurveTrace {
        b,
        p,
        c,
        n_intervals: op.n_intervals(),
        half_width: op.half_width(),
        eta_samples: etas.to_vec(),
        z_values,
        sigma_min,
        resolvent_norms,
        trusted,
        stable: None,
    })
}

/// Mark stability on `trace` by comparing against the same curve sampled on
/// the refined `(2N, L√2)` discretization.
pub fn mark_stability<R: Real>(trace: &mut CurveTrace<R>, refined: &CurveTrace<R>) -> Result<()> {
    if refined.len() != trace.len() {
        return Err(Error::invalid("refined trace has different sample count"));
    }
    let tol = R::cst(STABILITY_LOG_TOL);
    let flags = (0..trace.len())
        .map(|i| {
            let lo = trace.resolvent_norms[i];
            let hi = refined.resolvent_norms[i];
            trace.trusted[i]
                && refined.trusted[i]
                && lo.is_finite()
                && hi.is_finite()
                && (lo.ln() - hi.ln()).abs() < tol
        })
        .collect();
    trace.stable = Some(flags);
    Ok(())
}

/// Trace with the stability filter applied: builds both the `(N, L)` and
/// `(2N, L√2)` discretizations of the same oscillator.
pub fn trace_curve_with_stability<R: Real>(
    params: &OscillatorParams<R>,
    n: usize,
    half_width: R,
    b: R,
    p: R,
    etas: &[R],
) -> Result<CurveTrace<R>> {
    let op = discretize(params, n, half_width)?;
    let refined_op = discretize(params, 2 * n, half_width * R::cst(2.0).sqrt())?;
    let mut trace = trace_curve(&op, b, p, etas)?;
    let refined = trace_curve(&refined_op, b, p, etas)?;
    mark_stability(&mut trace, &refined)?;
    Ok(trace)
}

/// Fitted asymptotic exponent of `‖R(z_η)‖ ~ |z|^slope`.
#[derive(Debug, Clone, Copy)]
pub struct ExponentFit<R: Real> {
    pub slope: R,
    pub intercept: R,
    /// RMS residual of the log-log fit.
    pub residual: R,
    /// `(first |z|, last |z|)` of the fitted tail window.
    pub window: (R, R),
    pub samples_used: usize,
}

/// Least-squares slope of `log ‖R‖` against `log |z|` over the trailing
/// `tail_fraction` of the stable samples. Refuses fits with fewer than 8
/// stable tail points.
pub fn fit_exponent<R: Real>(trace: &CurveTrace<R>, tail_fraction: R) -> Result<ExponentFit<R>> {
    if !(tail_fraction > R::zero()) || tail_fraction > R::one() {
        return Err(Error::invalid("tail fraction must be in (0, 1]"));
    }
    let stable = trace.stable_indices();
    let tail_len = ((R::of_usize(stable.len()) * tail_fraction).ceil())
        .to_usize()
        .unwrap_or(0);
    if tail_len < 8 {
        return Err(Error::FitRefused(format!(
            "need at least 8 stable tail samples, have {} of {} stable",
            tail_len,
            stable.len()
        )));
    }
    let tail = &stable[stable.len() - tail_len..];
    let xs: Vec<R> = tail.iter().map(|&i| trace.z_values[i].norm().ln()).collect();
    let ys: Vec<R> = tail.iter().map(|&i| trace.resolvent_norms[i].ln()).collect();
    let fit = linear_fit(&xs, &ys)?;
    Ok(ExponentFit {
        slope: fit.slope,
        intercept: fit.intercept,
        residual: fit.residual,
        window: (
            trace.z_values[tail[0]].norm(),
            trace.z_values[*tail.last().unwrap()].norm(),
        ),
        samples_used: tail_len,
    })
}
