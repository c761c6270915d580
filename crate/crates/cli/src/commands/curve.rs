//! `pseudospec curve`: resolvent norms along z_η = b·η + c·η^p, with the
//! discretization-stability filter and the log-log exponent fit.

use std::path::PathBuf;

use num_complex::Complex;
use pseudospec_core::pseudospectra::{
    eta_samples, fit_exponent, trace_curve_with_stability, CurveTrace, Spacing,
};
use pseudospec_core::Error as CoreError;

use crate::config::{with_workers, Resolver, DEFAULT_C};
use crate::io::CsvTable;
use crate::{CliError, CurveArgs};

const DEFAULT_CURVE_N: usize = 400;
const DEFAULT_CURVE_L: f64 = 12.0;
const DEFAULT_B: f64 = 1.0;
const DEFAULT_P: f64 = 1.0;
const DEFAULT_ETA: (f64, f64) = (1.0, 40.0);
const DEFAULT_SAMPLES: usize = 36;
const DEFAULT_TAIL: f64 = 0.5;

pub fn run(args: CurveArgs) -> Result<(), CliError> {
    let resolver = Resolver::new(args.common.config.as_deref())?;
    let common = resolver.common(
        args.common.c_re,
        args.common.c_im,
        args.common.n,
        args.common.l,
        args.common.seed,
        args.common.workers,
        args.common.format.as_deref(),
        args.common.out.as_ref(),
        "curve",
        DEFAULT_CURVE_N,
        DEFAULT_CURVE_L,
        DEFAULT_C,
    )?;
    let b = args.b.or(resolver.file.b).unwrap_or(DEFAULT_B);
    let p = args.p.or(resolver.file.p).unwrap_or(DEFAULT_P);
    let eta_min = args.eta_min.or(resolver.file.eta_min).unwrap_or(DEFAULT_ETA.0);
    let eta_max = args.eta_max.or(resolver.file.eta_max).unwrap_or(DEFAULT_ETA.1);
    let samples = args.samples.or(resolver.file.samples).unwrap_or(DEFAULT_SAMPLES);
    let tail = args
        .tail_fraction
        .or(resolver.file.tail_fraction)
        .unwrap_or(DEFAULT_TAIL);
    let spacing_str = args
        .spacing
        .clone()
        .or_else(|| resolver.file.spacing.clone())
        .unwrap_or_else(|| "log".to_string());
    let spacing = match spacing_str.as_str() {
        "log" => Spacing::Log,
        "linear" => Spacing::Linear,
        other => {
            return Err(CliError::validation(format!(
                "unknown spacing '{other}' (expected log|linear)"
            )))
        }
    };

    let mut config_echo = serde_json::to_value(&common).expect("config echo");
    config_echo["b"] = serde_json::json!(b);
    config_echo["p"] = serde_json::json!(p);
    config_echo["eta_min"] = serde_json::json!(eta_min);
    config_echo["eta_max"] = serde_json::json!(eta_max);
    config_echo["samples"] = serde_json::json!(samples);
    config_echo["spacing"] = serde_json::json!(spacing_str);
    config_echo["tail_fraction"] = serde_json::json!(tail);
    config_echo["selftest"] = serde_json::json!(args.selftest);

    let out = PathBuf::from(&common.out);

    if args.selftest {
        return selftest(&out, &config_echo, &common);
    }

    let params = super::oscillator_params(&common)?;
    let etas = eta_samples(eta_min, eta_max, samples, spacing)?;
    let trace = with_workers(common.workers, || {
        trace_curve_with_stability(&params, common.n, common.l, b, p, &etas)
    })?;

    let mut table = CsvTable::new(
        "pseudospec.curve.v1",
        config_echo.clone(),
        &["eta", "z_re", "z_im", "sigma_min", "resolvent_norm", "stable"],
    );
    let stable_flags = trace.stable.clone().unwrap_or_default();
    for i in 0..trace.len() {
        table.push(vec![
            trace.eta_samples[i],
            trace.z_values[i].re,
            trace.z_values[i].im,
            trace.sigma_min[i],
            trace.resolvent_norms[i],
            if stable_flags[i] { 1.0 } else { 0.0 },
        ]);
    }
    super::write_if(
        common.format.wants_csv(),
        &out.with_extension("csv"),
        table.render().as_bytes(),
    )?;

    let untrusted = trace.untrusted_count();
    if untrusted > 0 {
        eprintln!(
            "pseudospec: warning: {untrusted} of {} samples beyond the discretization trust region |z| <= |λ_(N/10)|",
            trace.len()
        );
    }

    let stable_count = trace.stable_indices().len();
    let fit = fit_exponent(&trace, tail);
    let summary = match &fit {
        Ok(f) => serde_json::json!({
            "schema_version": "pseudospec.curve-summary.v1",
            "config": config_echo,
            "fit": {
                "slope": f.slope,
                "intercept": f.intercept,
                "residual": f.residual,
                "window_abs_z": [f.window.0, f.window.1],
                "samples_used": f.samples_used,
            },
            "stable_samples": stable_count,
            "untrusted_samples": untrusted,
            "max_stable_norm": max_stable_norm(&trace),
        }),
        Err(CoreError::FitRefused(reason)) => serde_json::json!({
            "schema_version": "pseudospec.curve-summary.v1",
            "config": config_echo,
            "fit": serde_json::Value::Null,
            "fit_refused": reason,
            "stable_samples": stable_count,
            "untrusted_samples": untrusted,
            "max_stable_norm": max_stable_norm(&trace),
        }),
        Err(e) => return Err(e.clone().into()),
    };
    super::write_if(
        common.format.wants_json(),
        &out.with_extension("json"),
        crate::io::render_json(&summary).as_bytes(),
    )?;

    match fit {
        Ok(f) => {
            println!(
                "curve: {} samples ({} stable), fitted slope {:.4}",
                trace.len(),
                stable_count,
                f.slope
            );
            Ok(())
        }
        Err(CoreError::FitRefused(reason)) => Err(CliError::fit_refused(reason)),
        Err(e) => Err(e.into()),
    }
}

fn max_stable_norm(trace: &CurveTrace<f64>) -> f64 {
    trace
        .stable_indices()
        .into_iter()
        .map(|i| trace.resolvent_norms[i])
        .fold(0.0, f64::max)
}

/// Synthetic data self-test: the fitter must recover slope −1/3 on an exact
/// power law and 0 on constant data.
fn selftest(
    out: &std::path::Path,
    config_echo: &serde_json::Value,
    common: &crate::config::CommonConfig,
) -> Result<(), CliError> {
    let zs: Vec<Complex<f64>> = (1..=64)
        .map(|i| {
            let t = i as f64;
            Complex::new(t, 0.4 * t)
        })
        .collect();
    let power: Vec<f64> = zs.iter().map(|z| z.norm().powf(-1.0 / 3.0)).collect();
    let power_fit = fit_exponent(&CurveTrace::synthetic(zs.clone(), power), 1.0)?;
    let constant: Vec<f64> = vec![2.5; zs.len()];
    let flat_fit = fit_exponent(&CurveTrace::synthetic(zs, constant), 1.0)?;

    let power_err = (power_fit.slope + 1.0 / 3.0).abs();
    let flat_err = flat_fit.slope.abs();
    let pass = power_err < 1e-10 && flat_err < 1e-10;
    let summary = serde_json::json!({
        "schema_version": "pseudospec.curve-selftest.v1",
        "config": config_echo,
        "power_law_slope": power_fit.slope,
        "power_law_error": power_err,
        "constant_slope": flat_fit.slope,
        "pass": pass,
    });
    super::write_if(
        common.format.wants_json(),
        &out.with_extension("json"),
        crate::io::render_json(&summary).as_bytes(),
    )?;
    if !pass {
        return Err(CliError::property(format!(
            "fit self-test failed: power slope {} (want -1/3), constant slope {}",
            power_fit.slope, flat_fit.slope
        )));
    }
    println!("curve selftest: slope {:.12} (exact -1/3)", power_fit.slope);
    Ok(())
}
