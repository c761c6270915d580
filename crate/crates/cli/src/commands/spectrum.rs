//! `pseudospec spectrum`: computed eigenvalues vs the exact ray.

use std::path::PathBuf;

use pseudospec_core::operator::{compute_spectrum, discretize, exact_eigenvalue};

use crate::config::{with_workers, Resolver, DEFAULT_C, DEFAULT_L, DEFAULT_N};
use crate::io::CsvTable;
use crate::svg::{Plot, PALETTE};
use crate::{CliError, SpectrumArgs};

/// Number of leading eigenvalues reported (the reference figure shows 20).
const REPORTED: usize = 20;

pub fn run(args: SpectrumArgs) -> Result<(), CliError> {
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
        "spectrum",
        DEFAULT_N,
        DEFAULT_L,
        DEFAULT_C,
    )?;
    let params = super::oscillator_params(&common)?;
    let config_echo = serde_json::to_value(&common).expect("config echo");

    let (rows, max_rel_error) = with_workers(common.workers, || -> Result<_, CliError> {
        let op = discretize(&params, common.n, common.l)?;
        let spectrum = compute_spectrum(&op)?;
        let count = REPORTED.min(spectrum.eigenvalues().len());
        let mut rows = Vec::with_capacity(count);
        let mut max_rel_error = 0.0f64;
        for idx in 0..count {
            let lambda = spectrum.eigenvalues()[idx];
            let backward = spectrum.backward_error(&op, idx);
            // Match against the nearest exact eigenvalue on the ray.
            let (exact_index, exact) = (0..2 * count)
                .map(|n| (n, exact_eigenvalue(&params, n)))
                .min_by(|a, b| {
                    (a.1 - lambda)
                        .norm()
                        .partial_cmp(&(b.1 - lambda).norm())
                        .unwrap()
                })
                .unwrap();
            let rel_error = (lambda - exact).norm() / exact.norm();
            max_rel_error = max_rel_error.max(rel_error);
            rows.push((idx, lambda, backward, exact_index, exact, rel_error));
        }
        Ok((rows, max_rel_error))
    })?;

    let mut table = CsvTable::new(
        "pseudospec.spectrum.v1",
        config_echo.clone(),
        &[
            "index",
            "eigenvalue_re",
            "eigenvalue_im",
            "backward_error",
            "exact_index",
            "exact_re",
            "exact_im",
            "rel_error",
        ],
    );
    for &(idx, lambda, backward, exact_index, exact, rel_error) in &rows {
        table.push(vec![
            idx as f64,
            lambda.re,
            lambda.im,
            backward,
            exact_index as f64,
            exact.re,
            exact.im,
            rel_error,
        ]);
    }
    let out = PathBuf::from(&common.out);
    super::write_if(
        common.format.wants_csv(),
        &out.with_extension("csv"),
        table.render().as_bytes(),
    )?;

    if common.format.wants_svg() {
        let max_re = rows
            .iter()
            .map(|r| r.1.re.max(r.4.re))
            .fold(0.0f64, f64::max);
        let max_im = rows
            .iter()
            .map(|r| r.1.im.max(r.4.im))
            .fold(0.0f64, f64::max);
        let mut plot = Plot::new(
            "Computed vs exact eigenvalues",
            "Re z",
            "Im z",
            (0.0, max_re * 1.05),
            (0.0, max_im * 1.05),
        );
        plot.set_config_comment(&config_echo);
        // Exact ray through the reported eigenvalues.
        let ray: Vec<(f64, f64)> = rows.iter().map(|r| (r.4.re, r.4.im)).collect();
        plot.polyline(&ray, "#cccccc", 1.0);
        for &(_, lambda, _, _, exact, _) in &rows {
            plot.circle(exact.re, exact.im, 4.0, PALETTE[0], false);
            plot.cross(lambda.re, lambda.im, 3.5, PALETTE[1]);
        }
        plot.legend_entry("exact c^(1/2)(2n+1)", PALETTE[0]);
        plot.legend_entry("computed", PALETTE[1]);
        super::write_if(true, &out.with_extension("svg"), plot.render().as_bytes())?;
    }

    println!(
        "spectrum: {} eigenvalues, max relative error {:.3e}",
        rows.len(),
        max_rel_error
    );
    Ok(())
}
