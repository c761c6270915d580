//! `pseudospec eigenfunctions`: sample exact modes Ψ_n on a uniform grid.

use std::path::PathBuf;

use pseudospec_core::operator::exact_eigenfunction;

use crate::config::{parse_usize_list, Resolver, DEFAULT_C, DEFAULT_L, DEFAULT_N};
use crate::io::CsvTable;
use crate::svg::{Plot, PALETTE};
use crate::{CliError, EigenfunctionsArgs};

const DEFAULT_MODES: [usize; 4] = [1, 5, 10, 20];
const DEFAULT_SAMPLES: usize = 801;

pub fn run(args: EigenfunctionsArgs) -> Result<(), CliError> {
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
        "eigenfunctions",
        DEFAULT_N,
        DEFAULT_L,
        DEFAULT_C,
    )?;
    let params = super::oscillator_params(&common)?;
    let modes: Vec<usize> = match (&args.n_list, &resolver.file.n_list) {
        (Some(s), _) => parse_usize_list(s)?,
        (None, Some(v)) => v.clone(),
        (None, None) => DEFAULT_MODES.to_vec(),
    };
    if modes.is_empty() {
        return Err(CliError::validation("mode list must be nonempty"));
    }
    let samples = args.samples.or(resolver.file.samples).unwrap_or(DEFAULT_SAMPLES);
    if samples < 2 {
        return Err(CliError::validation("need at least 2 sample points"));
    }

    let mut config_echo = serde_json::to_value(&common).expect("config echo");
    config_echo["n_list"] = serde_json::json!(modes);
    config_echo["samples"] = serde_json::json!(samples);

    let mut table = CsvTable::new(
        "pseudospec.eigenfunctions.v1",
        config_echo.clone(),
        &["n", "x", "psi_re", "psi_im", "psi_abs"],
    );
    let mut curves: Vec<Vec<(f64, f64)>> = vec![Vec::with_capacity(samples); modes.len()];
    let mut max_abs = 0.0f64;
    for i in 0..samples {
        let x = -common.l + 2.0 * common.l * i as f64 / (samples - 1) as f64;
        for (mi, &n) in modes.iter().enumerate() {
            let v = exact_eigenfunction(&params, n, x);
            let a = v.norm();
            max_abs = max_abs.max(a);
            table.push(vec![n as f64, x, v.re, v.im, a]);
            curves[mi].push((x, a));
        }
    }

    let out = PathBuf::from(&common.out);
    super::write_if(
        common.format.wants_csv(),
        &out.with_extension("csv"),
        table.render().as_bytes(),
    )?;

    if common.format.wants_svg() {
        let mut plot = Plot::new(
            "Eigenfunction magnitudes |Ψ_n(x)|",
            "x",
            "|Ψ_n|",
            (-common.l, common.l),
            (0.0, max_abs * 1.05),
        );
        plot.set_config_comment(&config_echo);
        for (mi, curve) in curves.iter().enumerate() {
            let color = PALETTE[mi % PALETTE.len()];
            plot.polyline(curve, color, 1.5);
            plot.legend_entry(&format!("n = {}", modes[mi]), color);
        }
        super::write_if(true, &out.with_extension("svg"), plot.render().as_bytes())?;
    }

    println!(
        "eigenfunctions: sampled modes {:?} at {} points",
        modes, samples
    );
    Ok(())
}
