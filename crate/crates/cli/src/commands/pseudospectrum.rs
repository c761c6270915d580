//! `pseudospec pseudospectrum`: σ_min field, ε-level contours, eigenvalue
//! markers.

use std::path::PathBuf;

use pseudospec_core::operator::{compute_spectrum, discretize};
use pseudospec_core::pseudospectra::{compute_field, contours, ComplexWindow};

use crate::config::{parse_f64_list, parse_usize_list, with_workers, Resolver, DEFAULT_C, DEFAULT_L, DEFAULT_N};
use crate::io::CsvTable;
use crate::svg::{Plot, PALETTE};
use crate::{CliError, PseudospectrumArgs};

const DEFAULT_WINDOW: [f64; 4] = [0.0, 50.0, 0.0, 42.0];
const DEFAULT_GRID: [usize; 2] = [51, 51];

fn default_levels() -> Vec<f64> {
    (1..=12).map(|k| 10f64.powi(-k)).collect()
}

pub fn run(args: PseudospectrumArgs) -> Result<(), CliError> {
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
        "pseudospectrum",
        DEFAULT_N,
        DEFAULT_L,
        DEFAULT_C,
    )?;
    let params = super::oscillator_params(&common)?;

    let window_vals: Vec<f64> = match (&args.window, &resolver.file.window) {
        (Some(s), _) => parse_f64_list(s)?,
        (None, Some(v)) => v.clone(),
        (None, None) => DEFAULT_WINDOW.to_vec(),
    };
    if window_vals.len() != 4 {
        return Err(CliError::validation("window needs re0,re1,im0,im1"));
    }
    let grid_vals: Vec<usize> = match (&args.grid, &resolver.file.grid) {
        (Some(s), _) => parse_usize_list(s)?,
        (None, Some(v)) => v.clone(),
        (None, None) => DEFAULT_GRID.to_vec(),
    };
    if grid_vals.len() != 2 {
        return Err(CliError::validation("grid needs nx,ny"));
    }
    let levels: Vec<f64> = match (&args.levels, &resolver.file.levels) {
        (Some(s), _) => parse_f64_list(s)?,
        (None, Some(v)) => v.clone(),
        (None, None) => default_levels(),
    };
    let window = ComplexWindow::new(
        window_vals[0],
        window_vals[1],
        window_vals[2],
        window_vals[3],
        grid_vals[0],
        grid_vals[1],
    )?;

    let mut config_echo = serde_json::to_value(&common).expect("config echo");
    config_echo["window"] = serde_json::json!(window_vals);
    config_echo["grid"] = serde_json::json!(grid_vals);
    config_echo["levels"] = serde_json::json!(levels);

    let (field, level_sets, eigenvalues) = with_workers(common.workers, || -> Result<_, CliError> {
        let op = discretize(&params, common.n, common.l)?;
        let field = compute_field(&op, &window)?;
        let level_sets = contours(&field, &levels)?;
        let spectrum = compute_spectrum(&op)?;
        Ok((field, level_sets, spectrum.eigenvalues().to_vec()))
    })?;

    let mut table = CsvTable::new(
        "pseudospec.pseudospectrum.v1",
        config_echo.clone(),
        &["re", "im", "sigma_min"],
    );
    for iy in 0..window.ny {
        for ix in 0..window.nx {
            let z = window.point(ix, iy);
            table.push(vec![z.re, z.im, field.value(ix, iy)]);
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
            "ε-pseudospectra boundaries and eigenvalues",
            "Re z",
            "Im z",
            (window.re_min, window.re_max),
            (window.im_min, window.im_max),
        );
        plot.set_config_comment(&config_echo);
        for (li, set) in level_sets.iter().enumerate() {
            let color = PALETTE[li % PALETTE.len()];
            for poly in &set.polylines {
                plot.polyline(poly, color, 1.2);
            }
            plot.legend_entry(&format!("ε = {:.0e}", set.level), color);
        }
        for lambda in &eigenvalues {
            if lambda.re >= window.re_min
                && lambda.re <= window.re_max
                && lambda.im >= window.im_min
                && lambda.im <= window.im_max
            {
                plot.circle(lambda.re, lambda.im, 2.4, "#000000", true);
            }
        }
        plot.legend_entry("eigenvalues", "#000000");
        super::write_if(true, &out.with_extension("svg"), plot.render().as_bytes())?;
    }

    println!(
        "pseudospectrum: {}x{} grid, sigma range [{:.3e}, {:.3e}], {} levels",
        window.nx,
        window.ny,
        field.min_value(),
        field.max_value(),
        levels.len()
    );
    Ok(())
}
