//! `pseudospec` — spectra, pseudospectra, resolvent-norm curves and
//! semiclassical kernel checks for the complex harmonic oscillator, from
//! the command line.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod io;
pub mod svg;

/// Exit codes: 0 success, 2 validation failure, 3 convergence/compute
/// failure, 4 property violation, 5 fit refused, 1 I/O or internal error.
#[derive(Debug, Clone)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        Self { code: 2, message: msg.into() }
    }

    pub fn compute(msg: impl Into<String>) -> Self {
        Self { code: 3, message: msg.into() }
    }

    pub fn property(msg: impl Into<String>) -> Self {
        Self { code: 4, message: msg.into() }
    }

    pub fn fit_refused(msg: impl Into<String>) -> Self {
        Self { code: 5, message: msg.into() }
    }

    pub fn io(err: std::io::Error) -> Self {
        Self { code: 1, message: format!("i/o error: {err}") }
    }
}

impl From<pseudospec_core::Error> for CliError {
    fn from(err: pseudospec_core::Error) -> Self {
        use pseudospec_core::Error as E;
        let code = match err {
            E::InvalidParameter(_) => 2,
            E::SingularMatrix { .. } | E::NoConvergence { .. } | E::QuadratureAccuracy { .. } => 3,
            E::FitRefused(_) => 5,
            E::PropertyViolation(_) => 4,
        };
        Self { code, message: err.to_string() }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "pseudospec",
    version,
    about = "Spectra and pseudospectra of the complex harmonic oscillator -d²/dx² + c·x²"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of the discretized operator vs the exact ray c^{1/2}(2n+1).
    Spectrum(SpectrumArgs),
    /// Sample exact eigenfunctions Ψ_n on a uniform grid.
    Eigenfunctions(EigenfunctionsArgs),
    /// σ_min field over a complex-plane window with ε-level contours.
    Pseudospectrum(PseudospectrumArgs),
    /// Resolvent norms along z_η = b·η + c·η^p with exponent fit.
    Curve(CurveArgs),
    /// Schur-bound h-sweep and the inequality property sweeps.
    KernelCheck(KernelCheckArgs),
    /// Random-perturbation eigenvalue containment check.
    Perturb(PerturbArgs),
}

/// Flags shared by every subcommand.
#[derive(Debug, Args, Default)]
pub struct CommonArgs {
    /// Real part of the potential coefficient c (requires Re(c) > 0).
    #[arg(long = "c-re")]
    pub c_re: Option<f64>,
    /// Imaginary part of the potential coefficient c.
    #[arg(long = "c-im")]
    pub c_im: Option<f64>,
    /// Number of Chebyshev intervals N (matrix dimension N-1).
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Domain half-width L (operator truncated to [-L, L]).
    #[arg(long = "L")]
    pub l: Option<f64>,
    /// Seed for all randomized ensembles.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for grid sweeps (0 = all cores); output does not
    /// depend on this.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Restrict outputs: all|csv|json|svg.
    #[arg(long)]
    pub format: Option<String>,
    /// Output path prefix (files get .csv/.json/.svg suffixes).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config file mirroring the flags; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args, Default)]
pub struct EigenfunctionsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Mode indices to sample (comma list).
    #[arg(long = "n-list")]
    pub n_list: Option<String>,
    /// Number of uniform sample points per mode.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Args, Default)]
pub struct PseudospectrumArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Window re_min,re_max,im_min,im_max.
    #[arg(long)]
    pub window: Option<String>,
    /// Grid resolution nx,ny.
    #[arg(long)]
    pub grid: Option<String>,
    /// ε levels, comma list, descending.
    #[arg(long)]
    pub levels: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct CurveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Curve slope b > 0 in z_η = b·η + c·η^p.
    #[arg(long)]
    pub b: Option<f64>,
    /// Curve exponent p.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long = "eta-min")]
    pub eta_min: Option<f64>,
    #[arg(long = "eta-max")]
    pub eta_max: Option<f64>,
    /// Number of η samples.
    #[arg(long)]
    pub samples: Option<usize>,
    /// η spacing: log|linear.
    #[arg(long)]
    pub spacing: Option<String>,
    /// Fraction of the stable tail used for the exponent fit.
    #[arg(long = "tail-fraction")]
    pub tail_fraction: Option<f64>,
    /// Run the synthetic fit self-test instead of the physical trace.
    #[arg(long, default_value_t = false)]
    pub selftest: bool,
}

#[derive(Debug, Args, Default)]
pub struct KernelCheckArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Spectral parameter μ (fit runs only in the small-μ regime).
    #[arg(long)]
    pub mu: Option<f64>,
    /// Kernel support endpoint a.
    #[arg(long)]
    pub a: Option<f64>,
    /// Microlocal half-width a0 (a ≤ a0).
    #[arg(long)]
    pub a0: Option<f64>,
    #[arg(long = "h-min")]
    pub h_min: Option<f64>,
    #[arg(long = "h-max")]
    pub h_max: Option<f64>,
    /// Number of log-spaced h samples.
    #[arg(long = "h-count")]
    pub h_count: Option<usize>,
    /// Explicit h list (comma), overrides h-min/h-max/h-count.
    #[arg(long = "h-list")]
    pub h_list: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct PerturbArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Perturbation norm ε.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Number of random perturbations.
    #[arg(long)]
    pub trials: Option<usize>,
}

/// Entry point shared by the binary and the integration tests.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum(args) => commands::spectrum::run(args),
        Command::Eigenfunctions(args) => commands::eigenfunctions::run(args),
        Command::Pseudospectrum(args) => commands::pseudospectrum::run(args),
        Command::Curve(args) => commands::curve::run(args),
        Command::KernelCheck(args) => commands::kernel::run(args),
        Command::Perturb(args) => commands::perturb::run(args),
    }
}
