//! Flag / config-file / default resolution.
//!
//! Every subcommand reads the same flat key space: command-line flags
//! override values from the optional `--config` JSON file, which override
//! the built-in defaults. The resolved configuration is echoed into every
//! output file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::CliError;

/// Defaults mirroring the reference computation: c = 1+5i, N = 200, L = 6.
pub const DEFAULT_C: (f64, f64) = (1.0, 5.0);
pub const DEFAULT_N: usize = 200;
pub const DEFAULT_L: f64 = 6.0;
pub const DEFAULT_SEED: u64 = 42;

/// JSON config file mirroring the command-line flags (all keys optional).
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub c_re: Option<f64>,
    pub c_im: Option<f64>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    #[serde(rename = "L")]
    pub l: Option<f64>,
    pub window: Option<Vec<f64>>,
    pub grid: Option<Vec<usize>>,
    pub levels: Option<Vec<f64>>,
    pub b: Option<f64>,
    pub p: Option<f64>,
    pub eta_min: Option<f64>,
    pub eta_max: Option<f64>,
    pub samples: Option<usize>,
    pub spacing: Option<String>,
    pub tail_fraction: Option<f64>,
    pub n_list: Option<Vec<usize>>,
    pub eps: Option<f64>,
    pub trials: Option<usize>,
    pub mu: Option<f64>,
    pub a: Option<f64>,
    pub a0: Option<f64>,
    pub h_min: Option<f64>,
    pub h_max: Option<f64>,
    pub h_count: Option<usize>,
    pub h_list: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub format: Option<String>,
    pub out: Option<String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::validation(format!("cannot read config {}: {e}", p.display()))
                })?;
                serde_json::from_str(&text).map_err(|e| {
                    CliError::validation(format!("bad config {}: {e}", p.display()))
                })
            }
        }
    }
}

/// Which output kinds to write.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    All,
    Csv,
    Json,
    Svg,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "all" => Ok(Self::All),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "svg" => Ok(Self::Svg),
            other => Err(CliError::validation(format!(
                "unknown format '{other}' (expected all|csv|json|svg)"
            ))),
        }
    }

    pub fn wants_csv(&self) -> bool {
        matches!(self, Self::All | Self::Csv)
    }

    pub fn wants_json(&self) -> bool {
        matches!(self, Self::All | Self::Json)
    }

    pub fn wants_svg(&self) -> bool {
        matches!(self, Self::All | Self::Svg)
    }
}

/// Settings shared by every subcommand after resolution.
#[derive(Debug, Clone, Serialize)]
pub struct CommonConfig {
    pub c_re: f64,
    pub c_im: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: f64,
    pub seed: u64,
    /// 0 = use all available cores.
    pub workers: usize,
    pub format: OutputFormat,
    pub out: String,
}

pub struct Resolver {
    pub file: FileConfig,
}

impl Resolver {
    pub fn new(config_path: Option<&Path>) -> Result<Self, CliError> {
        Ok(Self {
            file: FileConfig::load(config_path)?,
        })
    }

    pub fn common(
        &self,
        c_re: Option<f64>,
        c_im: Option<f64>,
        n: Option<usize>,
        l: Option<f64>,
        seed: Option<u64>,
        workers: Option<usize>,
        format: Option<&str>,
        out: Option<&PathBuf>,
        default_out: &str,
        default_n: usize,
        default_l: f64,
        default_c: (f64, f64),
    ) -> Result<CommonConfig, CliError> {
        let format = match (format, &self.file.format) {
            (Some(f), _) => OutputFormat::parse(f)?,
            (None, Some(f)) => OutputFormat::parse(f)?,
            (None, None) => OutputFormat::All,
        };
        Ok(CommonConfig {
            c_re: c_re.or(self.file.c_re).unwrap_or(default_c.0),
            c_im: c_im.or(self.file.c_im).unwrap_or(default_c.1),
            n: n.or(self.file.n).unwrap_or(default_n),
            l: l.or(self.file.l).unwrap_or(default_l),
            seed: seed.or(self.file.seed).unwrap_or(DEFAULT_SEED),
            workers: workers.or(self.file.workers).unwrap_or(0),
            format,
            out: out
                .map(|p| p.display().to_string())
                .or_else(|| self.file.out.clone())
                .unwrap_or_else(|| default_out.to_string()),
        })
    }
}

/// Parse a comma-separated list of reals ("0,50,0,42").
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| CliError::validation(format!("bad number '{t}': {e}")))
        })
        .collect()
}

/// Parse a comma-separated list of unsigned integers ("61,61").
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| CliError::validation(format!("bad integer '{t}': {e}")))
        })
        .collect()
}

/// Install a rayon pool of the requested size and run `f` inside it;
/// `workers = 0` means the rayon default. Results are worker-count
/// independent by construction, this only controls resources.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        return f();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("failed to build worker pool");
    pool.install(f)
}
