//! Output serialization: schema-tagged CSV with an embedded config echo,
//! JSON summaries, and atomic file writes. Numbers are printed with Rust's
//! shortest round-trip representation, so re-reading a file reproduces the
//! exact bit pattern.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::CliError;

/// Write via a temp file + rename so readers never observe partial output.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let tmp = path.with_extension(match path.extension() {
        Some(ext) => format!("{}.tmp", ext.to_string_lossy()),
        None => "tmp".to_string(),
    });
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}

/// A numeric table with a schema tag and the resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub schema: String,
    pub config: serde_json::Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn new(schema: &str, config: serde_json::Value, columns: &[&str]) -> Self {
        Self {
            schema: schema.to_string(),
            config,
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# schema: {}", self.schema);
        let _ = writeln!(out, "# config: {}", self.config);
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// Parse a table produced by [`CsvTable::render`]; numeric round-trip is
    /// lossless.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut schema = None;
        let mut config = serde_json::Value::Null;
        let mut columns: Option<Vec<String>> = None;
        let mut rows = Vec::new();
        for line in text.lines() {
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("# schema: ") {
                schema = Some(rest.to_string());
            } else if let Some(rest) = line.strip_prefix("# config: ") {
                config = serde_json::from_str(rest)
                    .map_err(|e| CliError::validation(format!("bad config echo: {e}")))?;
            } else if line.starts_with('#') {
                continue;
            } else if columns.is_none() {
                columns = Some(line.split(',').map(|s| s.to_string()).collect());
            } else {
                let row: Result<Vec<f64>, CliError> = line
                    .split(',')
                    .map(|t| parse_number(t))
                    .collect();
                rows.push(row?);
            }
        }
        Ok(Self {
            schema: schema.ok_or_else(|| CliError::validation("missing schema tag"))?,
            config,
            columns: columns.ok_or_else(|| CliError::validation("missing header row"))?,
            rows,
        })
    }
}

/// Shortest round-trip decimal form of a double.
pub fn format_number(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v}")
    }
}

pub fn parse_number(t: &str) -> Result<f64, CliError> {
    t.trim()
        .parse::<f64>()
        .map_err(|e| CliError::validation(format!("bad numeric cell '{t}': {e}")))
}

/// Render a JSON summary deterministically (serde_json orders keys).
pub fn render_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json render");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip_is_lossless() {
        let cfg = serde_json::json!({"N": 8, "c_re": 1.0});
        let mut table = CsvTable::new("pseudospec.test.v1", cfg, &["a", "b"]);
        table.push(vec![1.0 / 3.0, f64::INFINITY]);
        table.push(vec![-0.1234567890123456789e-200, 42.0]);
        let text = table.render();
        let parsed = CsvTable::parse(&text).unwrap();
        assert_eq!(parsed, table);
        assert_eq!(parsed.rows[0][0].to_bits(), (1.0f64 / 3.0).to_bits());
    }

    #[test]
    fn atomic_write_creates_file() {
        let dir = std::env::temp_dir().join("pseudospec-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("table.csv");
        write_atomic(&path, b"hello").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"hello");
        std::fs::remove_dir_all(&dir).ok();
    }
}
