//! Deterministic CSV artifact assembly: fixed float formatting, a
//! `#`-prefixed metadata trailer carrying the config hash, and atomic
//! writes (temp file plus rename).

use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::CliError;
use crate::config::JobConfig;

/// A CSV cell: numeric cells get the fixed 17-significant-digit format,
/// text cells pass through.
#[derive(Clone, Debug)]
pub enum Cell {
    Num(f64),
    Text(String),
}

#[derive(Clone, Debug)]
pub struct CsvArtifact {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Vec<(String, String)>,
}

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// SHA-256 of the canonical serialized config, hex-encoded.
pub fn config_hash(cfg: &JobConfig) -> String {
    let text = toml::to_string(cfg).unwrap_or_default();
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl CsvArtifact {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            header,
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) -> Result<(), CliError> {
        if row.len() != self.header.len() {
            return Err(CliError::Internal(format!(
                "row has {} cells, header has {} columns",
                row.len(),
                self.header.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn push_numeric_row(&mut self, row: Vec<f64>) -> Result<(), CliError> {
        self.push_row(row.into_iter().map(Cell::Num).collect())
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.metadata.push((key.to_string(), value.into()));
    }

    /// Standard trailer entries shared by all jobs.
    pub fn stamp(&mut self, cfg: &JobConfig, job: &str) {
        self.meta("version", env!("CARGO_PKG_VERSION"));
        self.meta("job", job);
        self.meta("config_sha256", config_hash(cfg));
        self.meta("n_fock", cfg.numerics.n_fock.to_string());
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(x) => fmt_float(*x),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out
    }

    /// Atomic write: render to a temp file in the destination directory,
    /// then rename over the target path.
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
        let mut tmp = match dir {
            Some(d) => tempfile::NamedTempFile::new_in(d),
            None => tempfile::NamedTempFile::new_in("."),
        }
        .map_err(|e| CliError::Io(e.to_string()))?;
        tmp.write_all(self.render().as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))?;
        tmp.persist(path)
            .map_err(|e| CliError::Io(e.to_string()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_roundtrips() {
        for &x in &[0.0, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            let s = fmt_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "format {s}");
        }
    }

    #[test]
    fn hash_changes_with_config() {
        let a = JobConfig::default();
        let mut b = JobConfig::default();
        b.numerics.n_fock = 41;
        assert_ne!(config_hash(&a), config_hash(&b));
        assert_eq!(config_hash(&a), config_hash(&JobConfig::default()));
    }

    #[test]
    fn render_layout() {
        let mut art = CsvArtifact::new(vec!["x".into(), "y".into()]);
        art.push_numeric_row(vec![1.0, 2.0]).unwrap();
        art.meta("note", "hello");
        let text = art.render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,y");
        assert!(lines[1].starts_with("1.0000000000000000e0,"));
        assert_eq!(lines[2], "# note = hello");
        assert!(art.push_numeric_row(vec![1.0]).is_err());
    }
}
