//! Job configuration: TOML parsing, strict key checking, validation, and
//! flag overrides.

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default)]
    pub model: ModelSection,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub numerics: NumericsSection,
    #[serde(default)]
    pub bath: BathSection,
    /// Output path; flag `--out` wins over this.
    #[serde(default)]
    pub output: Option<String>,
}

impl Default for JobConfig {
    fn default() -> Self {
        Self {
            model: ModelSection::default(),
            sweep: SweepSection::default(),
            numerics: NumericsSection::default(),
            bath: BathSection::default(),
            output: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelSection {
    /// "rabi" or "jcm".
    pub kind: String,
    pub omega_c: f64,
    pub omega_eg: f64,
    pub epsilon: f64,
    /// Add analytic Jaynes-Cummings columns to spectrum output.
    pub compare_jcm: bool,
    /// Custom regime row: vacuum Rabi frequency.
    pub omega_r: f64,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self {
            kind: "rabi".into(),
            omega_c: 1.0,
            omega_eg: 1.0,
            epsilon: 0.0,
            compare_jcm: false,
            omega_r: 0.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            start: 0.0,
            stop: 1.5,
            count: 151,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NumericsSection {
    pub n_fock: usize,
    pub n_points: usize,
    pub k_levels: usize,
    /// Double-well quartic coefficient.
    pub matter_a: f64,
    pub matter_anharmonicity: f64,
    pub matter_m: f64,
    /// Charge entering the gauge builders.
    pub q: f64,
    pub n_matter_levels: usize,
}

impl Default for NumericsSection {
    fn default() -> Self {
        Self {
            n_fock: 40,
            n_points: 2048,
            k_levels: 6,
            matter_a: 50.0,
            matter_anharmonicity: 45.0,
            matter_m: 1.0,
            q: 1.0,
            n_matter_levels: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BathSection {
    pub gamma0: f64,
    pub kappa: f64,
    pub t_atom: f64,
    pub t_cavity: f64,
    /// "flat" or "ohmic".
    pub density: String,
    /// Master-equation kinds for the steady job.
    pub kinds: Vec<String>,
}

impl Default for BathSection {
    fn default() -> Self {
        Self {
            gamma0: 1e-3,
            kappa: 1e-3,
            t_atom: 0.05,
            t_cavity: 0.0,
            density: "flat".into(),
            kinds: vec!["standard".into(), "dressed".into(), "generalized".into()],
        }
    }
}

/// Parse a TOML document into a validated JobConfig. Unknown keys are
/// rejected by the deserializer with the offending key named.
pub fn parse_config(text: &str) -> Result<JobConfig, CliError> {
    let cfg: JobConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    validate(&cfg)?;
    Ok(cfg)
}

pub fn validate(cfg: &JobConfig) -> Result<(), CliError> {
    let fail = |field: &str, constraint: &str| {
        Err(CliError::Config(format!(
            "invalid field {field}: {constraint}"
        )))
    };
    if !matches!(cfg.model.kind.as_str(), "rabi" | "jcm") {
        return fail("model.kind", "must be one of: rabi, jcm");
    }
    if cfg.model.omega_c <= 0.0 {
        return fail("model.omega_c", "must be positive");
    }
    if cfg.model.omega_eg <= 0.0 {
        return fail("model.omega_eg", "must be positive");
    }
    if cfg.sweep.count < 2 {
        return fail("sweep.count", "sweeps need at least 2 points");
    }
    if !(cfg.sweep.start <= cfg.sweep.stop) {
        return fail("sweep.start", "must not exceed sweep.stop");
    }
    if cfg.numerics.n_fock < 2 {
        return fail("numerics.n_fock", "must be at least 2");
    }
    if cfg.numerics.n_points < 64 {
        return fail("numerics.n_points", "must be at least 64");
    }
    if cfg.numerics.k_levels < 1 {
        return fail("numerics.k_levels", "must be at least 1");
    }
    if cfg.numerics.matter_a <= 0.0 || cfg.numerics.matter_m <= 0.0 {
        return fail("numerics.matter_a", "matter_a and matter_m must be positive");
    }
    if cfg.numerics.n_matter_levels < 2 {
        return fail("numerics.n_matter_levels", "must be at least 2");
    }
    if cfg.bath.gamma0 <= 0.0 {
        return fail("bath.gamma0", "must be positive");
    }
    if cfg.bath.kappa <= 0.0 {
        return fail("bath.kappa", "must be positive");
    }
    if cfg.bath.t_atom < 0.0 || cfg.bath.t_cavity < 0.0 {
        return fail("bath.t_atom", "temperatures must be nonnegative");
    }
    if !matches!(cfg.bath.density.as_str(), "flat" | "ohmic") {
        return fail("bath.density", "must be one of: flat, ohmic");
    }
    for k in &cfg.bath.kinds {
        if !matches!(k.as_str(), "standard" | "dressed" | "generalized") {
            return fail(
                "bath.kinds",
                "entries must be one of: standard, dressed, generalized",
            );
        }
    }
    Ok(())
}

/// The sweep grid: `count` evenly spaced points from start to stop.
pub fn sweep_grid(s: &SweepSection) -> Vec<f64> {
    let n = s.count;
    (0..n)
        .map(|i| s.start + (s.stop - s.start) * i as f64 / (n - 1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_spectrum_config_fills_defaults() {
        let cfg = parse_config(
            "[model]\nkind = \"rabi\"\nomega_c = 1.0\nomega_eg = 1.0\nepsilon = 0.0\ncompare_jcm = false\nomega_r = 0.1\n\n[sweep]\nstart = 0.0\nstop = 1.5\ncount = 151\n",
        )
        .unwrap();
        assert_eq!(cfg.numerics.n_fock, 40);
        assert_eq!(cfg.sweep.count, 151);
        assert_eq!(cfg.bath.kinds.len(), 3);
    }

    #[test]
    fn unknown_key_rejected() {
        let err = parse_config("[model]\nomega_x = 2.0\n").unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("omega_x"), "message was: {msg}");
    }

    #[test]
    fn bad_numerics_named() {
        let err = parse_config("[numerics]\nn_fock = 1\n").unwrap_err();
        assert!(format!("{err}").contains("n_fock"));
    }

    #[test]
    fn roundtrip_serialization() {
        let cfg = JobConfig::default();
        let text = toml::to_string(&cfg).unwrap();
        let back = parse_config(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn grid_endpoints() {
        let g = sweep_grid(&SweepSection {
            start: 0.0,
            stop: 1.0,
            count: 5,
        });
        assert_eq!(g.len(), 5);
        assert!((g[0] - 0.0).abs() < 1e-15);
        assert!((g[4] - 1.0).abs() < 1e-15);
        assert!((g[2] - 0.5).abs() < 1e-15);
    }
}
