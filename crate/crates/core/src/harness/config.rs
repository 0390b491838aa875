//! Experiment configuration: defaults, a flat TOML file format, and validation.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{invalid, Error, Result};
use crate::estimators::{EstimatorKind, DEFAULT_RIDGE};
use crate::likelihood::{GdmConfig, StepStart};
use crate::signal::{SystemParams, DEFAULT_THETA_MAX, DEFAULT_THETA_MIN};

/// `10^(x / 10)`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Everything a Monte-Carlo sweep needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub m: usize,
    pub n: usize,
    pub l: usize,
    /// Rician K-factor in dB.
    pub k_db: f64,
    pub theta_min: f64,
    pub theta_max: f64,
    pub d_over_lambda: f64,
    pub snr_db: Vec<f64>,
    pub trials: usize,
    pub estimators: Vec<EstimatorKind>,
    pub grid_bits: u32,
    pub gdm: GdmConfig,
    pub master_seed: u64,
    /// Holds the LOS DOA and gain fixed across trials; NLOS paths and noise stay random.
    pub fixed_realization: Option<(f64, Complex64)>,
    pub lmmse_samples: usize,
    pub lmmse_ridge: f64,
    /// Cost of one transcendental evaluation in the multiplication count.
    pub transcendental_cost: u64,
    /// Worker threads; 0 lets the pool pick.
    pub workers: usize,
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            m: 24,
            n: 15,
            l: 0,
            k_db: 13.5,
            theta_min: DEFAULT_THETA_MIN,
            theta_max: DEFAULT_THETA_MAX,
            d_over_lambda: 0.5,
            snr_db: vec![-10.0, -5.0, 0.0, 5.0, 10.0],
            trials: 300,
            estimators: EstimatorKind::ALL.to_vec(),
            grid_bits: 8,
            gdm: GdmConfig::default(),
            master_seed: 1,
            fixed_realization: None,
            lmmse_samples: 100_000,
            lmmse_ridge: DEFAULT_RIDGE,
            transcendental_cost: 10,
            workers: 0,
            output: None,
        }
    }
}

/// On-disk form: every key optional, unknown keys rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    m: Option<usize>,
    n: Option<usize>,
    l: Option<usize>,
    k_db: Option<f64>,
    theta_min: Option<f64>,
    theta_max: Option<f64>,
    d_over_lambda: Option<f64>,
    snr_db: Option<Vec<f64>>,
    trials: Option<usize>,
    estimators: Option<Vec<String>>,
    grid_bits: Option<u32>,
    eta: Option<f64>,
    alpha: Option<f64>,
    beta: Option<f64>,
    max_iters: Option<usize>,
    g_norm_cap: Option<f64>,
    step_start: Option<String>,
    master_seed: Option<u64>,
    fixed_theta0: Option<f64>,
    fixed_g0: Option<[f64; 2]>,
    lmmse_samples: Option<usize>,
    lmmse_ridge: Option<f64>,
    transcendental_cost: Option<u64>,
    workers: Option<usize>,
    output: Option<PathBuf>,
}

/// Parses a comma-separated estimator list such as `mips,pml`.
pub fn parse_estimators(list: &str) -> Result<Vec<EstimatorKind>> {
    let mut out = Vec::new();
    for name in list.split(',').filter(|s| !s.trim().is_empty()) {
        let kind: EstimatorKind = name.parse()?;
        if !out.contains(&kind) {
            out.push(kind);
        }
    }
    Ok(out)
}

fn parse_step_start(s: &str) -> Result<StepStart> {
    match s.trim().to_ascii_lowercase().as_str() {
        "unit" => Ok(StepStart::Unit),
        "warm" => Ok(StepStart::Warm),
        other => Err(Error::Config(format!("unknown step_start '{other}' (expected unit or warm)"))),
    }
}

impl ExperimentConfig {
    /// Defaults overridden by the keys present in `text`.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut cfg = Self::default();
        cfg.apply_file(file)?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::from_toml_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    fn apply_file(&mut self, f: ConfigFile) -> Result<()> {
        macro_rules! take {
            ($($field:ident),*) => { $( if let Some(v) = f.$field { self.$field = v; } )* };
        }
        take!(m, n, l, k_db, theta_min, theta_max, d_over_lambda, snr_db, trials, grid_bits, master_seed,
              lmmse_samples, lmmse_ridge, transcendental_cost, workers);
        if let Some(list) = f.estimators {
            self.estimators = parse_estimators(&list.join(","))?;
        }
        if let Some(v) = f.eta {
            self.gdm.eta = v;
        }
        if let Some(v) = f.alpha {
            self.gdm.alpha = v;
        }
        if let Some(v) = f.beta {
            self.gdm.beta = v;
        }
        if let Some(v) = f.max_iters {
            self.gdm.max_iters = v;
        }
        if let Some(v) = f.g_norm_cap {
            self.gdm.g_norm_cap = v;
        }
        if let Some(s) = f.step_start {
            self.gdm.step_start = parse_step_start(&s)?;
        }
        match (f.fixed_theta0, f.fixed_g0) {
            (Some(theta), Some([re, im])) => self.fixed_realization = Some((theta, Complex64::new(re, im))),
            (None, None) => {}
            _ => return Err(Error::Config("fixed_theta0 and fixed_g0 must be given together".into())),
        }
        if f.output.is_some() {
            self.output = f.output;
        }
        Ok(())
    }

    /// Rician K on the linear scale.
    pub fn k_linear(&self) -> f64 {
        db_to_linear(self.k_db)
    }

    /// System parameters at unit SNR; [`SystemParams::at_snr`] moves along the sweep.
    pub fn params_template(&self) -> Result<SystemParams> {
        SystemParams::with_geometry(
            self.m,
            self.n,
            self.l,
            self.k_linear(),
            1.0,
            self.theta_min,
            self.theta_max,
            self.d_over_lambda,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        if self.snr_db.is_empty() {
            return Err(invalid("SNR list is empty"));
        }
        if let Some(s) = self.snr_db.iter().find(|s| !s.is_finite()) {
            return Err(invalid(format!("SNR {s} dB is not finite")));
        }
        if self.estimators.is_empty() {
            return Err(invalid("no estimators selected"));
        }
        if !self.k_db.is_finite() {
            return Err(invalid(format!("K = {} dB is not finite", self.k_db)));
        }
        if !(self.lmmse_ridge >= 0.0 && self.lmmse_ridge.is_finite()) {
            return Err(invalid(format!("LMMSE ridge must be non-negative, got {}", self.lmmse_ridge)));
        }
        self.gdm.validate()?;
        let params = self.params_template()?;
        if let Some((theta, g)) = self.fixed_realization {
            if !params.contains_doa(theta) {
                return Err(invalid(format!("fixed LOS DOA {theta} lies outside the DOA domain")));
            }
            if !(g.re.is_finite() && g.im.is_finite()) {
                return Err(invalid(format!("fixed LOS gain {g} is not finite")));
            }
        }
        if self.estimators.contains(&EstimatorKind::Lmmse) && self.lmmse_samples < 1_000 {
            return Err(invalid(format!("lmmse_samples must be at least 1000, got {}", self.lmmse_samples)));
        }
        Ok(())
    }
}
