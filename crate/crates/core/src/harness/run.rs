//! Paired Monte-Carlo sweep over SNR.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cost::{CostModel, OpTally};
use crate::error::{Error, Result};
use crate::estimators::{mips_estimate, pml_estimate, train_lmmse, DoaGrid, EstimatorKind, LmmseFilter};
use crate::seed::{substream, trial_rng, TAG_LMMSE};
use crate::signal::{
    dft_pilot, draw_channel, draw_channel_with_los, synthesize_observation, PilotSequence, SystemParams,
};

use super::config::{db_to_linear, ExperimentConfig};
use super::metrics::{mse_channel, mse_doa, mse_fading, MultCounter};

/// One CSV row: averages for one estimator at one SNR.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub estimator: EstimatorKind,
    pub snr_db: f64,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    /// Trials that produced an estimate and enter the averages.
    pub trials: usize,
    pub mse_channel: f64,
    /// NaN for estimators without a DOA estimate.
    pub mse_doa: f64,
    /// NaN for estimators without a fading estimate.
    pub mse_fading: f64,
    pub avg_real_mults: f64,
    pub seed: u64,
}

/// Side information for the row at the same index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RowStats {
    pub failed: usize,
    /// More than 1% of trials failed.
    pub flagged: bool,
    pub gdm_runs: u64,
    pub cap_exits: u64,
    pub skipped_points: u64,
    pub real_mults: u64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentResult {
    pub rows: Vec<ExperimentRow>,
    pub stats: Vec<RowStats>,
}

impl ExperimentResult {
    pub fn any_flagged(&self) -> bool {
        self.stats.iter().any(|s| s.flagged)
    }

    pub fn row(&self, estimator: EstimatorKind, snr_db: f64) -> Option<(&ExperimentRow, &RowStats)> {
        self.rows
            .iter()
            .zip(&self.stats)
            .find(|(r, _)| r.estimator == estimator && r.snr_db == snr_db)
    }
}

struct EstimatorOutcome {
    h0_hat: Vec<Complex64>,
    doa_and_gain: Option<(f64, Complex64)>,
    mults: u64,
    gdm_runs: u64,
    cap_exits: u64,
    skipped_points: u64,
}

struct TrialOutcome {
    h0: Vec<Complex64>,
    theta0: f64,
    g0: Complex64,
    per_estimator: Vec<Result<EstimatorOutcome>>,
}

struct SnrSetup<'a> {
    cfg: &'a ExperimentConfig,
    params: SystemParams,
    pilot: &'a PilotSequence,
    grid: &'a DoaGrid,
    cost: CostModel,
    lmmse: Option<LmmseFilter>,
}

fn run_estimator(
    kind: EstimatorKind,
    setup: &SnrSetup<'_>,
    obs: &crate::signal::QuantizedObservation,
) -> Result<EstimatorOutcome> {
    let mut counter = MultCounter::new();
    match kind {
        EstimatorKind::Mips | EstimatorKind::Pml => {
            let est = if kind == EstimatorKind::Mips {
                mips_estimate(obs, setup.pilot, &setup.params, setup.grid, &setup.cfg.gdm)?
            } else {
                pml_estimate(obs, setup.pilot, &setup.params, setup.grid, &setup.cfg.gdm)?
            };
            counter.add(setup.cost.count_real_mults(&est.diagnostics.ops));
            let d = &est.diagnostics;
            Ok(EstimatorOutcome {
                doa_and_gain: Some((est.theta_hat, est.g_hat.to_complex())),
                mults: counter.total(),
                gdm_runs: d.gdm_runs,
                cap_exits: d.cap_exits,
                skipped_points: d.skipped_points,
                h0_hat: est.h0_hat,
            })
        }
        EstimatorKind::Lmmse => {
            let filter = setup.lmmse.as_ref().expect("LMMSE filter trained for this SNR");
            let h0_hat = filter.apply(obs)?;
            let mut ops = OpTally::new(setup.params.m(), setup.params.n());
            ops.lmmse_applies = 1;
            counter.add(setup.cost.count_real_mults(&ops));
            Ok(EstimatorOutcome {
                h0_hat,
                doa_and_gain: None,
                mults: counter.total(),
                gdm_runs: 0,
                cap_exits: 0,
                skipped_points: 0,
            })
        }
    }
}

fn run_trial(setup: &SnrSetup<'_>, trial: usize) -> Result<TrialOutcome> {
    // The stream depends on the trial only, so every SNR sees the same channel and noise.
    let mut rng = trial_rng(setup.cfg.master_seed, trial as u64);
    let channel = match setup.cfg.fixed_realization {
        Some((theta0, g0)) => draw_channel_with_los(&setup.params, theta0, g0, &mut rng)?,
        None => draw_channel(&setup.params, &mut rng),
    };
    let obs = synthesize_observation(&setup.params, &channel, setup.pilot, &mut rng)?;
    let per_estimator = setup
        .cfg
        .estimators
        .iter()
        .map(|&kind| run_estimator(kind, setup, &obs))
        .collect();
    Ok(TrialOutcome { theta0: channel.los_doa(), g0: channel.los_gain(), h0: channel.h0, per_estimator })
}

fn summarize(
    cfg: &ExperimentConfig,
    snr_db: f64,
    slot: usize,
    kind: EstimatorKind,
    trials: &[TrialOutcome],
) -> Result<(ExperimentRow, RowStats)> {
    let mut stats = RowStats::default();
    let mut estimates = Vec::new();
    let mut truths = Vec::new();
    let (mut doa_hat, mut doa, mut g_hat, mut g) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for trial in trials {
        match &trial.per_estimator[slot] {
            Ok(out) => {
                estimates.push(out.h0_hat.as_slice());
                truths.push(trial.h0.as_slice());
                if let Some((theta_hat, gain_hat)) = out.doa_and_gain {
                    doa_hat.push(theta_hat);
                    doa.push(trial.theta0);
                    g_hat.push(gain_hat);
                    g.push(trial.g0);
                }
                stats.real_mults += out.mults;
                stats.gdm_runs += out.gdm_runs;
                stats.cap_exits += out.cap_exits;
                stats.skipped_points += out.skipped_points;
            }
            Err(_) => stats.failed += 1,
        }
    }
    stats.flagged = stats.failed * 100 > trials.len();
    let ok = estimates.len();
    let (mse_ch, mse_th, mse_g, avg_mults) = if ok == 0 {
        (f64::NAN, f64::NAN, f64::NAN, f64::NAN)
    } else {
        let (mse_th, mse_g) = if doa_hat.is_empty() {
            (f64::NAN, f64::NAN)
        } else {
            (mse_doa(&doa_hat, &doa)?, mse_fading(&g_hat, &g)?)
        };
        (mse_channel(&estimates, &truths)?, mse_th, mse_g, stats.real_mults as f64 / ok as f64)
    };
    let row = ExperimentRow {
        estimator: kind,
        snr_db,
        l: cfg.l,
        m: cfg.m,
        n: cfg.n,
        trials: ok,
        mse_channel: mse_ch,
        mse_doa: mse_th,
        mse_fading: mse_g,
        avg_real_mults: avg_mults,
        seed: cfg.master_seed,
    };
    Ok((row, stats))
}

/// Runs the sweep described by `cfg`; rows come out SNR-major in configuration order.
///
/// Every selected estimator sees the same quantized observation in a trial.
/// An estimator failure drops that trial from the estimator's averages and is
/// counted in [`RowStats::failed`].
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let template = cfg.params_template()?;
    let pilot = dft_pilot(cfg.n)?;
    let grid = DoaGrid::for_params(cfg.grid_bits, &template)?;
    let cost = CostModel { transcendental: cfg.transcendental_cost };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;

    let mut result = ExperimentResult::default();
    for (snr_index, &snr_db) in cfg.snr_db.iter().enumerate() {
        let params = template.at_snr(db_to_linear(snr_db))?;
        let lmmse = if cfg.estimators.contains(&EstimatorKind::Lmmse) {
            let mut rng = substream(cfg.master_seed, TAG_LMMSE, snr_index as u64);
            let mut stats = pool.install(|| train_lmmse(&params, &pilot, cfg.lmmse_samples, &mut rng))?;
            stats.ridge = cfg.lmmse_ridge;
            Some(LmmseFilter::new(&stats)?)
        } else {
            None
        };
        let setup = SnrSetup { cfg, params, pilot: &pilot, grid: &grid, cost, lmmse };
        let trials: Vec<TrialOutcome> = pool.install(|| {
            (0..cfg.trials)
                .into_par_iter()
                .map(|t| run_trial(&setup, t))
                .collect::<Result<_>>()
        })?;
        for (slot, &kind) in cfg.estimators.iter().enumerate() {
            let (row, stats) = summarize(cfg, snr_db, slot, kind, &trials)?;
            result.rows.push(row);
            result.stats.push(stats);
        }
    }
    Ok(result)
}
