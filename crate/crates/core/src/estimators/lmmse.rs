//! Linear MMSE baseline from Monte-Carlo sample covariances.
//!
//! Training draws fresh channels, noise and quantization, and accumulates
//! `E[h0 y_hat^H]` and `E[y_hat y_hat^H]` with zero means (both are circularly
//! symmetric). The filter is `C_h0y (C_yy + ridge I)^-1`.
//!
//! Sign halves are `±1`, so the accumulation runs as real matrix products on
//! sample batches: with `y_hat = (a + jb)/sqrt(2)`,
//! `y_hat y_hat^H = ((a a^T + b b^T) + j(b a^T - a b^T)) / 2`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::signal::{draw_channel, synthesize_observation, PilotSequence, QuantizedObservation, SystemParams};

pub const DEFAULT_RIDGE: f64 = 1e-6;
const MIN_SAMPLES: usize = 1_000;
const BATCH: usize = 256;

/// Sample second-order statistics for the LMMSE filter.
#[derive(Debug, Clone, PartialEq)]
pub struct LmmseStatistics {
    /// `M x MN` sample `E[h0 y_hat^H]`.
    pub cross_cov: DMatrix<Complex64>,
    /// `MN x MN` sample `E[y_hat y_hat^H]`.
    pub obs_cov: DMatrix<Complex64>,
    pub sample_count: usize,
    pub ridge: f64,
}

/// Estimates the statistics from `sample_count` independent draws.
pub fn train_lmmse<R: Rng + ?Sized>(
    params: &SystemParams,
    pilot: &PilotSequence,
    sample_count: usize,
    rng: &mut R,
) -> Result<LmmseStatistics> {
    if sample_count < MIN_SAMPLES {
        return Err(invalid(format!(
            "LMMSE training needs at least {MIN_SAMPLES} samples, got {sample_count}"
        )));
    }
    let (m, mn) = (params.m(), params.observation_len());

    let mut aat = DMatrix::<f64>::zeros(mn, mn);
    let mut ba_t = DMatrix::<f64>::zeros(mn, mn);
    let mut cross_re = DMatrix::<f64>::zeros(m, mn);
    let mut cross_im = DMatrix::<f64>::zeros(m, mn);

    let mut done = 0;
    while done < sample_count {
        let batch = BATCH.min(sample_count - done);
        let mut a = DMatrix::<f64>::zeros(mn, batch);
        let mut b = DMatrix::<f64>::zeros(mn, batch);
        let mut hr = DMatrix::<f64>::zeros(m, batch);
        let mut hi = DMatrix::<f64>::zeros(m, batch);
        for col in 0..batch {
            let channel = draw_channel(params, rng);
            let obs = synthesize_observation(params, &channel, pilot, rng)?;
            for (k, y) in obs.y_hat.iter().enumerate() {
                a[(k, col)] = y.re.signum();
                b[(k, col)] = y.im.signum();
            }
            for (i, h) in channel.h0.iter().enumerate() {
                hr[(i, col)] = h.re;
                hi[(i, col)] = h.im;
            }
        }
        let at = a.transpose();
        let bt = b.transpose();
        aat += &a * &at + &b * &bt;
        ba_t += &b * &at;
        // h0 y_hat^H = ((hr a^T + hi b^T) + j(hi a^T - hr b^T)) / sqrt(2)
        cross_re += &hr * &at + &hi * &bt;
        cross_im += &hi * &at - &hr * &bt;
        done += batch;
    }

    let n = sample_count as f64;
    let obs_cov = DMatrix::from_fn(mn, mn, |i, j| {
        Complex64::new(aat[(i, j)], ba_t[(i, j)] - ba_t[(j, i)]) / (2.0 * n)
    });
    let scale = std::f64::consts::FRAC_1_SQRT_2 / n;
    let cross_cov = DMatrix::from_fn(m, mn, |i, j| {
        Complex64::new(cross_re[(i, j)], cross_im[(i, j)]) * scale
    });
    Ok(LmmseStatistics { cross_cov, obs_cov, sample_count, ridge: DEFAULT_RIDGE })
}

/// Precomputed `C_h0y (C_yy + ridge I)^-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LmmseFilter {
    weights: DMatrix<Complex64>,
}

impl LmmseFilter {
    pub fn new(stats: &LmmseStatistics) -> Result<Self> {
        let mn = stats.obs_cov.nrows();
        if stats.obs_cov.ncols() != mn || stats.cross_cov.ncols() != mn {
            return Err(invalid("LMMSE statistics have inconsistent dimensions"));
        }
        let mut regularized = stats.obs_cov.clone();
        for i in 0..mn {
            regularized[(i, i)] += Complex64::new(stats.ridge, 0.0);
        }
        let chol = regularized.cholesky().ok_or_else(|| {
            Error::Numerical("observation covariance is not positive definite after ridge".into())
        })?;
        // W^H = (C_yy + ridge I)^-1 C_h0y^H because the regularized matrix is Hermitian.
        let weights_h = chol.solve(&stats.cross_cov.adjoint());
        Ok(Self { weights: weights_h.adjoint() })
    }

    pub fn weights(&self) -> &DMatrix<Complex64> {
        &self.weights
    }

    pub fn antennas(&self) -> usize {
        self.weights.nrows()
    }

    pub fn apply(&self, obs: &QuantizedObservation) -> Result<Vec<Complex64>> {
        if obs.len() != self.weights.ncols() {
            return Err(invalid(format!(
                "observation has {} samples, filter expects {}",
                obs.len(),
                self.weights.ncols()
            )));
        }
        Ok((0..self.weights.nrows())
            .map(|i| {
                self.weights
                    .row(i)
                    .iter()
                    .zip(&obs.y_hat)
                    .map(|(w, y)| w * y)
                    .sum()
            })
            .collect())
    }
}

/// `C_h0y (C_yy + ridge I)^-1 y_hat`.
pub fn lmmse_estimate(obs: &QuantizedObservation, stats: &LmmseStatistics) -> Result<Vec<Complex64>> {
    LmmseFilter::new(stats)?.apply(obs)
}
