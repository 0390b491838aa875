//! LOS channel estimators: MIPS two-stage, pseudo-ML grid search, and LMMSE.

mod arcsine;
mod lmmse;
mod mips;
mod pml;

pub use arcsine::{arcsine_map, beamformer_output, sine_map};
pub use lmmse::{lmmse_estimate, train_lmmse, LmmseFilter, LmmseStatistics, DEFAULT_RIDGE};
pub use mips::{mips_doa, mips_estimate, mips_fading};
pub use pml::pml_estimate;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cost::OpTally;
use crate::error::{invalid, Error, Result};
use crate::likelihood::{context_from_steering, maximize_g, zf_from_matched, FadingVector, GdmConfig, GdmOutcome};
use crate::signal::{steering_into, PilotSequence, QuantizedObservation, SystemParams};

/// Uniform `2^B`-point DOA grid placed at cell midpoints of the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct DoaGrid {
    bits: u32,
    points: Vec<f64>,
}

impl DoaGrid {
    pub const MAX_BITS: u32 = 20;

    pub fn new(bits: u32, theta_min: f64, theta_max: f64) -> Result<Self> {
        if bits > Self::MAX_BITS {
            return Err(invalid(format!("grid bits {bits} exceed {}", Self::MAX_BITS)));
        }
        if !(theta_min.is_finite() && theta_max.is_finite() && theta_min < theta_max) {
            return Err(invalid(format!("bad grid domain [{theta_min}, {theta_max}]")));
        }
        let count = 1usize << bits;
        let width = (theta_max - theta_min) / count as f64;
        let points = (0..count)
            .map(|i| theta_min + (i as f64 + 0.5) * width)
            .collect();
        Ok(Self { bits, points })
    }

    pub fn for_params(bits: u32, params: &SystemParams) -> Result<Self> {
        Self::new(bits, params.theta_min(), params.theta_max())
    }

    /// A degenerate grid holding the single DOA `theta`.
    pub fn single(theta: f64) -> Self {
        Self { bits: 0, points: vec![theta] }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Spacing between neighbouring points (0 for a single-point grid).
    pub fn cell_width(&self) -> f64 {
        if self.points.len() < 2 {
            0.0
        } else {
            self.points[1] - self.points[0]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorKind {
    Mips,
    Pml,
    Lmmse,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 3] = [EstimatorKind::Mips, EstimatorKind::Pml, EstimatorKind::Lmmse];

    pub fn as_str(self) -> &'static str {
        match self {
            EstimatorKind::Mips => "mips",
            EstimatorKind::Pml => "pml",
            EstimatorKind::Lmmse => "lmmse",
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mips" => Ok(EstimatorKind::Mips),
            "pml" => Ok(EstimatorKind::Pml),
            "lmmse" => Ok(EstimatorKind::Lmmse),
            other => Err(invalid(format!("unknown estimator '{other}' (expected mips, pml or lmmse)"))),
        }
    }
}

/// Bookkeeping from one estimator call.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateDiagnostics {
    pub gdm_runs: u64,
    pub gdm_iterations: u64,
    /// GDM runs that left the `g_norm_cap` ball.
    pub cap_exits: u64,
    /// pML grid points dropped after a numerical failure.
    pub skipped_points: u64,
    /// Objective value at the returned `(g, theta)`.
    pub objective: f64,
    pub ops: OpTally,
}

/// Estimate of the LOS channel `h0 = g0 a(theta0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelEstimate {
    pub g_hat: FadingVector,
    pub theta_hat: f64,
    pub h0_hat: Vec<Complex64>,
    pub estimator: EstimatorKind,
    pub diagnostics: EstimateDiagnostics,
}

impl AsRef<[Complex64]> for ChannelEstimate {
    fn as_ref(&self) -> &[Complex64] {
        &self.h0_hat
    }
}

/// Steering vector, ZF start and GDM at one DOA hypothesis, with op accounting.
pub(crate) fn solve_at_doa(
    obs: &QuantizedObservation,
    pilot: &PilotSequence,
    params: &SystemParams,
    theta: f64,
    matched: &[Complex64],
    gdm: &GdmConfig,
    ops: &mut OpTally,
) -> Result<GdmOutcome> {
    let mut a = vec![Complex64::new(0.0, 0.0); params.m()];
    steering_into(theta, params.d_over_lambda(), &mut a);
    ops.steering_vectors += 1;
    let ctx = context_from_steering(obs, pilot, params, theta, &a)?;
    ops.contexts += 1;
    let init = zf_from_matched(matched, &a, params);
    ops.zf_projections += 1;
    let out = maximize_g(&ctx, gdm, init);
    if let Ok(out) = &out {
        ops.value_evals += out.diagnostics.value_evals;
        ops.gradient_evals += out.diagnostics.gradient_evals;
    }
    out
}

/// `g * a(theta)`.
pub(crate) fn reconstruct(g: FadingVector, theta: f64, params: &SystemParams) -> Vec<Complex64> {
    let mut a = vec![Complex64::new(0.0, 0.0); params.m()];
    steering_into(theta, params.d_over_lambda(), &mut a);
    let g = g.to_complex();
    a.iter().map(|&am| g * am).collect()
}
