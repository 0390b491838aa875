//! Two-stage estimator: DOA by maximum inner product search, then one concave
//! fading-coefficient solve at that DOA.

use num_complex::Complex64;

use crate::cost::OpTally;
use crate::error::{invalid, Result};
use crate::likelihood::{pilot_matched_filter, FadingVector, GdmConfig};
use crate::signal::{steering_into, PilotSequence, QuantizedObservation, SystemParams};

use super::{reconstruct, solve_at_doa, ChannelEstimate, DoaGrid, EstimateDiagnostics, EstimatorKind};

/// Grid index maximizing `|a(theta)^H X^H y_hat|^2`; ties go to the lowest index.
pub(crate) fn scan_grid(
    matched: &[Complex64],
    params: &SystemParams,
    grid: &DoaGrid,
    ops: &mut OpTally,
) -> Result<usize> {
    if grid.is_empty() {
        return Err(invalid("DOA grid is empty"));
    }
    let mut a = vec![Complex64::new(0.0, 0.0); matched.len()];
    let mut best = (0usize, f64::NEG_INFINITY);
    for (i, &theta) in grid.points().iter().enumerate() {
        steering_into(theta, params.d_over_lambda(), &mut a);
        let s: Complex64 = a.iter().zip(matched).map(|(am, zm)| am.conj() * zm).sum();
        let power = s.norm_sqr();
        if power > best.1 {
            best = (i, power);
        }
    }
    ops.steering_vectors += grid.len() as u64;
    ops.grid_objectives += grid.len() as u64;
    Ok(best.0)
}

/// DOA estimate `argmax |(x ⊗ a(theta))^H y_hat|` over the grid.
pub fn mips_doa(
    obs: &QuantizedObservation,
    pilot: &PilotSequence,
    params: &SystemParams,
    grid: &DoaGrid,
) -> Result<f64> {
    let matched = pilot_matched_filter(obs, pilot, params.m())?;
    let mut ops = OpTally::new(params.m(), params.n());
    let idx = scan_grid(&matched, params, grid, &mut ops)?;
    Ok(grid.points()[idx])
}

/// Fading coefficient maximizing the likelihood at a fixed DOA.
pub fn mips_fading(
    obs: &QuantizedObservation,
    pilot: &PilotSequence,
    params: &SystemParams,
    theta_hat: f64,
    gdm: &GdmConfig,
) -> Result<FadingVector> {
    let matched = pilot_matched_filter(obs, pilot, params.m())?;
    let mut ops = OpTally::new(params.m(), params.n());
    if !params.contains_doa(theta_hat) {
        return Err(invalid(format!("DOA {theta_hat} lies outside the DOA domain")));
    }
    Ok(solve_at_doa(obs, pilot, params, theta_hat, &matched, gdm, &mut ops)?.g)
}

/// MIPS DOA, one GDM solve at it, and `h0 = g a(theta)`.
pub fn mips_estimate(
    obs: &QuantizedObservation,
    pilot: &PilotSequence,
    params: &SystemParams,
    grid: &DoaGrid,
    gdm: &GdmConfig,
) -> Result<ChannelEstimate> {
    let mut ops = OpTally::new(params.m(), params.n());
    let matched = pilot_matched_filter(obs, pilot, params.m())?;
    ops.matched_filters += 1;
    let idx = scan_grid(&matched, params, grid, &mut ops)?;
    let theta_hat = grid.points()[idx];
    let out = solve_at_doa(obs, pilot, params, theta_hat, &matched, gdm, &mut ops)?;
    Ok(ChannelEstimate {
        g_hat: out.g,
        theta_hat,
        h0_hat: reconstruct(out.g, theta_hat, params),
        estimator: EstimatorKind::Mips,
        diagnostics: EstimateDiagnostics {
            gdm_runs: 1,
            gdm_iterations: out.diagnostics.iterations as u64,
            cap_exits: out.capped() as u64,
            skipped_points: 0,
            objective: out.value,
            ops,
        },
    })
}
