//! Pseudo-ML estimator: a concave solve at every grid DOA, keeping the best.

use crate::cost::OpTally;
use crate::error::{Error, Result};
use crate::likelihood::{pilot_matched_filter, GdmConfig, GdmOutcome};
use crate::signal::{PilotSequence, QuantizedObservation, SystemParams};

use super::{reconstruct, solve_at_doa, ChannelEstimate, DoaGrid, EstimateDiagnostics, EstimatorKind};

/// Joint maximizer of the pseudo log-likelihood over the grid and `g`.
///
/// A grid point whose solve fails numerically is skipped and counted in
/// `skipped_points`; the call fails only if every point fails.
pub fn pml_estimate(
    obs: &QuantizedObservation,
    pilot: &PilotSequence,
    params: &SystemParams,
    grid: &DoaGrid,
    gdm: &GdmConfig,
) -> Result<ChannelEstimate> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("DOA grid is empty".into()));
    }
    gdm.validate()?;
    let mut ops = OpTally::new(params.m(), params.n());
    let matched = pilot_matched_filter(obs, pilot, params.m())?;
    ops.matched_filters += 1;

    let mut best: Option<(f64, GdmOutcome)> = None;
    let mut iterations = 0u64;
    let mut cap_exits = 0u64;
    let mut skipped = 0u64;
    let mut last_error = None;
    for &theta in grid.points() {
        match solve_at_doa(obs, pilot, params, theta, &matched, gdm, &mut ops) {
            Ok(out) => {
                iterations += out.diagnostics.iterations as u64;
                cap_exits += out.capped() as u64;
                if best.as_ref().is_none_or(|(_, b)| out.value > b.value) {
                    best = Some((theta, out));
                }
            }
            Err(e) => {
                skipped += 1;
                last_error = Some(e);
            }
        }
    }

    let Some((theta_hat, out)) = best else {
        return Err(last_error.unwrap_or_else(|| Error::Numerical("no grid point solved".into())));
    };
    Ok(ChannelEstimate {
        g_hat: out.g,
        theta_hat,
        h0_hat: reconstruct(out.g, theta_hat, params),
        estimator: EstimatorKind::Pml,
        diagnostics: EstimateDiagnostics {
            gdm_runs: grid.len() as u64,
            gdm_iterations: iterations,
            cap_exits,
            skipped_points: skipped,
            objective: out.value,
            ops,
        },
    })
}
