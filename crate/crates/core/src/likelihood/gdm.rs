//! Gradient ascent with backtracking line search for the concave inner problem.

use crate::error::{invalid, Error, Result};

use super::{log_likelihood, log_likelihood_with_gradient, FadingVector, LikelihoodContext};

/// Smallest step tried before the line search gives up.
const MIN_STEP: f64 = 1e-30;

/// Where each backtracking line search starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepStart {
    /// Always try `t = 1` first.
    Unit,
    /// Try `min(1, t_prev / beta)` first, `t_prev` being the last accepted step.
    Warm,
}

/// Gradient-ascent settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GdmConfig {
    /// Stop once the gradient 2-norm is at or below this.
    pub eta: f64,
    /// Sufficient-increase fraction of the backtracking test.
    pub alpha: f64,
    /// Step shrink factor of the backtracking test.
    pub beta: f64,
    pub max_iters: usize,
    /// Iterates leaving this ball around the origin end the ascent.
    pub g_norm_cap: f64,
    pub step_start: StepStart,
}

impl Default for GdmConfig {
    fn default() -> Self {
        Self {
            eta: 0.01,
            alpha: 0.1,
            beta: 0.5,
            max_iters: 500,
            g_norm_cap: 100.0,
            step_start: StepStart::Warm,
        }
    }
}

impl GdmConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 0.5) {
            return Err(invalid(format!("alpha must be in (0, 0.5), got {}", self.alpha)));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(invalid(format!("beta must be in (0, 1), got {}", self.beta)));
        }
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return Err(invalid(format!("eta must be positive, got {}", self.eta)));
        }
        if self.max_iters == 0 {
            return Err(invalid("max_iters must be positive"));
        }
        if self.g_norm_cap.is_nan() || self.g_norm_cap <= 0.0 {
            return Err(invalid(format!("g_norm_cap must be positive, got {}", self.g_norm_cap)));
        }
        Ok(())
    }
}

/// Why the ascent stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Converged,
    MaxIters,
    /// The iterate left the `g_norm_cap` ball; the supremum is likely not attained.
    NormCap,
    /// No step down to `MIN_STEP` gave a sufficient increase.
    Stalled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GdmDiagnostics {
    pub iterations: usize,
    /// Objective-only evaluations made by the line search.
    pub value_evals: u64,
    /// Joint value-and-gradient evaluations.
    pub gradient_evals: u64,
    pub termination: Termination,
    pub gradient_norm: f64,
    /// Objective at the start and after every accepted step.
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GdmOutcome {
    pub g: FadingVector,
    pub value: f64,
    pub diagnostics: GdmDiagnostics,
}

impl GdmOutcome {
    pub fn capped(&self) -> bool {
        self.diagnostics.termination == Termination::NormCap
    }
}

/// Maximizes the log-likelihood over `g` starting from `init`.
pub fn maximize_g(ctx: &LikelihoodContext, cfg: &GdmConfig, init: FadingVector) -> Result<GdmOutcome> {
    cfg.validate()?;
    if !init.is_finite() {
        return Err(invalid(format!("non-finite starting point {:?}", init.0)));
    }

    let mut g = init;
    let (mut value, mut grad) = log_likelihood_with_gradient(ctx, g);
    let mut diag = GdmDiagnostics {
        iterations: 0,
        value_evals: 0,
        gradient_evals: 1,
        termination: Termination::MaxIters,
        gradient_norm: f64::NAN,
        trace: vec![value],
    };
    if !value.is_finite() {
        return Err(Error::Numerical(format!(
            "objective is {value} at the starting point {:?}",
            init.0
        )));
    }

    let mut last_step = 1.0;
    loop {
        let grad_sq = grad[0] * grad[0] + grad[1] * grad[1];
        diag.gradient_norm = grad_sq.sqrt();
        if diag.gradient_norm <= cfg.eta {
            diag.termination = Termination::Converged;
            break;
        }
        if diag.iterations >= cfg.max_iters {
            diag.termination = Termination::MaxIters;
            break;
        }

        let mut step = match cfg.step_start {
            StepStart::Unit => 1.0,
            StepStart::Warm => (last_step / cfg.beta).min(1.0),
        };
        let candidate = loop {
            let cand = FadingVector::new(g.0[0] + step * grad[0], g.0[1] + step * grad[1]);
            let v = log_likelihood(ctx, cand);
            diag.value_evals += 1;
            if v.is_nan() || v == f64::INFINITY {
                return Err(Error::Numerical(format!(
                    "objective is {v} at {:?} during line search (iteration {})",
                    cand.0, diag.iterations
                )));
            }
            // -inf simply fails the test and shrinks the step.
            if v >= value + cfg.alpha * step * grad_sq {
                break Some(cand);
            }
            step *= cfg.beta;
            if step < MIN_STEP {
                break None;
            }
        };
        let Some(cand) = candidate else {
            diag.termination = Termination::Stalled;
            break;
        };

        last_step = step;
        g = cand;
        (value, grad) = log_likelihood_with_gradient(ctx, g);
        diag.gradient_evals += 1;
        diag.iterations += 1;
        diag.trace.push(value);

        if g.norm() > cfg.g_norm_cap {
            diag.gradient_norm = grad[0].hypot(grad[1]);
            diag.termination = Termination::NormCap;
            break;
        }
    }

    Ok(GdmOutcome { g, value, diagnostics: diag })
}
