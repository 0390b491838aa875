//! One-bit pseudo-likelihood in the LOS fading coefficient for a fixed DOA.
//!
//! Treating NLOS paths plus noise as white Gaussian with variance `sigma^2`,
//! sample `k` of the observation is `CN(sqrt(rho) X_k g, sigma^2)` with
//! `X_k = c_0 x_n a_m(theta)`. Its sign halves give
//!
//! ```text
//! L(g) = sum_k log Phi(2 yR_k sqrt(rho~) fR_k . g) + log Phi(2 yI_k sqrt(rho~) fI_k . g)
//! ```
//!
//! which is concave in the real 2-vector `g = [Re g_0, Im g_0]`.

mod gdm;
mod normal;

pub use gdm::{maximize_g, GdmConfig, GdmDiagnostics, GdmOutcome, StepStart, Termination};
pub use normal::{log_norm_cdf, norm_pdf_cdf_ratio, TAIL_SWITCH};

pub(crate) use normal::{log_ncdf, log_ncdf_and_ratio, ncdf_ratio};

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::signal::{steering_into, PilotSequence, QuantizedObservation, SystemParams};

/// Real and imaginary part of a complex fading coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FadingVector(pub [f64; 2]);

impl FadingVector {
    pub const ZERO: FadingVector = FadingVector([0.0, 0.0]);

    pub fn new(re: f64, im: f64) -> Self {
        Self([re, im])
    }

    pub fn from_complex(g: Complex64) -> Self {
        Self([g.re, g.im])
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.0[0], self.0[1])
    }

    pub fn norm(self) -> f64 {
        self.0[0].hypot(self.0[1])
    }

    pub fn is_finite(self) -> bool {
        self.0[0].is_finite() && self.0[1].is_finite()
    }

    pub fn scaled(self, s: f64) -> Self {
        Self([self.0[0] * s, self.0[1] * s])
    }
}

/// Everything the likelihood needs at one DOA hypothesis.
#[derive(Debug, Clone, PartialEq)]
pub struct LikelihoodContext {
    /// `sqrt(2) Re y_hat_k`, each `±1`.
    y_hat_r: Vec<f64>,
    /// `sqrt(2) Im y_hat_k`, each `±1`.
    y_hat_i: Vec<f64>,
    f_r: Vec<[f64; 2]>,
    f_i: Vec<[f64; 2]>,
    rho_tilde: f64,
    theta: f64,
}

impl LikelihoodContext {
    /// Builds a context from sign halves and per-sample `X_k`.
    pub fn from_samples(
        y_hat: &[Complex64],
        x: &[Complex64],
        rho_tilde: f64,
        theta: f64,
    ) -> Result<Self> {
        if y_hat.len() != x.len() {
            return Err(invalid(format!(
                "observation has {} samples but X has {}",
                y_hat.len(),
                x.len()
            )));
        }
        let f_r = x.iter().map(|v| [v.re, -v.im]).collect();
        let f_i = x.iter().map(|v| [v.im, v.re]).collect();
        let sign = |v: f64| if v >= 0.0 { 1.0 } else { -1.0 };
        Self::from_parts(
            y_hat.iter().map(|v| sign(v.re)).collect(),
            y_hat.iter().map(|v| sign(v.im)).collect(),
            f_r,
            f_i,
            rho_tilde,
            theta,
        )
    }

    /// Builds a context from explicit sign halves and feature vectors.
    pub fn from_parts(
        y_hat_r: Vec<f64>,
        y_hat_i: Vec<f64>,
        f_r: Vec<[f64; 2]>,
        f_i: Vec<[f64; 2]>,
        rho_tilde: f64,
        theta: f64,
    ) -> Result<Self> {
        let len = y_hat_r.len();
        if y_hat_i.len() != len || f_r.len() != len || f_i.len() != len {
            return Err(invalid("likelihood context parts differ in length"));
        }
        if y_hat_r.iter().chain(&y_hat_i).any(|&s| s != 1.0 && s != -1.0) {
            return Err(invalid("sign halves must be ±1"));
        }
        if !(rho_tilde.is_finite() && rho_tilde > 0.0) {
            return Err(invalid(format!("effective SNR must be positive, got {rho_tilde}")));
        }
        Ok(Self { y_hat_r, y_hat_i, f_r, f_i, rho_tilde, theta })
    }

    /// Same data at a different effective SNR.
    pub fn with_rho_tilde(&self, rho_tilde: f64) -> Result<Self> {
        if !(rho_tilde.is_finite() && rho_tilde > 0.0) {
            return Err(invalid(format!("effective SNR must be positive, got {rho_tilde}")));
        }
        Ok(Self { rho_tilde, ..self.clone() })
    }

    pub fn len(&self) -> usize {
        self.y_hat_r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y_hat_r.is_empty()
    }

    pub fn rho_tilde(&self) -> f64 {
        self.rho_tilde
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn y_hat_r(&self) -> &[f64] {
        &self.y_hat_r
    }

    pub fn y_hat_i(&self) -> &[f64] {
        &self.y_hat_i
    }

    pub fn f_r(&self) -> &[[f64; 2]] {
        &self.f_r
    }

    pub fn f_i(&self) -> &[[f64; 2]] {
        &self.f_i
    }

    /// `2 * (1/sqrt(2)) * sqrt(rho~)`: the factor between a sign half and its CDF argument.
    #[inline]
    fn arg_scale(&self) -> f64 {
        (2.0 * self.rho_tilde).sqrt()
    }

    #[inline]
    fn terms(&self) -> impl Iterator<Item = (f64, &[f64; 2])> + '_ {
        self.y_hat_r
            .iter()
            .zip(&self.f_r)
            .chain(self.y_hat_i.iter().zip(&self.f_i))
            .map(|(&s, f)| (s, f))
    }
}

#[inline]
fn dot2(f: &[f64; 2], g: &[f64; 2]) -> f64 {
    f[0] * g[0] + f[1] * g[1]
}

/// Pseudo log-likelihood at fading vector `g`.
pub fn log_likelihood(ctx: &LikelihoodContext, g: FadingVector) -> f64 {
    let scaled = g.scaled(ctx.arg_scale()).0;
    ctx.terms().map(|(s, f)| log_ncdf(s * dot2(f, &scaled))).sum()
}

/// Analytic gradient of [`log_likelihood`].
pub fn log_likelihood_gradient(ctx: &LikelihoodContext, g: FadingVector) -> [f64; 2] {
    let scale = ctx.arg_scale();
    let scaled = g.scaled(scale).0;
    let mut grad = [0.0; 2];
    for (s, f) in ctx.terms() {
        let w = s * ncdf_ratio(s * dot2(f, &scaled));
        grad[0] += w * f[0];
        grad[1] += w * f[1];
    }
    [grad[0] * scale, grad[1] * scale]
}

/// Value and gradient in one pass over the samples.
pub fn log_likelihood_with_gradient(ctx: &LikelihoodContext, g: FadingVector) -> (f64, [f64; 2]) {
    let scale = ctx.arg_scale();
    let scaled = g.scaled(scale).0;
    let mut value = 0.0;
    let mut grad = [0.0; 2];
    for (s, f) in ctx.terms() {
        let (v, r) = log_ncdf_and_ratio(s * dot2(f, &scaled));
        value += v;
        let w = s * r;
        grad[0] += w * f[0];
        grad[1] += w * f[1];
    }
    (value, [grad[0] * scale, grad[1] * scale])
}

fn check_dims(obs: &QuantizedObservation, pilot: &PilotSequence, params: &SystemParams) -> Result<()> {
    if pilot.len() != params.n() {
        return Err(invalid(format!(
            "pilot has {} symbols, expected {}",
            pilot.len(),
            params.n()
        )));
    }
    if obs.len() != params.observation_len() {
        return Err(invalid(format!(
            "observation has {} samples, expected {}",
            obs.len(),
            params.observation_len()
        )));
    }
    Ok(())
}

fn check_doa(params: &SystemParams, theta: f64) -> Result<()> {
    if !params.contains_doa(theta) {
        return Err(invalid(format!(
            "DOA hypothesis {theta} lies outside [{}, {}]",
            params.theta_min(),
            params.theta_max()
        )));
    }
    Ok(())
}

/// Builds the likelihood context at hypothesis `theta`.
pub fn build_context(
    obs: &QuantizedObservation,
    pilot: &PilotSequence,
    params: &SystemParams,
    theta: f64,
) -> Result<LikelihoodContext> {
    check_dims(obs, pilot, params)?;
    check_doa(params, theta)?;
    let mut a = vec![Complex64::new(0.0, 0.0); params.m()];
    steering_into(theta, params.d_over_lambda(), &mut a);
    context_from_steering(obs, pilot, params, theta, &a)
}

/// Context at `theta` given its already computed steering vector `a`.
pub(crate) fn context_from_steering(
    obs: &QuantizedObservation,
    pilot: &PilotSequence,
    params: &SystemParams,
    theta: f64,
    a: &[Complex64],
) -> Result<LikelihoodContext> {
    let c0 = params.c0();
    let mut x = Vec::with_capacity(obs.len());
    for &xn in pilot.as_slice() {
        let weighted = xn * c0;
        x.extend(a.iter().map(|&am| weighted * am));
    }
    LikelihoodContext::from_samples(&obs.y_hat, &x, params.rho_tilde(), theta)
}

/// `X^H y_hat = sum_n conj(x_n) y_hat_block(n)`, an `M`-vector.
pub fn pilot_matched_filter(
    obs: &QuantizedObservation,
    pilot: &PilotSequence,
    m: usize,
) -> Result<Vec<Complex64>> {
    if obs.len() != m * pilot.len() {
        return Err(invalid(format!(
            "observation has {} samples, expected {}",
            obs.len(),
            m * pilot.len()
        )));
    }
    let mut z = vec![Complex64::new(0.0, 0.0); m];
    for (block, &xn) in obs.y_hat.chunks_exact(m).zip(pilot.as_slice()) {
        let xc = xn.conj();
        for (zm, &y) in z.iter_mut().zip(block) {
            *zm += xc * y;
        }
    }
    Ok(z)
}

/// ZF start projected on `a`: `a^H (X^H y_hat / (N sqrt(rho~))) / (c_0 M)`.
pub(crate) fn zf_from_matched(matched: &[Complex64], a: &[Complex64], params: &SystemParams) -> FadingVector {
    let proj: Complex64 = a.iter().zip(matched).map(|(am, zm)| am.conj() * zm).sum();
    let denom = params.n() as f64 * params.rho_tilde().sqrt() * params.c0() * params.m() as f64;
    FadingVector::from_complex(proj / denom)
}

/// Zero-forcing starting point for the fading coefficient at DOA `theta`.
pub fn zf_init(
    obs: &QuantizedObservation,
    pilot: &PilotSequence,
    params: &SystemParams,
    theta: f64,
) -> Result<FadingVector> {
    check_dims(obs, pilot, params)?;
    let matched = pilot_matched_filter(obs, pilot, params.m())?;
    let mut a = vec![Complex64::new(0.0, 0.0); params.m()];
    steering_into(theta, params.d_over_lambda(), &mut a);
    Ok(zf_from_matched(&matched, &a, params))
}
