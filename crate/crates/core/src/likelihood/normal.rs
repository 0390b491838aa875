//! Standard normal log-CDF and density-to-CDF ratio, stable deep in the lower tail.
//!
//! For `z >= TAIL_SWITCH` both quantities come from `erfc`. Below it, `Phi(z)`
//! is written as `phi(z) * R(-z)` where `R` is the Mills ratio (a scaled
//! complementary error function), evaluated with its Laplace continued
//! fraction. This keeps `log Phi` finite long after `Phi` itself underflows.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};

/// Below this argument the continued-fraction tail is used.
pub const TAIL_SWITCH: f64 = -6.0;

/// `ln(sqrt(2 pi))`
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
/// `1 / sqrt(2 pi)`
const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Mills ratio `R(x) = (1 - Phi(x)) / phi(x)` for `x >= 6`.
///
/// Backward evaluation of `1 / (x + 1/(x + 2/(x + 3/(x + ...))))`; 24 levels
/// reach double precision at `x = 6` and fewer are needed further out.
#[inline]
fn mills_ratio_tail(x: f64) -> f64 {
    let depth = if x < 12.0 { 24 } else { 12 };
    let mut acc = x;
    for k in (1..=depth).rev() {
        acc = x + k as f64 / acc;
    }
    1.0 / acc
}

#[inline]
fn half_erfc(x: f64) -> f64 {
    0.5 * libm::erfc(x)
}

/// `log Phi(z)` without error checking. NaN propagates.
#[inline]
pub(crate) fn log_ncdf(z: f64) -> f64 {
    if z < TAIL_SWITCH {
        let x = -z;
        -0.5 * x * x - LN_SQRT_2PI + mills_ratio_tail(x).ln()
    } else if z <= 0.0 {
        half_erfc(-z * FRAC_1_SQRT_2).ln()
    } else {
        (-half_erfc(z * FRAC_1_SQRT_2)).ln_1p()
    }
}

/// `phi(u) / Phi(u)`, the derivative of `log Phi` at `u`.
#[inline]
pub(crate) fn ncdf_ratio(u: f64) -> f64 {
    if u < TAIL_SWITCH {
        1.0 / mills_ratio_tail(-u)
    } else {
        INV_SQRT_2PI * (-0.5 * u * u).exp() / half_erfc(-u * FRAC_1_SQRT_2)
    }
}

/// `(log Phi(u), phi(u) / Phi(u))` sharing the tail evaluation.
#[inline]
pub(crate) fn log_ncdf_and_ratio(u: f64) -> (f64, f64) {
    if u < TAIL_SWITCH {
        let x = -u;
        let r = mills_ratio_tail(x);
        (-0.5 * x * x - LN_SQRT_2PI + r.ln(), 1.0 / r)
    } else if u <= 0.0 {
        let cdf = half_erfc(-u * FRAC_1_SQRT_2);
        (cdf.ln(), INV_SQRT_2PI * (-0.5 * u * u).exp() / cdf)
    } else {
        let upper = half_erfc(u * FRAC_1_SQRT_2);
        ((-upper).ln_1p(), INV_SQRT_2PI * (-0.5 * u * u).exp() / (1.0 - upper))
    }
}

/// Natural log of the standard normal CDF.
pub fn log_norm_cdf(z: f64) -> Result<f64> {
    if z.is_nan() {
        return Err(Error::Domain("log_norm_cdf of NaN".into()));
    }
    Ok(log_ncdf(z))
}

/// Standard normal density over CDF, `phi(u) / Phi(u)`.
pub fn norm_pdf_cdf_ratio(u: f64) -> Result<f64> {
    if u.is_nan() {
        return Err(Error::Domain("norm_pdf_cdf_ratio of NaN".into()));
    }
    Ok(ncdf_ratio(u))
}
