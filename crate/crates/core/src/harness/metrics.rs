//! Error metrics and the per-trial multiplication counter.

use num_complex::Complex64;

use crate::error::{invalid, Result};

fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(invalid(format!("{a} estimates but {b} truths")));
    }
    if a == 0 {
        return Err(invalid("no trials to average"));
    }
    Ok(())
}

/// `(1/M) mean_t ||h0_hat_t - h0_t||^2`.
pub fn mse_channel<E, T>(estimates: &[E], truths: &[T]) -> Result<f64>
where
    E: AsRef<[Complex64]>,
    T: AsRef<[Complex64]>,
{
    check_lengths(estimates.len(), truths.len())?;
    let m = truths[0].as_ref().len();
    let mut total = 0.0;
    for (est, truth) in estimates.iter().zip(truths) {
        let (est, truth) = (est.as_ref(), truth.as_ref());
        if est.len() != m || truth.len() != m {
            return Err(invalid(format!(
                "channel vectors of length {} and {} where {m} was expected",
                est.len(),
                truth.len()
            )));
        }
        total += est.iter().zip(truth).map(|(e, t)| (e - t).norm_sqr()).sum::<f64>();
    }
    Ok(total / (m * estimates.len()) as f64)
}

/// Mean squared DOA error in rad², without wrapping.
pub fn mse_doa(estimates: &[f64], truths: &[f64]) -> Result<f64> {
    check_lengths(estimates.len(), truths.len())?;
    let sum: f64 = estimates.iter().zip(truths).map(|(e, t)| (e - t).powi(2)).sum();
    Ok(sum / estimates.len() as f64)
}

/// Mean squared complex fading error `|g_hat - g|^2`.
pub fn mse_fading(estimates: &[Complex64], truths: &[Complex64]) -> Result<f64> {
    check_lengths(estimates.len(), truths.len())?;
    let sum: f64 = estimates.iter().zip(truths).map(|(e, t)| (e - t).norm_sqr()).sum();
    Ok(sum / estimates.len() as f64)
}

/// Real multiplications charged to one estimator within one trial.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MultCounter(u64);

impl MultCounter {
    pub fn new() -> Self {
        Self(0)
    }

    pub fn add(&mut self, mults: u64) {
        self.0 = self.0.checked_add(mults).expect("multiplication count overflow");
    }

    pub fn total(&self) -> u64 {
        self.0
    }
}
