//! Arcsine-law maps between quantized and unquantized correlation matrices.
//!
//! Both maps act on real and imaginary parts separately. For a one-bit
//! observation every entry of `y_hat y_hat^H` is one of `{±1, ±j}`, which the
//! sine map leaves unchanged, so the conventional beamformer built on
//! `sin(pi/2 * y_hat y_hat^H)` reduces to `|(x ⊗ a)^H y_hat|^2`.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Rounding slack past `±1`, e.g. `|(1+j)/sqrt(2)|^2 = 1.0000000000000002`.
const BOX_SLACK: f64 = 1e-12;

fn check_unit_box(c: &DMatrix<Complex64>) -> Result<()> {
    for (i, v) in c.iter().enumerate() {
        if !(v.re.abs() <= 1.0 + BOX_SLACK && v.im.abs() <= 1.0 + BOX_SLACK) {
            return Err(Error::Domain(format!(
                "entry {i} = {v} has a part outside [-1, 1]"
            )));
        }
    }
    Ok(())
}

fn clamp_unit(x: f64) -> f64 {
    x.clamp(-1.0, 1.0)
}

/// Element-wise `sin(pi/2 Re) + j sin(pi/2 Im)`.
pub fn sine_map(c: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    check_unit_box(c)?;
    Ok(c.map(|v| Complex64::new((FRAC_PI_2 * clamp_unit(v.re)).sin(), (FRAC_PI_2 * clamp_unit(v.im)).sin())))
}

/// Element-wise `(2/pi) arcsin` on real and imaginary parts.
pub fn arcsine_map(c: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    check_unit_box(c)?;
    Ok(c.map(|v| Complex64::new(FRAC_2_PI * clamp_unit(v.re).asin(), FRAC_2_PI * clamp_unit(v.im).asin())))
}

/// Beamformer output power `Re(v^H C v)`.
pub fn beamformer_output(c: &DMatrix<Complex64>, v: &[Complex64]) -> Result<f64> {
    if c.nrows() != v.len() || c.ncols() != v.len() {
        return Err(invalid(format!(
            "{}x{} matrix does not match vector of length {}",
            c.nrows(),
            c.ncols(),
            v.len()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &vj) in v.iter().enumerate() {
        let col: Complex64 = c.column(j).iter().zip(v).map(|(cij, vi)| vi.conj() * cij).sum();
        acc += col * vj;
    }
    Ok(acc.re)
}
