//! Channel estimation for large antenna arrays behind one-bit ADCs.
//!
//! The crate models a single-antenna transmitter sending a unit-modulus pilot
//! to an `M`-element uniform linear array over a Rician multipath channel, with
//! every receive sample reduced to the signs of its real and imaginary parts.
//! It estimates the dominant (LOS) path `h0 = g0 a(theta0)` with:
//!
//! * [`estimators::mips_estimate`]: DOA by maximum inner product search over a
//!   grid, then a single concave likelihood solve for `g0`;
//! * [`estimators::pml_estimate`]: the same concave solve at every grid DOA,
//!   keeping the best (pseudo-ML);
//! * [`estimators::lmmse_estimate`]: a linear baseline from sample covariances.
//!
//! [`harness::run_experiment`] runs seeded Monte-Carlo sweeps over SNR and
//! reports MSE and real-multiplication counts.

pub mod cost;
pub mod error;
pub mod estimators;
pub mod harness;
pub mod likelihood;
pub mod seed;
pub mod selftest;
pub mod signal;

pub use error::{Error, Result};
pub use num_complex;
