//! Rician multipath channel, pilot, and one-bit receiver model.
//!
//! The array sees `y = sqrt(rho) * (x ⊗ h) + n` where `h` is a weighted sum of
//! plane-wave paths `g_l * a(theta_l)`. Each real and imaginary part of `y` is
//! then reduced to its sign, so every observed sample is a QPSK point.
//!
//! The Kronecker-structured pilot matrix is never materialized. Sample `k` of
//! the vectorized observation corresponds to time slot `k / M` and antenna
//! `k % M`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{invalid, Error, Result};

/// Default DOA domain used throughout the simulations: `[-pi/3, pi/3]`.
pub const DEFAULT_THETA_MIN: f64 = -PI / 3.0;
pub const DEFAULT_THETA_MAX: f64 = PI / 3.0;

/// Scalar model parameters.
///
/// The pseudo-likelihood treats NLOS paths plus noise as white Gaussian with
/// variance `sigma_sq`; `rho_tilde = snr / sigma_sq` is the effective SNR of
/// the LOS term under that approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    m: usize,
    n: usize,
    l: usize,
    k_factor: f64,
    snr: f64,
    theta_min: f64,
    theta_max: f64,
    d_over_lambda: f64,
    sigma_sq: f64,
    rho_tilde: f64,
}

impl SystemParams {
    /// Creates parameters with the default DOA domain and half-wavelength spacing.
    ///
    /// `k_factor` and `snr` are linear, not dB.
    pub fn new(m: usize, n: usize, l: usize, k_factor: f64, snr: f64) -> Result<Self> {
        Self::with_geometry(
            m,
            n,
            l,
            k_factor,
            snr,
            DEFAULT_THETA_MIN,
            DEFAULT_THETA_MAX,
            0.5,
        )
    }

    #[allow(clippy::too_many_arguments)]
    pub fn with_geometry(
        m: usize,
        n: usize,
        l: usize,
        k_factor: f64,
        snr: f64,
        theta_min: f64,
        theta_max: f64,
        d_over_lambda: f64,
    ) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(invalid(format!("M and N must be positive (M={m}, N={n})")));
        }
        if !(k_factor.is_finite() && k_factor > 0.0) {
            return Err(invalid(format!("Rician K must be positive, got {k_factor}")));
        }
        if !(snr.is_finite() && snr > 0.0) {
            return Err(invalid(format!("SNR must be positive, got {snr}")));
        }
        if !(theta_min.is_finite() && theta_max.is_finite() && theta_min < theta_max) {
            return Err(invalid(format!(
                "DOA domain must satisfy theta_min < theta_max, got [{theta_min}, {theta_max}]"
            )));
        }
        if theta_min <= -FRAC_PI_2 || theta_max >= FRAC_PI_2 {
            return Err(invalid(format!(
                "DOA domain [{theta_min}, {theta_max}] must lie inside (-pi/2, pi/2)"
            )));
        }
        if !(d_over_lambda.is_finite() && d_over_lambda > 0.0) {
            return Err(invalid(format!(
                "element spacing must be positive, got {d_over_lambda}"
            )));
        }
        let sigma_sq = if l == 0 { 1.0 } else { snr / (k_factor + 1.0) + 1.0 };
        Ok(Self {
            m,
            n,
            l,
            k_factor,
            snr,
            theta_min,
            theta_max,
            d_over_lambda,
            sigma_sq,
            rho_tilde: snr / sigma_sq,
        })
    }

    /// Same geometry and channel statistics at a different SNR.
    pub fn at_snr(&self, snr: f64) -> Result<Self> {
        Self::with_geometry(
            self.m,
            self.n,
            self.l,
            self.k_factor,
            snr,
            self.theta_min,
            self.theta_max,
            self.d_over_lambda,
        )
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn l(&self) -> usize {
        self.l
    }
    pub fn k_factor(&self) -> f64 {
        self.k_factor
    }
    pub fn snr(&self) -> f64 {
        self.snr
    }
    pub fn theta_min(&self) -> f64 {
        self.theta_min
    }
    pub fn theta_max(&self) -> f64 {
        self.theta_max
    }
    pub fn d_over_lambda(&self) -> f64 {
        self.d_over_lambda
    }
    pub fn sigma_sq(&self) -> f64 {
        self.sigma_sq
    }
    pub fn rho_tilde(&self) -> f64 {
        self.rho_tilde
    }

    /// LOS path weight `c_0`.
    pub fn c0(&self) -> f64 {
        los_weight(self.k_factor, self.l)
    }

    /// Length of the vectorized observation, `M * N`.
    pub fn observation_len(&self) -> usize {
        self.m * self.n
    }

    pub fn contains_doa(&self, theta: f64) -> bool {
        theta >= self.theta_min && theta <= self.theta_max
    }
}

/// ULA response `a(theta)`; element `m` is `exp(-j 2 pi (d/lambda) m sin(theta))`.
pub fn steering_vector(theta: f64, m: usize, d_over_lambda: f64) -> Result<Vec<Complex64>> {
    if m == 0 {
        return Err(invalid("steering vector needs at least one element"));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); m];
    steering_into(theta, d_over_lambda, &mut out);
    Ok(out)
}

/// Writes `a(theta)` into `out`, whose length sets the element count.
pub(crate) fn steering_into(theta: f64, d_over_lambda: f64, out: &mut [Complex64]) {
    let step = -2.0 * PI * d_over_lambda * theta.sin();
    for (m, a) in out.iter_mut().enumerate() {
        *a = Complex64::cis(step * m as f64);
    }
}

fn los_weight(k_factor: f64, l: usize) -> f64 {
    if l == 0 {
        1.0
    } else {
        (k_factor / (k_factor + 1.0)).sqrt()
    }
}

/// Path weights `c_0..c_L` for a Rician channel with `L` NLOS paths.
///
/// With `L = 0` the channel is pure LOS and the single weight is 1.
pub fn rician_weights(k_factor: f64, l: usize) -> Result<Vec<f64>> {
    if !(k_factor.is_finite() && k_factor > 0.0) {
        return Err(invalid(format!("Rician K must be positive, got {k_factor}")));
    }
    let mut weights = Vec::with_capacity(l + 1);
    weights.push(los_weight(k_factor, l));
    if l > 0 {
        let c = (1.0 / (l as f64 * (k_factor + 1.0))).sqrt();
        weights.extend(std::iter::repeat_n(c, l));
    }
    Ok(weights)
}

/// One draw of the multipath channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub gains: Vec<Complex64>,
    pub doas: Vec<f64>,
    pub weights: Vec<f64>,
    /// Composite channel `sum_l c_l g_l a(theta_l)`.
    pub h: Vec<Complex64>,
    /// Unweighted LOS channel `g_0 a(theta_0)`, the estimation target.
    pub h0: Vec<Complex64>,
}

impl ChannelRealization {
    /// Builds the composite and LOS channels from per-path gains and DOAs.
    pub fn assemble(params: &SystemParams, gains: Vec<Complex64>, doas: Vec<f64>) -> Result<Self> {
        let paths = params.l() + 1;
        if gains.len() != paths || doas.len() != paths {
            return Err(invalid(format!(
                "expected {paths} path gains and DOAs, got {} and {}",
                gains.len(),
                doas.len()
            )));
        }
        let weights = rician_weights(params.k_factor(), params.l())?;
        let m = params.m();
        let mut h = vec![Complex64::new(0.0, 0.0); m];
        let mut h0 = vec![Complex64::new(0.0, 0.0); m];
        let mut a = vec![Complex64::new(0.0, 0.0); m];
        for (path, ((&g, &theta), &c)) in gains.iter().zip(&doas).zip(&weights).enumerate() {
            steering_into(theta, params.d_over_lambda(), &mut a);
            for ((hm, h0m), &am) in h.iter_mut().zip(h0.iter_mut()).zip(&a) {
                let contribution = g * am;
                *hm += contribution * c;
                if path == 0 {
                    *h0m = contribution;
                }
            }
        }
        Ok(Self { gains, doas, weights, h, h0 })
    }

    pub fn los_gain(&self) -> Complex64 {
        self.gains[0]
    }

    pub fn los_doa(&self) -> f64 {
        self.doas[0]
    }
}

/// Draws a circularly-symmetric `CN(0, 1)` sample from two `N(0, 1/2)` reals.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
}

/// Draws gains `g_l ~ CN(0,1)` and DOAs `theta_l ~ Unif(Theta)` for all paths.
pub fn draw_channel<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> ChannelRealization {
    let paths = params.l() + 1;
    let mut gains = Vec::with_capacity(paths);
    let mut doas = Vec::with_capacity(paths);
    for _ in 0..paths {
        gains.push(complex_gaussian(rng));
        doas.push(rng.random_range(params.theta_min()..=params.theta_max()));
    }
    ChannelRealization::assemble(params, gains, doas).expect("path counts match params")
}

/// Like [`draw_channel`], but with the LOS DOA and gain held at given values.
///
/// The random stream is consumed exactly as in [`draw_channel`] so the NLOS
/// paths match an unconditioned draw from the same stream.
pub fn draw_channel_with_los<R: Rng + ?Sized>(
    params: &SystemParams,
    theta0: f64,
    g0: Complex64,
    rng: &mut R,
) -> Result<ChannelRealization> {
    if !params.contains_doa(theta0) {
        return Err(invalid(format!("fixed LOS DOA {theta0} lies outside the DOA domain")));
    }
    let drawn = draw_channel(params, rng);
    let mut gains = drawn.gains;
    let mut doas = drawn.doas;
    gains[0] = g0;
    doas[0] = theta0;
    ChannelRealization::assemble(params, gains, doas)
}

/// Unit-modulus pilot sequence `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct PilotSequence(Vec<Complex64>);

impl PilotSequence {
    pub fn new(x: Vec<Complex64>) -> Result<Self> {
        if x.is_empty() {
            return Err(invalid("pilot must have at least one symbol"));
        }
        if let Some((i, v)) = x.iter().enumerate().find(|(_, v)| (v.norm() - 1.0).abs() > 1e-12) {
            return Err(invalid(format!("pilot symbol {i} = {v} is not unit modulus")));
        }
        Ok(Self(x))
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Last column of the size-`N` DFT matrix: `x_n = exp(-j 2 pi n (N-1) / N)`.
pub fn dft_pilot(n: usize) -> Result<PilotSequence> {
    if n == 0 {
        return Err(invalid("pilot length must be positive"));
    }
    let x = (0..n)
        .map(|i| {
            // Reduce the index product mod N first so the phase stays small.
            let k = (i * (n - 1)) % n;
            Complex64::cis(-2.0 * PI * k as f64 / n as f64)
        })
        .collect();
    Ok(PilotSequence(x))
}

/// One-bit quantized received signal.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedObservation {
    /// QPSK points `(±1 ± j)/sqrt(2)`, length `M * N`.
    pub y_hat: Vec<Complex64>,
    /// Unquantized signal, kept for debugging when available.
    pub y: Option<Vec<Complex64>>,
}

impl QuantizedObservation {
    /// Wraps an already-quantized vector, checking every sample is a QPSK point.
    pub fn from_quantized(y_hat: Vec<Complex64>) -> Result<Self> {
        for (k, v) in y_hat.iter().enumerate() {
            if v.re.abs() != FRAC_1_SQRT_2 || v.im.abs() != FRAC_1_SQRT_2 {
                return Err(invalid(format!("sample {k} = {v} is not a QPSK point")));
            }
        }
        Ok(Self { y_hat, y: None })
    }

    /// Quantizes an unquantized signal and keeps it alongside.
    pub fn from_unquantized(y: Vec<Complex64>) -> Result<Self> {
        let y_hat = quantize(&y)?;
        Ok(Self { y_hat, y: Some(y) })
    }

    pub fn len(&self) -> usize {
        self.y_hat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y_hat.is_empty()
    }
}

#[inline]
fn sign(v: f64) -> f64 {
    if v >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Element-wise zero-threshold one-bit quantizer, `(sgn(Re) + j sgn(Im)) / sqrt(2)`.
///
/// `sgn(0)` is taken as `+1`.
pub fn quantize(y: &[Complex64]) -> Result<Vec<Complex64>> {
    y.iter()
        .enumerate()
        .map(|(k, v)| {
            if v.re.is_nan() || v.im.is_nan() {
                Err(Error::Domain(format!("cannot quantize NaN sample at index {k}")))
            } else {
                Ok(Complex64::new(
                    sign(v.re) * FRAC_1_SQRT_2,
                    sign(v.im) * FRAC_1_SQRT_2,
                ))
            }
        })
        .collect()
}

/// `y = sqrt(rho) (x ⊗ h) + noise`, then quantized.
pub fn synthesize_with_noise(
    params: &SystemParams,
    channel: &ChannelRealization,
    pilot: &PilotSequence,
    noise: &[Complex64],
) -> Result<QuantizedObservation> {
    let (m, n) = (params.m(), params.n());
    if channel.h.len() != m {
        return Err(invalid(format!("channel has {} antennas, expected {m}", channel.h.len())));
    }
    if pilot.len() != n {
        return Err(invalid(format!("pilot has {} symbols, expected {n}", pilot.len())));
    }
    if noise.len() != m * n {
        return Err(invalid(format!("noise has {} samples, expected {}", noise.len(), m * n)));
    }
    let amp = params.snr().sqrt();
    let mut y = Vec::with_capacity(m * n);
    for &xn in pilot.as_slice() {
        let scaled = xn * amp;
        y.extend(channel.h.iter().map(|&hm| scaled * hm));
    }
    for (yk, &nk) in y.iter_mut().zip(noise) {
        *yk += nk;
    }
    QuantizedObservation::from_unquantized(y)
}

/// Draws `CN(0, I)` noise from `rng` and synthesizes the quantized observation.
pub fn synthesize_observation<R: Rng + ?Sized>(
    params: &SystemParams,
    channel: &ChannelRealization,
    pilot: &PilotSequence,
    rng: &mut R,
) -> Result<QuantizedObservation> {
    let noise: Vec<Complex64> = (0..params.observation_len())
        .map(|_| complex_gaussian(rng))
        .collect();
    synthesize_with_noise(params, channel, pilot, &noise)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_cvec_close(got: &[Complex64], want: &[Complex64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).norm() <= tol, "got {g}, want {w}");
        }
    }

    #[test]
    fn params_derived_variance() {
        let p = SystemParams::new(24, 15, 5, 10f64.powf(1.35), 10.0).unwrap();
        assert_abs_diff_eq!(p.sigma_sq(), 10.0 / (10f64.powf(1.35) + 1.0) + 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.rho_tilde() * p.sigma_sq(), p.snr(), epsilon = 1e-14);
        let los = SystemParams::new(24, 15, 0, 10.0, 1000.0).unwrap();
        assert_eq!(los.sigma_sq(), 1.0);
        assert_eq!(los.rho_tilde(), 1000.0);
        assert_eq!(los.c0(), 1.0);
    }

    #[test]
    fn params_rejects_bad_input() {
        assert!(SystemParams::new(0, 1, 0, 1.0, 1.0).is_err());
        assert!(SystemParams::new(1, 0, 0, 1.0, 1.0).is_err());
        assert!(SystemParams::new(1, 1, 0, 0.0, 1.0).is_err());
        assert!(SystemParams::new(1, 1, 0, 1.0, -1.0).is_err());
        assert!(SystemParams::with_geometry(1, 1, 0, 1.0, 1.0, 0.5, 0.1, 0.5).is_err());
        assert!(SystemParams::with_geometry(1, 1, 0, 1.0, 1.0, -2.0, 0.1, 0.5).is_err());
    }

    #[test]
    fn steering_examples() {
        assert_cvec_close(&steering_vector(0.0, 4, 0.5).unwrap(), &[c(1.0, 0.0); 4], 0.0);
        assert_cvec_close(
            &steering_vector(FRAC_PI_2, 2, 0.5).unwrap(),
            &[c(1.0, 0.0), c(-1.0, 0.0)],
            1e-15,
        );
        assert_cvec_close(
            &steering_vector(PI / 6.0, 3, 0.5).unwrap(),
            &[c(1.0, 0.0), c(0.0, -1.0), c(-1.0, 0.0)],
            1e-15,
        );
        assert!(matches!(steering_vector(0.1, 0, 0.5), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn rician_weight_examples() {
        let w = rician_weights(1.0, 1).unwrap();
        assert_abs_diff_eq!(w[0], 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(w[1], 0.5f64.sqrt(), epsilon = 1e-15);

        // 50-digit reference values for K = 13.5 dB, L = 5.
        let w = rician_weights(10f64.powf(1.35), 5).unwrap();
        assert_eq!(w.len(), 6);
        assert_abs_diff_eq!(w[0], 0.978_387_238_701_253_7, epsilon = 1e-13);
        for &cl in &w[1..] {
            assert_abs_diff_eq!(cl, 0.092_475_306_051_438_47, epsilon = 1e-13);
        }

        assert_eq!(rician_weights(7.3, 0).unwrap(), vec![1.0]);
        assert!(rician_weights(0.0, 2).is_err());
    }

    #[test]
    fn dft_pilot_examples() {
        assert_cvec_close(dft_pilot(1).unwrap().as_slice(), &[c(1.0, 0.0)], 0.0);
        assert_cvec_close(
            dft_pilot(4).unwrap().as_slice(),
            &[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)],
            1e-15,
        );
        assert_cvec_close(
            dft_pilot(2).unwrap().as_slice(),
            &[c(1.0, 0.0), c(-1.0, 0.0)],
            1e-15,
        );
        assert!(dft_pilot(0).is_err());
    }

    #[test]
    fn pilot_rejects_non_unit() {
        assert!(PilotSequence::new(vec![c(1.0, 0.0), c(0.5, 0.0)]).is_err());
        assert!(PilotSequence::new(vec![]).is_err());
    }

    #[test]
    fn quantize_examples() {
        let s = FRAC_1_SQRT_2;
        assert_eq!(quantize(&[c(0.3, -0.7)]).unwrap(), vec![c(s, -s)]);
        assert_eq!(quantize(&[c(0.0, 0.0)]).unwrap(), vec![c(s, s)]);
        assert_eq!(
            quantize(&[c(-2.0, 0.1), c(5.0, -5.0)]).unwrap(),
            vec![c(-s, s), c(s, -s)]
        );
        assert!(matches!(quantize(&[c(f64::NAN, 1.0)]), Err(Error::Domain(_))));
    }

    #[test]
    fn quantize_is_idempotent() {
        let y = vec![c(0.3, -0.7), c(-1e-300, 0.0), c(4.0, 4.0)];
        let once = quantize(&y).unwrap();
        assert_eq!(quantize(&once).unwrap(), once);
    }

    #[test]
    fn noiseless_single_sample() {
        let p = SystemParams::new(1, 1, 0, 1.0, 1e6).unwrap();
        let channel = ChannelRealization::assemble(&p, vec![c(1.0, 0.0)], vec![0.0]).unwrap();
        let pilot = PilotSequence::new(vec![c(1.0, 0.0)]).unwrap();
        let obs = synthesize_with_noise(&p, &channel, &pilot, &[c(0.0, 0.0)]).unwrap();
        assert_eq!(obs.y_hat, vec![c(FRAC_1_SQRT_2, FRAC_1_SQRT_2)]);
    }

    #[test]
    fn synthesize_rejects_dimension_mismatch() {
        let p = SystemParams::new(2, 3, 0, 1.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let channel = draw_channel(&p, &mut rng);
        let bad_pilot = dft_pilot(2).unwrap();
        assert!(synthesize_observation(&p, &channel, &bad_pilot, &mut rng).is_err());
    }

    #[test]
    fn channel_assembly_matches_paths() {
        let p = SystemParams::new(6, 2, 3, 4.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ch = draw_channel(&p, &mut rng);
        let mut h = vec![c(0.0, 0.0); 6];
        for l in 0..4 {
            let a = steering_vector(ch.doas[l], 6, 0.5).unwrap();
            for (hm, am) in h.iter_mut().zip(&a) {
                *hm += ch.weights[l] * ch.gains[l] * am;
            }
        }
        assert_cvec_close(&ch.h, &h, 1e-12);
        let a0 = steering_vector(ch.doas[0], 6, 0.5).unwrap();
        let h0: Vec<_> = a0.iter().map(|a| ch.gains[0] * a).collect();
        assert_cvec_close(&ch.h0, &h0, 1e-12);
    }

    #[test]
    fn fixed_los_keeps_nlos_paths() {
        let p = SystemParams::new(4, 2, 2, 4.0, 1.0).unwrap();
        let free = draw_channel(&p, &mut ChaCha8Rng::seed_from_u64(3));
        let fixed =
            draw_channel_with_los(&p, 0.2, c(0.5, -0.5), &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(fixed.doas[0], 0.2);
        assert_eq!(fixed.gains[0], c(0.5, -0.5));
        assert_eq!(fixed.doas[1..], free.doas[1..]);
        assert_eq!(fixed.gains[1..], free.gains[1..]);
        assert!(draw_channel_with_los(&p, 1.5, c(1.0, 0.0), &mut ChaCha8Rng::seed_from_u64(3)).is_err());
    }

    #[test]
    fn gain_and_doa_statistics() {
        let p = SystemParams::new(1, 1, 0, 1.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let draws = 100_000;
        let (mut power, mut theta_sum) = (0.0, 0.0);
        for _ in 0..draws {
            let ch = draw_channel(&p, &mut rng);
            power += ch.gains[0].norm_sqr();
            theta_sum += ch.doas[0];
        }
        assert_abs_diff_eq!(power / draws as f64, 1.0, epsilon = 0.02);
        assert_abs_diff_eq!(theta_sum / draws as f64, 0.0, epsilon = 0.01);
    }

    #[test]
    fn noise_variance() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let draws = 100_000;
        let power: f64 = (0..draws).map(|_| complex_gaussian(&mut rng).norm_sqr()).sum();
        assert_abs_diff_eq!(power / draws as f64, 1.0, epsilon = 0.02);
    }

    #[test]
    fn seeded_draws_repeat() {
        let p = SystemParams::new(8, 4, 3, 5.0, 2.0).unwrap();
        let pilot = dft_pilot(4).unwrap();
        let run = || {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let ch = draw_channel(&p, &mut rng);
            let obs = synthesize_observation(&p, &ch, &pilot, &mut rng).unwrap();
            (ch, obs)
        };
        assert_eq!(run(), run());
    }
}
