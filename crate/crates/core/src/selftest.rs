//! Quick invariant checks behind `chanest selftest`.
//!
//! Each check draws from its own seeded stream and reports pass/fail with a
//! short detail line; nothing here panics on a failed check.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::estimators::{beamformer_output, mips_estimate, pml_estimate, sine_map, DoaGrid};
use crate::harness::{run_experiment, write_csv_to, ExperimentConfig};
use crate::likelihood::{
    build_context, log_likelihood, log_likelihood_gradient, GdmConfig, FadingVector,
};
use crate::seed::{substream, TAG_SELFTEST};
use crate::signal::{
    dft_pilot, draw_channel, quantize, rician_weights, steering_vector, synthesize_observation,
    synthesize_with_noise, SystemParams,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, result: Result<(bool, String)>) -> CheckOutcome {
    match result {
        Ok((passed, detail)) => CheckOutcome { name, passed, detail },
        Err(e) => CheckOutcome { name, passed: false, detail: format!("error: {e}") },
    }
}

fn rng(check: u64) -> ChaCha8Rng {
    substream(0x5e1f, TAG_SELFTEST, check)
}

fn random_instance(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
) -> Result<(SystemParams, crate::signal::PilotSequence, crate::signal::QuantizedObservation)> {
    let snr = 10f64.powf(rng.random_range(-1.0..2.0));
    let params = SystemParams::new(m, n, rng.random_range(0..3), 20.0, snr)?;
    let pilot = dft_pilot(n)?;
    let channel = draw_channel(&params, rng);
    let obs = synthesize_observation(&params, &channel, &pilot, rng)?;
    Ok((params, pilot, obs))
}

fn steering_unit_modulus() -> Result<(bool, String)> {
    let mut rng = rng(1);
    let mut worst = 0f64;
    for _ in 0..200 {
        let theta = rng.random_range(-1.5..1.5);
        for a in steering_vector(theta, rng.random_range(1..64), 0.5)? {
            worst = worst.max((a.norm() - 1.0).abs());
        }
    }
    Ok((worst <= 1e-12, format!("max | |a_m| - 1 | = {worst:.2e}")))
}

fn weights_normalized() -> Result<(bool, String)> {
    let mut worst = 0f64;
    for k in [0.01, 1.0, 22.4, 1e4] {
        for l in 0..8 {
            let s: f64 = rician_weights(k, l)?.iter().map(|c| c * c).sum();
            worst = worst.max((s - 1.0).abs());
        }
    }
    Ok((worst <= 1e-12, format!("max |sum c_l^2 - 1| = {worst:.2e}")))
}

fn quantizer_range() -> Result<(bool, String)> {
    let mut rng = rng(3);
    let y: Vec<Complex64> = (0..1000)
        .map(|_| Complex64::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)))
        .chain([Complex64::new(0.0, 0.0), Complex64::new(-0.0, 1.0)])
        .collect();
    let ok = quantize(&y)?
        .iter()
        .all(|q| q.re.abs() == FRAC_1_SQRT_2 && q.im.abs() == FRAC_1_SQRT_2);
    Ok((ok, "every output is (±1 ± j)/sqrt(2)".into()))
}

fn kronecker_layout() -> Result<(bool, String)> {
    let mut rng = rng(4);
    let params = SystemParams::new(5, 4, 2, 3.0, 2.0)?;
    let pilot = dft_pilot(4)?;
    let channel = draw_channel(&params, &mut rng);
    let zero = vec![Complex64::new(0.0, 0.0); 20];
    let obs = synthesize_with_noise(&params, &channel, &pilot, &zero)?;
    let y = obs.y.as_ref().expect("unquantized samples kept");
    let mut worst = 0f64;
    for (n, &xn) in pilot.as_slice().iter().enumerate() {
        for (m, &hm) in channel.h.iter().enumerate() {
            worst = worst.max((y[n * 5 + m] - 2f64.sqrt() * xn * hm).norm());
        }
    }
    Ok((worst <= 1e-12, format!("max |y_(nM+m) - sqrt(rho) x_n h_m| = {worst:.2e}")))
}

fn gradient_matches_differences() -> Result<(bool, String)> {
    let mut rng = rng(5);
    let mut worst = 0f64;
    for _ in 0..50 {
        let (params, pilot, obs) = random_instance(&mut rng, 6, 4)?;
        let ctx = build_context(&obs, &pilot, &params, rng.random_range(-1.0..1.0))?;
        let g = FadingVector::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let grad = log_likelihood_gradient(&ctx, g);
        let h = 1e-6;
        for (i, analytic) in grad.iter().enumerate() {
            let (mut up, mut down) = (g, g);
            up.0[i] += h;
            down.0[i] -= h;
            let fd = (log_likelihood(&ctx, up) - log_likelihood(&ctx, down)) / (2.0 * h);
            worst = worst.max((fd - analytic).abs() / analytic.abs().max(1.0));
        }
    }
    Ok((worst < 1e-6, format!("max relative error {worst:.2e}")))
}

fn chord_concavity() -> Result<(bool, String)> {
    let mut rng = rng(6);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..200 {
        let (params, pilot, obs) = random_instance(&mut rng, 4, 3)?;
        let ctx = build_context(&obs, &pilot, &params, rng.random_range(-1.0..1.0))?;
        let p = FadingVector::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let q = FadingVector::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let t: f64 = rng.random();
        let mid = FadingVector::new(t * p.0[0] + (1.0 - t) * q.0[0], t * p.0[1] + (1.0 - t) * q.0[1]);
        let chord = t * log_likelihood(&ctx, p) + (1.0 - t) * log_likelihood(&ctx, q);
        worst = worst.max(chord - log_likelihood(&ctx, mid));
    }
    Ok((worst <= 1e-9, format!("max chord excess {worst:.2e}")))
}

fn arcsine_collapse() -> Result<(bool, String)> {
    let mut rng = rng(7);
    let mut worst = 0f64;
    for _ in 0..20 {
        let (params, pilot, obs) = random_instance(&mut rng, 4, 4)?;
        let mn = obs.len();
        let outer = DMatrix::from_fn(mn, mn, |i, j| obs.y_hat[i] * obs.y_hat[j].conj());
        let cov = sine_map(&outer)?;
        for &theta in DoaGrid::for_params(3, &params)?.points() {
            let a = steering_vector(theta, params.m(), params.d_over_lambda())?;
            let v: Vec<Complex64> = pilot.as_slice().iter().flat_map(|&x| a.iter().map(move |&am| x * am)).collect();
            let direct: Complex64 = v.iter().zip(&obs.y_hat).map(|(vk, yk)| vk.conj() * yk).sum();
            worst = worst.max((beamformer_output(&cov, &v)? - direct.norm_sqr()).abs());
        }
    }
    Ok((worst <= 1e-9, format!("max |beamformer - |v^H y|^2| = {worst:.2e}")))
}

fn pml_dominates_mips() -> Result<(bool, String)> {
    let mut rng = rng(8);
    let gdm = GdmConfig::default();
    let mut ok = true;
    let mut worst_norm = 0f64;
    for _ in 0..5 {
        let (params, pilot, obs) = random_instance(&mut rng, 6, 4)?;
        let grid = DoaGrid::for_params(4, &params)?;
        let mips = mips_estimate(&obs, &pilot, &params, &grid, &gdm)?;
        let pml = pml_estimate(&obs, &pilot, &params, &grid, &gdm)?;
        let at_mips = log_likelihood(&build_context(&obs, &pilot, &params, mips.theta_hat)?, mips.g_hat);
        ok &= pml.diagnostics.objective >= at_mips;
        ok &= mips.diagnostics.gdm_runs == 1 && pml.diagnostics.gdm_runs == 16;
        for est in [&mips, &pml] {
            let norm: f64 = est.h0_hat.iter().map(|h| h.norm_sqr()).sum::<f64>().sqrt();
            let expect = est.g_hat.norm() * (params.m() as f64).sqrt();
            worst_norm = worst_norm.max((norm - expect).abs() / expect.max(1.0));
        }
    }
    ok &= worst_norm <= 1e-12;
    Ok((ok, format!("objective and GDM-count ordering held; norm identity error {worst_norm:.2e}")))
}

fn sweep_is_deterministic() -> Result<(bool, String)> {
    let base = ExperimentConfig {
        m: 4,
        n: 3,
        l: 1,
        snr_db: vec![0.0, 10.0],
        trials: 4,
        grid_bits: 3,
        lmmse_samples: 1_000,
        workers: 1,
        ..Default::default()
    };
    let render = |cfg: &ExperimentConfig| -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        write_csv_to(&run_experiment(cfg)?, &mut buf, std::path::Path::new("<memory>"))?;
        Ok(buf)
    };
    let first = render(&base)?;
    let again = render(&base)?;
    let parallel = render(&ExperimentConfig { workers: 3, ..base.clone() })?;
    Ok((first == again && first == parallel, format!("{} CSV bytes compared", first.len())))
}

/// Runs every check.
pub fn run_selftest() -> Vec<CheckOutcome> {
    vec![
        outcome("steering vectors have unit modulus", steering_unit_modulus()),
        outcome("Rician weights are normalized", weights_normalized()),
        outcome("quantizer maps into QPSK", quantizer_range()),
        outcome("observation follows x ⊗ h layout", kronecker_layout()),
        outcome("gradient matches finite differences", gradient_matches_differences()),
        outcome("log-likelihood is concave", chord_concavity()),
        outcome("sine-mapped beamformer equals |v^H y|^2", arcsine_collapse()),
        outcome("pML dominates MIPS, GDM counts, norm identity", pml_dominates_mips()),
        outcome("sweep output is deterministic", sweep_is_deterministic()),
    ]
}
