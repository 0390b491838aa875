//! Deterministic random substreams.
//!
//! Every stream is a ChaCha8 generator keyed by the master seed. The 64-bit
//! ChaCha stream id selects the substream: the top 16 bits carry a purpose tag
//! and the low 48 bits an index (trial number, SNR index). Substreams never
//! overlap, so results do not depend on which worker runs which trial.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Per-trial channel and noise draws.
pub const TAG_TRIAL: u16 = 1;
/// LMMSE covariance training, indexed by SNR position.
pub const TAG_LMMSE: u16 = 2;
/// Self-test instances.
pub const TAG_SELFTEST: u16 = 3;

const INDEX_MASK: u64 = (1 << 48) - 1;

pub fn substream(master_seed: u64, tag: u16, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(((tag as u64) << 48) | (index & INDEX_MASK));
    rng
}

pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    substream(master_seed, TAG_TRIAL, trial)
}
