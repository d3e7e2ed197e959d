//! Seeded importance sampling shared by the matrix samplers.

use rand::distr::{weighted::WeightedIndex, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Re-draws allowed after the first attempt when a sample is rank deficient.
pub const MAX_RESAMPLE_RETRIES: usize = 20;

/// Generator for `(seed, attempt)`; retries use separate ChaCha streams.
pub(crate) fn rng_for(seed: u64, attempt: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt as u64);
    rng
}

/// Draws `draws` indices with replacement and collapses duplicates.
/// Returns `(index, multiplicity)` sorted by index.
pub(crate) fn draw_with_replacement(probs: &[f64], draws: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>> {
    let dist = WeightedIndex::new(probs.iter().map(|p| p.max(0.0)))
        .map_err(|e| Error::InvalidInput(format!("bad sampling distribution: {e}")))?;
    let mut counts = vec![0usize; probs.len()];
    for _ in 0..draws {
        counts[dist.sample(rng)] += 1;
    }
    Ok(counts.into_iter().enumerate().filter(|&(_, c)| c > 0).collect())
}

/// Scale for an index drawn `count` times out of `draws` with probability
/// `p`: `sqrt(count / (draws · p))`, folding duplicate copies into one.
pub(crate) fn collapsed_scale(count: usize, draws: usize, p: f64) -> f64 {
    (count as f64 / (draws as f64 * p)).sqrt()
}
