//! Local spectral clustering: push-based personalized ranking over an alpha
//! grid followed by volume-limited sweeps.

use serde::Serialize;

use super::{cut_stats, ppr_push, sweep, CutStats, Graph, NodeSet, Sweep};
use crate::error::{Error, Result};

/// Teleport probabilities tried for every seed.
pub const ALPHA_GRID: [f64; 4] = [0.01, 0.05, 0.15, 0.3];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalCluster {
    pub set: NodeSet,
    pub stats: CutStats,
    /// Teleport probability of the winning sweep.
    pub alpha: f64,
    pub epsilon: f64,
}

fn epsilon_for(target_volume: f64) -> f64 {
    1.0 / (10.0 * target_volume)
}

/// One sweep per alpha in [`ALPHA_GRID`], in grid order.
pub fn local_sweeps(g: &Graph, seed: usize, target_volume: f64) -> Result<Vec<(f64, Sweep)>> {
    let half = g.total_volume() / 2.0;
    if !(target_volume > 0.0 && target_volume <= half) {
        return Err(Error::InvalidInput(format!("target volume {target_volume} must lie in (0, {half}]")));
    }
    let eps = epsilon_for(target_volume);
    ALPHA_GRID
        .iter()
        .map(|&alpha| {
            let p = ppr_push(g, seed, alpha, eps)?;
            Ok((alpha, sweep(g, p.estimates)))
        })
        .collect()
}

/// Best-conductance sweep set of volume at most `2 · target_volume` over the
/// alpha grid, falling back to the best set of any volume.
pub fn local_spectral_cluster(g: &Graph, seed: usize, target_volume: f64) -> Result<LocalCluster> {
    let sweeps = local_sweeps(g, seed, target_volume)?;
    let pick = |cap: Option<f64>| {
        let mut best: Option<(f64, usize, usize)> = None;
        for (a, (_, s)) in sweeps.iter().enumerate() {
            if let Some((len, c)) = s.best_prefix(cap) {
                let better = best.is_none_or(|(bc, blen, _)| c < bc || (c == bc && len < blen));
                if better {
                    best = Some((c, len, a));
                }
            }
        }
        best
    };
    let eps = epsilon_for(target_volume);
    match pick(Some(2.0 * target_volume)).or_else(|| pick(None)) {
        Some((_, len, a)) => {
            let set = sweeps[a].1.prefix_set(len);
            let stats = cut_stats(g, &set)?;
            Ok(LocalCluster { set, stats, alpha: sweeps[a].0, epsilon: eps })
        }
        None => {
            let set = NodeSet::from_sorted(vec![seed]);
            let stats = cut_stats(g, &set)?;
            Ok(LocalCluster { set, stats, alpha: ALPHA_GRID[0], epsilon: eps })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn barbell_seed_in_triangle() {
        let g = barbell();
        let c = local_spectral_cluster(&g, 0, 7.0).unwrap();
        assert_eq!(c.set.as_slice(), &[0, 1, 2]);
        assert_eq!(c.stats.conductance, Some(1.0 / 7.0));
    }

    #[test]
    fn target_volume_bounds() {
        let g = barbell();
        assert!(local_spectral_cluster(&g, 0, 0.0).is_err());
        assert!(local_spectral_cluster(&g, 0, 8.0).is_err());
    }
}
