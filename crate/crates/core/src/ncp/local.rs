//! Local spectral NCP: push-and-sweep from many seeds at many scales.

use rand::seq::index::sample;

use super::{Collector, Method, NcpProfile};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{local_sweeps, Graph};
use crate::sampling::rng_for;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedSelection {
    /// Evenly spaced ranks in the (degree desc, id asc) order.
    #[default]
    Stratified,
    /// Uniform without replacement, one stream per scale.
    Random(u64),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LocalNcpConfig {
    pub seed_selection: SeedSelection,
    pub exec: Exec,
}

/// Target volumes 4, 8, 16, ... up to half the total volume.
pub fn default_scales(g: &Graph) -> Vec<f64> {
    let half = g.total_volume() / 2.0;
    let mut out = Vec::new();
    let mut v = 4.0;
    while v <= half {
        out.push(v);
        v *= 2.0;
    }
    if out.is_empty() && half > 0.0 {
        out.push(half);
    }
    out
}

pub fn ncp_local_spectral(g: &Graph, seeds_per_scale: usize, scales: &[f64]) -> Result<NcpProfile> {
    ncp_local_spectral_with(g, seeds_per_scale, scales, LocalNcpConfig::default())
}

pub fn ncp_local_spectral_with(
    g: &Graph,
    seeds_per_scale: usize,
    scales: &[f64],
    config: LocalNcpConfig,
) -> Result<NcpProfile> {
    let half = g.total_volume() / 2.0;
    if let Some(bad) = scales.iter().find(|&&s| !(s > 0.0 && s <= half)) {
        return Err(Error::InvalidInput(format!("scale {bad} must lie in (0, {half}]")));
    }
    let mut candidates: Vec<usize> = (0..g.node_count()).filter(|&v| g.degree(v) > 0.0).collect();
    candidates.sort_by(|&a, &b| g.degree(b).total_cmp(&g.degree(a)).then(a.cmp(&b)));
    let per_scale = seeds_per_scale.min(candidates.len());

    let mut tasks = Vec::new();
    for (si, &scale) in scales.iter().enumerate() {
        let seeds: Vec<usize> = match config.seed_selection {
            SeedSelection::Stratified => (0..per_scale).map(|j| candidates[j * candidates.len() / per_scale]).collect(),
            SeedSelection::Random(seed) => {
                let mut rng = rng_for(seed, si);
                let mut picked: Vec<usize> =
                    sample(&mut rng, candidates.len(), per_scale).into_iter().map(|i| candidates[i]).collect();
                picked.sort_unstable();
                picked
            }
        };
        tasks.extend(seeds.into_iter().map(|s| (s, scale)));
    }

    let sweeps = config.exec.map(0..tasks.len(), |t| local_sweeps(g, tasks[t].0, tasks[t].1));
    let mut collector = Collector::new(g.node_count());
    for task in sweeps {
        for (_, s) in task? {
            collector.fold_sweep(&s, false);
        }
    }
    Ok(collector.finish(g, Method::LocalSpectral))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{cut_stats, NodeSet};

    #[test]
    fn cycle_half_point() {
        let g = cycle(12);
        let p = ncp_local_spectral(&g, 3, &default_scales(&g)).unwrap();
        assert!(p.get(6).unwrap() <= 2.0 / 12.0 + 1e-12);
    }

    #[test]
    fn stored_sets_recompute() {
        let g = lattice(6, 6);
        let p = ncp_local_spectral(&g, 4, &default_scales(&g)).unwrap();
        assert!(!p.is_empty());
        for (&k, pt) in &p.points {
            assert_eq!(pt.nodes.len(), k);
            let c = cut_stats(&g, &pt.nodes).unwrap().conductance.unwrap();
            assert!((c - pt.conductance).abs() <= 1e-12);
        }
    }

    #[test]
    fn sequential_matches_parallel() {
        let g = lattice(8, 5);
        let scales = default_scales(&g);
        let seq = ncp_local_spectral_with(
            &g,
            5,
            &scales,
            LocalNcpConfig { seed_selection: SeedSelection::Random(7), exec: Exec::Sequential },
        )
        .unwrap();
        let par = ncp_local_spectral_with(
            &g,
            5,
            &scales,
            LocalNcpConfig { seed_selection: SeedSelection::Random(7), exec: Exec::Parallel },
        )
        .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn barbell_triangle() {
        let g = barbell();
        let p = ncp_local_spectral(&g, 6, &[4.0, 7.0]).unwrap();
        assert_eq!(p.get(3), Some(1.0 / 7.0));
        assert!(p.points[&3].nodes == NodeSet::from_sorted(vec![0, 1, 2]));
    }

    #[test]
    fn scale_bounds() {
        let g = barbell();
        assert!(ncp_local_spectral(&g, 1, &[0.0]).is_err());
        assert!(ncp_local_spectral(&g, 1, &[7.5]).is_err());
    }
}
