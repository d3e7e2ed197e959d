//! Sweep cuts over a degree-normalized ranking.

use std::sync::Arc;

use super::cut::{conductance_of, cut_stats};
use super::{CutStats, Graph, NodeSet};
use crate::error::{Error, Result};

/// Prefix statistics of a sweep. `order` lists the swept nodes; prefix `i`
/// holds the first `i + 1` of them.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub order: Arc<Vec<usize>>,
    pub cut: Vec<f64>,
    pub volume: Vec<f64>,
    pub conductance: Vec<Option<f64>>,
}

impl Sweep {
    pub fn len(&self) -> usize {
        self.conductance.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conductance.is_empty()
    }

    /// Length of the minimum-conductance prefix among those with volume at
    /// most `max_volume`; ties keep the shorter prefix.
    pub fn best_prefix(&self, max_volume: Option<f64>) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (i, c) in self.conductance.iter().enumerate() {
            let Some(c) = *c else { continue };
            if max_volume.is_some_and(|m| self.volume[i] > m) {
                continue;
            }
            if best.is_none_or(|(_, b)| c < b) {
                best = Some((i + 1, c));
            }
        }
        best
    }

    pub fn prefix_set(&self, len: usize) -> NodeSet {
        NodeSet::from_unsorted(self.order[..len].to_vec())
    }
}

/// Orders the ranked nodes by `ranking / degree` (descending, ties by id)
/// and records every proper prefix incrementally. Nodes of degree zero are
/// skipped; duplicate entries keep the first value.
pub fn sweep<I>(g: &Graph, ranking: I) -> Sweep
where
    I: IntoIterator<Item = (usize, f64)>,
{
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut keyed: Vec<(f64, usize)> = Vec::new();
    for (v, score) in ranking {
        if v >= n || seen[v] {
            continue;
        }
        seen[v] = true;
        let d = g.degree(v);
        if d > 0.0 {
            keyed.push((score / d, v));
        }
    }
    keyed.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let order: Vec<usize> = keyed.into_iter().map(|(_, v)| v).collect();

    let limit = order.len().min(n.saturating_sub(1));
    let total = g.total_volume();
    let mut inside = vec![false; n];
    let (mut cut, mut vol) = (0.0, 0.0);
    let mut out = Sweep {
        order: Arc::new(Vec::new()),
        cut: Vec::with_capacity(limit),
        volume: Vec::with_capacity(limit),
        conductance: Vec::with_capacity(limit),
    };
    for &u in &order[..limit] {
        let mut internal = 0.0;
        for (v, w) in g.neighbors(u) {
            if inside[v] {
                internal += w;
            }
        }
        inside[u] = true;
        cut += g.degree(u) - 2.0 * internal;
        vol += g.degree(u);
        out.cut.push(cut);
        out.volume.push(vol);
        out.conductance.push(conductance_of(cut, vol, total - vol));
    }
    out.order = Arc::new(order);
    out
}

/// Best-conductance prefix of the sweep over `ranking`.
pub fn sweep_cut<I>(g: &Graph, ranking: I) -> Result<(NodeSet, CutStats)>
where
    I: IntoIterator<Item = (usize, f64)>,
{
    let s = sweep(g, ranking);
    let (len, _) = s
        .best_prefix(None)
        .ok_or_else(|| Error::InvalidInput("ranking yields no proper prefix with defined conductance".into()))?;
    let set = s.prefix_set(len);
    let stats = cut_stats(g, &set)?;
    Ok((set, stats))
}
