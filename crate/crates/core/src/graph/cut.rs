use serde::Serialize;

use super::{Graph, NodeSet};
use crate::error::{Error, Result};

/// Edge-count statistics of a cut `(S, V∖S)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutStats {
    pub cut_weight: f64,
    pub vol_s: f64,
    pub vol_complement: f64,
    pub size_s: usize,
    /// `cut / min(vol_s, vol_complement)`; `None` when that minimum is zero.
    pub conductance: Option<f64>,
    /// `cut / min(|S|, n − |S|)`.
    pub expansion: f64,
}

pub fn cut_stats(g: &Graph, s: &NodeSet) -> Result<CutStats> {
    let n = g.node_count();
    if s.is_empty() || s.len() >= n {
        return Err(Error::UndefinedDenominator);
    }
    if s.as_slice().last().is_some_and(|&v| v >= n) {
        return Err(Error::InvalidInput("node id out of range".into()));
    }
    Ok(stats_from_mask(g, &s.mask(n), s.as_slice()))
}

pub(crate) fn stats_from_mask(g: &Graph, mask: &[bool], members: &[usize]) -> CutStats {
    let n = g.node_count();
    let mut cut = 0.0;
    let mut vol = 0.0;
    for &u in members {
        vol += g.degree(u);
        for (v, w) in g.neighbors(u) {
            if !mask[v] {
                cut += w;
            }
        }
    }
    let vol_c = g.total_volume() - vol;
    let size = members.len();
    CutStats {
        cut_weight: cut,
        vol_s: vol,
        vol_complement: vol_c,
        size_s: size,
        conductance: conductance_of(cut, vol, vol_c),
        expansion: cut / size.min(n - size) as f64,
    }
}

pub(crate) fn conductance_of(cut: f64, vol: f64, vol_c: f64) -> Option<f64> {
    let denom = vol.min(vol_c);
    (denom > 0.0).then(|| cut / denom)
}
