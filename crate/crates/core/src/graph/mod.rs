//! Undirected weighted graphs and the per-cut machinery built on them.

mod cut;
mod local;
mod maxflow;
mod mqi;
mod ppr;
mod resistance;
mod spectral;
mod sweep;
mod whiskers;

pub use cut::{cut_stats, CutStats};
pub use local::{local_spectral_cluster, local_sweeps, LocalCluster, ALPHA_GRID};
pub use maxflow::FlowNetwork;
pub use mqi::{mqi_improve, CAPACITY_SCALE};
pub use ppr::{ppr_push, PprVector};
pub use resistance::{edge_effective_resistance, EdgeResistance, RESISTANCE_NODE_LIMIT};
pub use spectral::{fiedler_vector, spectral_bisection, spectral_sweep};
pub use sweep::{sweep, sweep_cut, Sweep};
pub use whiskers::{bridges, whisker_decomposition, Whisker, WhiskerDecomposition};

use std::collections::VecDeque;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Undirected graph in compressed adjacency form. Neighbor lists are sorted,
/// weights positive, no self-loops, and every edge is stored in both
/// directions with equal weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
    degrees: Vec<f64>,
    total_volume: f64,
}

/// What [`Graph::from_edges`] dropped or merged while building.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BuildReport {
    pub self_loops_dropped: usize,
    pub parallel_merged: usize,
}

impl Graph {
    /// Builds a graph on `n` nodes. Self-loops are dropped and parallel edges
    /// merged by summing weights; both are counted in the report.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<(Self, BuildReport)>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut report = BuildReport::default();
        let mut list = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) out of range for {n} nodes")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) has weight {w}")));
            }
            if u == v {
                report.self_loops_dropped += 1;
                continue;
            }
            list.push((u.min(v), u.max(v), w));
        }
        list.sort_by_key(|&(u, v, _)| (u, v));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(list.len());
        for (u, v, w) in list {
            match merged.last_mut() {
                Some(last) if last.0 == u && last.1 == v => {
                    last.2 += w;
                    report.parallel_merged += 1;
                }
                _ => merged.push((u, v, w)),
            }
        }

        let mut counts = vec![0usize; n];
        for &(u, v, _) in &merged {
            counts[u] += 1;
            counts[v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + counts[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0usize; offsets[n]];
        let mut weights = vec![0.0; offsets[n]];
        for &(u, v, w) in &merged {
            targets[fill[u]] = v;
            weights[fill[u]] = w;
            fill[u] += 1;
            targets[fill[v]] = u;
            weights[fill[v]] = w;
            fill[v] += 1;
        }
        for i in 0..n {
            let range = offsets[i]..offsets[i + 1];
            let mut pairs: Vec<(usize, f64)> =
                targets[range.clone()].iter().copied().zip(weights[range.clone()].iter().copied()).collect();
            pairs.sort_by_key(|p| p.0);
            for (slot, (t, w)) in range.zip(pairs) {
                targets[slot] = t;
                weights[slot] = w;
            }
        }
        let degrees: Vec<f64> = (0..n).map(|i| weights[offsets[i]..offsets[i + 1]].iter().sum()).collect();
        let total_volume = degrees.iter().sum();
        Ok((Self { offsets, targets, weights, degrees, total_volume }, report))
    }

    /// Unit-weight graph; self-loops and duplicates are rejected.
    pub fn from_unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let (g, report) = Self::from_edges(n, edges.iter().map(|&(u, v)| (u, v, 1.0)))?;
        if report != BuildReport::default() {
            return Err(Error::InvalidInput("self-loop or duplicate edge".into()));
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: usize) -> f64 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// Number of neighbors (unweighted degree).
    pub fn neighbor_count(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn total_volume(&self) -> f64 {
        self.total_volume
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.offsets[v]..self.offsets[v + 1];
        self.targets[r.clone()].iter().copied().zip(self.weights[r].iter().copied())
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        let r = self.offsets[u]..self.offsets[u + 1];
        self.targets[r.clone()].binary_search(&v).ok().map(|i| self.weights[r.start + i])
    }

    /// Each undirected edge once, as `(u, v, w)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.node_count())
            .flat_map(move |u| self.neighbors(u).filter(move |&(v, _)| v > u).map(move |(v, w)| (u, v, w)))
    }

    /// Content hash of the adjacency structure.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Sha256::new();
        h.update((self.node_count() as u64).to_le_bytes());
        for (u, v, w) in self.edges() {
            h.update((u as u64).to_le_bytes());
            h.update((v as u64).to_le_bytes());
            h.update(w.to_bits().to_le_bytes());
        }
        let d = h.finalize();
        u64::from_le_bytes(d[..8].try_into().expect("8 bytes"))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for (v, _) in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() <= 1 || self.connected_components().len() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        let components = self.connected_components().len();
        if components > 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(())
    }

    /// Subgraph induced by `nodes`; local id `i` is `nodes[i]`.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = i;
        }
        let edges = nodes.iter().enumerate().flat_map(|(i, &u)| {
            let local = &local;
            self.neighbors(u)
                .filter(move |&(v, _)| local[v] != usize::MAX && local[v] > i)
                .map(move |(v, w)| (i, local[v], w))
        });
        Self::from_edges(nodes.len(), edges.collect::<Vec<_>>()).expect("valid subgraph").0
    }

    /// Relabels nodes so that `order[i]` becomes node `i`.
    pub fn relabel(&self, order: &[usize]) -> Graph {
        let mut new_id = vec![0usize; self.node_count()];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }
        let edges: Vec<_> = self.edges().map(|(u, v, w)| (new_id[u], new_id[v], w)).collect();
        Self::from_edges(self.node_count(), edges).expect("valid relabel").0
    }

    pub(crate) fn volume_of(&self, nodes: &[usize]) -> f64 {
        nodes.iter().map(|&v| self.degrees[v]).sum()
    }
}

/// Sorted, distinct node ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    /// Sorts and deduplicates; fails if any id is `>= n`.
    pub fn new(mut ids: Vec<usize>, n: usize) -> Result<Self> {
        ids.sort_unstable();
        ids.dedup();
        if let Some(&bad) = ids.last().filter(|&&v| v >= n) {
            return Err(Error::InvalidInput(format!("node {bad} out of range for {n} nodes")));
        }
        Ok(Self(ids))
    }

    pub(crate) fn from_sorted(ids: Vec<usize>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        Self(ids)
    }

    pub(crate) fn from_unsorted(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Self(ids)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &NodeSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn complement(&self, n: usize) -> NodeSet {
        let mask = self.mask(n);
        NodeSet((0..n).filter(|&v| !mask[v]).collect())
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.0 {
            m[v] = true;
        }
        m
    }
}
