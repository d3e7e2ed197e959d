//! Network community profiles: the best conductance found for every set
//! size, by several probes, plus synthetic graph generators.

mod bisect;
mod bow;
mod exhaustive;
mod generate;
mod local;

pub use bisect::ncp_bisect_mqi;
pub use bow::{bag_of_whiskers_exact, ncp_bag_of_whiskers, EXACT_WHISKER_LIMIT};
pub use exhaustive::{ncp_exhaustive, ncp_exhaustive_with, ExhaustiveNcp, EXHAUSTIVE_NODE_LIMIT};
pub use generate::{generate, GenModel, GenSpec, GeneratedGraph};
pub use local::{default_scales, ncp_local_spectral, ncp_local_spectral_with, LocalNcpConfig, SeedSelection};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{cut_stats, Graph, NodeSet, Sweep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    LocalSpectral,
    BisectMqi,
    BagOfWhiskers,
    /// Exact minimum over all subsets.
    Exhaustive,
    /// Exact minimum over connected subsets.
    ExhaustiveConnected,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::LocalSpectral => "local-spectral",
            Method::BisectMqi => "bisect-mqi",
            Method::BagOfWhiskers => "bag-of-whiskers",
            Method::Exhaustive => "exhaustive",
            Method::ExhaustiveConnected => "exhaustive-connected",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NcpPoint {
    pub conductance: f64,
    pub nodes: NodeSet,
    pub method: Method,
}

impl NcpPoint {
    /// Total order used for every min-reduction: conductance, then the
    /// sorted node list, then the method tag.
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.conductance
            .total_cmp(&other.conductance)
            .then_with(|| self.nodes.as_slice().cmp(other.nodes.as_slice()))
            .then(self.method.cmp(&other.method))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NcpProfile {
    pub graph_fingerprint: u64,
    pub node_count: usize,
    /// Keyed by set size.
    pub points: BTreeMap<usize, NcpPoint>,
}

impl NcpProfile {
    pub fn new(g: &Graph) -> Self {
        NcpProfile { graph_fingerprint: g.fingerprint(), node_count: g.node_count(), points: BTreeMap::new() }
    }

    /// Keeps `point` if it beats the current entry for its size.
    pub fn offer(&mut self, point: NcpPoint) {
        let k = point.nodes.len();
        match self.points.get(&k) {
            Some(cur) if cur.total_cmp(&point) != Ordering::Greater => {}
            _ => {
                self.points.insert(k, point);
            }
        }
    }

    /// Offers `nodes` with its conductance recomputed in `g`. Sets without a
    /// defined conductance are ignored.
    pub fn offer_set(&mut self, g: &Graph, nodes: NodeSet, method: Method) {
        if let Some(conductance) = cut_stats(g, &nodes).ok().and_then(|s| s.conductance) {
            self.offer(NcpPoint { conductance, nodes, method });
        }
    }

    pub fn get(&self, k: usize) -> Option<f64> {
        self.points.get(&k).map(|p| p.conductance)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Point with the smallest conductance; ties keep the smaller size.
    pub fn global_min(&self) -> Option<&NcpPoint> {
        self.points.values().min_by(|a, b| a.conductance.total_cmp(&b.conductance))
    }
}

/// Pointwise minimum. The result does not depend on the order of `profiles`.
pub fn merge_profiles(profiles: &[NcpProfile]) -> Result<NcpProfile> {
    let Some(first) = profiles.first() else {
        return Err(Error::InvalidInput("nothing to merge".into()));
    };
    let mut out = NcpProfile {
        graph_fingerprint: first.graph_fingerprint,
        node_count: first.node_count,
        points: BTreeMap::new(),
    };
    for p in profiles {
        if p.graph_fingerprint != out.graph_fingerprint || p.node_count != out.node_count {
            return Err(Error::GraphMismatch);
        }
        for point in p.points.values() {
            out.offer(point.clone());
        }
    }
    Ok(out)
}

/// Per-size best candidate over many node orders, materialized lazily.
/// Candidates are contiguous ranges of a stored order: prefixes of sweeps,
/// their complementary suffixes, or explicit sets.
struct Collector {
    orders: Vec<Arc<Vec<usize>>>,
    best: Vec<Option<(f64, usize, usize, usize)>>,
}

impl Collector {
    fn new(n: usize) -> Self {
        Collector { orders: Vec::new(), best: vec![None; n + 1] }
    }

    fn consider(&mut self, cond: f64, order: usize, start: usize, end: usize) {
        let slot = &mut self.best[end - start];
        if slot.is_none_or(|(c, ..)| cond < c) {
            *slot = Some((cond, order, start, end));
        }
    }

    /// Every prefix of `s`; with `complements`, also the suffix left over
    /// when the order covers the whole graph.
    fn fold_sweep(&mut self, s: &Sweep, complements: bool) {
        let id = self.orders.len();
        self.orders.push(Arc::clone(&s.order));
        let full = s.order.len() == self.best.len() - 1;
        for (i, c) in s.conductance.iter().enumerate() {
            if let Some(c) = *c {
                self.consider(c, id, 0, i + 1);
                if complements && full {
                    self.consider(c, id, i + 1, s.order.len());
                }
            }
        }
    }

    /// An explicit set and its complement, with its conductance in `g`.
    fn fold_set(&mut self, g: &Graph, set: &NodeSet) {
        let Some(c) = cut_stats(g, set).ok().and_then(|s| s.conductance) else { return };
        let id = self.orders.len();
        let mut order = set.as_slice().to_vec();
        order.extend(set.complement(g.node_count()).into_vec());
        let len = set.len();
        self.consider(c, id, 0, len);
        self.consider(c, id, len, order.len());
        self.orders.push(Arc::new(order));
    }

    fn finish(self, g: &Graph, method: Method) -> NcpProfile {
        let mut profile = NcpProfile::new(g);
        for (_, order, start, end) in self.best.into_iter().flatten() {
            let nodes = NodeSet::from_unsorted(self.orders[order][start..end].to_vec());
            profile.offer_set(g, nodes, method);
        }
        profile
    }
}
