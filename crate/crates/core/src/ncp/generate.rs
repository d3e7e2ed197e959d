//! Seeded synthetic graphs for profile-shape experiments.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::{index::sample, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bridges, Graph, NodeSet};
use crate::sampling::rng_for;

const CORE_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum GenModel {
    /// Erdős–Rényi `G(n, p)`.
    Er {
        n: usize,
        p: f64,
    },
    /// Expected-degree graph with power-law weights of exponent `beta > 2`.
    ChungLu {
        n: usize,
        beta: f64,
        average_degree: f64,
    },
    /// Forest-fire growth. Each burned node spreads along a geometric number
    /// of its out-links (mean `forward / (1 − forward)`) and in-links (mean
    /// `backward / (1 − backward)`).
    ForestFire {
        n: usize,
        forward: f64,
        backward: f64,
    },
    Lattice {
        rows: usize,
        cols: usize,
    },
    /// Random `core_degree`-regular bridgeless core with one clique per
    /// entry of `whisker_sizes`, each attached by a single edge to its own
    /// core node.
    WhiskeredExpander {
        core_nodes: usize,
        core_degree: usize,
        whisker_sizes: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub model: GenModel,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct GeneratedGraph {
    pub graph: Graph,
    /// Nodes outside the largest connected component.
    pub dropped_nodes: usize,
    /// Whisker node sets of a whiskered expander, in output ids.
    pub planted_whiskers: Vec<NodeSet>,
}

/// Builds the graph and keeps its largest connected component. Output ids
/// are such that every node but 0 has a neighbor with a smaller id.
pub fn generate(spec: &GenSpec) -> Result<GeneratedGraph> {
    validate(&spec.model)?;
    let mut rng = rng_for(spec.seed, 0);
    let (n, edges, planted) = match &spec.model {
        GenModel::Er { n, p } => (*n, erdos_renyi(*n, *p, &mut rng), Vec::new()),
        GenModel::ChungLu { n, beta, average_degree } => {
            (*n, chung_lu(*n, *beta, *average_degree, &mut rng), Vec::new())
        }
        GenModel::ForestFire { n, forward, backward } => {
            (*n, forest_fire(*n, *forward, *backward, &mut rng), Vec::new())
        }
        GenModel::Lattice { rows, cols } => (rows * cols, lattice(*rows, *cols), Vec::new()),
        GenModel::WhiskeredExpander { core_nodes, core_degree, whisker_sizes } => {
            whiskered_expander(*core_nodes, *core_degree, whisker_sizes, &mut rng)?
        }
    };
    let full = Graph::from_unweighted(n, &edges)?;
    let comps = full.connected_components();
    let giant = comps.iter().max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0]))).expect("n > 0");
    if giant.len() < 2 {
        return Err(Error::InvalidInput("generated graph has no edges in its largest component".into()));
    }
    let dropped_nodes = n - giant.len();
    let order = bfs_order(&full, giant);
    let mut new_id = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        new_id[v] = i;
    }
    let planted_whiskers = planted
        .into_iter()
        .map(|w: Vec<usize>| NodeSet::from_unsorted(w.iter().map(|&v| new_id[v]).collect()))
        .collect();
    Ok(GeneratedGraph { graph: full.induced_subgraph(&order), dropped_nodes, planted_whiskers })
}

fn validate(model: &GenModel) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidInput(m.to_string()));
    match model {
        GenModel::Er { n, p } if *n < 2 || !(0.0..=1.0).contains(p) => bad("er needs n >= 2 and 0 <= p <= 1"),
        GenModel::ChungLu { n, beta, average_degree }
            if *n < 2 || !(*beta > 2.0 && beta.is_finite()) || !(*average_degree > 0.0 && *average_degree < (*n - 1) as f64) =>
        {
            bad("chung-lu needs n >= 2, beta > 2 and 0 < average degree < n - 1")
        }
        GenModel::ForestFire { n, forward, backward }
            if *n < 2 || !(0.0..1.0).contains(forward) || !(0.0..1.0).contains(backward) =>
        {
            bad("forest-fire needs n >= 2 and burning probabilities in [0, 1)")
        }
        GenModel::Lattice { rows, cols } if *rows == 0 || *cols == 0 || rows * cols < 2 => {
            bad("lattice needs at least two nodes")
        }
        GenModel::WhiskeredExpander { core_nodes, core_degree, whisker_sizes }
            if *core_degree < 3
                || *core_degree >= *core_nodes
                || (core_nodes * core_degree) % 2 == 1
                || whisker_sizes.len() > *core_nodes
                || whisker_sizes.contains(&0) =>
        {
            bad("whiskered-expander needs core degree >= 3 below the core size, an even stub count, and at most one nonempty whisker per core node")
        }
        _ => Ok(()),
    }
}

/// Breadth-first order of `comp` from its smallest node, neighbors by id.
fn bfs_order(g: &Graph, comp: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.node_count()];
    let mut order = Vec::with_capacity(comp.len());
    let mut queue = VecDeque::from([comp[0]]);
    seen[comp[0]] = true;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for (v, _) in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    order
}

fn erdos_renyi(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn chung_lu(n: usize, beta: f64, average_degree: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let raw: Vec<f64> = (0..n).map(|i| ((i + 1) as f64).powf(-1.0 / (beta - 1.0))).collect();
    let scale = average_degree * n as f64 / raw.iter().sum::<f64>();
    let w: Vec<f64> = raw.iter().map(|r| r * scale).collect();
    let total: f64 = w.iter().sum();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < (w[u] * w[v] / total).min(1.0) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn forest_fire(n: usize, forward: f64, backward: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let fwd = Geometric::new(1.0 - forward).expect("valid probability");
    let bwd = Geometric::new(1.0 - backward).expect("valid probability");
    let mut out_links: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut in_links: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut visited = vec![usize::MAX; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let ambassador = rng.random_range(0..v);
        visited[ambassador] = v;
        let mut burned = vec![ambassador];
        let mut queue = VecDeque::from([ambassador]);
        while let Some(u) = queue.pop_front() {
            let x = fwd.sample(rng) as usize;
            let y = bwd.sample(rng) as usize;
            for (links, count) in [(&out_links[u], x), (&in_links[u], y)] {
                let fresh: Vec<usize> = links.iter().copied().filter(|&t| visited[t] != v).collect();
                let take = count.min(fresh.len());
                for i in sample(rng, fresh.len(), take) {
                    let t = fresh[i];
                    visited[t] = v;
                    burned.push(t);
                    queue.push_back(t);
                }
            }
        }
        for &t in &burned {
            out_links[v].push(t);
            in_links[t].push(v);
            edges.push((t, v));
        }
    }
    edges
}

fn lattice(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    edges
}

type Planted = (usize, Vec<(usize, usize)>, Vec<Vec<usize>>);

fn whiskered_expander(core: usize, degree: usize, sizes: &[usize], rng: &mut ChaCha8Rng) -> Result<Planted> {
    let mut core_edges = None;
    for _ in 0..CORE_ATTEMPTS {
        if let Some(e) = regular_candidate(core, degree, rng) {
            core_edges = Some(e);
            break;
        }
    }
    let Some(mut edges) = core_edges else {
        return Err(Error::Guard(format!(
            "no simple bridgeless {degree}-regular core on {core} nodes in {CORE_ATTEMPTS} attempts"
        )));
    };
    let anchors = sample(rng, core, sizes.len()).into_vec();
    let mut next = core;
    let mut planted = Vec::new();
    for (&size, &anchor) in sizes.iter().zip(&anchors) {
        let nodes: Vec<usize> = (next..next + size).collect();
        for i in 0..size {
            for j in i + 1..size {
                edges.push((nodes[i], nodes[j]));
            }
        }
        edges.push((anchor, nodes[0]));
        next += size;
        planted.push(nodes);
    }
    Ok((next, edges, planted))
}

/// One configuration-model pairing, kept only if simple, connected and
/// bridgeless.
fn regular_candidate(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(rng);
    let mut seen = BTreeSet::new();
    for pair in stubs.chunks(2) {
        let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if u == v || !seen.insert((u, v)) {
            return None;
        }
    }
    let edges: Vec<(usize, usize)> = seen.into_iter().collect();
    let g = Graph::from_unweighted(n, &edges).ok()?;
    (g.is_connected() && bridges(&g).is_empty()).then_some(edges)
}
