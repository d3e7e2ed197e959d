//! Bridges, 2-edge-connected components and whisker decomposition.

use std::collections::VecDeque;

use serde::Serialize;

use super::{Graph, NodeSet};
use crate::error::Result;

/// A maximal subgraph hanging off the core by a single bridge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Whisker {
    pub nodes: NodeSet,
    /// `(core side, whisker side)` endpoints of the attaching bridge.
    pub bridge: (usize, usize),
    pub bridge_weight: f64,
    /// Sum of degrees of the whisker nodes (bridge included).
    pub volume: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WhiskerDecomposition {
    pub core: NodeSet,
    /// Ordered by smallest member.
    pub whiskers: Vec<Whisker>,
    /// Every bridge of the graph as `(u, v)` with `u < v`, sorted.
    pub bridge_edges: Vec<(usize, usize)>,
}

/// All bridges as `(u, v)` with `u < v`, sorted. Iterative low-link DFS.
pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.node_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (node, parent, next neighbor position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (u, parent, ref mut pos)) = stack.last_mut() {
            if let Some((v, _)) = g.neighbors(u).nth(*pos) {
                *pos += 1;
                if v == parent {
                    continue;
                }
                if disc[v] == usize::MAX {
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    stack.push((v, u, 0));
                } else {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] > disc[parent] {
                        out.push((parent.min(u), parent.max(u)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Splits a connected graph into its 2-edge-connected core and the whiskers
/// hanging off it. The core is the 2-edge-connected component of largest
/// volume (ties: more nodes, then smallest member id); each bridge leaving
/// the core roots one whisker holding the entire subtree behind it.
pub fn whisker_decomposition(g: &Graph) -> Result<WhiskerDecomposition> {
    g.require_connected()?;
    let n = g.node_count();
    let bridge_edges = bridges(g);
    let is_bridge = |u: usize, v: usize| bridge_edges.binary_search(&(u.min(v), u.max(v))).is_ok();

    let mut comp = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = members.len();
        comp[start] = id;
        let mut list = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for (v, _) in g.neighbors(u) {
                if comp[v] == usize::MAX && !is_bridge(u, v) {
                    comp[v] = id;
                    list.push(v);
                    queue.push_back(v);
                }
            }
        }
        list.sort_unstable();
        members.push(list);
    }

    let core_id = (0..members.len())
        .max_by(|&a, &b| {
            let (va, vb) = (g.volume_of(&members[a]), g.volume_of(&members[b]));
            va.total_cmp(&vb).then(members[a].len().cmp(&members[b].len())).then(members[b][0].cmp(&members[a][0]))
        })
        .expect("non-empty graph");

    // Bridge-tree adjacency between components.
    let mut tree: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); members.len()];
    for &(u, v) in &bridge_edges {
        tree[comp[u]].push((comp[v], u, v));
        tree[comp[v]].push((comp[u], v, u));
    }

    let mut whiskers = Vec::new();
    for &(root, core_end, whisker_end) in &tree[core_id] {
        let mut nodes = Vec::new();
        let mut stack = vec![(root, core_id)];
        while let Some((c, from)) = stack.pop() {
            nodes.extend_from_slice(&members[c]);
            for &(next, _, _) in &tree[c] {
                if next != from {
                    stack.push((next, c));
                }
            }
        }
        let nodes = NodeSet::from_unsorted(nodes);
        whiskers.push(Whisker {
            volume: g.volume_of(nodes.as_slice()),
            bridge_weight: g.edge_weight(core_end, whisker_end).expect("bridge exists"),
            bridge: (core_end, whisker_end),
            nodes,
        });
    }
    whiskers.sort_by_key(|w| w.nodes.as_slice()[0]);

    Ok(WhiskerDecomposition { core: NodeSet::from_sorted(members[core_id].clone()), whiskers, bridge_edges })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn lollipop() {
        let g = Graph::from_unweighted(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let d = whisker_decomposition(&g).unwrap();
        assert_eq!(d.core.as_slice(), &[0, 1, 2]);
        assert_eq!(d.whiskers.len(), 1);
        assert_eq!(d.whiskers[0].nodes.as_slice(), &[3, 4]);
        assert_eq!(d.whiskers[0].bridge, (2, 3));
        assert_eq!(d.bridge_edges, vec![(2, 3), (3, 4)]);
    }

    #[test]
    fn tree_core_is_single_hub() {
        // Hub 1 has degree 3; every other node is grouped into subtree whiskers.
        let g = Graph::from_unweighted(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]).unwrap();
        let d = whisker_decomposition(&g).unwrap();
        assert_eq!(d.core.as_slice(), &[1]);
        let sets: Vec<&[usize]> = d.whiskers.iter().map(|w| w.nodes.as_slice()).collect();
        assert_eq!(sets, vec![&[0][..], &[2], &[3, 4, 5]]);
        assert_eq!(d.bridge_edges.len(), 5);
    }

    #[test]
    fn cycle_has_no_whiskers() {
        let d = whisker_decomposition(&cycle(7)).unwrap();
        assert!(d.whiskers.is_empty() && d.bridge_edges.is_empty());
        assert_eq!(d.core.len(), 7);
    }

    #[test]
    fn barbell_tie_break_by_lowest_id() {
        let d = whisker_decomposition(&barbell()).unwrap();
        assert_eq!(d.core.as_slice(), &[0, 1, 2]);
        assert_eq!(d.whiskers[0].nodes.as_slice(), &[3, 4, 5]);
        assert_eq!(d.whiskers[0].volume, 7.0);
    }

    #[test]
    fn path_bridges() {
        assert_eq!(bridges(&path(4)), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(bridges(&complete(4)).is_empty());
    }
}
