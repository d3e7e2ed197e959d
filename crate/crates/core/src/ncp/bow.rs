//! Bag-of-whiskers: unions of sets hanging off the core by single bridges.

use super::{Method, NcpProfile};
use crate::error::{Error, Result};
use crate::graph::{whisker_decomposition, Graph, NodeSet, Whisker};

/// Largest whisker count accepted by [`bag_of_whiskers_exact`].
pub const EXACT_WHISKER_LIMIT: usize = 20;

/// Whiskers of every component, in original node ids.
fn all_whiskers(g: &Graph) -> Result<Vec<Whisker>> {
    if g.is_connected() {
        return Ok(whisker_decomposition(g)?.whiskers);
    }
    let mut out = Vec::new();
    for comp in g.connected_components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = g.induced_subgraph(&comp);
        for w in whisker_decomposition(&sub)?.whiskers {
            out.push(Whisker {
                nodes: NodeSet::from_unsorted(w.nodes.as_slice().iter().map(|&i| comp[i]).collect()),
                bridge: (comp[w.bridge.0], comp[w.bridge.1]),
                bridge_weight: w.bridge_weight,
                volume: w.volume,
            });
        }
    }
    Ok(out)
}

/// Every single whisker and every cumulative union along the greedy order
/// (volume per bridge weight descending, ties by smallest node id).
pub fn ncp_bag_of_whiskers(g: &Graph) -> Result<NcpProfile> {
    let mut whiskers = all_whiskers(g)?;
    whiskers.sort_by(|a, b| {
        (b.volume / b.bridge_weight)
            .total_cmp(&(a.volume / a.bridge_weight))
            .then(a.nodes.as_slice()[0].cmp(&b.nodes.as_slice()[0]))
    });
    let mut profile = NcpProfile::new(g);
    let mut union: Vec<usize> = Vec::new();
    for (i, w) in whiskers.iter().enumerate() {
        profile.offer_set(g, w.nodes.clone(), Method::BagOfWhiskers);
        if i > 0 {
            union.extend_from_slice(w.nodes.as_slice());
            profile.offer_set(g, NodeSet::from_unsorted(union.clone()), Method::BagOfWhiskers);
        } else {
            union.extend_from_slice(w.nodes.as_slice());
        }
    }
    Ok(profile)
}

/// Best union of whiskers for every achievable size, by enumerating all
/// subsets of at most [`EXACT_WHISKER_LIMIT`] whiskers.
pub fn bag_of_whiskers_exact(g: &Graph) -> Result<NcpProfile> {
    let whiskers = all_whiskers(g)?;
    let w = whiskers.len();
    if w > EXACT_WHISKER_LIMIT {
        return Err(Error::Guard(format!("{w} whiskers exceeds the exact limit of {EXACT_WHISKER_LIMIT}")));
    }
    let total = g.total_volume();
    let mut best: Vec<Option<(f64, u32)>> = vec![None; g.node_count() + 1];
    for mask in 1u32..(1u32 << w) {
        let (mut size, mut cut, mut vol) = (0usize, 0.0, 0.0);
        for (i, wh) in whiskers.iter().enumerate() {
            if mask >> i & 1 == 1 {
                size += wh.nodes.len();
                cut += wh.bridge_weight;
                vol += wh.volume;
            }
        }
        let denom = vol.min(total - vol);
        if denom <= 0.0 {
            continue;
        }
        let c = cut / denom;
        if best[size].is_none_or(|(b, _)| c < b) {
            best[size] = Some((c, mask));
        }
    }
    let mut profile = NcpProfile::new(g);
    for (_, mask) in best.into_iter().flatten() {
        let nodes: Vec<usize> =
            (0..w).filter(|i| mask >> i & 1 == 1).flat_map(|i| whiskers[i].nodes.as_slice().iter().copied()).collect();
        profile.offer_set(g, NodeSet::from_unsorted(nodes), Method::BagOfWhiskers);
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn cycle_is_empty() {
        assert!(ncp_bag_of_whiskers(&cycle(9)).unwrap().is_empty());
    }

    #[test]
    fn barbell_single_whisker() {
        let p = ncp_bag_of_whiskers(&barbell()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.get(3), Some(1.0 / 7.0));
    }

    fn k4_with_two_triangles() -> Graph {
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        edges.extend([(4, 5), (5, 6), (4, 6), (7, 8), (8, 9), (7, 9), (0, 4), (1, 7)]);
        Graph::from_unweighted(10, &edges).unwrap()
    }

    #[test]
    fn identical_whiskers_flat() {
        let g = k4_with_two_triangles();
        let p = ncp_bag_of_whiskers(&g).unwrap();
        assert_eq!(p.get(3), Some(1.0 / 7.0));
        assert_eq!(p.get(6), Some(1.0 / 7.0));
        assert_eq!(p.points[&6].nodes.as_slice(), &[4, 5, 6, 7, 8, 9]);
    }

    #[test]
    fn exact_matches_greedy_on_small_cases() {
        let g = k4_with_two_triangles();
        assert_eq!(bag_of_whiskers_exact(&g).unwrap(), ncp_bag_of_whiskers(&g).unwrap());
    }

    #[test]
    fn disconnected_components_each_contribute() {
        let g = Graph::from_unweighted(7, &[(0, 1), (1, 2), (0, 2), (2, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        let p = ncp_bag_of_whiskers(&g).unwrap();
        assert_eq!(p.points[&1].nodes.as_slice(), &[3]);
    }
}
