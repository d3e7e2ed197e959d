//! Recursive spectral bisection with flow-based improvement of every piece.

use super::{Collector, Method, NcpProfile};
use crate::error::Result;
use crate::graph::{fiedler_vector, mqi_improve, sweep, Graph, NodeSet};

/// Bisects `g` by spectral sweep, improves the smaller-volume side of each
/// split with MQI in `g`, and recurses on the connected parts of both sides
/// up to `depth` more levels. Every sweep prefix, bisection side and
/// improved set, together with complements, is folded into the profile.
pub fn ncp_bisect_mqi(g: &Graph, depth: usize) -> Result<NcpProfile> {
    g.require_connected()?;
    let mut collector = Collector::new(g.node_count());
    let all: Vec<usize> = (0..g.node_count()).collect();
    split(g, &all, depth, &mut collector, true)?;
    Ok(collector.finish(g, Method::BisectMqi))
}

fn split(g: &Graph, piece: &[usize], depth: usize, collector: &mut Collector, top: bool) -> Result<()> {
    if piece.len() < 2 {
        return Ok(());
    }
    let sub = g.induced_subgraph(piece);
    if sub.edge_count() == 0 {
        return Ok(());
    }
    let f = fiedler_vector(&sub)?;
    // Same order as the piece's own sweep, but statistics measured in g.
    let in_g = sweep(g, piece.iter().zip(&f).map(|(&v, &fv)| (v, fv * g.degree(v))));
    collector.fold_sweep(&in_g, top);

    let local = sweep(&sub, f.iter().enumerate().map(|(i, &fv)| (i, fv * sub.degree(i))));
    let Some((len, _)) = local.best_prefix(None) else { return Ok(()) };
    let side_a: Vec<usize> = local.order[..len].iter().map(|&i| piece[i]).collect();
    let side_b: Vec<usize> = local.order[len..].iter().map(|&i| piece[i]).collect();
    let (a, b) = (NodeSet::from_unsorted(side_a), NodeSet::from_unsorted(side_b));
    collector.fold_set(g, &a);
    collector.fold_set(g, &b);

    let half = g.total_volume() / 2.0;
    let small = if g.volume_of(a.as_slice()) <= g.volume_of(b.as_slice()) { &a } else { &b };
    if small.len() < g.node_count() && g.volume_of(small.as_slice()) <= half {
        let (improved, _) = mqi_improve(g, small)?;
        collector.fold_set(g, &improved);
    }

    if depth == 0 {
        return Ok(());
    }
    for side in [&a, &b] {
        let part = g.induced_subgraph(side.as_slice());
        for comp in part.connected_components() {
            let nodes: Vec<usize> = comp.iter().map(|&i| side.as_slice()[i]).collect();
            split(g, &nodes, depth - 1, collector, false)?;
        }
    }
    Ok(())
}
