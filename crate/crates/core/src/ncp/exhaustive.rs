//! Exact NCP by enumerating every subset of a small graph.

use super::{Method, NcpProfile};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Graph, NodeSet};

pub const EXHAUSTIVE_NODE_LIMIT: usize = 16;

const CHUNK: u32 = 1 << 12;

/// Exact profiles over all subsets and over connected subsets only.
#[derive(Debug, Clone, PartialEq)]
pub struct ExhaustiveNcp {
    pub any: NcpProfile,
    pub connected: NcpProfile,
}

type Best = Vec<Option<(f64, u32)>>;

fn members(mask: u32) -> impl Iterator<Item = u32> {
    (0..32).filter(move |b| mask >> b & 1 == 1)
}

/// Lexicographic order of the sorted member lists.
fn lex_less(a: u32, b: u32) -> bool {
    members(a).lt(members(b))
}

fn better(c: f64, mask: u32, cur: Option<(f64, u32)>) -> bool {
    match cur {
        None => true,
        Some((b, m)) => c < b || (c == b && lex_less(mask, m)),
    }
}

pub fn ncp_exhaustive(g: &Graph) -> Result<ExhaustiveNcp> {
    ncp_exhaustive_with(g, Exec::default())
}

pub fn ncp_exhaustive_with(g: &Graph, exec: Exec) -> Result<ExhaustiveNcp> {
    let n = g.node_count();
    if n > EXHAUSTIVE_NODE_LIMIT {
        return Err(Error::Guard(format!("{n} nodes exceeds the exhaustive limit of {EXHAUSTIVE_NODE_LIMIT}")));
    }
    if n < 2 {
        return Err(Error::InvalidInput("exhaustive profile needs at least two nodes".into()));
    }
    let adj: Vec<u32> = (0..n).map(|u| g.neighbors(u).fold(0u32, |m, (v, _)| m | 1 << v)).collect();
    let full = (1u32 << n) - 1;
    let total = g.total_volume();
    let chunks = full.div_ceil(CHUNK) as usize;

    let partial = exec.map(0..chunks, |ci| {
        let lo = (ci as u32 * CHUNK).max(1);
        let hi = ((ci as u32 + 1) * CHUNK).min(full);
        let mut any: Best = vec![None; n + 1];
        let mut conn: Best = vec![None; n + 1];
        for mask in lo..hi {
            let (mut cut, mut vol) = (0.0, 0.0);
            for u in (0..n).filter(|&u| mask >> u & 1 == 1) {
                vol += g.degree(u);
                for (v, w) in g.neighbors(u) {
                    if mask >> v & 1 == 0 {
                        cut += w;
                    }
                }
            }
            let denom = vol.min(total - vol);
            if denom <= 0.0 {
                continue;
            }
            let c = cut / denom;
            let k = mask.count_ones() as usize;
            if better(c, mask, any[k]) {
                any[k] = Some((c, mask));
            }
            if better(c, mask, conn[k]) && is_connected(mask, &adj) {
                conn[k] = Some((c, mask));
            }
        }
        (any, conn)
    });

    let mut any: Best = vec![None; n + 1];
    let mut conn: Best = vec![None; n + 1];
    for (a, c) in partial {
        for k in 0..=n {
            if let Some((v, m)) = a[k] {
                if better(v, m, any[k]) {
                    any[k] = a[k];
                }
            }
            if let Some((v, m)) = c[k] {
                if better(v, m, conn[k]) {
                    conn[k] = c[k];
                }
            }
        }
    }
    let build = |best: Best, method: Method| {
        let mut p = NcpProfile::new(g);
        for (_, mask) in best.into_iter().flatten() {
            let nodes = (0..n).filter(|&u| mask >> u & 1 == 1).collect();
            p.offer_set(g, NodeSet::from_sorted(nodes), method);
        }
        p
    };
    Ok(ExhaustiveNcp { any: build(any, Method::Exhaustive), connected: build(conn, Method::ExhaustiveConnected) })
}

fn is_connected(mask: u32, adj: &[u32]) -> bool {
    let mut reached = 1u32 << mask.trailing_zeros();
    loop {
        let mut next = reached;
        let mut bits = reached;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[u] & mask;
        }
        if next == reached {
            return reached == mask;
        }
        reached = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn cycle_eight() {
        let e = ncp_exhaustive(&cycle(8)).unwrap();
        for k in 1..=4 {
            assert_eq!(e.any.get(k), Some(1.0 / k as f64));
            assert_eq!(e.connected.get(k), Some(1.0 / k as f64));
        }
        assert_eq!(e.any.get(7), Some(1.0));
    }

    #[test]
    fn complete_five() {
        let e = ncp_exhaustive(&complete(5)).unwrap();
        assert_eq!(e.any.get(1), Some(1.0));
        assert_eq!(e.any.get(2), Some(0.75));
    }

    #[test]
    fn barbell_and_tie_break() {
        let e = ncp_exhaustive(&barbell()).unwrap();
        assert_eq!(e.any.get(3), Some(1.0 / 7.0));
        assert_eq!(e.any.points[&3].nodes.as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn connected_variant_can_be_worse() {
        // Two disjoint triangles joined through a hub: {0,1,2,4,5,6} minus the
        // hub is disconnected, so only the any-subset variant reaches it.
        let g = Graph::from_unweighted(7, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)]).unwrap();
        let e = ncp_exhaustive(&g).unwrap();
        for k in 1..7 {
            assert!(e.connected.get(k).unwrap() >= e.any.get(k).unwrap());
        }
    }

    #[test]
    fn lex_order_on_masks() {
        assert!(lex_less(0b0011, 0b0101));
        assert!(lex_less(0b0001, 0b0011));
        assert!(!lex_less(0b0110, 0b0011));
        assert!(lex_less(0b1001, 0b0010));
    }

    #[test]
    fn guard_and_sequential() {
        assert!(matches!(ncp_exhaustive(&path(17)), Err(Error::Guard(_))));
        let g = lattice(3, 4);
        assert_eq!(
            ncp_exhaustive_with(&g, Exec::Sequential).unwrap(),
            ncp_exhaustive_with(&g, Exec::Parallel).unwrap()
        );
    }
}
