use std::collections::HashMap;
use std::fmt::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A parsed edge list. Node `i` is the `i`-th distinct token in file order.
#[derive(Debug, Clone)]
pub struct EdgeList {
    pub graph: Graph,
    pub labels: Vec<String>,
    pub self_loops_dropped: usize,
    pub parallel_merged: usize,
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<EdgeList> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

/// Lines of `u v [w]` separated by tabs or spaces; `#` starts a comment
/// line. The weight defaults to 1.
pub fn parse_edge_list<'a>(text: &'a str) -> Result<EdgeList> {
    let mut ids: HashMap<&'a str, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let t: Vec<&'a str> = l.split_whitespace().collect();
        if t.len() < 2 || t.len() > 3 {
            return Err(Error::Parse { line, message: format!("expected \"u v [weight]\", found {} fields", t.len()) });
        }
        let w = match t.get(2) {
            None => 1.0,
            Some(s) => match s.parse::<f64>() {
                Ok(w) if w.is_finite() && w > 0.0 => w,
                _ => return Err(Error::Parse { line, message: format!("weight \"{s}\" is not a positive number") }),
            },
        };
        let mut id = |tok: &'a str| -> usize {
            let next = labels.len();
            *ids.entry(tok).or_insert_with(|| {
                labels.push(tok.to_string());
                next
            })
        };
        let (u, v) = (id(t[0]), id(t[1]));
        edges.push((u, v, w));
    }
    let (graph, report) = Graph::from_edges(labels.len(), edges)?;
    Ok(EdgeList {
        graph,
        labels,
        self_loops_dropped: report.self_loops_dropped,
        parallel_merged: report.parallel_merged,
    })
}

/// Tab-separated edges with 0-based ids. For each node `k > 0` the edge to
/// its smallest neighbor is written first when that neighbor precedes `k`,
/// so graphs whose nodes all have such a neighbor read back with the same
/// ids. Unit weights are omitted. Isolated nodes are not representable.
pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("# {} nodes, {} edges; ids are 0-based\n", g.node_count(), g.edge_count());
    let line = |s: &mut String, u: usize, v: usize, w: f64| {
        if w == 1.0 {
            writeln!(s, "{u}\t{v}").unwrap();
        } else {
            writeln!(s, "{u}\t{v}\t{}", super::fmt_float(w)).unwrap();
        }
    };
    let mut first = vec![usize::MAX; g.node_count()];
    for (k, slot) in first.iter_mut().enumerate().skip(1) {
        if let Some((p, w)) = g.neighbors(k).next().filter(|&(p, _)| p < k) {
            line(&mut s, p, k, w);
            *slot = p;
        }
    }
    for (u, v, w) in g.edges() {
        if first[v] != u {
            line(&mut s, u, v, w);
        }
    }
    s
}
