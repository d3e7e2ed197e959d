//! Effective resistances of edges from the Laplacian pseudoinverse.

use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};
use crate::matcore::{spd_inverse, DenseMatrix};

/// Node limit for the dense pseudoinverse.
pub const RESISTANCE_NODE_LIMIT: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeResistance {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    /// `(e_u − e_v)ᵀ L⁺ (e_u − e_v)`.
    pub resistance: f64,
    /// `weight · resistance`, the leverage of the edge's row of `W^{1/2} B`.
    pub leverage: f64,
}

/// Resistances for every edge, in [`Graph::edges`] order. For a connected
/// graph `L + J/n` is positive definite and differs from `L⁺` only on the
/// all-ones direction, which `e_u − e_v` does not see.
pub fn edge_effective_resistance(g: &Graph) -> Result<Vec<EdgeResistance>> {
    let n = g.node_count();
    if n > RESISTANCE_NODE_LIMIT {
        return Err(Error::Guard(format!("{n} nodes exceeds the dense resistance limit of {RESISTANCE_NODE_LIMIT}")));
    }
    g.require_connected()?;
    let shift = 1.0 / n as f64;
    let mut l = DenseMatrix::zeros(n, n);
    for u in 0..n {
        for v in 0..n {
            l[(u, v)] = shift;
        }
        l[(u, u)] += g.degree(u);
        for (v, w) in g.neighbors(u) {
            l[(u, v)] -= w;
        }
    }
    let inv = spd_inverse(&l)?;
    Ok(g.edges()
        .map(|(u, v, w)| {
            let r = inv[(u, u)] + inv[(v, v)] - 2.0 * inv[(u, v)];
            EdgeResistance { u, v, weight: w, resistance: r, leverage: w * r }
        })
        .collect())
}
