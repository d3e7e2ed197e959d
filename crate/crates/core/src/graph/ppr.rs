//! Push-style approximate personalized ranking from a single seed node,
//! using the lazy random walk `(I + D⁻¹A) / 2`.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PprVector {
    pub estimates: BTreeMap<usize, f64>,
    pub residuals: BTreeMap<usize, f64>,
    pub alpha: f64,
    pub epsilon: f64,
    pub pushes: usize,
}

/// Pushes while some node holds `residual > epsilon · degree`. The queue is
/// FIFO, seeded with the seed node; neighbors are enqueued in ascending id
/// order. At completion every residual is at most `epsilon · degree`.
pub fn ppr_push(g: &Graph, seed: usize, alpha: f64, epsilon: f64) -> Result<PprVector> {
    let n = g.node_count();
    if seed >= n {
        return Err(Error::InvalidInput(format!("seed {seed} out of range for {n} nodes")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidInput(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidInput(format!("epsilon = {epsilon} must be positive")));
    }

    let mut p = vec![0.0; n];
    let mut r = vec![0.0; n];
    let mut touched = vec![false; n];
    let mut touched_list = vec![seed];
    let mut queued = vec![false; n];
    let mut queue = VecDeque::new();
    r[seed] = 1.0;
    touched[seed] = true;
    let over = |v: usize, rv: f64| rv > epsilon * g.degree(v);
    if over(seed, 1.0) {
        queue.push_back(seed);
        queued[seed] = true;
    }

    let mut pushes = 0;
    while let Some(u) = queue.pop_front() {
        queued[u] = false;
        let ru = r[u];
        let du = g.degree(u);
        pushes += 1;
        if du == 0.0 {
            // An isolated walker never leaves.
            p[u] += ru;
            r[u] = 0.0;
            continue;
        }
        p[u] += alpha * ru;
        let spread = (1.0 - alpha) * ru / 2.0;
        r[u] = spread;
        for (v, w) in g.neighbors(u) {
            if !touched[v] {
                touched[v] = true;
                touched_list.push(v);
            }
            r[v] += spread * w / du;
            if !queued[v] && over(v, r[v]) {
                queue.push_back(v);
                queued[v] = true;
            }
        }
        if !queued[u] && over(u, spread) {
            queue.push_back(u);
            queued[u] = true;
        }
    }
    let estimates = touched_list.iter().filter(|&&v| p[v] > 0.0).map(|&v| (v, p[v])).collect();
    let residuals = touched_list.iter().map(|&v| (v, r[v])).collect();
    Ok(PprVector { estimates, residuals, alpha, epsilon, pushes })
}
