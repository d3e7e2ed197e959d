//! Spectral bisection from the second eigenvector of the normalized
//! Laplacian.

use super::{sweep, CutStats, Graph, NodeSet, Sweep};
use crate::error::{Error, Result};

const POWER_TOLERANCE: f64 = 1e-8;
const POWER_MAX_ITERATIONS: usize = 10_000;

/// `D^{-1/2} x` for the second eigenvector `x` of `I − D^{-1/2} A D^{-1/2}`.
///
/// Power iteration runs on the shifted operator `(I + D^{-1/2} A D^{-1/2}) / 2`,
/// whose spectrum lies in `[0, 1]`, with the trivial eigenvector `D^{1/2} 1`
/// projected out after every step.
pub fn fiedler_vector(g: &Graph) -> Result<Vec<f64>> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidInput("spectral bisection needs at least two nodes".into()));
    }
    g.require_connected()?;
    let sqrt_d: Vec<f64> = g.degrees().iter().map(|d| d.sqrt()).collect();
    let trivial_norm = g.total_volume().sqrt();
    let trivial: Vec<f64> = sqrt_d.iter().map(|s| s / trivial_norm).collect();

    let deflate_normalize = |x: &mut Vec<f64>| {
        let d: f64 = x.iter().zip(&trivial).map(|(a, b)| a * b).sum();
        x.iter_mut().zip(&trivial).for_each(|(a, b)| *a -= d * b);
        let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= nrm);
    };

    // Deterministic start vector (golden-ratio sequence).
    let mut x: Vec<f64> = (0..n).map(|i| ((i as f64 + 1.0) * 0.618_033_988_749_894_9).fract() - 0.5).collect();
    deflate_normalize(&mut x);
    let mut y = vec![0.0; n];
    for _ in 0..POWER_MAX_ITERATIONS {
        for u in 0..n {
            let mut acc = 0.0;
            for (v, w) in g.neighbors(u) {
                acc += w * x[v] / sqrt_d[v];
            }
            y[u] = 0.5 * (x[u] + acc / sqrt_d[u]);
        }
        deflate_normalize(&mut y);
        let diff = x.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        std::mem::swap(&mut x, &mut y);
        if diff < POWER_TOLERANCE {
            break;
        }
    }
    Ok(x.iter().zip(&sqrt_d).map(|(v, s)| v / s).collect())
}

/// Sweep over the Fiedler ordering.
pub fn spectral_sweep(g: &Graph) -> Result<Sweep> {
    let f = fiedler_vector(g)?;
    // sweep divides by degree; pre-multiply so the order follows D^{-1/2} x.
    Ok(sweep(g, f.iter().enumerate().map(|(v, &fv)| (v, fv * g.degree(v)))))
}

pub fn spectral_bisection(g: &Graph) -> Result<(NodeSet, CutStats)> {
    let s = spectral_sweep(g)?;
    let (len, _) = s.best_prefix(None).ok_or_else(|| Error::InvalidInput("graph has no proper cut".into()))?;
    let set = s.prefix_set(len);
    let stats = super::cut_stats(g, &set)?;
    Ok((set, stats))
}
