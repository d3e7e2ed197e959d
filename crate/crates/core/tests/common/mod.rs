//! Helpers shared by the integration tests. Each test target uses a subset.
#![allow(dead_code)]

use probekit::{DenseMatrix, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(m: usize, n: usize, rng: &mut ChaCha8Rng) -> DenseMatrix {
    let data = (0..m * n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    DenseMatrix::new(m, n, data).unwrap()
}

/// Rank-`r` Gaussian product plus `noise` times a Gaussian matrix.
pub fn low_rank_plus_noise(m: usize, n: usize, r: usize, noise: f64, rng: &mut ChaCha8Rng) -> DenseMatrix {
    let l = gaussian(m, r, rng);
    let rt = gaussian(r, n, rng);
    let e = gaussian(m, n, rng);
    let mut a = l.matmul(&rt).unwrap();
    for i in 0..m {
        for j in 0..n {
            a[(i, j)] += noise * e[(i, j)];
        }
    }
    a
}

/// Inverse by Gauss–Jordan elimination with partial pivoting.
pub fn gauss_jordan_inverse(a: &DenseMatrix) -> DenseMatrix {
    let n = a.rows();
    let mut w: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| w[x][c].abs().total_cmp(&w[y][c].abs())).unwrap();
        w.swap(c, p);
        let d = w[c][c];
        w[c].iter_mut().for_each(|v| *v /= d);
        for r in 0..n {
            if r != c {
                let f = w[r][c];
                if f != 0.0 {
                    for j in 0..2 * n {
                        w[r][j] -= f * w[c][j];
                    }
                }
            }
        }
    }
    let rows: Vec<Vec<f64>> = w.into_iter().map(|r| r[n..].to_vec()).collect();
    DenseMatrix::from_rows(&rows).unwrap()
}

/// Diagonal of `A (AᵀA)⁻¹ Aᵀ`.
pub fn hat_diagonal(a: &DenseMatrix) -> Vec<f64> {
    let at = a.transpose();
    let g = gauss_jordan_inverse(&at.matmul(a).unwrap());
    (0..a.rows())
        .map(|i| {
            let gi = g.matvec(a.row(i)).unwrap();
            a.row(i).iter().zip(&gi).map(|(x, y)| x * y).sum()
        })
        .collect()
}

/// Normal-equations solution `(AᵀA)⁻¹ Aᵀ b`.
pub fn normal_equations(a: &DenseMatrix, b: &[f64]) -> Vec<f64> {
    let at = a.transpose();
    gauss_jordan_inverse(&at.matmul(a).unwrap()).matvec(&at.matvec(b).unwrap()).unwrap()
}

pub fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut r = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            for &t in &idx[i..=j] {
                r[t] = (i + j) as f64 / 2.0;
            }
            i = j + 1;
        }
        r
    }
    let (rx, ry) = (ranks(xs), ranks(ys));
    let n = xs.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

/// Conductance `cut / min(vol, vol_c)` from scratch over a membership mask.
pub fn brute_conductance(g: &Graph, inside: &[bool]) -> Option<f64> {
    let (mut cut, mut vol) = (0.0, 0.0);
    for (u, v, w) in g.edges() {
        if inside[u] != inside[v] {
            cut += w;
        }
    }
    for u in 0..g.node_count() {
        if inside[u] {
            vol += g.degree(u);
        }
    }
    let d = vol.min(g.total_volume() - vol);
    (d > 0.0).then(|| cut / d)
}

/// Connected G(n, p) restricted to its largest component, unit weights.
pub fn random_connected(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_unweighted(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// Random recursive tree: node `v` hangs off a uniform earlier node.
pub fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    Graph::from_unweighted(n, &edges).unwrap()
}
