//! Overconstrained least squares: exact, leverage-sampled, and randomized
//! Hadamard preconditioned solvers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hadamard::{random_signs, randomized_hadamard};
use crate::levselect::leverage_scores_from_basis;
use crate::matcore::{norm2, svd, DenseMatrix};
use crate::sampling::{collapsed_scale, draw_with_replacement, rng_for, MAX_RESAMPLE_RETRIES};

#[derive(Debug, Clone)]
pub struct LsProblem {
    a: DenseMatrix,
    b: Vec<f64>,
}

impl LsProblem {
    pub fn new(a: DenseMatrix, b: Vec<f64>) -> Result<Self> {
        if a.rows() < a.cols() {
            return Err(Error::InvalidInput(format!("least squares needs m >= n, got {}x{}", a.rows(), a.cols())));
        }
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch(format!("rhs has {} entries for {} rows", b.len(), a.rows())));
        }
        if !a.is_finite() || b.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite entries".into()));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// `‖b − A x‖₂`.
    pub fn residual_norm(&self, x: &[f64]) -> Result<f64> {
        let ax = self.a.matvec(x)?;
        Ok(norm2(&self.b.iter().zip(&ax).map(|(b, y)| b - y).collect::<Vec<_>>()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LsSolution {
    pub x: Vec<f64>,
    pub residual_norm: f64,
    /// Distinct sampled row indices; empty for the exact solver.
    pub sampled_rows: Vec<usize>,
    pub seed: Option<u64>,
}

/// `x = A⁺ b` through the SVD. Requires full column rank.
pub fn exact_ls(p: &LsProblem) -> Result<LsSolution> {
    let x = solve_full_rank(&p.a, &p.b)?;
    Ok(LsSolution { residual_norm: p.residual_norm(&x)?, x, sampled_rows: Vec::new(), seed: None })
}

fn solve_full_rank(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.cols();
    let f = svd(a)?;
    let rank = f.rank();
    if rank < n {
        return Err(Error::RankDeficient { rank, required: n });
    }
    let utb = f.u.tr_matvec(b)?;
    let mut x = vec![0.0; n];
    for (t, (u, s)) in utb.iter().zip(&f.sigma).enumerate() {
        let coef = u / s;
        for (i, xi) in x.iter_mut().enumerate() {
            *xi += f.v[(i, t)] * coef;
        }
    }
    Ok(x)
}

/// Samples `r` rows with replacement from the row leverage distribution
/// `‖U_(i)‖² / n`, rescales them, and solves the subproblem exactly.
pub fn sampled_ls(p: &LsProblem, r: usize, seed: u64) -> Result<LsSolution> {
    let (m, n) = p.a.shape();
    check_sample_size(r, m, n)?;
    let f = svd(&p.a)?;
    let rank = f.rank();
    if rank < n {
        return Err(Error::RankDeficient { rank, required: n });
    }
    let profile = leverage_scores_from_basis(&f.u)?;
    let probs: Vec<f64> = profile.scores.iter().map(|s| s / n as f64).collect();

    for attempt in 0..=MAX_RESAMPLE_RETRIES {
        let drawn = draw_with_replacement(&probs, r, &mut rng_for(seed, attempt))?;
        if drawn.len() < n {
            continue;
        }
        let rows: Vec<usize> = drawn.iter().map(|&(i, _)| i).collect();
        let scales: Vec<f64> = drawn.iter().map(|&(i, t)| collapsed_scale(t, r, probs[i])).collect();
        let mut sub = p.a.select_rows(&rows);
        let mut rhs = Vec::with_capacity(rows.len());
        for (ii, (&i, &s)) in rows.iter().zip(&scales).enumerate() {
            for j in 0..n {
                sub[(ii, j)] *= s;
            }
            rhs.push(p.b[i] * s);
        }
        match solve_full_rank(&sub, &rhs) {
            Ok(x) => {
                return Ok(LsSolution { residual_norm: p.residual_norm(&x)?, x, sampled_rows: rows, seed: Some(seed) })
            }
            Err(Error::RankDeficient { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingFailure { seed, attempts: MAX_RESAMPLE_RETRIES + 1 })
}

/// Randomized Hadamard preconditioning: zero-pad to a power of two, apply a
/// random sign flip and the normalized transform, keep `r` rows chosen
/// uniformly without replacement (scaled by `sqrt(m_pad / r)`), and solve.
/// `sampled_rows` index the transformed, padded system.
pub fn srht_ls(p: &LsProblem, r: usize, seed: u64) -> Result<LsSolution> {
    let (m, n) = p.a.shape();
    let m_pad = m.next_power_of_two();
    check_sample_size(r, m_pad, n)?;
    let cols: Vec<Vec<f64>> = p.a.columns();

    for attempt in 0..=MAX_RESAMPLE_RETRIES {
        let mut rng = rng_for(seed, attempt);
        let signs = random_signs(m_pad, &mut rng);
        let transform = |v: &[f64]| {
            let mut padded = v.to_vec();
            padded.resize(m_pad, 0.0);
            randomized_hadamard(&mut padded, &signs);
            padded
        };
        let ha: Vec<Vec<f64>> = cols.iter().map(|c| transform(c)).collect();
        let hb = transform(&p.b);

        let mut rows = rand::seq::index::sample(&mut rng, m_pad, r).into_vec();
        rows.sort_unstable();
        let scale = (m_pad as f64 / r as f64).sqrt();
        let mut sub = DenseMatrix::zeros(r, n);
        let mut rhs = Vec::with_capacity(r);
        for (ii, &i) in rows.iter().enumerate() {
            for j in 0..n {
                sub[(ii, j)] = ha[j][i] * scale;
            }
            rhs.push(hb[i] * scale);
        }
        match solve_full_rank(&sub, &rhs) {
            Ok(x) => {
                return Ok(LsSolution { residual_norm: p.residual_norm(&x)?, x, sampled_rows: rows, seed: Some(seed) })
            }
            Err(Error::RankDeficient { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingFailure { seed, attempts: MAX_RESAMPLE_RETRIES + 1 })
}

fn check_sample_size(r: usize, rows: usize, n: usize) -> Result<()> {
    if r < n || r > rows {
        return Err(Error::InvalidInput(format!("sample size r = {r} must lie in [{n}, {rows}]")));
    }
    Ok(())
}
