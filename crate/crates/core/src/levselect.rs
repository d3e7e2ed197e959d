//! Statistical leverage scores, diagnostic flagging, the relative-error
//! column sampler, the two-stage hybrid column subset selector and an
//! exhaustive oracle.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::matcore::{
    best_rank_k_error, pivoted_qr, pivoted_qr_select, projection_error, svd, top_k_right_basis, DenseMatrix, Norm,
};
use crate::sampling::{collapsed_scale, draw_with_replacement, rng_for, MAX_RESAMPLE_RETRIES};

/// Tolerance on `UᵀU = I` for a basis handed to [`leverage_scores_from_basis`].
pub const BASIS_TOLERANCE: f64 = 1e-8;
/// Largest `C(n, k)` the exhaustive oracle will enumerate.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeverageProfile {
    pub scores: Vec<f64>,
    pub k: usize,
    /// Indices above twice the average score, highest first.
    pub flagged: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnSelection {
    pub indices: Vec<usize>,
    /// Rescaling factors aligned with `indices`; empty for unscaled selections.
    pub scales: Vec<f64>,
    pub error_spectral: f64,
    pub error_frobenius: f64,
    pub seed: u64,
}

impl ColumnSelection {
    fn evaluate(a: &DenseMatrix, indices: Vec<usize>, scales: Vec<f64>, seed: u64) -> Result<Self> {
        let c = a.select_columns(&indices);
        Ok(Self {
            error_spectral: projection_error(a, &c, Norm::Spectral)?,
            error_frobenius: projection_error(a, &c, Norm::Frobenius)?,
            indices,
            scales,
            seed,
        })
    }

    pub fn error(&self, norm: Norm) -> f64 {
        match norm {
            Norm::Spectral => self.error_spectral,
            Norm::Frobenius => self.error_frobenius,
        }
    }
}

/// Leverage scores as squared row norms of a column-orthonormal `m × k` basis.
pub fn leverage_scores_from_basis(u: &DenseMatrix) -> Result<LeverageProfile> {
    let k = u.cols();
    let gram = u.transpose().matmul(u)?;
    let deviation = gram.sub(&DenseMatrix::identity(k))?.max_abs();
    if deviation > BASIS_TOLERANCE {
        return Err(Error::InvalidBasis { deviation });
    }
    let scores: Vec<f64> = (0..u.rows()).map(|i| u.row(i).iter().map(|x| x * x).sum::<f64>().clamp(0.0, 1.0)).collect();
    Ok(profile_with_default_flags(scores, k))
}

fn profile_with_default_flags(scores: Vec<f64>, k: usize) -> LeverageProfile {
    let mut p = LeverageProfile { scores, k, flagged: Vec::new() };
    p.flagged = flag_high_leverage(&p, p.scores.len(), 2.0);
    p
}

/// Row leverage scores of `a` relative to its top-`k` left singular subspace.
pub fn row_leverage(a: &DenseMatrix, k: usize) -> Result<LeverageProfile> {
    let f = svd(a)?;
    let rank = f.rank();
    if k == 0 || k > rank {
        return Err(Error::RankDeficient { rank, required: k.max(1) });
    }
    leverage_scores_from_basis(&f.u.select_columns(&(0..k).collect::<Vec<_>>()))
}

/// Column leverage scores of `a` relative to its top-`k` right singular subspace.
pub fn column_leverage(a: &DenseMatrix, k: usize) -> Result<LeverageProfile> {
    leverage_scores_from_basis(&top_k_right_basis(a, k)?.transpose())
}

/// `p_i = ‖column i of Vₖᵀ‖² / k` for any `k × n` matrix with orthonormal rows.
pub fn sampling_probabilities_from_basis(vkt: &DenseMatrix) -> Vec<f64> {
    let k = vkt.rows() as f64;
    (0..vkt.cols()).map(|j| (0..vkt.rows()).map(|t| vkt[(t, j)].powi(2)).sum::<f64>() / k).collect()
}

pub fn column_sampling_probabilities(a: &DenseMatrix, k: usize) -> Result<Vec<f64>> {
    Ok(sampling_probabilities_from_basis(&top_k_right_basis(a, k)?))
}

/// Indices whose score strictly exceeds `factor · k / n_or_m`, by descending
/// score (ties by index).
pub fn flag_high_leverage(profile: &LeverageProfile, n_or_m: usize, factor: f64) -> Vec<usize> {
    let threshold = factor * profile.k as f64 / n_or_m as f64;
    let mut out: Vec<usize> = (0..profile.scores.len()).filter(|&i| profile.scores[i] > threshold).collect();
    out.sort_by(|&i, &j| profile.scores[j].total_cmp(&profile.scores[i]).then(i.cmp(&j)));
    out
}

/// Running sums of the scores sorted in descending order.
pub fn cumulative_leverage(profile: &LeverageProfile) -> Vec<f64> {
    let mut sorted = profile.scores.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted
        .iter()
        .scan(0.0, |acc, s| {
            *acc += s;
            Some(*acc)
        })
        .collect()
}

/// Relative-error column sampler: `c` draws with replacement from the
/// leverage probabilities, each kept column rescaled by `1/sqrt(c·p_i)`.
pub fn sample_columns_relative_error(a: &DenseMatrix, k: usize, c: usize, seed: u64) -> Result<ColumnSelection> {
    if c < k {
        return Err(Error::InvalidInput(format!("c = {c} must be at least k = {k}")));
    }
    let probs = column_sampling_probabilities(a, k)?;
    let drawn = draw_with_replacement(&probs, c, &mut rng_for(seed, 0))?;
    let indices = drawn.iter().map(|&(i, _)| i).collect();
    let scales = drawn.iter().map(|&(i, t)| collapsed_scale(t, c, probs[i])).collect();
    ColumnSelection::evaluate(a, indices, scales, seed)
}

/// `ceil(2k·ln(k+1)) + k`.
pub fn default_oversampling(k: usize) -> usize {
    (2.0 * k as f64 * ((k + 1) as f64).ln()).ceil() as usize + k
}

/// Two-stage selection of exactly `k` columns: leverage sampling of the
/// columns of `Vₖᵀ`, then pivoted QR on the sampled, rescaled `Vₖᵀ` block.
pub fn hybrid_cssp(a: &DenseMatrix, k: usize, c: Option<usize>, seed: u64) -> Result<ColumnSelection> {
    let c = c.unwrap_or_else(|| default_oversampling(k));
    if c < k {
        return Err(Error::InvalidInput(format!("c = {c} must be at least k = {k}")));
    }
    let vkt = top_k_right_basis(a, k)?;
    let probs = sampling_probabilities_from_basis(&vkt);

    for attempt in 0..=MAX_RESAMPLE_RETRIES {
        let drawn = draw_with_replacement(&probs, c, &mut rng_for(seed, attempt))?;
        if drawn.len() < k {
            continue;
        }
        let cols: Vec<usize> = drawn.iter().map(|&(i, _)| i).collect();
        let mut block = vkt.select_columns(&cols);
        for (jj, &(i, t)) in drawn.iter().enumerate() {
            let s = collapsed_scale(t, c, probs[i]);
            for r in 0..k {
                block[(r, jj)] *= s;
            }
        }
        if pivoted_qr(&block)?.rank_estimate < k {
            continue;
        }
        let mut picked: Vec<usize> = pivoted_qr_select(&block, k)?.into_iter().map(|jj| cols[jj]).collect();
        picked.sort_unstable();
        return ColumnSelection::evaluate(a, picked, Vec::new(), seed);
    }
    Err(Error::SamplingFailure { seed, attempts: MAX_RESAMPLE_RETRIES + 1 })
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Globally optimal `k`-column subset under `norm`; ties go to the
/// lexicographically first subset.
pub fn exhaustive_cssp_oracle(a: &DenseMatrix, k: usize, norm: Norm, exec: Exec) -> Result<ColumnSelection> {
    let n = a.cols();
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("k = {k} not in 1..={n}")));
    }
    let count = binomial(n, k);
    if count > EXHAUSTIVE_LIMIT {
        return Err(Error::Guard(format!("C({n}, {k}) = {count} subsets exceeds {EXHAUSTIVE_LIMIT}")));
    }
    let subsets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let errors = exec.map(0..subsets.len(), |i| projection_error(a, &a.select_columns(&subsets[i]), norm));
    let mut best: Option<(usize, f64)> = None;
    for (i, e) in errors.into_iter().enumerate() {
        let e = e?;
        if best.is_none_or(|(_, b)| e < b) {
            best = Some((i, e));
        }
    }
    let (i, _) = best.expect("at least one subset");
    ColumnSelection::evaluate(a, subsets[i].clone(), Vec::new(), 0)
}

/// Best rank-`k` errors in both norms, for reporting alongside a selection.
pub fn best_rank_k_errors(a: &DenseMatrix, k: usize) -> Result<(f64, f64)> {
    Ok((best_rank_k_error(a, k, Norm::Spectral)?, best_rank_k_error(a, k, Norm::Frobenius)?))
}
