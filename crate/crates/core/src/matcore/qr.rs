//! Column-pivoted QR with Businger–Golub residual-norm pivoting.

use super::{dot, norm2, DenseMatrix, RANK_TOLERANCE};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct QrPivotResult {
    /// Permutation of all column indices; the first entries are the pivots.
    pub pivot_order: Vec<usize>,
    /// `min(rows, cols) × cols` upper-triangular factor in pivoted column order.
    pub r: DenseMatrix,
    pub rank_estimate: usize,
}

/// Factors `M P = Q R`. At each step the column with the largest residual
/// norm is chosen; exact ties go to the lowest column index. Residual norms
/// are recomputed rather than downdated so ties are seen exactly.
pub fn pivoted_qr(m: &DenseMatrix) -> Result<QrPivotResult> {
    if !m.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let (rows, cols) = m.shape();
    let steps = rows.min(cols);
    let original = m.columns();
    let mut residual = original.clone();
    let mut chosen = vec![false; cols];
    let mut pivots = Vec::with_capacity(cols);
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(steps);
    let mut diag = Vec::with_capacity(steps);

    for _ in 0..steps {
        let mut best: Option<(usize, f64)> = None;
        for j in (0..cols).filter(|&j| !chosen[j]) {
            let nrm = norm2(&residual[j]);
            if best.is_none_or(|(_, b)| nrm > b) {
                best = Some((j, nrm));
            }
        }
        let (j, nrm) = best.expect("steps <= cols");
        if nrm == 0.0 {
            break;
        }
        chosen[j] = true;
        pivots.push(j);
        diag.push(nrm);
        let mut qj: Vec<f64> = residual[j].iter().map(|x| x / nrm).collect();
        // Second Gram–Schmidt pass keeps Q orthonormal for tiny pivots.
        for qi in &q {
            let d = dot(qi, &qj);
            qj.iter_mut().zip(qi).for_each(|(x, y)| *x -= d * y);
        }
        let n2 = norm2(&qj);
        qj.iter_mut().for_each(|x| *x /= n2);
        for k in (0..cols).filter(|&k| !chosen[k]) {
            let d = dot(&qj, &residual[k]);
            residual[k].iter_mut().zip(&qj).for_each(|(x, y)| *x -= d * y);
        }
        q.push(qj);
    }

    let found = pivots.len();
    let mut rest: Vec<usize> = (0..cols).filter(|&j| !chosen[j]).collect();
    rest.sort_by(|&a, &b| norm2(&residual[b]).total_cmp(&norm2(&residual[a])).then(a.cmp(&b)));
    pivots.extend(rest);

    let mut r = DenseMatrix::zeros(steps, cols);
    for i in 0..found {
        r[(i, i)] = diag[i];
        for jj in i + 1..cols {
            r[(i, jj)] = dot(&q[i], &original[pivots[jj]]);
        }
    }
    let rank_estimate = match diag.first() {
        Some(&top) => diag.iter().take_while(|&&d| d > RANK_TOLERANCE * top).count(),
        None => 0,
    };
    Ok(QrPivotResult { pivot_order: pivots, r, rank_estimate })
}

/// Returns the first `k` pivot columns of `m`.
pub fn pivoted_qr_select(m: &DenseMatrix, k: usize) -> Result<Vec<usize>> {
    if k == 0 || m.cols() < k {
        return Err(Error::InvalidInput(format!("cannot select {k} columns from {} columns", m.cols())));
    }
    let qr = pivoted_qr(m)?;
    if qr.rank_estimate < k {
        return Err(Error::RankDeficient { rank: qr.rank_estimate, required: k });
    }
    Ok(qr.pivot_order[..k].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_pivoting_hand_trace() {
        let m = DenseMatrix::from_rows(&[[1.0, 0.0, 0.5], [0.0, 1.0, 0.5]]).unwrap();
        assert_eq!(pivoted_qr_select(&m, 2).unwrap(), vec![0, 1]);
    }

    #[test]
    fn identity_in_index_order() {
        assert_eq!(pivoted_qr_select(&DenseMatrix::identity(4), 4).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn duplicated_identity_columns_pick_lowest_index() {
        // columns: e0, e1, e0, e2, e1
        let m = DenseMatrix::from_columns(&[
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(pivoted_qr_select(&m, 3).unwrap(), vec![0, 1, 3]);
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let m = DenseMatrix::from_columns(&[[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]).unwrap();
        assert!(matches!(pivoted_qr_select(&m, 2), Err(Error::RankDeficient { rank: 1, required: 2 })));
    }

    #[test]
    fn r_diagonal_non_increasing_and_permutation() {
        let m = DenseMatrix::from_rows(&[
            [1.0, 4.0, -2.0, 0.5, 3.0],
            [0.3, -1.0, 2.0, 1.5, 0.0],
            [2.0, 0.0, 1.0, -0.5, 1.0],
        ])
        .unwrap();
        let qr = pivoted_qr(&m).unwrap();
        let mut p = qr.pivot_order.clone();
        p.sort_unstable();
        assert_eq!(p, (0..5).collect::<Vec<_>>());
        let d: Vec<f64> = (0..3).map(|i| qr.r[(i, i)].abs()).collect();
        assert!(d.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(qr.rank_estimate, 3);
    }
}
