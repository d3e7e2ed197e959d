use super::{svd, DenseMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    Spectral,
    Frobenius,
}

/// Moore–Penrose pseudoinverse via the SVD, dropping singular values below
/// `RANK_TOLERANCE · sigma_max`.
pub fn pseudoinverse(a: &DenseMatrix) -> Result<DenseMatrix> {
    let f = svd(a)?;
    let rank = f.rank();
    let (m, n) = a.shape();
    let mut out = DenseMatrix::zeros(n, m);
    for t in 0..rank {
        let inv = 1.0 / f.sigma[t];
        for i in 0..n {
            let vi = f.v[(i, t)] * inv;
            if vi == 0.0 {
                continue;
            }
            for j in 0..m {
                out[(i, j)] += vi * f.u[(j, t)];
            }
        }
    }
    Ok(out)
}

/// Orthonormal basis (as columns) for the numerical column space of `a`.
pub fn orthonormal_column_basis(a: &DenseMatrix) -> Result<DenseMatrix> {
    let f = svd(a)?;
    let rank = f.rank();
    Ok(f.u.select_columns(&(0..rank).collect::<Vec<_>>()))
}

/// `‖A − C C⁺ A‖` in the requested norm.
pub fn projection_error(a: &DenseMatrix, c: &DenseMatrix, norm: Norm) -> Result<f64> {
    if a.rows() != c.rows() {
        return Err(Error::DimensionMismatch(format!("A has {} rows, C has {}", a.rows(), c.rows())));
    }
    let residual = if c.cols() == 0 {
        a.clone()
    } else {
        let q = orthonormal_column_basis(c)?;
        let coeffs = q.transpose().matmul(a)?;
        a.sub(&q.matmul(&coeffs)?)?
    };
    Ok(matrix_norm(&residual, norm)?.max(0.0))
}

pub(crate) fn matrix_norm(a: &DenseMatrix, norm: Norm) -> Result<f64> {
    match norm {
        Norm::Frobenius => Ok(a.frobenius_norm()),
        Norm::Spectral => {
            if a.max_abs() == 0.0 || a.rows() == 0 || a.cols() == 0 {
                return Ok(0.0);
            }
            Ok(svd(a)?.sigma[0])
        }
    }
}

/// Error of the best rank-`k` approximation: `sigma_{k+1}` (spectral) or
/// the root tail sum of squares (Frobenius).
pub fn best_rank_k_error(a: &DenseMatrix, k: usize, norm: Norm) -> Result<f64> {
    let r = a.rows().min(a.cols());
    if k > r {
        return Err(Error::InvalidInput(format!("k = {k} exceeds min(m, n) = {r}")));
    }
    let f = svd(a)?;
    let rank = f.rank();
    if k >= rank {
        return Ok(0.0);
    }
    let tail = &f.sigma[k..rank];
    Ok(match norm {
        Norm::Spectral => tail[0],
        Norm::Frobenius => tail.iter().map(|s| s * s).sum::<f64>().max(0.0).sqrt(),
    })
}

/// A `k × n` matrix with orthonormal rows spanning the top-`k` right singular
/// subspace of `a`.
pub fn top_k_right_basis(a: &DenseMatrix, k: usize) -> Result<DenseMatrix> {
    let f = svd(a)?;
    let rank = f.rank();
    if k == 0 || k > rank {
        return Err(Error::RankDeficient { rank, required: k.max(1) });
    }
    let n = a.cols();
    let mut out = DenseMatrix::zeros(k, n);
    for t in 0..k {
        for j in 0..n {
            out[(t, j)] = f.v[(j, t)];
        }
    }
    Ok(out)
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
pub fn cholesky(a: &DenseMatrix) -> Result<DenseMatrix> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::DimensionMismatch("cholesky needs a square matrix".into()));
    }
    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d <= 0.0 || !d.is_finite() {
            return Err(Error::RankDeficient { rank: j, required: n });
        }
        let djj = d.sqrt();
        l[(j, j)] = djj;
        for i in j + 1..n {
            let mut s = a[(i, j)];
            let (ri, rj) = (l.row(i), l.row(j));
            for k in 0..j {
                s -= ri[k] * rj[k];
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// Inverse of a symmetric positive definite matrix via Cholesky.
pub fn spd_inverse(a: &DenseMatrix) -> Result<DenseMatrix> {
    let l = cholesky(a)?;
    let n = l.rows();
    // Solve L Y = I column by column, then Lᵀ X = Y.
    let mut inv = DenseMatrix::zeros(n, n);
    let mut y = vec![0.0; n];
    for c in 0..n {
        for i in 0..n {
            let mut s = if i == c { 1.0 } else { 0.0 };
            let li = l.row(i);
            for k in c.min(i)..i {
                s -= li[k] * y[k];
            }
            y[i] = if i < c { 0.0 } else { s / li[i] };
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= l[(k, i)] * inv[(k, c)];
            }
            inv[(i, c)] = s / l[(i, i)];
        }
    }
    // Symmetrize away round-off.
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (inv[(i, j)] + inv[(j, i)]);
            inv[(i, j)] = avg;
            inv[(j, i)] = avg;
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(m: usize, n: usize, seed: u64) -> DenseMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        DenseMatrix::new(m, n, (0..m * n).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
    }

    fn projector(q: &DenseMatrix) -> DenseMatrix {
        q.matmul(&q.transpose()).unwrap()
    }

    #[test]
    fn top_k_basis_diag() {
        let v = top_k_right_basis(&DenseMatrix::from_diag(&[3.0, 2.0, 1.0]), 2).unwrap();
        let p = projector(&v.transpose());
        let expect = DenseMatrix::from_diag(&[1.0, 1.0, 0.0]);
        assert!(p.sub(&expect).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn top_k_basis_full_rank_projector_matches_row_space() {
        let a = random(5, 3, 2);
        let v = top_k_right_basis(&a, 3).unwrap();
        let p = projector(&v.transpose());
        assert!(p.sub(&DenseMatrix::identity(3)).unwrap().max_abs() < 1e-8);
    }

    #[test]
    fn top_k_basis_rank_three_matches_full_svd_oracle() {
        let a = random(10, 3, 4).matmul(&random(3, 6, 5)).unwrap();
        let v = top_k_right_basis(&a, 3).unwrap();
        let p = projector(&v.transpose());
        // Oracle: row space projector A⁺A.
        let oracle = pseudoinverse(&a).unwrap().matmul(&a).unwrap();
        assert!(p.sub(&oracle).unwrap().max_abs() < 1e-8);
        let rows = v.matmul(&v.transpose()).unwrap();
        assert!(rows.sub(&DenseMatrix::identity(3)).unwrap().max_abs() < 1e-10);
        assert!(matches!(top_k_right_basis(&a, 4), Err(Error::RankDeficient { rank: 3, .. })));
    }

    #[test]
    fn pseudoinverse_cases() {
        let p = pseudoinverse(&DenseMatrix::from_diag(&[2.0, 0.0])).unwrap();
        assert_eq!(p, DenseMatrix::from_diag(&[0.5, 0.0]));

        let q = orthonormal_column_basis(&random(6, 3, 9)).unwrap();
        assert!(pseudoinverse(&q).unwrap().sub(&q.transpose()).unwrap().max_abs() < 1e-12);

        let a = random(6, 4, 8);
        let ap = pseudoinverse(&a).unwrap();
        let tol = 1e-8 * a.frobenius_norm().max(1.0);
        let aapa = a.matmul(&ap).unwrap().matmul(&a).unwrap();
        assert!(aapa.sub(&a).unwrap().max_abs() < tol);
        let apaap = ap.matmul(&a).unwrap().matmul(&ap).unwrap();
        assert!(apaap.sub(&ap).unwrap().max_abs() < tol * ap.frobenius_norm());
        let aap = a.matmul(&ap).unwrap();
        assert!(aap.sub(&aap.transpose()).unwrap().max_abs() < tol);
        let apa = ap.matmul(&a).unwrap();
        assert!(apa.sub(&apa.transpose()).unwrap().max_abs() < tol);
    }

    #[test]
    fn projection_error_cases() {
        let a = random(5, 4, 1);
        assert!(projection_error(&a, &a, Norm::Frobenius).unwrap() < 1e-12);

        let d = DenseMatrix::from_diag(&[3.0, 2.0, 1.0]);
        let c = d.select_columns(&[0, 1]);
        assert!((projection_error(&d, &c, Norm::Spectral).unwrap() - 1.0).abs() < 1e-12);
        assert!((projection_error(&d, &c, Norm::Frobenius).unwrap() - 1.0).abs() < 1e-12);
        assert!(projection_error(&d, &DenseMatrix::zeros(2, 1), Norm::Spectral).is_err());
    }

    #[test]
    fn projection_error_matches_explicit_projector_oracle() {
        let a = random(8, 6, 21);
        let c = a.select_columns(&[1, 3, 4]);
        let p = c.matmul(&pseudoinverse(&c).unwrap()).unwrap();
        let resid = a.sub(&p.matmul(&a).unwrap()).unwrap();
        let fro = resid.frobenius_norm();
        let spec = svd(&resid).unwrap().sigma[0];
        assert!((projection_error(&a, &c, Norm::Frobenius).unwrap() - fro).abs() < 1e-9);
        assert!((projection_error(&a, &c, Norm::Spectral).unwrap() - spec).abs() < 1e-9);
    }

    #[test]
    fn best_rank_k_cases() {
        let d = DenseMatrix::from_diag(&[3.0, 2.0, 1.0]);
        assert_eq!(best_rank_k_error(&d, 2, Norm::Spectral).unwrap(), 1.0);
        assert_eq!(best_rank_k_error(&d, 3, Norm::Frobenius).unwrap(), 0.0);
        let a = random(7, 5, 6);
        let s = svd(&a).unwrap().sigma;
        let tail = (s[2] * s[2] + s[3] * s[3] + s[4] * s[4]).sqrt();
        assert!((best_rank_k_error(&a, 2, Norm::Frobenius).unwrap() - tail).abs() < 1e-10);
        assert!(best_rank_k_error(&a, 6, Norm::Spectral).is_err());
    }

    #[test]
    fn spd_inverse_round_trip() {
        let b = random(5, 5, 13);
        let a = b.transpose().matmul(&b).unwrap();
        let a = {
            let mut a = a;
            for i in 0..5 {
                a[(i, i)] += 1.0;
            }
            a
        };
        let inv = spd_inverse(&a).unwrap();
        assert!(a.matmul(&inv).unwrap().sub(&DenseMatrix::identity(5)).unwrap().max_abs() < 1e-10);
        assert!(cholesky(&DenseMatrix::from_diag(&[1.0, -1.0])).is_err());
    }
}
