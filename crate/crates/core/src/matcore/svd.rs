//! One-sided (Hestenes) Jacobi SVD.

use super::{dot, norm2, DenseMatrix};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const ORTHO_TOL: f64 = 1e-15;

/// Thin SVD `A = U diag(sigma) Vᵀ` with `r = min(m, n)` factors.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    pub u: DenseMatrix,
    pub sigma: Vec<f64>,
    pub v: DenseMatrix,
}

impl SvdFactors {
    /// Number of singular values above `RANK_TOLERANCE · sigma_max`.
    pub fn rank(&self) -> usize {
        let Some(&top) = self.sigma.first() else { return 0 };
        if top <= 0.0 {
            return 0;
        }
        self.sigma.iter().take_while(|&&s| s > super::RANK_TOLERANCE * top).count()
    }

    pub fn reconstruct(&self) -> DenseMatrix {
        let (m, r) = self.u.shape();
        let n = self.v.rows();
        let mut out = DenseMatrix::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                out[(i, j)] = (0..r).map(|t| self.u[(i, t)] * self.sigma[t] * self.v[(j, t)]).sum();
            }
        }
        out
    }
}

pub fn svd(a: &DenseMatrix) -> Result<SvdFactors> {
    if !a.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("matrix has an empty dimension".into()));
    }
    if m >= n {
        let (u, sigma, v) = jacobi_tall(a.columns(), m);
        Ok(SvdFactors { u, sigma, v })
    } else {
        let (v, sigma, u) = jacobi_tall(a.transpose().columns(), n);
        Ok(SvdFactors { u, sigma, v })
    }
}

/// SVD of a tall matrix given by its `n` columns of length `m >= n`.
fn jacobi_tall(mut cols: Vec<Vec<f64>>, m: usize) -> (DenseMatrix, Vec<f64>, DenseMatrix) {
    let n = cols.len();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma == 0.0 || gamma.abs() <= ORTHO_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = cols.iter().map(|c| norm2(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));
    let top = norms[order[0]];

    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut sigma = Vec::with_capacity(n);
    let mut pending = Vec::new();
    for (slot, &j) in order.iter().enumerate() {
        let s = norms[j];
        sigma.push(s);
        if s > 0.0 && s > top * 1e-18 {
            u_cols.push(cols[j].iter().map(|x| x / s).collect());
        } else {
            u_cols.push(vec![0.0; m]);
            pending.push(slot);
        }
    }
    // Left vectors of (numerically) zero singular values are arbitrary;
    // complete them to an orthonormal set.
    if !pending.is_empty() {
        let mut basis: Vec<Vec<f64>> = (0..n).filter(|s| !pending.contains(s)).map(|s| u_cols[s].clone()).collect();
        let mut candidate = 0;
        for &slot in &pending {
            loop {
                let mut e = vec![0.0; m];
                e[candidate] = 1.0;
                candidate += 1;
                for _ in 0..2 {
                    for b in &basis {
                        let d = dot(b, &e);
                        e.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
                    }
                }
                let nrm = norm2(&e);
                if nrm > 0.5 {
                    e.iter_mut().for_each(|x| *x /= nrm);
                    basis.push(e.clone());
                    u_cols[slot] = e;
                    break;
                }
            }
        }
    }

    let u = DenseMatrix::from_columns(&u_cols).expect("finite");
    let v_sorted: Vec<Vec<f64>> = order.iter().map(|&j| v[j].clone()).collect();
    let v = DenseMatrix::from_columns(&v_sorted).expect("finite");
    (u, sigma, v)
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(q);
    let (cp, cq) = (&mut left[p], &mut right[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
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

    /// Cyclic two-sided Jacobi eigenvalues of a symmetric matrix; independent
    /// of the one-sided SVD path.
    fn sym_eigenvalues(mut a: DenseMatrix) -> Vec<f64> {
        let n = a.rows();
        for _ in 0..200 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].powi(2))
                .sum();
            if off < 1e-30 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[(p, q)].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[(k, p)], a[(k, q)]);
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut ev: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
        ev.sort_by(|x, y| y.total_cmp(x));
        ev
    }

    fn orthonormality_defect(q: &DenseMatrix) -> f64 {
        let g = q.transpose().matmul(q).unwrap();
        g.sub(&DenseMatrix::identity(g.rows())).unwrap().max_abs()
    }

    #[test]
    fn identity_and_diagonal() {
        let f = svd(&DenseMatrix::identity(3)).unwrap();
        assert_eq!(f.sigma, vec![1.0, 1.0, 1.0]);
        let f = svd(&DenseMatrix::from_diag(&[3.0, 2.0, 1.0])).unwrap();
        assert_eq!(f.sigma, vec![3.0, 2.0, 1.0]);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_eq!(f.v[(i, j)].abs(), expect);
            }
        }
    }

    #[test]
    fn random_matches_eigen_oracle() {
        let a = random(8, 5, 11);
        let f = svd(&a).unwrap();
        let recon = f.reconstruct().sub(&a).unwrap().frobenius_norm();
        assert!(recon <= 1e-8 * a.frobenius_norm());
        let ev = sym_eigenvalues(a.transpose().matmul(&a).unwrap());
        for (s, e) in f.sigma.iter().zip(&ev) {
            assert!((s - e.max(0.0).sqrt()).abs() < 1e-8, "{s} vs {e}");
        }
        assert!(orthonormality_defect(&f.u) < 1e-10 * 8.0);
        assert!(orthonormality_defect(&f.v) < 1e-10 * 8.0);
    }

    #[test]
    fn wide_and_rank_deficient() {
        let a = random(3, 7, 5);
        let f = svd(&a).unwrap();
        assert_eq!(f.sigma.len(), 3);
        assert!(f.reconstruct().sub(&a).unwrap().frobenius_norm() <= 1e-8 * a.frobenius_norm());

        let mut z = DenseMatrix::zeros(4, 3);
        z[(0, 0)] = 2.0;
        z[(1, 0)] = 1.0;
        let f = svd(&z).unwrap();
        assert_eq!(f.rank(), 1);
        assert!(orthonormality_defect(&f.u) < 1e-12);
        assert!(f.sigma.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn zero_matrix_and_bad_input() {
        let f = svd(&DenseMatrix::zeros(3, 2)).unwrap();
        assert_eq!(f.rank(), 0);
        assert!(orthonormality_defect(&f.u) < 1e-12);
        assert!(svd(&DenseMatrix::zeros(0, 2)).is_err());
    }

    #[test]
    fn deterministic() {
        let a = random(9, 6, 3);
        let (f1, f2) = (svd(&a).unwrap(), svd(&a).unwrap());
        assert_eq!(f1.sigma, f2.sigma);
        assert_eq!(f1.u, f2.u);
    }
}
