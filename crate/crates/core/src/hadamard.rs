//! Fast Walsh–Hadamard transform and the randomized Hadamard preprocessing
//! used by the SRHT least-squares solver.

use rand::Rng;

/// In-place orthonormal Walsh–Hadamard transform (`H / sqrt(len)`).
///
/// # Panics
/// If `data.len()` is not a power of two.
pub fn fwht(data: &mut [f64]) {
    let n = data.len();
    assert!(n.is_power_of_two(), "fwht length {n} is not a power of two");
    let mut h = 1;
    while h < n {
        for block in data.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    let scale = 1.0 / (n as f64).sqrt();
    data.iter_mut().for_each(|x| *x *= scale);
}

/// Random ±1 diagonal.
pub fn random_signs<R: Rng>(len: usize, rng: &mut R) -> Vec<f64> {
    (0..len).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect()
}

/// Applies `H D` to `x`: sign flip then normalized transform.
pub fn randomized_hadamard(x: &mut [f64], signs: &[f64]) {
    x.iter_mut().zip(signs).for_each(|(v, s)| *v *= s);
    fwht(x);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_explicit_sylvester_matrix() {
        let n = 8;
        let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).sin()).collect();
        let mut y = x.clone();
        fwht(&mut y);
        for (i, yi) in y.iter().enumerate() {
            let expect: f64 = (0..n)
                .map(|j| {
                    let sign = if (i & j).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    sign * x[j]
                })
                .sum::<f64>()
                / (n as f64).sqrt();
            assert!((yi - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn involution() {
        let mut x = vec![1.0, 2.0, -3.0, 0.5];
        fwht(&mut x);
        fwht(&mut x);
        for (a, b) in x.iter().zip([1.0, 2.0, -3.0, 0.5]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn isometry() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x: Vec<f64> = (0..256).map(|_| rng.random_range(-1.0..1.0)).collect();
        let signs = random_signs(256, &mut rng);
        let mut y = x.clone();
        randomized_hadamard(&mut y, &signs);
        let nx: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let ny: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((nx - ny).abs() < 1e-10);
    }

    #[test]
    #[should_panic]
    fn non_power_of_two_panics() {
        fwht(&mut [1.0, 2.0, 3.0]);
    }
}
