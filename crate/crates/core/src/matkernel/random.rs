//! Seeded random matrices for property tests and random channels.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{dagger, ComplexMatrix};
use crate::{Real, C};

fn gaussian<T: Real>(rng: &mut (impl Rng + ?Sized)) -> C<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    C::new(T::of(re * s), T::of(im * s))
}

/// Entries i.i.d. standard complex normal.
pub fn gaussian_matrix<T: Real>(
    rows: usize,
    cols: usize,
    rng: &mut (impl Rng + ?Sized),
) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Modified Gram–Schmidt on the columns. Requires full column rank, which
/// holds with probability one for Gaussian input.
pub fn orthonormalize_columns<T: Real>(m: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (rows, cols) = m.shape();
    assert!(
        rows >= cols,
        "cannot orthonormalize {cols} columns in dimension {rows}"
    );
    let mut q: Vec<Vec<C<T>>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = m.col(j);
        // two passes keep the result orthonormal to working precision
        for _ in 0..2 {
            for u in &q {
                let proj: C<T> = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= *ui * proj;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        for vi in &mut v {
            *vi /= norm;
        }
        q.push(v);
    }
    ComplexMatrix::from_fn(rows, cols, |i, j| q[j][i])
}

pub fn unitary<T: Real>(n: usize, rng: &mut (impl Rng + ?Sized)) -> ComplexMatrix<T> {
    orthonormalize_columns(&gaussian_matrix(n, n, rng))
}

/// `rows × cols` matrix with orthonormal columns (`V†V = I`).
pub fn isometry<T: Real>(
    rows: usize,
    cols: usize,
    rng: &mut (impl Rng + ?Sized),
) -> ComplexMatrix<T> {
    orthonormalize_columns(&gaussian_matrix(rows, cols, rng))
}

pub fn hermitian<T: Real>(n: usize, rng: &mut (impl Rng + ?Sized)) -> ComplexMatrix<T> {
    gaussian_matrix(n, n, rng).hermitian_part()
}

/// Unit vector as an `n × 1` column.
pub fn pure_state<T: Real>(n: usize, rng: &mut (impl Rng + ?Sized)) -> ComplexMatrix<T> {
    orthonormalize_columns(&gaussian_matrix(n, 1, rng))
}

/// Full-rank density matrix `GG†/Tr(GG†)`.
pub fn density_matrix<T: Real>(n: usize, rng: &mut (impl Rng + ?Sized)) -> ComplexMatrix<T> {
    let g = gaussian_matrix::<T>(n, n, rng);
    let gg = &g * &dagger(&g);
    let tr = gg.trace().re;
    gg.scale_real(T::one() / tr).hermitian_part()
}

/// Convex weights drawn uniformly from the simplex.
pub fn simplex_weights<T: Real>(n: usize, rng: &mut (impl Rng + ?Sized)) -> Vec<T> {
    let raw: Vec<f64> = (0..n)
        .map(|_| -rng.random::<f64>().max(f64::MIN_POSITIVE).ln())
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| T::of(w / total)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn isometries_are_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for (r, c) in [(2, 2), (4, 2), (8, 3), (16, 16)] {
            let v = isometry::<f64>(r, c, &mut rng);
            let vv = &dagger(&v) * &v;
            assert!(vv.max_abs_diff(&ComplexMatrix::identity(c)) < 1e-12);
        }
    }

    #[test]
    fn density_matrices_are_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let rho = density_matrix::<f64>(4, &mut rng);
        assert!((rho.trace() - C::new(1.0, 0.0)).norm() < 1e-12);
        assert!(rho.hermitian_deviation().is_zero());
    }

    #[test]
    fn same_seed_same_matrix() {
        let a = unitary::<f64>(4, &mut ChaCha8Rng::seed_from_u64(5));
        let b = unitary::<f64>(4, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
    }

    #[test]
    fn simplex_weights_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let w = simplex_weights::<f64>(5, &mut rng);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(w.iter().all(|&x| x >= 0.0));
    }
}
