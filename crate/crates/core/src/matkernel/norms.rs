use super::{herm_eigenvalues, ComplexMatrix};
use crate::error::Result;
use crate::Real;

/// Schatten-1 norm `Σ|λᵢ|` of a Hermitian matrix.
pub fn trace_norm<T: Real>(a: &ComplexMatrix<T>) -> Result<T> {
    Ok(herm_eigenvalues(a)?.iter().map(|x| x.abs()).sum())
}

/// Operator norm `max|λᵢ|` of a Hermitian matrix.
pub fn inf_norm<T: Real>(a: &ComplexMatrix<T>) -> Result<T> {
    Ok(herm_eigenvalues(a)?
        .iter()
        .fold(T::zero(), |m, x| m.max(x.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkernel::{dagger, kron, random};
    use crate::C;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type M = ComplexMatrix<f64>;

    fn swap2() -> M {
        M::from_fn(4, 4, |i, j| {
            if j == (i % 2) * 2 + i / 2 {
                C::new(1.0, 0.0)
            } else {
                C::new(0.0, 0.0)
            }
        })
    }

    #[test]
    fn trace_norm_examples() {
        let d = M::diag(&[1.0, -1.0]);
        assert!((trace_norm(&d).unwrap() - 2.0).abs() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let rho = random::density_matrix::<f64>(4, &mut rng);
        assert!((trace_norm(&rho).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_norm_of_two_pair_swap() {
        // Oracle: SWAP⊗SWAP/4 is a signed permutation-like matrix with
        // eigenvalues ±1/4; enumerate them by brute force from the product
        // structure (SWAP has spectrum {-1, 1, 1, 1}).
        let swap_spec = [-1.0f64, 1.0, 1.0, 1.0];
        let mut oracle = 0.0;
        for a in swap_spec {
            for b in swap_spec {
                oracle += (a * b / 4.0f64).abs();
            }
        }
        assert_eq!(oracle, 4.0);
        let s = kron(&swap2(), &swap2()).scale_real(0.25);
        assert!((trace_norm(&s).unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn inf_norm_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let v = random::pure_state::<f64>(4, &mut rng);
        let p = M::projector(&v);
        assert!((inf_norm(&p).unwrap() - 1.0).abs() < 1e-12);
        assert!((inf_norm(&M::identity(3).scale_real(2.0)).unwrap() - 2.0).abs() < 1e-15);
        for _ in 0..20 {
            let h = random::hermitian::<f64>(6, &mut rng);
            assert!(inf_norm(&h).unwrap() <= trace_norm(&h).unwrap() + 1e-12);
        }
    }

    #[test]
    fn norms_reject_non_hermitian() {
        let m = M::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(trace_norm(&m).is_err());
        assert!(inf_norm(&m).is_err());
    }

    #[test]
    fn trace_norm_unitary_invariance_and_subadditivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [2, 4, 8] {
            for _ in 0..10 {
                let h = random::hermitian::<f64>(n, &mut rng);
                let g = random::hermitian::<f64>(n, &mut rng);
                let u = random::unitary::<f64>(n, &mut rng);
                let rotated = &(&u * &h) * &dagger(&u);
                let a = trace_norm(&h).unwrap();
                assert!((trace_norm(&rotated).unwrap() - a).abs() < 1e-9);
                let b = trace_norm(&g).unwrap();
                assert!(trace_norm(&(&h + &g)).unwrap() <= a + b + 1e-9);
            }
        }
    }
}
