//! Cyclic complex Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies a real plane rotation that annihilates it.

use num_traits::Zero;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::{Real, C};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

const HERMITIAN_TOL: f64 = 1e-10;
const OFF_DIAGONAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct EigenDecomposition<T: Real> {
    /// Ascending.
    pub eigenvalues: Vec<T>,
    /// Column `k` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix<T>,
    pub sweeps: usize,
}

impl<T: Real> EigenDecomposition<T> {
    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.map_spectrum(|x| x)
    }

    /// `V diag(f(λ)) V†`.
    pub fn map_spectrum(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let v = &self.eigenvectors;
        let n = v.rows();
        let mapped: Vec<T> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * mapped[k])
                .sum()
        })
    }
}

fn checked_hermitian<T: Real>(a: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if !a.is_square() {
        return Err(Error::dims(
            "herm_eig",
            format!("{}x{} is not square", a.rows(), a.cols()),
        ));
    }
    let deviation = a.hermitian_deviation();
    if !(deviation <= T::tol(HERMITIAN_TOL)) {
        return Err(Error::NotHermitian {
            deviation: deviation.to_f64_lossy(),
        });
    }
    Ok(a.hermitian_part())
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes `a` in place, returning (diagonal, eigenvectors, sweeps).
fn jacobi<T: Real>(
    mut a: ComplexMatrix<T>,
    with_vectors: bool,
) -> (Vec<T>, ComplexMatrix<T>, usize) {
    let n = a.rows();
    let mut v = if with_vectors {
        ComplexMatrix::identity(n)
    } else {
        ComplexMatrix::identity(1)
    };
    let threshold = T::tol(OFF_DIAGONAL_TOL) * a.frobenius_norm().max(T::one());
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS && off_diagonal_norm(&a) >= threshold {
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= T::min_positive_value() {
                    continue;
                }
                let phase = apq / mag; // e^{iφ}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (mag + mag);
                let t = if theta.is_infinite() {
                    T::zero()
                } else {
                    let sgn = if theta >= T::zero() {
                        T::one()
                    } else {
                        -T::one()
                    };
                    sgn / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                // U = diag(1, e^{-iφ}) · [[c, s], [-s, c]] in the (p, q) plane.
                let ph = phase.conj();
                let u_pp = C::new(c, T::zero());
                let u_pq = C::new(s, T::zero());
                let u_qp = ph * (-s);
                let u_qq = ph * c;

                // A ← A U
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                // A ← U† A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = C::zero();
                a[(q, p)] = C::zero();
                a[(p, p)] = C::new(a[(p, p)].re, T::zero());
                a[(q, q)] = C::new(a[(q, q)].re, T::zero());

                if with_vectors {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * u_pp + vkq * u_qp;
                        v[(k, q)] = vkp * u_pq + vkq * u_qq;
                    }
                }
            }
        }
    }
    let diag = (0..n).map(|i| a[(i, i)].re).collect();
    (diag, v, sweeps)
}

/// Full spectral decomposition of a Hermitian matrix.
///
/// Inputs within `1e-10` of Hermitian are symmetrized as `(M + M†)/2` first;
/// anything further off is rejected.
pub fn herm_eig<T: Real>(a: &ComplexMatrix<T>) -> Result<EigenDecomposition<T>> {
    let h = checked_hermitian(a)?;
    let n = h.rows();
    let (diag, v, sweeps) = jacobi(h, true);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        diag[i]
            .partial_cmp(&diag[j])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let eigenvalues = order.iter().map(|&k| diag[k]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
        sweeps,
    })
}

/// Ascending spectrum without accumulating eigenvectors.
pub fn herm_eigenvalues<T: Real>(a: &ComplexMatrix<T>) -> Result<Vec<T>> {
    let h = checked_hermitian(a)?;
    let (mut diag, _, _) = jacobi(h, false);
    diag.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    Ok(diag)
}

/// Applies a real function to a Hermitian matrix through its spectrum.
pub fn herm_map<T: Real>(a: &ComplexMatrix<T>, f: impl Fn(T) -> T) -> Result<ComplexMatrix<T>> {
    Ok(herm_eig(a)?.map_spectrum(f))
}
