//! Dense complex matrices sized for a handful of qubits.
//!
//! Storage is row-major. Only what the channel and bound computations need is
//! provided: products, Kronecker products, subsystem reshuffles and a Jacobi
//! eigensolver for Hermitian matrices.

mod eig;
mod norms;
mod ops;
pub mod random;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{Real, C};

pub use eig::{herm_eig, herm_eigenvalues, herm_map, EigenDecomposition, MAX_SWEEPS};
pub use norms::{inf_norm, trace_norm};
pub use ops::{
    anticommutator, dagger, kron, kron_all, matmul, partial_trace, partial_transpose,
    permute_subsystems,
};

/// Largest supported side length (6 qubits).
pub const MAX_DIM: usize = 64;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<C<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::dims("new", "rows and cols must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::dims(
                "new",
                format!("{} entries for a {rows}x{cols} matrix", data.len()),
            ));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Self {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from rows of `f64` pairs `(re, im)`.
    pub fn from_rows(rows: &[&[(f64, f64)]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dims("from_rows", "ragged rows"));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&(re, im)| C::new(T::of(re), T::of(im))))
            .collect();
        Self::new(r, c, data)
    }

    /// Builds a matrix from rows of real entries.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dims("from_real_rows", "ragged rows"));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| C::new(T::of(x), T::zero())))
            .collect();
        Self::new(r, c, data)
    }

    pub fn diag(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C::new(v, T::zero());
        }
        m
    }

    /// Column vector with the given amplitudes.
    pub fn column(amplitudes: Vec<C<T>>) -> Self {
        let n = amplitudes.len();
        Self::new(n, 1, amplitudes).expect("nonempty column")
    }

    /// Computational basis ket `|index⟩` of dimension `dim`.
    pub fn basis_ket(dim: usize, index: usize) -> Self {
        let mut m = Self::zeros(dim, 1);
        m[(index, 0)] = C::one();
        m
    }

    /// Projector `|v⟩⟨v|` for a column vector `v`.
    pub fn projector(v: &Self) -> Self {
        assert_eq!(v.cols, 1, "projector expects a column vector");
        Self::from_fn(v.rows, v.rows, |i, j| v.data[i] * v.data[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C<T>] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C<T>> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[C<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<C<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn trace(&self) -> C<T> {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: C<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.shape() != other.shape() {
            return T::infinity();
        }
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// `max |M[i][j] - conj(M[j][i])|`, infinite for non-square input.
    pub fn hermitian_deviation(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let n = self.rows;
        let mut dev = T::zero();
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        let half = T::of(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * half
        })
    }

    /// Converts the scalar type, e.g. `f64` to `f32`.
    pub fn cast<U: Real>(&self) -> ComplexMatrix<U> {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|z| C::new(U::of(z.re.to_f64_lossy()), U::of(z.im.to_f64_lossy())))
                .collect(),
        }
    }
}

impl<T: Real> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = C<T>;

    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in add");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sub");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<T: Real> Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn neg(self) -> ComplexMatrix<T> {
        self.map(|z| -z)
    }
}

/// Panics on shape mismatch; use [`matmul`] for a checked product.
impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        matmul(self, rhs).expect("shape mismatch in mul")
    }
}

impl<T: Real> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrices `σ₀ = I, σ₁ = X, σ₂ = Y, σ₃ = Z`.
pub fn pauli<T: Real>(index: usize) -> ComplexMatrix<T> {
    let (o, z, i) = (C::one(), C::zero(), C::i());
    let data = match index {
        0 => vec![o, z, z, o],
        1 => vec![z, o, o, z],
        2 => vec![z, -i, i, z],
        3 => vec![o, z, z, -o],
        _ => panic!("Pauli index {index} out of range"),
    };
    ComplexMatrix::new(2, 2, data).expect("2x2")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_rejects_wrong_length() {
        assert!(ComplexMatrix::<f64>::new(2, 2, vec![C::zero(); 3]).is_err());
        assert!(ComplexMatrix::<f64>::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn pauli_matrices_are_hermitian_involutions() {
        for k in 0..4 {
            let s = pauli::<f64>(k);
            assert!(s.is_hermitian(1e-15));
            assert!((&s * &s).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        }
    }

    #[test]
    fn hermitian_part_fixes_drift() {
        let mut m = pauli::<f64>(2);
        m[(0, 1)] += C::new(1e-11, 0.0);
        assert!(m.hermitian_deviation() > 0.0);
        assert!(m.hermitian_part().hermitian_deviation() < 1e-16);
    }

    #[test]
    fn cast_round_trips_small_values() {
        let m = pauli::<f64>(2);
        let back: ComplexMatrix<f64> = m.cast::<f32>().cast();
        assert_eq!(back, m);
    }
}
