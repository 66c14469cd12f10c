use num_traits::Zero;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::{Real, C};

pub fn matmul<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if a.cols() != b.rows() {
        return Err(Error::dims(
            "matmul",
            format!("{}x{} times {}x{}", a.rows(), a.cols(), b.rows(), b.cols()),
        ));
    }
    let (n, m, p) = (a.rows(), a.cols(), b.cols());
    let mut out = vec![C::zero(); n * p];
    let (ad, bd) = (a.data(), b.data());
    for i in 0..n {
        let out_row = &mut out[i * p..(i + 1) * p];
        for k in 0..m {
            let aik = ad[i * m + k];
            if aik.is_zero() {
                continue;
            }
            let b_row = &bd[k * p..(k + 1) * p];
            for (o, &bkj) in out_row.iter_mut().zip(b_row) {
                *o += aik * bkj;
            }
        }
    }
    ComplexMatrix::new(n, p, out)
}

pub fn dagger<T: Real>(a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(a.cols(), a.rows(), |i, j| a[(j, i)].conj())
}

pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (br, bc) = b.shape();
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// Kronecker product of a nonempty sequence, left to right.
pub fn kron_all<'a, T: Real>(
    factors: impl IntoIterator<Item = &'a ComplexMatrix<T>>,
) -> ComplexMatrix<T> {
    let mut it = factors.into_iter();
    let first = it
        .next()
        .expect("kron_all needs at least one factor")
        .clone();
    it.fold(first, |acc, m| kron(&acc, m))
}

/// `AB + BA`.
pub fn anticommutator<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
) -> Result<ComplexMatrix<T>> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::dims(
            "anticommutator",
            format!("{:?} and {:?}", a.shape(), b.shape()),
        ));
    }
    Ok(&matmul(a, b)? + &matmul(b, a)?)
}

fn check_square_dims<T: Real>(
    op: &'static str,
    a: &ComplexMatrix<T>,
    dims: &[usize],
) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::dims(op, "subsystem dimensions must be positive"));
    }
    let total: usize = dims.iter().product();
    if !a.is_square() || a.rows() != total {
        return Err(Error::dims(
            op,
            format!(
                "{}x{} matrix vs subsystem dims {dims:?}",
                a.rows(),
                a.cols()
            ),
        ));
    }
    Ok(())
}

/// Splits a flat index into per-subsystem digits (first subsystem most significant).
fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
}

fn flatten(digits: impl Iterator<Item = usize>, dims: impl Iterator<Item = usize>) -> usize {
    digits.zip(dims).fold(0, |acc, (d, n)| acc * n + d)
}

/// Reduced matrix on the subsystems listed in `keep` (kept in ascending order).
pub fn partial_trace<T: Real>(
    a: &ComplexMatrix<T>,
    dims: &[usize],
    keep: &[usize],
) -> Result<ComplexMatrix<T>> {
    check_square_dims("partial_trace", a, dims)?;
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() || kept.iter().any(|&k| k >= dims.len()) {
        return Err(Error::dims(
            "partial_trace",
            format!("keep set {keep:?} invalid for {} subsystems", dims.len()),
        ));
    }
    if kept.is_empty() {
        return ComplexMatrix::new(1, 1, vec![a.trace()]);
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !kept.contains(k)).collect();
    let kept_dims: Vec<usize> = kept.iter().map(|&k| dims[k]).collect();
    let n_out: usize = kept_dims.iter().product();
    let mut out = ComplexMatrix::zeros(n_out, n_out);

    let n = a.rows();
    let mut di = vec![0; dims.len()];
    let mut dj = vec![0; dims.len()];
    for i in 0..n {
        digits(i, dims, &mut di);
        let ri = flatten(kept.iter().map(|&k| di[k]), kept_dims.iter().copied());
        for j in 0..n {
            digits(j, dims, &mut dj);
            if traced.iter().any(|&k| di[k] != dj[k]) {
                continue;
            }
            let rj = flatten(kept.iter().map(|&k| dj[k]), kept_dims.iter().copied());
            out[(ri, rj)] += a[(i, j)];
        }
    }
    Ok(out)
}

/// Transposes the tensor factor `subsystem` of a matrix over `dims`.
pub fn partial_transpose<T: Real>(
    a: &ComplexMatrix<T>,
    dims: &[usize],
    subsystem: usize,
) -> Result<ComplexMatrix<T>> {
    check_square_dims("partial_transpose", a, dims)?;
    if subsystem >= dims.len() {
        return Err(Error::dims(
            "partial_transpose",
            format!("subsystem {subsystem} of {}", dims.len()),
        ));
    }
    let n = a.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut di = vec![0; dims.len()];
    let mut dj = vec![0; dims.len()];
    for i in 0..n {
        for j in 0..n {
            digits(i, dims, &mut di);
            digits(j, dims, &mut dj);
            std::mem::swap(&mut di[subsystem], &mut dj[subsystem]);
            let si = flatten(di.iter().copied(), dims.iter().copied());
            let sj = flatten(dj.iter().copied(), dims.iter().copied());
            out[(i, j)] = a[(si, sj)];
        }
    }
    Ok(out)
}

/// Reorders tensor factors: factor `k` of the result is factor `perm[k]` of `a`.
pub fn permute_subsystems<T: Real>(
    a: &ComplexMatrix<T>,
    dims: &[usize],
    perm: &[usize],
) -> Result<ComplexMatrix<T>> {
    check_square_dims("permute_subsystems", a, dims)?;
    let mut seen = vec![false; dims.len()];
    if perm.len() != dims.len()
        || perm
            .iter()
            .any(|&p| p >= dims.len() || std::mem::replace(&mut seen[p], true))
    {
        return Err(Error::dims(
            "permute_subsystems",
            format!("{perm:?} is not a permutation of {} subsystems", dims.len()),
        ));
    }
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let n = a.rows();
    let remap: Vec<usize> = (0..n)
        .map(|i| {
            let mut d = vec![0; dims.len()];
            digits(i, dims, &mut d);
            flatten(perm.iter().map(|&p| d[p]), new_dims.iter().copied())
        })
        .collect();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(remap[i], remap[j])] = a[(i, j)];
        }
    }
    Ok(out)
}
