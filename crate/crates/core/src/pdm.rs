//! Two-time pseudo-density matrices and the causality measure.
//!
//! A PDM over `l_in + l_out` qubits is laid out with the earlier-time
//! register first. `SWAP^{⊗l}` pairs qubit `i` of the first register with
//! qubit `l + i` of the second, which makes it the plain register exchange
//! `Σ_{x,y} |x⟩⟨y| ⊗ |y⟩⟨x|`.

use crate::channel::QuantumChannel;
use crate::error::{Error, Result};
use crate::matkernel::{
    anticommutator, dagger, herm_eigenvalues, kron, kron_all, partial_transpose,
    permute_subsystems, trace_norm, ComplexMatrix,
};
use crate::{Real, C};

const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-9;
const STATE_PSD_TOL: f64 = 1e-9;
const NEGATIVE_ZERO_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct PseudoDensityMatrix<T: Real> {
    matrix: ComplexMatrix<T>,
    l_in: usize,
    l_out: usize,
}

impl<T: Real> PseudoDensityMatrix<T> {
    /// Checks Hermiticity and unit trace; negative eigenvalues are allowed.
    pub fn new(matrix: ComplexMatrix<T>, l_in: usize, l_out: usize) -> Result<Self> {
        let dim = 1usize << (l_in + l_out);
        if matrix.shape() != (dim, dim) {
            return Err(Error::dims(
                "pseudo_density_matrix",
                format!("{:?} for {l_in} + {l_out} qubits", matrix.shape()),
            ));
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > T::tol(HERMITIAN_TOL) {
            return Err(Error::NotHermitian {
                deviation: deviation.to_f64_lossy(),
            });
        }
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > T::tol(TRACE_TOL) || tr.im.abs() > T::tol(TRACE_TOL) {
            return Err(Error::InvalidState(format!(
                "pseudo-density matrix trace {} + {}i",
                tr.re, tr.im
            )));
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
            l_in,
            l_out,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn l_in(&self) -> usize {
        self.l_in
    }

    pub fn l_out(&self) -> usize {
        self.l_out
    }

    pub fn spectrum(&self) -> Vec<T> {
        herm_eigenvalues(&self.matrix).expect("PDM is Hermitian")
    }

    /// Whether the spectrum has an eigenvalue below `-tol`.
    pub fn has_causal_witness(&self, tol: T) -> bool {
        self.spectrum()[0] < -tol
    }

    /// `R ⊗ S` with the registers regrouped as `(in_R, in_S, out_R, out_S)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let raw = kron(&self.matrix, &other.matrix);
        let dims = [
            1usize << self.l_in,
            1 << self.l_out,
            1 << other.l_in,
            1 << other.l_out,
        ];
        let matrix = permute_subsystems(&raw, &dims, &[0, 2, 1, 3]).expect("consistent dims");
        Self {
            matrix,
            l_in: self.l_in + other.l_in,
            l_out: self.l_out + other.l_out,
        }
    }

    /// Convex combination `Σ pᵢ Rᵢ` of PDMs with equal layout.
    pub fn mixture(weights: &[T], parts: &[Self]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        if weights.len() != parts.len()
            || parts
                .iter()
                .any(|r| (r.l_in, r.l_out) != (first.l_in, first.l_out))
        {
            return Err(Error::dims("mixture", "weights and layouts must match"));
        }
        let n = first.matrix.rows();
        let mut acc = ComplexMatrix::zeros(n, n);
        for (w, r) in weights.iter().zip(parts) {
            acc = &acc + &r.matrix.scale_real(*w);
        }
        Self::new(acc, first.l_in, first.l_out)
    }
}

fn single_swap<T: Real>() -> ComplexMatrix<T> {
    let mut s = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        let p = crate::matkernel::pauli::<T>(i);
        s = &s + &kron(&p, &p);
    }
    s.scale_real(T::of(0.5))
}

/// `SWAP^{⊗l}` on `2l` qubits from `SWAP = ½ Σ σᵢ ⊗ σᵢ`, one factor per
/// pair `(i, l + i)`.
pub fn swap_matrix<T: Real>(l: usize) -> Result<ComplexMatrix<T>> {
    if l == 0 || l > 3 {
        return Err(Error::InvalidArgument(format!(
            "SWAP register size {l} outside 1..=3"
        )));
    }
    let one = single_swap::<T>();
    let pair_major = kron_all(std::iter::repeat_n(&one, l));
    // pair-major order is (q0, q_l, q1, q_{l+1}, ...)
    let perm: Vec<usize> = (0..2 * l)
        .map(|k| if k < l { 2 * k } else { 2 * (k - l) + 1 })
        .collect();
    permute_subsystems(&pair_major, &vec![2; 2 * l], &perm)
}

/// `Σ_{x,y} |x⟩⟨y| ⊗ |y⟩⟨x|` over two `d`-dimensional registers.
pub fn register_exchange<T: Real>(d: usize) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(d * d, d * d, |r, c| {
        let (x, y) = (r / d, r % d);
        if c == y * d + x {
            C::new(T::one(), T::zero())
        } else {
            C::new(T::zero(), T::zero())
        }
    })
}

fn check_qubit_state<T: Real>(rho: &ComplexMatrix<T>) -> Result<()> {
    if rho.shape() != (2, 2) {
        return Err(Error::InvalidState(format!(
            "expected a single-qubit state, got {:?}",
            rho.shape()
        )));
    }
    if rho.hermitian_deviation() > T::tol(HERMITIAN_TOL) {
        return Err(Error::InvalidState("state is not Hermitian".into()));
    }
    if (rho.trace().re - T::one()).abs() > T::tol(TRACE_TOL) {
        return Err(Error::InvalidState(format!(
            "state trace {}",
            rho.trace().re
        )));
    }
    if herm_eigenvalues(rho)?[0] < -T::tol(STATE_PSD_TOL) {
        return Err(Error::InvalidState(
            "state has a negative eigenvalue".into(),
        ));
    }
    Ok(())
}

/// PDM of one use of a qubit channel between two Pauli measurements:
/// `(I ⊗ N)({ρ ⊗ I/2, SWAP})`.
pub fn pdm_two_point<T: Real>(
    rho: &ComplexMatrix<T>,
    c: &QuantumChannel<T>,
) -> Result<PseudoDensityMatrix<T>> {
    check_qubit_state(rho)?;
    if c.qubits_in() != 1 || c.qubits_out() != 1 {
        return Err(Error::InvalidArgument(format!(
            "two-point PDM needs a single-qubit channel, got {} -> {}",
            c.qubits_in(),
            c.qubits_out()
        )));
    }
    let half_id = ComplexMatrix::identity(2).scale_real(T::of(0.5));
    let before = anticommutator(&kron(rho, &half_id), &swap_matrix(1)?)?;
    PseudoDensityMatrix::new(c.apply_on_second(&before, 2)?, 1, 1)
}

/// `R_N = (I ⊗ N)(SWAP^{⊗l} / 2^l)`.
pub fn pdm_from_channel<T: Real>(c: &QuantumChannel<T>) -> Result<PseudoDensityMatrix<T>> {
    let l = c.qubits_in();
    if l != c.qubits_out() {
        return Err(Error::InvalidArgument(format!(
            "PDM construction needs equal input and output registers, got {} -> {} qubits",
            l,
            c.qubits_out()
        )));
    }
    let d = c.dim_in();
    let swap = swap_matrix::<T>(l)?.scale_real(T::one() / T::of(d as f64));
    PseudoDensityMatrix::new(c.apply_on_second(&swap, d)?, l, l)
}

fn clamp_negative_zero<T: Real>(x: T) -> T {
    if x < T::zero() && x > -T::of(NEGATIVE_ZERO_FLOOR) {
        T::zero()
    } else {
        x
    }
}

/// `F(R) = log₂ ‖R‖₁`.
pub fn causality_f<T: Real>(r: &PseudoDensityMatrix<T>) -> T {
    let norm = trace_norm(&r.matrix).expect("PDM is Hermitian");
    clamp_negative_zero(norm.log2())
}

/// Causality monotone `‖R‖₁ − 1`.
pub fn f_tr<T: Real>(r: &PseudoDensityMatrix<T>) -> T {
    let norm = trace_norm(&r.matrix).expect("PDM is Hermitian");
    clamp_negative_zero(norm - T::one())
}

/// `log₂ ‖T_B(ρ)‖₁` for a bipartite state over `dims = [d₁, d₂]`.
pub fn log_negativity<T: Real>(state: &ComplexMatrix<T>, dims: [usize; 2]) -> Result<T> {
    let tr = state.trace();
    if (tr.re - T::one()).abs() > T::tol(TRACE_TOL) {
        return Err(Error::InvalidState(format!("state trace {}", tr.re)));
    }
    let pt = partial_transpose(state, &dims, 1)?;
    Ok(clamp_negative_zero(trace_norm(&pt)?.log2()))
}

/// Max-entry residual of
/// `(I ⊗ K) SWAP^{⊗k} (I ⊗ K†) − (K† ⊗ I) SWAP^{⊗m} (K ⊗ I)`
/// for a linear map `K` from `k` to `m` qubits.
pub fn lemma1_check<T: Real>(kmap: &ComplexMatrix<T>, k: usize, m: usize) -> Result<T> {
    let (dk, dm) = (1usize << k, 1usize << m);
    if kmap.shape() != (dm, dk) {
        return Err(Error::dims(
            "lemma1_check",
            format!("map {:?} is not {dm}x{dk}", kmap.shape()),
        ));
    }
    let kd = dagger(kmap);
    let lhs = {
        let ik = kron(&ComplexMatrix::identity(dk), kmap);
        let ikd = kron(&ComplexMatrix::identity(dk), &kd);
        &(&ik * &register_exchange(dk)) * &ikd
    };
    let rhs = {
        let kdi = kron(&kd, &ComplexMatrix::identity(dm));
        let ki = kron(kmap, &ComplexMatrix::identity(dm));
        &(&kdi * &register_exchange(dm)) * &ki
    };
    Ok(lhs.max_abs_diff(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{shifted_depolarizing, QuantumChannel};
    use crate::matkernel::{pauli, random};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type M = ComplexMatrix<f64>;
    type Ch = QuantumChannel<f64>;

    #[test]
    fn swap_single_pair() {
        let s = swap_matrix::<f64>(1).unwrap();
        let spec = herm_eigenvalues(&s).unwrap();
        for (a, e) in spec.iter().zip([-1.0, 1.0, 1.0, 1.0]) {
            assert!((a - e).abs() < 1e-13);
        }
        for a in 0..2 {
            for b in 0..2 {
                let ab = kron(&M::basis_ket(2, a), &M::basis_ket(2, b));
                let ba = kron(&M::basis_ket(2, b), &M::basis_ket(2, a));
                assert!((&s * &ab).max_abs_diff(&ba) < 1e-15);
            }
        }
    }

    #[test]
    fn swap_pauli_form_matches_permutation_form() {
        for l in 1..=3 {
            let s = swap_matrix::<f64>(l).unwrap();
            assert!(s.max_abs_diff(&register_exchange(1 << l)) < 1e-14, "l={l}");
            assert!((s.trace().re / (1u32 << l) as f64 - 1.0).abs() < 1e-14);
        }
        assert!(swap_matrix::<f64>(0).is_err());
    }

    #[test]
    fn two_point_pdm_examples() {
        let half = M::identity(2).scale_real(0.5);
        let r = pdm_two_point(&half, &Ch::identity(1)).unwrap();
        assert!(
            r.matrix()
                .max_abs_diff(&swap_matrix(1).unwrap().scale_real(0.5))
                < 1e-15
        );

        let c = Ch::random(1, 1, 1, 3).unwrap();
        let r2 = pdm_two_point(&half, &c).unwrap();
        assert!(
            r2.matrix()
                .max_abs_diff(pdm_from_channel(&c).unwrap().matrix())
                < 1e-14
        );
    }

    #[test]
    fn two_point_pdm_of_pure_input_on_identity() {
        // Oracle: {|0⟩⟨0| ⊗ I/2, SWAP} written out by hand in the
        // computational basis |00⟩,|01⟩,|10⟩,|11⟩:
        //   (|0⟩⟨0|⊗I/2)·SWAP + SWAP·(|0⟩⟨0|⊗I/2)
        // gives diag(1, 0, 0, 0) plus ½ on the (01,10) and (10,01) entries.
        // Spectrum {1, ½, -½, 0}, trace norm 2, F = 1.
        let oracle = M::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.5, 0.0],
            &[0.0, 0.5, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        let spec = herm_eigenvalues(&oracle).unwrap();
        let oracle_norm: f64 = spec.iter().map(|x| x.abs()).sum();
        assert!((oracle_norm - 2.0).abs() < 1e-14);

        let r = pdm_two_point(&M::diag(&[1.0, 0.0]), &Ch::identity(1)).unwrap();
        assert!(r.matrix().max_abs_diff(&oracle) < 1e-15);
        assert!((causality_f(&r) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_point_pdm_rejects_bad_inputs() {
        let not_state = M::diag(&[2.0, -1.0]);
        assert!(matches!(
            pdm_two_point(&not_state, &Ch::identity(1)),
            Err(Error::InvalidState(_))
        ));
        let half = M::identity(2).scale_real(0.5);
        assert!(pdm_two_point(&half, &Ch::identity(2)).is_err());
        assert!(pdm_two_point(&M::identity(4).scale_real(0.25), &Ch::identity(1)).is_err());
    }

    #[test]
    fn pdm_from_channel_examples() {
        let r = pdm_from_channel(&Ch::identity(1)).unwrap();
        assert!(
            r.matrix()
                .max_abs_diff(&swap_matrix(1).unwrap().scale_real(0.5))
                < 1e-15
        );
        assert!((causality_f(&r) - 1.0).abs() < 1e-12);

        let dep = shifted_depolarizing::<f64>(0.25, 0.0).unwrap();
        let r = pdm_from_channel(&dep).unwrap();
        assert!(r.matrix().max_abs_diff(&M::identity(4).scale_real(0.25)) < 1e-12);
        assert!(causality_f(&r).abs() < 1e-12);

        // Closed form at p = 0.1, γ = 0: radicand 1 - 0.8 + 0.16 = 0.36,
        // value log₂(0.9 + 0.3 + |0.2 - 0.6|/2) = log₂ 1.4.
        let expected = 1.4f64.log2();
        let r = pdm_from_channel(&shifted_depolarizing::<f64>(0.1, 0.0).unwrap()).unwrap();
        assert!((causality_f(&r) - expected).abs() < 1e-10);
        assert!((expected - 0.485_426_827).abs() < 1e-9);
    }

    #[test]
    fn pdm_from_channel_rejects_unequal_registers() {
        let c = Ch::random(1, 2, 1, 0).unwrap();
        assert!(matches!(
            pdm_from_channel(&c),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn causality_f_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random::density_matrix::<f64>(2, &mut rng);
        let b = random::density_matrix::<f64>(2, &mut rng);
        let r = PseudoDensityMatrix::new(kron(&a, &b), 1, 1).unwrap();
        assert!(causality_f(&r).abs() < 1e-12);
        assert!(!r.has_causal_witness(1e-12));
        for l in 1..=3 {
            let r = pdm_from_channel(&Ch::identity(l)).unwrap();
            assert!((causality_f(&r) - l as f64).abs() < 1e-9);
            assert!(r.has_causal_witness(1e-12));
        }
    }

    #[test]
    fn f_tr_examples() {
        let psd = PseudoDensityMatrix::new(M::identity(4).scale_real(0.25), 1, 1).unwrap();
        assert!(f_tr(&psd).abs() < 1e-12);
        let r = pdm_from_channel(&Ch::identity(1)).unwrap();
        assert!((f_tr(&r) - 1.0).abs() < 1e-12);
        let rr = r.tensor(&r);
        assert!((f_tr(&rr) - 3.0).abs() < 1e-12);
        for seed in 0..10 {
            let c = Ch::random(1, 1, 1, seed).unwrap();
            let r = pdm_from_channel(&c).unwrap();
            assert!((causality_f(&r) - (f_tr(&r) + 1.0).log2()).abs() < 1e-12);
        }
    }

    #[test]
    fn tensor_of_identity_pdms_is_two_qubit_identity_pdm() {
        let r = pdm_from_channel(&Ch::identity(1)).unwrap();
        let r2 = pdm_from_channel(&Ch::identity(2)).unwrap();
        assert!(r.tensor(&r).matrix().max_abs_diff(r2.matrix()) < 1e-15);
    }

    #[test]
    fn log_negativity_examples() {
        let phi = Ch::identity(1).choi().clone();
        assert!((log_negativity(&phi, [2, 2]).unwrap() - 1.0).abs() < 1e-12);
        let mixed = M::identity(4).scale_real(0.25);
        assert!(log_negativity(&mixed, [2, 2]).unwrap().abs() < 1e-12);
        assert!(log_negativity(&mixed, [2, 3]).is_err());
        assert!(log_negativity(&M::identity(4), [2, 2]).is_err());
    }

    #[test]
    fn log_negativity_of_choi_equals_causality() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let c = Ch::random_with(1, 1, 1, &mut rng).unwrap();
            let lhs = causality_f(&pdm_from_channel(&c).unwrap());
            let rhs = log_negativity(c.choi(), [2, 2]).unwrap();
            assert!((lhs - rhs).abs() < 1e-9);
        }
    }

    #[test]
    fn lemma1_examples() {
        assert_eq!(lemma1_check(&M::identity(2), 1, 1).unwrap(), 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let u = random::unitary::<f64>(2, &mut rng);
        assert!(lemma1_check(&u, 1, 1).unwrap() < 1e-10);
        let v = random::isometry::<f64>(4, 2, &mut rng);
        assert!(lemma1_check(&v, 1, 2).unwrap() < 1e-10);
        // holds for any linear map, not only isometries
        let g = random::gaussian_matrix::<f64>(4, 2, &mut rng);
        assert!(lemma1_check(&g, 1, 2).unwrap() < 1e-10);
        assert!(lemma1_check(&v, 2, 1).is_err());
    }

    #[test]
    fn pdm_rejects_non_hermitian_and_bad_trace() {
        let mut m = M::identity(4).scale_real(0.25);
        m[(0, 1)] = C::new(0.1, 0.0);
        assert!(matches!(
            PseudoDensityMatrix::new(m, 1, 1),
            Err(Error::NotHermitian { .. })
        ));
        assert!(PseudoDensityMatrix::new(M::identity(4), 1, 1).is_err());
        assert!(PseudoDensityMatrix::new(pauli::<f64>(0), 1, 1).is_err());
    }
}
