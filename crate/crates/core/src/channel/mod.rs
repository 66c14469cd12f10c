//! Quantum channels in Kraus form with an eagerly computed Choi matrix.
//!
//! The Choi matrix is normalized to unit trace:
//! `J = (I ⊗ N)(|Φ⁺⟩⟨Φ⁺|)` with `|Φ⁺⟩ = d^{-1/2} Σ_x |x⟩|x⟩`, reference first.
//! For several qubits the reference register holds qubits `0..l` and the
//! channel register qubits `l..2l`, i.e. the pairs `(i, l + i)` are each in
//! `|Φ⁺⟩`.

mod file;
mod named;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matkernel::{
    dagger, herm_eig, herm_eigenvalues, kron, matmul, partial_trace, random, ComplexMatrix,
};
use crate::{Real, C};

pub use file::ChannelSpecFile;
pub use named::{named_channel, shifted_depolarizing, ChannelParams, NAMES as CHANNEL_NAMES};

const COMPLETENESS_TOL: f64 = 1e-9;
const CHOI_PSD_TOL: f64 = 1e-9;
const CHOI_TRACE_TOL: f64 = 1e-9;
const MARGINAL_TOL: f64 = 1e-8;
const KRAUS_CUTOFF: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct QuantumChannel<T: Real> {
    qubits_in: usize,
    qubits_out: usize,
    kraus: Vec<ComplexMatrix<T>>,
    choi: ComplexMatrix<T>,
    label: String,
}

impl<T: Real> QuantumChannel<T> {
    /// Validates shapes and `Σ A†A = I`, then caches the Choi matrix.
    pub fn from_kraus(
        ops: Vec<ComplexMatrix<T>>,
        qubits_in: usize,
        qubits_out: usize,
    ) -> Result<Self> {
        Self::from_kraus_labeled(ops, qubits_in, qubits_out, "kraus")
    }

    pub fn from_kraus_labeled(
        ops: Vec<ComplexMatrix<T>>,
        qubits_in: usize,
        qubits_out: usize,
        label: impl Into<String>,
    ) -> Result<Self> {
        if qubits_in == 0 || qubits_out == 0 {
            return Err(Error::dims("from_kraus", "qubit counts must be positive"));
        }
        if ops.is_empty() {
            return Err(Error::dims("from_kraus", "empty Kraus list"));
        }
        let (d_in, d_out) = (1usize << qubits_in, 1usize << qubits_out);
        if let Some(bad) = ops.iter().find(|a| a.shape() != (d_out, d_in)) {
            return Err(Error::dims(
                "from_kraus",
                format!(
                    "Kraus operator {:?}, expected ({d_out}, {d_in})",
                    bad.shape()
                ),
            ));
        }
        let residual = completeness_residual(&ops, d_in);
        if !(residual < T::tol(COMPLETENESS_TOL)) {
            return Err(Error::NotTracePreserving {
                residual: residual.to_f64_lossy(),
            });
        }
        let choi = choi_from_kraus(&ops, d_in, d_out);
        Ok(Self {
            qubits_in,
            qubits_out,
            kraus: ops,
            choi,
            label: label.into(),
        })
    }

    pub fn identity(qubits: usize) -> Self {
        Self::from_kraus_labeled(
            vec![ComplexMatrix::identity(1 << qubits)],
            qubits,
            qubits,
            "identity",
        )
        .expect("identity is a channel")
    }

    /// Unitary channel `ρ ↦ UρU†`.
    pub fn unitary(u: ComplexMatrix<T>, label: impl Into<String>) -> Result<Self> {
        let q = qubits_for(u.rows())?;
        Self::from_kraus_labeled(vec![u], q, q, label)
    }

    /// Extracts Kraus operators from a unit-trace Choi matrix.
    ///
    /// Eigenvectors with eigenvalue above `1e-10` become Kraus operators
    /// scaled by `sqrt(d_in λ)`.
    pub fn from_choi(j: &ComplexMatrix<T>, qubits_in: usize, qubits_out: usize) -> Result<Self> {
        let (d_in, d_out) = (1usize << qubits_in, 1usize << qubits_out);
        if j.shape() != (d_in * d_out, d_in * d_out) {
            return Err(Error::dims(
                "kraus_from_choi",
                format!("{:?} for {qubits_in} -> {qubits_out} qubits", j.shape()),
            ));
        }
        let eig = herm_eig(j)?;
        let min = eig.eigenvalues[0];
        if min < -T::tol(CHOI_PSD_TOL) {
            return Err(Error::NotCompletelyPositive {
                min_eigenvalue: min.to_f64_lossy(),
            });
        }
        let tr: T = eig.eigenvalues.iter().copied().sum();
        let marginal = partial_trace(j, &[d_in, d_out], &[0])?;
        let target = ComplexMatrix::identity(d_in).scale_real(T::one() / T::of(d_in as f64));
        let marginal_err = marginal.max_abs_diff(&target);
        if (tr - T::one()).abs() > T::tol(CHOI_TRACE_TOL) || marginal_err > T::tol(MARGINAL_TOL) {
            return Err(Error::NotTracePreserving {
                residual: marginal_err.max((tr - T::one()).abs()).to_f64_lossy(),
            });
        }
        let scale = T::of(d_in as f64);
        let kraus: Vec<ComplexMatrix<T>> = eig
            .eigenvalues
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &lambda)| lambda > T::tol(KRAUS_CUTOFF))
            .map(|(k, &lambda)| {
                let w = (scale * lambda).sqrt();
                ComplexMatrix::from_fn(d_out, d_in, |o, x| eig.eigenvectors[(x * d_out + o, k)] * w)
            })
            .collect();
        Self::from_kraus_labeled(kraus, qubits_in, qubits_out, "choi")
    }

    /// CPTP channel from a random isometry into system ⊗ environment,
    /// followed by tracing out the environment. Deterministic per seed.
    pub fn random(
        qubits_in: usize,
        qubits_out: usize,
        env_qubits: usize,
        seed: u64,
    ) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(qubits_in, qubits_out, env_qubits, &mut rng)
    }

    pub fn random_with<R: Rng + ?Sized>(
        qubits_in: usize,
        qubits_out: usize,
        env_qubits: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if env_qubits == 0 {
            return Err(Error::InvalidArgument(
                "random channel needs at least one environment qubit".into(),
            ));
        }
        if qubits_in == 0 || qubits_out == 0 {
            return Err(Error::dims(
                "random_channel",
                "qubit counts must be positive",
            ));
        }
        let (d_in, d_out, d_env) = (
            1usize << qubits_in,
            1usize << qubits_out,
            1usize << env_qubits,
        );
        if d_out * d_env < d_in {
            return Err(Error::dims(
                "random_channel",
                "system and environment too small for an isometry",
            ));
        }
        let v = random::isometry::<T>(d_out * d_env, d_in, rng);
        let kraus = (0..d_env)
            .map(|e| ComplexMatrix::from_fn(d_out, d_in, |o, x| v[(o * d_env + e, x)]))
            .collect();
        Self::from_kraus_labeled(kraus, qubits_in, qubits_out, "random")
    }

    pub fn qubits_in(&self) -> usize {
        self.qubits_in
    }

    pub fn qubits_out(&self) -> usize {
        self.qubits_out
    }

    pub fn dim_in(&self) -> usize {
        1 << self.qubits_in
    }

    pub fn dim_out(&self) -> usize {
        1 << self.qubits_out
    }

    pub fn kraus(&self) -> &[ComplexMatrix<T>] {
        &self.kraus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Unit-trace Choi matrix (reference ⊗ output).
    pub fn choi(&self) -> &ComplexMatrix<T> {
        &self.choi
    }

    /// `Σ A ρ A†`.
    pub fn apply(&self, rho: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        if rho.shape() != (self.dim_in(), self.dim_in()) {
            return Err(Error::dims(
                "apply",
                format!(
                    "input {:?} for a {}-qubit channel",
                    rho.shape(),
                    self.qubits_in
                ),
            ));
        }
        let mut out = ComplexMatrix::zeros(self.dim_out(), self.dim_out());
        for a in &self.kraus {
            out = &out + &(&matmul(a, rho)? * &dagger(a));
        }
        Ok(out)
    }

    /// `(I_ref ⊗ N)(x)` for `x` over `dim_ref ⊗ dim_in`.
    pub fn apply_on_second(
        &self,
        x: &ComplexMatrix<T>,
        dim_ref: usize,
    ) -> Result<ComplexMatrix<T>> {
        let n = dim_ref * self.dim_in();
        if x.shape() != (n, n) {
            return Err(Error::dims(
                "apply_on_second",
                format!(
                    "{:?} vs reference {dim_ref} ⊗ input {}",
                    x.shape(),
                    self.dim_in()
                ),
            ));
        }
        let id = ComplexMatrix::identity(dim_ref);
        let m = dim_ref * self.dim_out();
        let mut out = ComplexMatrix::zeros(m, m);
        for a in &self.kraus {
            let ia = kron(&id, a);
            out = &out + &(&(&ia * x) * &dagger(&ia));
        }
        Ok(out)
    }

    /// `d ∘ c`: apply `c` first.
    pub fn compose(d: &Self, c: &Self) -> Result<Self> {
        if c.qubits_out != d.qubits_in {
            return Err(Error::dims(
                "compose",
                format!(
                    "{} output qubits into {} input qubits",
                    c.qubits_out, d.qubits_in
                ),
            ));
        }
        let mut kraus = Vec::with_capacity(d.kraus.len() * c.kraus.len());
        for dj in &d.kraus {
            for ak in &c.kraus {
                kraus.push(matmul(dj, ak)?);
            }
        }
        Self::from_kraus_labeled(
            kraus,
            c.qubits_in,
            d.qubits_out,
            format!("{}∘{}", d.label, c.label),
        )
    }

    /// Parallel use `c ⊗ d`.
    pub fn tensor(c: &Self, d: &Self) -> Self {
        let kraus = c
            .kraus
            .iter()
            .flat_map(|a| d.kraus.iter().map(move |b| kron(a, b)))
            .collect();
        Self::from_kraus_labeled(
            kraus,
            c.qubits_in + d.qubits_in,
            c.qubits_out + d.qubits_out,
            format!("{}⊗{}", c.label, d.label),
        )
        .expect("tensor product of channels is a channel")
    }

    /// Channel with entrywise conjugated Kraus operators; satisfies
    /// `N(X)ᵀ = N_conj(Xᵀ)`.
    pub fn conjugate(&self) -> Self {
        Self {
            qubits_in: self.qubits_in,
            qubits_out: self.qubits_out,
            kraus: self.kraus.iter().map(|a| a.conj()).collect(),
            choi: self.choi.conj(),
            label: format!("conj({})", self.label),
        }
    }

    /// Whether every Kraus operator has vanishing imaginary part.
    pub fn has_real_kraus(&self, tol: T) -> bool {
        self.kraus
            .iter()
            .all(|a| a.data().iter().all(|z| z.im.abs() <= tol))
    }

    /// `‖Σ A†A − I‖_max`.
    pub fn completeness_residual(&self) -> T {
        completeness_residual(&self.kraus, self.dim_in())
    }

    /// `‖Tr_out J − I/d_in‖_max`.
    pub fn marginal_residual(&self) -> T {
        let marginal = partial_trace(&self.choi, &[self.dim_in(), self.dim_out()], &[0])
            .expect("Choi dims are consistent");
        let target = ComplexMatrix::identity(self.dim_in())
            .scale_real(T::one() / T::of(self.dim_in() as f64));
        marginal.max_abs_diff(&target)
    }

    /// Ascending Choi spectrum.
    pub fn choi_spectrum(&self) -> Vec<T> {
        herm_eigenvalues(&self.choi).expect("Choi matrix is Hermitian")
    }
}

pub(crate) fn qubits_for(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::dims(
            "qubits",
            format!("dimension {dim} is not a power of two"),
        ));
    }
    Ok(dim.trailing_zeros() as usize)
}

fn completeness_residual<T: Real>(ops: &[ComplexMatrix<T>], d_in: usize) -> T {
    let mut sum = ComplexMatrix::zeros(d_in, d_in);
    for a in ops {
        sum = &sum + &(&dagger(a) * a);
    }
    sum.max_abs_diff(&ComplexMatrix::identity(d_in))
}

/// `J[(x,o),(y,o')] = (1/d_in) Σ_k A_k[o,x] conj(A_k[o',y])`.
fn choi_from_kraus<T: Real>(
    ops: &[ComplexMatrix<T>],
    d_in: usize,
    d_out: usize,
) -> ComplexMatrix<T> {
    let n = d_in * d_out;
    let inv = T::one() / T::of(d_in as f64);
    let mut j = ComplexMatrix::zeros(n, n);
    for a in ops {
        let vec: Vec<C<T>> = (0..n).map(|r| a[(r % d_out, r / d_out)]).collect();
        for r in 0..n {
            if vec[r].is_zero() {
                continue;
            }
            for c in 0..n {
                j[(r, c)] += vec[r] * vec[c].conj() * inv;
            }
        }
    }
    j.hermitian_part()
}

/// Unit-trace Choi matrix of an arbitrary linear map given by its action on
/// matrix units: `(1/d_in) Σ_{x,y} |x⟩⟨y| ⊗ f(|x⟩⟨y|)`.
pub fn choi_from_action<T: Real>(
    d_in: usize,
    d_out: usize,
    f: impl Fn(&ComplexMatrix<T>) -> ComplexMatrix<T>,
) -> ComplexMatrix<T> {
    let inv = T::one() / T::of(d_in as f64);
    let mut j = ComplexMatrix::zeros(d_in * d_out, d_in * d_out);
    for x in 0..d_in {
        for y in 0..d_in {
            let mut unit = ComplexMatrix::zeros(d_in, d_in);
            unit[(x, y)] = C::new(T::one(), T::zero());
            let image = f(&unit);
            for o in 0..d_out {
                for p in 0..d_out {
                    j[(x * d_out + o, y * d_out + p)] = image[(o, p)] * inv;
                }
            }
        }
    }
    j
}
