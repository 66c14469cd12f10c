//! Fidelity utilities, the Fuchs–van de Graaf chain and randomized property
//! suites over the rest of the crate.
//!
//! Entanglement fidelity controls how well a channel preserves a purification
//! of its input, and through the Kretschmann–Werner inequality it bounds the
//! completely bounded distance of a coding scheme from the identity. That
//! last step needs a cb-norm (SDP) evaluator and is not computed here.

mod suites;

pub use suites::{
    lemma2_suite, run_suite, CheckSummary, Lemma2Summary, Suite, SuiteReport, SUITE_NAMES,
};

use serde::Serialize;

use crate::channel::QuantumChannel;
use crate::error::{Error, Result};
use crate::matkernel::{herm_eigenvalues, herm_map, matmul, trace_norm, ComplexMatrix};
use crate::Real;

const PSD_TOL: f64 = 1e-9;
const TRACE_TOL: f64 = 1e-9;
const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityCheckRecord<T: Real> {
    pub f: T,
    pub half_trace_dist: T,
    /// `½‖ρ−σ‖₁ − (1 − f)`
    pub lower_gap: T,
    /// `√(1 − f²) − ½‖ρ−σ‖₁`
    pub upper_gap: T,
}

impl<T: Real> FidelityCheckRecord<T> {
    pub fn holds(&self, tol: T) -> bool {
        self.lower_gap >= -tol && self.upper_gap >= -tol
    }
}

pub(crate) fn check_state<T: Real>(rho: &ComplexMatrix<T>, what: &str) -> Result<()> {
    if !rho.is_square() {
        return Err(Error::InvalidState(format!("{what} is not square")));
    }
    let dev = rho.hermitian_deviation();
    if dev > T::tol(HERMITIAN_TOL) {
        return Err(Error::NotHermitian {
            deviation: dev.to_f64_lossy(),
        });
    }
    let tr = rho.trace();
    if (tr.re - T::one()).abs() > T::tol(TRACE_TOL) || tr.im.abs() > T::tol(TRACE_TOL) {
        return Err(Error::InvalidState(format!("{what} has trace {}", tr.re)));
    }
    let min = herm_eigenvalues(rho)?[0];
    if min < -T::tol(PSD_TOL) {
        return Err(Error::InvalidState(format!(
            "{what} has negative eigenvalue {min}"
        )));
    }
    Ok(())
}

fn clamped_sqrt<T: Real>(x: T) -> T {
    if x > T::zero() {
        x.sqrt()
    } else {
        T::zero()
    }
}

/// `Tr √(√ρ σ √ρ)` from two spectral decompositions.
pub fn fidelity<T: Real>(rho: &ComplexMatrix<T>, sigma: &ComplexMatrix<T>) -> Result<T> {
    check_state(rho, "rho")?;
    check_state(sigma, "sigma")?;
    if rho.shape() != sigma.shape() {
        return Err(Error::dims(
            "fidelity",
            format!("{:?} vs {:?}", rho.shape(), sigma.shape()),
        ));
    }
    // Roundoff eigenvalues of a rank-deficient product sit near 1e-17 and
    // would add ~1e-9 each after the square root, so they are floored.
    let floor = T::of(64.0) * T::epsilon();
    let root_floored = |x: T| if x > floor { x.sqrt() } else { T::zero() };
    let root = herm_map(rho, root_floored)?;
    let inner = matmul(&matmul(&root, sigma)?, &root)?;
    Ok(herm_eigenvalues(&inner)?
        .into_iter()
        .map(root_floored)
        .fold(T::zero(), |a, b| a + b))
}

/// Schumacher's formula `Σ_k |Tr(ρ A_k)|²`.
pub fn entanglement_fidelity<T: Real>(rho: &ComplexMatrix<T>, c: &QuantumChannel<T>) -> Result<T> {
    check_state(rho, "rho")?;
    if rho.rows() != c.dim_in() || c.dim_in() != c.dim_out() {
        return Err(Error::dims(
            "entanglement_fidelity",
            format!(
                "state of dimension {} for a {}→{} channel",
                rho.rows(),
                c.dim_in(),
                c.dim_out()
            ),
        ));
    }
    let mut total = T::zero();
    for a in c.kraus() {
        total += matmul(rho, a)?.trace().norm_sqr();
    }
    Ok(total)
}

/// `⟨φ|(I⊗N)(|φ⟩⟨φ|)|φ⟩` for the spectral purification `|φ⟩ = Σ √λ_i |i⟩|e_i⟩`,
/// with the reference register first.
pub fn entanglement_fidelity_purified<T: Real>(
    rho: &ComplexMatrix<T>,
    c: &QuantumChannel<T>,
) -> Result<T> {
    check_state(rho, "rho")?;
    let d = rho.rows();
    if d != c.dim_in() || c.dim_in() != c.dim_out() {
        return Err(Error::dims(
            "entanglement_fidelity_purified",
            "dimension mismatch",
        ));
    }
    let eig = crate::matkernel::herm_eig(rho)?;
    let mut phi = ComplexMatrix::<T>::zeros(d * d, 1);
    for (i, &lam) in eig.eigenvalues.iter().enumerate() {
        let w = clamped_sqrt(lam);
        for s in 0..d {
            phi[(i * d + s, 0)] = eig.eigenvectors[(s, i)].scale(w);
        }
    }
    let proj = matmul(&phi, &phi.transpose().conj())?;
    let out = c.apply_on_second(&proj, d)?;
    let v = matmul(&matmul(&phi.transpose().conj(), &out)?, &phi)?;
    Ok(v[(0, 0)].re)
}

pub fn fvg_check<T: Real>(
    rho: &ComplexMatrix<T>,
    sigma: &ComplexMatrix<T>,
) -> Result<FidelityCheckRecord<T>> {
    let f = fidelity(rho, sigma)?;
    let half = T::of(0.5) * trace_norm(&(rho - sigma))?;
    let lower_gap = half - (T::one() - f);
    let upper_gap = clamped_sqrt(T::one() - f * f) - half;
    Ok(FidelityCheckRecord {
        f,
        half_trace_dist: half,
        lower_gap,
        upper_gap,
    })
}
