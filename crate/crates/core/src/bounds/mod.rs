//! Capacity upper bounds.
//!
//! * [`causality_bound`] `log₂ ‖R_N‖₁`, no optimization,
//! * [`analytic_shifted_depol`] the same quantity in closed form for the
//!   shifted depolarizing family,
//! * [`hw_bound`] the Holevo–Werner transposition bound, a best-found
//!   estimate from multi-restart Nelder–Mead over pure bipartite inputs,
//! * [`maxrains_surrogate`] `log₂ ‖T_B(J_N)‖₁`, an upper bound on the
//!   max-Rains quantity (the SDP itself is not solved).

mod holevo_werner;
pub mod nelder_mead;
mod sweep;

use std::collections::BTreeMap;
use std::fmt;

use crate::channel::{shifted_depolarizing, QuantumChannel};
use crate::error::{Error, Result};
use crate::matkernel::{herm_eigenvalues, inf_norm, partial_transpose, trace_norm, ComplexMatrix};
use crate::pdm::{causality_f, pdm_from_channel};
use crate::Real;

pub use holevo_werner::{hw_bound, hw_objective, maximally_entangled_input};
pub use sweep::{
    default_gamma_grid, default_p_grid, linspace, sweep_shifted_depol,
    sweep_shifted_depol_with_threads, SweepRow,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Causality,
    AnalyticShiftedDepol,
    HolevoWerner,
    MaxRainsSurrogate,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Causality,
        Method::AnalyticShiftedDepol,
        Method::HolevoWerner,
        Method::MaxRainsSurrogate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Causality => "causality",
            Method::AnalyticShiftedDepol => "analytic_shifted_depol",
            Method::HolevoWerner => "holevo_werner",
            Method::MaxRainsSurrogate => "maxrains_surrogate",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Free-form record of how a bound was obtained.
#[derive(Debug, Clone, Default)]
pub struct Diagnostics<T: Real> {
    pub restarts: Option<usize>,
    pub iterations: Option<usize>,
    pub best_objective: Option<T>,
    pub seed: Option<u64>,
    pub tolerance: Option<T>,
    /// Optimum reached by each restart (already `log₂`-scaled).
    pub per_restart: Vec<T>,
    pub converged_restarts: Option<usize>,
    pub values: BTreeMap<&'static str, T>,
    pub flags: BTreeMap<&'static str, bool>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct BoundReport<T: Real> {
    pub channel_label: String,
    pub method: Method,
    /// Qubits per channel use.
    pub value: T,
    pub diagnostics: Diagnostics<T>,
    /// Best bipartite input found (Holevo–Werner only), gauge fixed.
    pub best_input: Option<ComplexMatrix<T>>,
}

impl<T: Real> BoundReport<T> {
    fn plain(label: &str, method: Method, value: T) -> Self {
        Self {
            channel_label: label.to_string(),
            method,
            value,
            diagnostics: Diagnostics::default(),
            best_input: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iters: 2000,
            tolerance: 1e-9,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("restarts must be at least 1".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidArgument(
                "max_iters must be at least 1".into(),
            ));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tolerance {} must be positive",
                self.tolerance
            )));
        }
        Ok(())
    }
}

fn require_square_channel<T: Real>(c: &QuantumChannel<T>, op: &str) -> Result<()> {
    if c.qubits_in() != c.qubits_out() {
        return Err(Error::InvalidArgument(format!(
            "{op} needs equal input and output qubit counts, got {} -> {}",
            c.qubits_in(),
            c.qubits_out()
        )));
    }
    Ok(())
}

/// `Q(N) ≤ F(R_N)`.
pub fn causality_bound<T: Real>(c: &QuantumChannel<T>) -> Result<BoundReport<T>> {
    require_square_channel(c, "causality bound")?;
    let r = pdm_from_channel(c)?;
    let value = causality_f(&r);
    let mut report = BoundReport::plain(c.label(), Method::Causality, value);
    let spectrum = r.spectrum();
    report
        .diagnostics
        .values
        .insert("trace_norm", spectrum.iter().map(|x| x.abs()).sum());
    report
        .diagnostics
        .values
        .insert("min_eigenvalue", spectrum[0]);
    Ok(report)
}

/// Closed form of `F(R_N)` for `ρ ↦ (1 − 4p)ρ + 4p (I + γZ)/2`:
/// `log₂(1 − p + ½√s + ½|2p − √s|)` with `s = 1 − 8p + 16p² + 4γ²p²`.
pub fn analytic_shifted_depol<T: Real>(p: f64, gamma: f64) -> Result<T> {
    if !(p.is_finite() && (0.0..=0.25).contains(&p)) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
            range: "[0, 1/4]",
        });
    }
    if !(gamma.is_finite() && (0.0..=1.0).contains(&gamma)) {
        return Err(Error::ParameterOutOfRange {
            name: "gamma",
            value: gamma,
            range: "[0, 1]",
        });
    }
    let (p, g) = (T::of(p), T::of(gamma));
    let (one, two, four, half) = (T::one(), T::of(2.0), T::of(4.0), T::of(0.5));
    let radicand =
        (one - T::of(8.0) * p + T::of(16.0) * p * p + four * g * g * p * p).max(T::zero());
    let root = radicand.sqrt();
    let norm = one - p + half * root + half * (two * p - root).abs();
    Ok(norm.log2().max(T::zero()))
}

pub fn analytic_report<T: Real>(p: f64, gamma: f64) -> Result<BoundReport<T>> {
    let value = analytic_shifted_depol(p, gamma)?;
    let mut report = BoundReport::plain(
        &format!("shifted-depolarizing(p={p},gamma={gamma})"),
        Method::AnalyticShiftedDepol,
        value,
    );
    report.diagnostics.values.insert("p", T::of(p));
    report.diagnostics.values.insert("gamma", T::of(gamma));
    Ok(report)
}

/// `log₂ ‖T_B(J_N)‖₁` with the intermediate `log₂ ‖T_B(J_N)‖_∞` and the
/// independently computed causality bound of the conjugate channel recorded
/// in the diagnostics.
pub fn maxrains_surrogate<T: Real>(c: &QuantumChannel<T>) -> Result<BoundReport<T>> {
    require_square_channel(c, "max-Rains surrogate")?;
    let tb = partial_transpose(c.choi(), &[c.dim_in(), c.dim_out()], 1)?;
    let trace = trace_norm(&tb)?;
    let value = trace.log2().max(T::zero());
    let log_inf = inf_norm(&tb)?.log2();
    let conj = causality_f(&pdm_from_channel(&c.conjugate())?);

    let mut report = BoundReport::plain(c.label(), Method::MaxRainsSurrogate, value);
    let d = &mut report.diagnostics;
    d.values.insert("log2_inf_norm", log_inf);
    d.values.insert("trace_norm", trace);
    d.values.insert("conjugate_causality", conj);
    d.values
        .insert("conjugate_identity_residual", (value - conj).abs());
    d.flags
        .insert("norm_chain_holds", log_inf <= value + T::tol(1e-12));
    d.notes
        .push("upper bound on the max-Rains quantity; the underlying SDP is not solved".into());
    Ok(report)
}

/// Every applicable bound for one channel.
#[derive(Debug, Clone)]
pub struct Comparison<T: Real> {
    pub reports: BTreeMap<Method, BoundReport<T>>,
    pub hw_minus_causality: T,
}

pub fn compare_bounds<T: Real>(
    c: &QuantumChannel<T>,
    cfg: &OptimizerConfig,
) -> Result<Comparison<T>> {
    let causality = causality_bound(c)?;
    let hw = hw_bound(c, cfg)?;
    let rains = maxrains_surrogate(c)?;
    let hw_minus_causality = hw.value - causality.value;
    let reports = [causality, hw, rains]
        .into_iter()
        .map(|r| (r.method, r))
        .collect();
    Ok(Comparison {
        reports,
        hw_minus_causality,
    })
}

/// [`compare_bounds`] for the shifted depolarizing channel, including the
/// closed form.
pub fn compare_shifted_depol<T: Real>(
    p: f64,
    gamma: f64,
    cfg: &OptimizerConfig,
) -> Result<Comparison<T>> {
    let c = shifted_depolarizing::<T>(p, gamma)?;
    let mut cmp = compare_bounds(&c, cfg)?;
    let mut analytic = analytic_report::<T>(p, gamma)?;
    analytic.channel_label = c.label().to_string();
    cmp.reports.insert(Method::AnalyticShiftedDepol, analytic);
    Ok(cmp)
}

/// Ascending Choi spectrum, Kraus rank and CP/TP residuals.
#[derive(Debug, Clone)]
pub struct ChannelSummary<T: Real> {
    pub label: String,
    pub qubits_in: usize,
    pub qubits_out: usize,
    pub kraus_rank: usize,
    pub choi_spectrum: Vec<T>,
    pub completeness_residual: T,
    pub marginal_residual: T,
}

pub fn channel_summary<T: Real>(c: &QuantumChannel<T>) -> ChannelSummary<T> {
    ChannelSummary {
        label: c.label().to_string(),
        qubits_in: c.qubits_in(),
        qubits_out: c.qubits_out(),
        kraus_rank: c.kraus().len(),
        choi_spectrum: herm_eigenvalues(c.choi()).expect("Choi matrix is Hermitian"),
        completeness_residual: c.completeness_residual(),
        marginal_residual: c.marginal_residual(),
    }
}

/// Deterministic per-index substream seed (splitmix64 finalizer).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
