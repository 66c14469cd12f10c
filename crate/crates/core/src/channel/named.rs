use std::collections::BTreeMap;

use super::QuantumChannel;
use crate::error::{Error, Result};
use crate::matkernel::{kron, pauli, ComplexMatrix};
use crate::Real;

/// Named parameters for [`named_channel`] (`qubits`, `p`, `gamma`, `eta`).
pub type ChannelParams = BTreeMap<String, f64>;

pub const NAMES: [&str; 5] = [
    "identity",
    "depolarizing",
    "shifted-depolarizing",
    "dephasing",
    "amplitude-damping",
];

fn in_range(name: &'static str, value: f64, lo: f64, hi: f64, range: &'static str) -> Result<f64> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(Error::ParameterOutOfRange { name, value, range })
    }
}

/// The single-qubit map `ρ ↦ (1 − 4p)ρ + 4p (I + γZ)/2`.
///
/// Built from its Choi matrix `¼ Σᵢ σᵢᵀ ⊗ N(σᵢ)` followed by Kraus
/// extraction, so the Kraus list is the canonical (orthogonal) one.
pub fn shifted_depolarizing<T: Real>(p: f64, gamma: f64) -> Result<QuantumChannel<T>> {
    let p = in_range("p", p, 0.0, 0.25, "[0, 1/4]")?;
    let gamma = in_range("gamma", gamma, 0.0, 1.0, "[0, 1]")?;
    let keep = T::of(1.0 - 4.0 * p);
    let mix = T::of(4.0 * p);
    let shifted = (&pauli::<T>(0) + &pauli::<T>(3).scale_real(T::of(gamma))).scale_real(T::of(0.5));
    let action = |x: &ComplexMatrix<T>| -> ComplexMatrix<T> {
        &x.scale_real(keep) + &shifted.scale(x.trace() * mix)
    };
    let mut choi = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        let s = pauli::<T>(i);
        choi = &choi + &kron(&s.transpose(), &action(&s));
    }
    let choi = choi.scale_real(T::of(0.25));
    Ok(QuantumChannel::from_choi(&choi, 1, 1)?
        .with_label(format!("shifted-depolarizing(p={p},gamma={gamma})")))
}

fn param(params: &ChannelParams, key: &str, default: Option<f64>) -> Result<f64> {
    params
        .get(key)
        .copied()
        .or(default)
        .ok_or_else(|| Error::InvalidArgument(format!("missing parameter '{key}'")))
}

/// Channel families used by tests and the CLI.
///
/// * `identity` (`qubits`, default 1)
/// * `depolarizing` (`p` ∈ [0, 1/4]): `ρ ↦ (1 − 4p)ρ + 4p I/2`
/// * `shifted-depolarizing` (`p`, `gamma`)
/// * `dephasing` (`p` ∈ [0, 1]): Kraus `√(1−p) I, √p Z`
/// * `amplitude-damping` (`eta` ∈ [0, 1])
pub fn named_channel<T: Real>(name: &str, params: &ChannelParams) -> Result<QuantumChannel<T>> {
    match name {
        "identity" => {
            let q = param(params, "qubits", Some(1.0))?;
            if q.fract() != 0.0 || !(1.0..=3.0).contains(&q) {
                return Err(Error::ParameterOutOfRange {
                    name: "qubits",
                    value: q,
                    range: "{1, 2, 3}",
                });
            }
            Ok(QuantumChannel::identity(q as usize))
        }
        "depolarizing" => {
            let p = param(params, "p", None)?;
            Ok(shifted_depolarizing(p, 0.0)?.with_label(format!("depolarizing(p={p})")))
        }
        "shifted-depolarizing" => {
            let p = param(params, "p", None)?;
            let gamma = param(params, "gamma", Some(0.0))?;
            shifted_depolarizing(p, gamma)
        }
        "dephasing" => {
            let p = in_range("p", param(params, "p", Some(0.5))?, 0.0, 1.0, "[0, 1]")?;
            let ops = vec![
                pauli::<T>(0).scale_real(T::of((1.0 - p).sqrt())),
                pauli::<T>(3).scale_real(T::of(p.sqrt())),
            ];
            QuantumChannel::from_kraus_labeled(ops, 1, 1, format!("dephasing(p={p})"))
        }
        "amplitude-damping" => {
            let eta = in_range("eta", param(params, "eta", None)?, 0.0, 1.0, "[0, 1]")?;
            let k0 = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, (1.0 - eta).sqrt()]])?;
            let k1 = ComplexMatrix::from_real_rows(&[&[0.0, eta.sqrt()], &[0.0, 0.0]])?;
            QuantumChannel::from_kraus_labeled(
                vec![k0, k1],
                1,
                1,
                format!("amplitude-damping(eta={eta})"),
            )
        }
        other => Err(Error::UnknownChannel(other.to_string())),
    }
}
