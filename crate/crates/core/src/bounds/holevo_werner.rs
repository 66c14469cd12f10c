//! Holevo–Werner bound `sup_ψ log₂ ‖(I ⊗ N∘T)(|ψ⟩⟨ψ|)‖₁`.
//!
//! The objective is convex in the input density matrix, so the supremum is
//! attained on pure states and only those are searched. A state on
//! `d ⊗ d` is parametrized by `2d²` reals (real parts, then imaginary parts)
//! and normalized inside the objective. Restart 0 always starts from the
//! maximally entangled state, where the objective equals `‖R_N‖₁`; the
//! reported value therefore never falls below the causality bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::nelder_mead::NelderMead;
use super::{require_square_channel, BoundReport, Diagnostics, Method, OptimizerConfig};
use crate::channel::QuantumChannel;
use crate::error::Result;
use crate::matkernel::{herm_eigenvalues, partial_transpose, ComplexMatrix};
use crate::{Real, C};

const INITIAL_STEP: f64 = 0.25;
const POLISH_ROUNDS: usize = 3;

/// Normalized amplitudes from a parameter vector, or `None` at the origin.
fn state_from_params<T: Real>(x: &[T]) -> Option<Vec<C<T>>> {
    let n = x.len() / 2;
    let amps: Vec<C<T>> = (0..n).map(|k| C::new(x[k], x[n + k])).collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    if !(norm > T::epsilon()) {
        return None;
    }
    Some(amps.into_iter().map(|z| z / norm).collect())
}

/// Rotates the largest-magnitude amplitude onto the nonnegative real axis.
fn fix_gauge<T: Real>(amps: &mut [C<T>]) {
    let (_, pivot) = amps
        .iter()
        .enumerate()
        .fold((T::zero(), None), |(m, idx), (k, z)| {
            if z.norm() > m {
                (z.norm(), Some(k))
            } else {
                (m, idx)
            }
        });
    if let Some(k) = pivot {
        let phase = amps[k].conj() / amps[k].norm();
        for z in amps.iter_mut() {
            *z *= phase;
        }
        amps[k] = C::new(amps[k].re, T::zero());
    }
}

/// `‖(I ⊗ N∘T)(|ψ⟩⟨ψ|)‖₁` for a unit vector on reference ⊗ input.
pub fn hw_objective<T: Real>(c: &QuantumChannel<T>, psi: &ComplexMatrix<T>) -> Result<T> {
    let d = c.dim_in();
    let rho = ComplexMatrix::projector(psi);
    let transposed = partial_transpose(&rho, &[d, d], 1)?;
    let out = c.apply_on_second(&transposed, d)?;
    Ok(herm_eigenvalues(&out)?.iter().map(|x| x.abs()).sum())
}

/// `|Φ⁺⟩ = d^{-1/2} Σ_x |x⟩|x⟩` as a column vector.
pub fn maximally_entangled_input<T: Real>(d: usize) -> ComplexMatrix<T> {
    let amp = T::one() / T::of(d as f64).sqrt();
    let mut v = ComplexMatrix::zeros(d * d, 1);
    for x in 0..d {
        v[(x * d + x, 0)] = C::new(amp, T::zero());
    }
    v
}

fn params_from_state<T: Real>(psi: &ComplexMatrix<T>) -> Vec<T> {
    let data = psi.data();
    data.iter()
        .map(|z| z.re)
        .chain(data.iter().map(|z| z.im))
        .collect()
}

pub fn hw_bound<T: Real>(c: &QuantumChannel<T>, cfg: &OptimizerConfig) -> Result<BoundReport<T>> {
    require_square_channel(c, "Holevo–Werner bound")?;
    cfg.validate()?;
    let d = c.dim_in();
    let n_params = 2 * d * d;

    let objective = |x: &[T]| -> T {
        match state_from_params(x) {
            Some(amps) => -hw_objective(c, &ComplexMatrix::column(amps)).unwrap_or(T::zero()),
            None => T::zero(),
        }
    };
    let nm = NelderMead::new(cfg.max_iters, T::of(cfg.tolerance), T::of(INITIAL_STEP));

    let mut best_value = T::neg_infinity();
    let mut best_params = Vec::new();
    let mut per_restart = Vec::with_capacity(cfg.restarts);
    let mut iterations = 0;
    let mut converged_restarts = 0;

    for restart in 0..cfg.restarts {
        let start = if restart == 0 {
            params_from_state(&maximally_entangled_input::<T>(d))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(restart as u64);
            (0..n_params)
                .map(|_| T::of(rng.sample::<f64, _>(StandardNormal)))
                .collect()
        };
        let mut local_best = (-objective(&start), start.clone());
        let mut point = start;
        let mut converged = false;
        // Restarting from the optimum with a fresh simplex guards against
        // premature collapse; stop once a round brings no improvement.
        for _ in 0..POLISH_ROUNDS {
            let m = nm.minimize(&objective, &point);
            iterations += m.iterations;
            converged = m.converged;
            let improved = -m.value > local_best.0 + T::of(cfg.tolerance);
            if -m.value > local_best.0 {
                local_best = (-m.value, m.x.clone());
            }
            point = m.x;
            if !improved {
                break;
            }
        }
        if converged {
            converged_restarts += 1;
        }
        per_restart.push(local_best.0.log2());
        if local_best.0 > best_value {
            best_value = local_best.0;
            best_params = local_best.1;
        }
    }

    let mut amps = state_from_params(&best_params).expect("best point has nonzero norm");
    fix_gauge(&mut amps);
    let best_input = ComplexMatrix::column(amps);
    let value = best_value.log2();

    let mut diagnostics = Diagnostics {
        restarts: Some(cfg.restarts),
        iterations: Some(iterations),
        best_objective: Some(best_value),
        seed: Some(cfg.seed),
        tolerance: Some(T::of(cfg.tolerance)),
        per_restart,
        converged_restarts: Some(converged_restarts),
        ..Diagnostics::default()
    };
    diagnostics
        .flags
        .insert("all_restarts_failed_to_converge", converged_restarts == 0);
    diagnostics
        .notes
        .push("best-found lower estimate of the supremum over pure inputs; not certified".into());
    Ok(BoundReport {
        channel_label: c.label().to_string(),
        method: Method::HolevoWerner,
        value,
        diagnostics,
        best_input: Some(best_input),
    })
}
