//! Randomized property suites. Every case draws from its own derived seed, so
//! results do not depend on thread scheduling.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{entanglement_fidelity, entanglement_fidelity_purified, fidelity, fvg_check};
use crate::bounds::{analytic_shifted_depol, derive_seed, maxrains_surrogate};
use crate::channel::{shifted_depolarizing, QuantumChannel};
use crate::error::{Error, Result};
use crate::matkernel::{
    dagger, inf_norm, kron, matmul, partial_transpose, random, trace_norm, ComplexMatrix,
};
use crate::pdm::{
    causality_f, lemma1_check, log_negativity, pdm_from_channel, PseudoDensityMatrix,
};
use crate::Real;

type Ch = QuantumChannel<f64>;
type M = ComplexMatrix<f64>;

pub const SUITE_NAMES: [&str; 5] = ["all", "pdm", "lemmas", "fidelity", "bounds"];

const TOL: f64 = 1e-9;
const LEMMA1_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Pdm,
    Lemmas,
    Fidelity,
    Bounds,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "pdm" => Ok(Suite::Pdm),
            "lemmas" => Ok(Suite::Lemmas),
            "fidelity" => Ok(Suite::Fidelity),
            "bounds" => Ok(Suite::Bounds),
            other => Err(Error::InvalidArgument(format!(
                "unknown suite '{other}' (expected one of {})",
                SUITE_NAMES.join(", ")
            ))),
        }
    }
}

/// Outcome of one property over all cases. A margin is the signed slack of
/// the inequality (equalities use minus the residual); a case fails when its
/// margin drops below `-tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub worst_margin: f64,
    pub worst_case: Option<usize>,
    pub tolerance: f64,
}

impl CheckSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn from_margins(name: &'static str, tolerance: f64, margins: Vec<f64>) -> Self {
        let failures = margins.iter().filter(|m| !(**m >= -tolerance)).count();
        let worst = margins.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1));
        Self {
            name,
            cases: margins.len(),
            failures,
            worst_margin: worst.map_or(0.0, |w| *w.1 + 0.0),
            worst_case: worst.map(|w| w.0),
            tolerance,
        }
    }
}

impl fmt::Display for CheckSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} {:>4}/{:<4} passed  worst margin {:+.3e} (tol {:.0e})",
            self.name,
            self.cases - self.failures,
            self.cases,
            self.worst_margin,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckSummary>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckSummary::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {})", self.suite, self.seed)?;
        for c in &self.checks {
            writeln!(f, "  [{}] {c}", if c.passed() { "PASS" } else { "FAIL" })?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma2Summary {
    pub cases: usize,
    pub violations: usize,
    /// Minimum of `F(R_N) − F(R_{D∘N∘E})` over cases.
    pub worst_margin: f64,
    pub worst_case: Option<usize>,
}

impl Lemma2Summary {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn margins(
    seed: u64,
    salt: u64,
    cases: usize,
    f: impl Fn(usize, &mut ChaCha8Rng) -> Result<f64> + Sync,
) -> Result<Vec<f64>> {
    (0..cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed ^ salt, i as u64));
            f(i, &mut rng)
        })
        .collect()
}

fn check(
    name: &'static str,
    tolerance: f64,
    seed: u64,
    salt: u64,
    cases: usize,
    f: impl Fn(usize, &mut ChaCha8Rng) -> Result<f64> + Sync,
) -> Result<CheckSummary> {
    Ok(CheckSummary::from_margins(
        name,
        tolerance,
        margins(seed, salt, cases, f)?,
    ))
}

fn random_channel(q: usize, rng: &mut ChaCha8Rng) -> Result<Ch> {
    let env = rng.random_range(1..=2);
    Ch::random_with(q, q, env, rng)
}

fn isometric_channel(k: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Ch> {
    let v = random::isometry::<f64>(1 << m, 1 << k, rng);
    Ch::from_kraus_labeled(vec![v], k, m, "isometry")
}

/// One coding-monotonicity instance: encoding `E: k→m`, channel `N` on `m` qubits and
/// decoding `D: m→k`, with `1 ≤ k ≤ m ≤ 2`. Returns `F(R_N) − F(R_{D∘N∘E})`.
fn lemma2_case(rng: &mut ChaCha8Rng) -> Result<f64> {
    let (k, m) = [(1, 1), (1, 2), (2, 2)][rng.random_range(0..3)];
    let n = random_channel(m, rng)?;
    let e = isometric_channel(k, m, rng)?;
    let d = Ch::random_with(m, k, rng.random_range(1..=2), rng)?;
    let composed = Ch::compose(&d, &Ch::compose(&n, &e)?)?;
    let before = causality_f(&pdm_from_channel(&n)?);
    let after = causality_f(&pdm_from_channel(&composed)?);
    Ok(before.to_f64_lossy() - after.to_f64_lossy())
}

pub fn lemma2_suite(seed: u64, cases: usize) -> Result<Lemma2Summary> {
    if cases == 0 {
        return Err(Error::InvalidArgument(
            "lemma2_suite needs at least one case".into(),
        ));
    }
    let s = CheckSummary::from_margins(
        "lemma2",
        TOL,
        margins(seed, 0x4c32, cases, |_, rng| lemma2_case(rng))?,
    );
    Ok(Lemma2Summary {
        cases,
        violations: s.failures,
        worst_margin: s.worst_margin,
        worst_case: s.worst_case,
    })
}

fn pdm_checks(seed: u64, cases: usize) -> Result<Vec<CheckSummary>> {
    Ok(vec![
        check(
            "property1_product_states",
            TOL,
            seed,
            0x101,
            cases,
            |_, rng| {
                let a = random::density_matrix::<f64>(2, rng);
                let b = random::density_matrix::<f64>(2, rng);
                let r = PseudoDensityMatrix::new(kron(&a, &b), 1, 1)?;
                Ok(-causality_f(&r).abs())
            },
        )?,
        check(
            "property1_nonnegative",
            TOL,
            seed,
            0x102,
            cases,
            |i, rng| {
                let c = random_channel(1 + i % 2, rng)?;
                Ok(causality_f(&pdm_from_channel(&c)?))
            },
        )?,
        check(
            "property2_local_unitaries",
            TOL,
            seed,
            0x103,
            cases,
            |i, rng| {
                let q = 1 + i % 2;
                let r = pdm_from_channel(&random_channel(q, rng)?)?;
                let u = random::unitary::<f64>(1 << q, rng);
                let w = random::unitary::<f64>(1 << q, rng);
                let uw = kron(&u, &w);
                let rotated = matmul(&matmul(&uw, r.matrix())?, &dagger(&uw))?;
                let r2 = PseudoDensityMatrix::new(rotated, q, q)?;
                Ok(-(causality_f(&r2) - causality_f(&r)).abs())
            },
        )?,
        check("property4_convexity", TOL, seed, 0x104, cases, |i, rng| {
            let q = 1 + i % 2;
            let n = rng.random_range(2..=3);
            let parts = (0..n)
                .map(|_| pdm_from_channel(&random_channel(q, rng)?))
                .collect::<Result<Vec<_>>>()?;
            let weights = random::simplex_weights::<f64>(n, rng);
            let mix = PseudoDensityMatrix::mixture(&weights, &parts)?;
            let max = parts.iter().map(causality_f).fold(f64::MIN, f64::max);
            Ok(max - causality_f(&mix))
        })?,
        check("property5_additivity", TOL, seed, 0x105, cases, |_, rng| {
            let r = pdm_from_channel(&random_channel(1, rng)?)?;
            let s = pdm_from_channel(&random_channel(1, rng)?)?;
            Ok(-(causality_f(&r.tensor(&s)) - causality_f(&r) - causality_f(&s)).abs())
        })?,
        check("pdm_trace_hermitian", TOL, seed, 0x106, cases, |i, rng| {
            let r = pdm_from_channel(&random_channel(1 + i % 2, rng)?)?;
            let m = r.matrix();
            let tr = m.trace();
            Ok(-((tr.re - 1.0).abs().max(tr.im.abs())).max(m.hermitian_deviation()))
        })?,
        check("choi_log_negativity", TOL, seed, 0x107, cases, |_, rng| {
            let c = random_channel(1, rng)?;
            let ln = log_negativity(c.choi(), [2, 2])?;
            Ok(-(ln - causality_f(&pdm_from_channel(&c)?)).abs())
        })?,
    ])
}

fn lemma_checks(seed: u64, cases: usize) -> Result<Vec<CheckSummary>> {
    Ok(vec![
        check(
            "lemma1_isometries",
            LEMMA1_TOL,
            seed,
            0x201,
            cases,
            |i, rng| {
                let (k, m) = [(1, 1), (1, 2), (2, 2)][i % 3];
                let v = random::isometry::<f64>(1 << m, 1 << k, rng);
                Ok(-lemma1_check(&v, k, m)?)
            },
        )?,
        CheckSummary::from_margins(
            "lemma2_monotonicity",
            TOL,
            margins(seed, 0x4c32, cases, |_, rng| lemma2_case(rng))?,
        ),
    ])
}

fn fidelity_checks(seed: u64, cases: usize) -> Result<Vec<CheckSummary>> {
    let pair = |i: usize, rng: &mut ChaCha8Rng| -> (M, M) {
        // Mix pure and mixed states so the saturating edge of the chain is hit.
        let draw = |pure: bool, rng: &mut ChaCha8Rng| {
            if pure {
                let v = random::pure_state::<f64>(2, rng);
                matmul(&v, &dagger(&v)).expect("column times row")
            } else {
                random::density_matrix::<f64>(2, rng)
            }
        };
        (draw(i % 2 == 0, rng), draw(i % 3 == 0, rng))
    };
    Ok(vec![
        check("fvg_lower", TOL, seed, 0x301, cases, |i, rng| {
            let (a, b) = pair(i, rng);
            Ok(fvg_check(&a, &b)?.lower_gap)
        })?,
        check("fvg_upper", TOL, seed, 0x301, cases, |i, rng| {
            let (a, b) = pair(i, rng);
            Ok(fvg_check(&a, &b)?.upper_gap)
        })?,
        check("fidelity_symmetry", TOL, seed, 0x302, cases, |_, rng| {
            let a = random::density_matrix::<f64>(4, rng);
            let b = random::density_matrix::<f64>(4, rng);
            Ok(-(fidelity(&a, &b)? - fidelity(&b, &a)?).abs())
        })?,
        check(
            "entanglement_fidelity_purification",
            TOL,
            seed,
            0x303,
            cases,
            |i, rng| {
                let q = 1 + i % 2;
                let c = random_channel(q, rng)?;
                let rho = random::density_matrix::<f64>(1 << q, rng);
                Ok(
                    -(entanglement_fidelity(&rho, &c)? - entanglement_fidelity_purified(&rho, &c)?)
                        .abs(),
                )
            },
        )?,
        check(
            "entanglement_fidelity_kraus_choice",
            TOL,
            seed,
            0x304,
            cases,
            |_, rng| {
                let c = random_channel(1, rng)?;
                let other = Ch::from_choi(c.choi(), 1, 1)?;
                let rho = random::density_matrix::<f64>(2, rng);
                Ok(
                    -(entanglement_fidelity(&rho, &c)? - entanglement_fidelity(&rho, &other)?)
                        .abs(),
                )
            },
        )?,
    ])
}

fn bound_checks(seed: u64, cases: usize) -> Result<Vec<CheckSummary>> {
    Ok(vec![
        check(
            "maxrains_conjugate_identity",
            TOL,
            seed,
            0x401,
            cases,
            |i, rng| {
                let c = random_channel(1 + i % 2, rng)?;
                let r = maxrains_surrogate(&c)?;
                let conj = causality_f(&pdm_from_channel(&c.conjugate())?);
                Ok(-(r.value - conj).abs())
            },
        )?,
        check(
            "inf_norm_below_trace_norm",
            TOL,
            seed,
            0x402,
            cases,
            |i, rng| {
                let c = random_channel(1 + i % 2, rng)?;
                let d = c.dim_in();
                let tb = partial_transpose(c.choi(), &[d, d], 1)?;
                Ok(trace_norm(&tb)? - inf_norm(&tb)?)
            },
        )?,
        check(
            "analytic_matches_numeric",
            1e-8,
            seed,
            0x403,
            cases,
            |_, rng| {
                let p = rng.random_range(0.0..=0.25);
                let g = rng.random_range(0.0..=1.0);
                let numeric = causality_f(&pdm_from_channel(&shifted_depolarizing::<f64>(p, g)?)?);
                Ok(-(numeric - analytic_shifted_depol::<f64>(p, g)?).abs())
            },
        )?,
    ])
}

/// Runs one named suite (or all of them) on `cases` seeded cases per check.
pub fn run_suite(suite: Suite, cases: usize, seed: u64) -> Result<SuiteReport> {
    if cases == 0 {
        return Err(Error::InvalidArgument("cases must be at least 1".into()));
    }
    let (name, checks) = match suite {
        Suite::Pdm => ("pdm", pdm_checks(seed, cases)?),
        Suite::Lemmas => ("lemmas", lemma_checks(seed, cases)?),
        Suite::Fidelity => ("fidelity", fidelity_checks(seed, cases)?),
        Suite::Bounds => ("bounds", bound_checks(seed, cases)?),
        Suite::All => {
            let mut all = pdm_checks(seed, cases)?;
            all.extend(lemma_checks(seed, cases)?);
            all.extend(fidelity_checks(seed, cases)?);
            all.extend(bound_checks(seed, cases)?);
            ("all", all)
        }
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        checks,
    })
}
