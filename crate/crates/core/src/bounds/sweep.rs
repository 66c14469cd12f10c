use rayon::prelude::*;

use super::{analytic_shifted_depol, causality_bound, derive_seed, hw_bound, OptimizerConfig};
use crate::channel::shifted_depolarizing;
use crate::error::{Error, Result};
use crate::Real;

/// One `(p, γ)` grid point of a shifted depolarizing sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow<T: Real> {
    pub p: f64,
    pub gamma: f64,
    pub causality: T,
    pub analytic: T,
    pub hw: T,
    pub hw_minus_causality: T,
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => vec![],
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| {
                if i == steps - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

/// 26 points over `[0, 1/4]`.
pub fn default_p_grid() -> Vec<f64> {
    linspace(0.0, 0.25, 26)
}

/// 21 points over `[0, 1]`.
pub fn default_gamma_grid() -> Vec<f64> {
    linspace(0.0, 1.0, 21)
}

fn sweep_row<T: Real>(p: f64, gamma: f64, cfg: &OptimizerConfig) -> Result<SweepRow<T>> {
    let c = shifted_depolarizing::<T>(p, gamma)?;
    let causality = causality_bound(&c)?.value;
    let analytic = analytic_shifted_depol(p, gamma)?;
    let hw = hw_bound(&c, cfg)?.value;
    Ok(SweepRow {
        p,
        gamma,
        causality,
        analytic,
        hw,
        hw_minus_causality: hw - causality,
    })
}

fn validate_grid(name: &'static str, grid: &[f64], hi: f64) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument(format!("{name} grid is empty")));
    }
    if let Some(&bad) = grid
        .iter()
        .find(|v| !(v.is_finite() && (0.0..=hi).contains(*v)))
    {
        return Err(Error::ParameterOutOfRange {
            name,
            value: bad,
            range: if name == "p" { "[0, 1/4]" } else { "[0, 1]" },
        });
    }
    Ok(())
}

/// Rows in `p`-outer, `γ`-inner order. Every row seeds its optimizer from
/// `(cfg.seed, row index)`, so the output does not depend on scheduling.
pub fn sweep_shifted_depol<T: Real>(
    p_grid: &[f64],
    gamma_grid: &[f64],
    cfg: &OptimizerConfig,
) -> Result<Vec<SweepRow<T>>> {
    validate_grid("p", p_grid, 0.25)?;
    validate_grid("gamma", gamma_grid, 1.0)?;
    cfg.validate()?;
    let points: Vec<(usize, f64, f64)> = p_grid
        .iter()
        .flat_map(|&p| gamma_grid.iter().map(move |&g| (p, g)))
        .enumerate()
        .map(|(i, (p, g))| (i, p, g))
        .collect();
    points
        .into_par_iter()
        .map(|(i, p, g)| {
            let row_cfg = OptimizerConfig {
                seed: derive_seed(cfg.seed, i as u64),
                ..cfg.clone()
            };
            sweep_row(p, g, &row_cfg)
        })
        .collect()
}

/// [`sweep_shifted_depol`] on a dedicated pool; `threads == 0` uses every
/// available core.
pub fn sweep_shifted_depol_with_threads<T: Real>(
    p_grid: &[f64],
    gamma_grid: &[f64],
    cfg: &OptimizerConfig,
    threads: usize,
) -> Result<Vec<SweepRow<T>>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| sweep_shifted_depol(p_grid, gamma_grid, cfg))
}
