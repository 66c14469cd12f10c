//! Nelder–Mead simplex minimization (standard coefficients 1, 2, ½, ½).

use crate::Real;

#[derive(Debug, Clone)]
pub struct NelderMead<T: Real> {
    pub max_iters: usize,
    /// Stop when the spread of objective values across the simplex falls
    /// below this and the simplex diameter below its square root.
    pub tolerance: T,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: T,
}

#[derive(Debug, Clone)]
pub struct Minimum<T: Real> {
    pub x: Vec<T>,
    pub value: T,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T: Real> NelderMead<T> {
    pub fn new(max_iters: usize, tolerance: T, initial_step: T) -> Self {
        Self {
            max_iters,
            tolerance,
            initial_step,
        }
    }

    pub fn minimize(&self, f: impl Fn(&[T]) -> T, start: &[T]) -> Minimum<T> {
        let n = start.len();
        assert!(n > 0, "empty parameter vector");
        let (alpha, gamma, rho, sigma) = (T::one(), T::of(2.0), T::of(0.5), T::of(0.5));
        let mut evaluations = 0usize;
        let mut eval = |x: &[T]| {
            evaluations += 1;
            let v = f(x);
            if v.is_nan() {
                T::infinity()
            } else {
                v
            }
        };

        let mut simplex: Vec<Vec<T>> = Vec::with_capacity(n + 1);
        simplex.push(start.to_vec());
        for i in 0..n {
            let mut v = start.to_vec();
            v[i] += self.initial_step;
            simplex.push(v);
        }
        let mut values: Vec<T> = simplex.iter().map(|x| eval(x)).collect();

        let x_tol = self.tolerance.sqrt();
        let mut iterations = 0;
        let mut converged = false;
        while iterations < self.max_iters {
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| {
                values[a]
                    .partial_cmp(&values[b])
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            let f_spread = values[n] - values[0];
            let diameter = simplex[1..]
                .iter()
                .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (*a - *b).abs()))
                .fold(T::zero(), T::max);
            if f_spread <= self.tolerance && diameter <= x_tol {
                converged = true;
                break;
            }
            iterations += 1;

            let inv_n = T::one() / T::of(n as f64);
            let centroid: Vec<T> = (0..n)
                .map(|j| simplex[..n].iter().map(|v| v[j]).sum::<T>() * inv_n)
                .collect();
            let along = |t: T| -> Vec<T> {
                centroid
                    .iter()
                    .zip(&simplex[n])
                    .map(|(c, w)| *c + t * (*c - *w))
                    .collect()
            };

            let reflected = along(alpha);
            let f_r = eval(&reflected);
            if f_r < values[0] {
                let expanded = along(gamma);
                let f_e = eval(&expanded);
                if f_e < f_r {
                    simplex[n] = expanded;
                    values[n] = f_e;
                } else {
                    simplex[n] = reflected;
                    values[n] = f_r;
                }
                continue;
            }
            if f_r < values[n - 1] {
                simplex[n] = reflected;
                values[n] = f_r;
                continue;
            }
            let (contracted, f_c) = if f_r < values[n] {
                let c = along(rho);
                let fc = eval(&c);
                (c, fc)
            } else {
                let c = along(-rho);
                let fc = eval(&c);
                (c, fc)
            };
            if f_c < values[n].min(f_r) {
                simplex[n] = contracted;
                values[n] = f_c;
                continue;
            }
            let best = simplex[0].clone();
            for i in 1..=n {
                for (x, b) in simplex[i].iter_mut().zip(&best) {
                    *x = *b + sigma * (*x - *b);
                }
                values[i] = eval(&simplex[i]);
            }
        }

        let best = (0..=n)
            .min_by(|&a, &b| {
                values[a]
                    .partial_cmp(&values[b])
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty simplex");
        Minimum {
            x: simplex[best].clone(),
            value: values[best],
            iterations,
            evaluations,
            converged,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_shifted_quadratic() {
        let nm = NelderMead::<f64>::new(5000, 1e-14, 0.5);
        let m = nm.minimize(
            |x: &[f64]| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2) + 0.5,
            &[0.0, 0.0],
        );
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-5 && (m.x[1] + 2.0).abs() < 1e-5);
        assert!((m.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn minimizes_rosenbrock() {
        let nm = NelderMead::new(20_000, 1e-16, 0.5);
        let m = nm.minimize(
            |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            &[-1.2, 1.0],
        );
        assert!((m.x[0] - 1.0).abs() < 1e-4, "{:?}", m.x);
        assert!((m.x[1] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn handles_nonsmooth_objective() {
        let nm = NelderMead::new(5000, 1e-12, 0.3);
        let m = nm.minimize(
            |x: &[f64]| (x[0] - 0.3).abs() + (x[1] + 0.1).abs(),
            &[1.0, 1.0],
        );
        assert!((m.x[0] - 0.3).abs() < 1e-4 && (m.x[1] + 0.1).abs() < 1e-4);
    }

    #[test]
    fn respects_iteration_cap() {
        let nm = NelderMead::new(3, 1e-30, 1.0);
        let m = nm.minimize(|x: &[f64]| x.iter().map(|v| v * v).sum(), &[5.0, 5.0, 5.0]);
        assert!(!m.converged);
        assert_eq!(m.iterations, 3);
    }

    #[test]
    fn nan_is_treated_as_worst() {
        let nm = NelderMead::new(2000, 1e-12, 0.5);
        let m = nm.minimize(
            |x: &[f64]| {
                if x[0] < 0.0 {
                    f64::NAN
                } else {
                    (x[0] - 0.5).powi(2)
                }
            },
            &[1.0],
        );
        assert!((m.x[0] - 0.5).abs() < 1e-4);
    }
}
