//! Derivative-free Nelder–Mead maximizer.

#[derive(Clone, Debug)]
pub struct NelderMead {
    pub max_evals: usize,
    /// Stop once the spread of objective values over the simplex drops below this.
    pub ftol: f64,
    /// Edge length of the initial simplex.
    pub initial_step: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            max_evals: 500,
            ftol: 1e-8,
            initial_step: 0.4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NmOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
    pub reached_target: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

impl NelderMead {
    /// Maximizes `f` from `x0`. Returns as soon as a value `>= target` is seen.
    /// The returned value is never below `f(x0)`.
    pub fn maximize<F>(&self, mut f: F, x0: &[f64], target: Option<f64>) -> NmOutcome
    where
        F: FnMut(&[f64]) -> f64,
    {
        let dim = x0.len();
        let mut evals = 0usize;
        let hit = |v: f64| target.is_some_and(|t| v >= t);
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            let v = f(x);
            if v.is_nan() {
                f64::NEG_INFINITY
            } else {
                v
            }
        };

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
        let v0 = eval(x0, &mut evals);
        simplex.push((x0.to_vec(), v0));
        if hit(v0) || dim == 0 {
            return NmOutcome {
                x: x0.to_vec(),
                value: v0,
                evaluations: evals,
                converged: dim == 0,
                reached_target: hit(v0),
            };
        }
        for i in 0..dim {
            let mut x = x0.to_vec();
            x[i] += self.initial_step;
            let v = eval(&x, &mut evals);
            simplex.push((x, v));
            if hit(v) {
                return NmOutcome {
                    x: simplex.last().unwrap().0.clone(),
                    value: v,
                    evaluations: evals,
                    converged: false,
                    reached_target: true,
                };
            }
        }

        let mut converged = false;
        loop {
            // best first
            simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
            let best = simplex[0].1;
            let worst = simplex[dim].1;
            if best - worst <= self.ftol || simplex_diameter(&simplex) < 1e-12 {
                converged = true;
                break;
            }
            if evals >= self.max_evals {
                break;
            }

            let mut centroid = vec![0.0; dim];
            for (x, _) in &simplex[..dim] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / dim as f64;
                }
            }
            let along = |t: f64, from: &[f64]| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(from)
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };

            let worst_x = simplex[dim].0.clone();
            let xr = along(REFLECT, &worst_x);
            let fr = eval(&xr, &mut evals);
            if hit(fr) {
                simplex[dim] = (xr, fr);
                break;
            }
            if fr > best {
                let xe = along(EXPAND, &worst_x);
                let fe = eval(&xe, &mut evals);
                simplex[dim] = if fe > fr { (xe, fe) } else { (xr, fr) };
                if hit(simplex[dim].1) {
                    break;
                }
                continue;
            }
            if fr > simplex[dim - 1].1 {
                simplex[dim] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr > worst {
                let xc = along(CONTRACT, &worst_x);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            } else {
                let xc = along(-CONTRACT, &worst_x);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            };
            if fc > worst.max(fr) {
                simplex[dim] = (xc, fc);
                if hit(fc) {
                    break;
                }
                continue;
            }
            let best_x = simplex[0].0.clone();
            let mut reached = false;
            for (x, v) in simplex.iter_mut().skip(1) {
                for (xi, bi) in x.iter_mut().zip(&best_x) {
                    *xi = bi + SHRINK * (*xi - bi);
                }
                *v = eval(x, &mut evals);
                reached |= hit(*v);
            }
            if reached {
                break;
            }
        }
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let (x, value) = simplex.swap_remove(0);
        NmOutcome {
            reached_target: hit(value),
            x,
            value,
            evaluations: evals,
            converged,
        }
    }
}

fn simplex_diameter(simplex: &[(Vec<f64>, f64)]) -> f64 {
    let base = &simplex[0].0;
    simplex[1..]
        .iter()
        .map(|(x, _)| {
            x.iter()
                .zip(base)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_maximum_of_concave_quadratic() {
        let nm = NelderMead {
            max_evals: 2000,
            ftol: 1e-14,
            initial_step: 0.5,
        };
        let out = nm.maximize(
            |x| -(x[0] - 1.0).powi(2) - 2.0 * (x[1] + 0.5).powi(2) + 3.0,
            &[0.0, 0.0],
            None,
        );
        assert!(out.converged);
        assert!((out.value - 3.0).abs() < 1e-12);
        assert!((out.x[0] - 1.0).abs() < 1e-5 && (out.x[1] + 0.5).abs() < 1e-5);
    }

    #[test]
    fn never_returns_below_start() {
        let nm = NelderMead {
            max_evals: 3,
            ..Default::default()
        };
        let f = |x: &[f64]| (5.0 * x[0]).sin() * (3.0 * x[1]).cos();
        let x0 = [0.3, 0.2];
        let out = nm.maximize(f, &x0, None);
        assert!(out.value >= f(&x0));
        assert!(!out.converged);
    }

    #[test]
    fn stops_at_target() {
        let nm = NelderMead::default();
        let out = nm.maximize(|x| -(x[0] - 2.0).powi(2), &[0.0], Some(-1.0));
        assert!(out.reached_target);
        assert!(out.value >= -1.0);
        assert!(out.evaluations < 20);
    }
}
