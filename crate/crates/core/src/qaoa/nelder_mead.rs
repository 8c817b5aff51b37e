//! Derivative-free simplex minimizer (Nelder–Mead with standard
//! reflection/expansion/contraction/shrink coefficients 1, 2, 0.5, 0.5).

/// Outcome of a simplex minimization.
pub struct NelderMeadResult {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    /// Running best objective after each iteration; non-increasing.
    pub trace: Vec<f64>,
    pub iterations: usize,
}

pub struct NelderMead {
    pub max_iters: usize,
    /// Convergence threshold on the simplex value spread.
    pub tolerance: f64,
    /// Convergence threshold on the simplex extent; both must be met, or a
    /// symmetric bracket around the minimum would terminate early.
    pub point_tolerance: f64,
    /// Step used to build the initial simplex around the start point.
    pub initial_step: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self { max_iters: 500, tolerance: 1e-6, point_tolerance: 1e-8, initial_step: 0.25 }
    }
}

impl NelderMead {
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, start: &[f64]) -> NelderMeadResult {
        let dim = start.len();
        assert!(dim >= 1, "need at least one coordinate");

        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
        simplex.push(start.to_vec());
        for i in 0..dim {
            let mut p = start.to_vec();
            p[i] += self.initial_step;
            simplex.push(p);
        }
        let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

        let mut trace = Vec::with_capacity(self.max_iters);
        let mut iterations = 0;

        for _ in 0..self.max_iters {
            iterations += 1;
            let mut order: Vec<usize> = (0..simplex.len()).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            let best = order[0];
            let worst = order[dim];
            let second_worst = order[dim - 1];

            trace.push(values[best]);
            let extent = simplex
                .iter()
                .map(|p| {
                    p.iter()
                        .zip(&simplex[best])
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0f64, f64::max)
                })
                .fold(0.0f64, f64::max);
            if (values[worst] - values[best]).abs() <= self.tolerance
                && extent <= self.point_tolerance
            {
                break;
            }

            // Centroid of all but the worst vertex.
            let mut centroid = vec![0.0; dim];
            for &idx in order.iter().take(dim) {
                for (c, x) in centroid.iter_mut().zip(&simplex[idx]) {
                    *c += x / dim as f64;
                }
            }

            let reflect: Vec<f64> = centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| c + (c - w))
                .collect();
            let f_reflect = f(&reflect);

            if f_reflect < values[best] {
                let expand: Vec<f64> = centroid
                    .iter()
                    .zip(&simplex[worst])
                    .map(|(c, w)| c + 2.0 * (c - w))
                    .collect();
                let f_expand = f(&expand);
                if f_expand < f_reflect {
                    simplex[worst] = expand;
                    values[worst] = f_expand;
                } else {
                    simplex[worst] = reflect;
                    values[worst] = f_reflect;
                }
            } else if f_reflect < values[second_worst] {
                simplex[worst] = reflect;
                values[worst] = f_reflect;
            } else {
                let contract: Vec<f64> = if f_reflect < values[worst] {
                    centroid.iter().zip(&reflect).map(|(c, r)| c + 0.5 * (r - c)).collect()
                } else {
                    centroid
                        .iter()
                        .zip(&simplex[worst])
                        .map(|(c, w)| c + 0.5 * (w - c))
                        .collect()
                };
                let f_contract = f(&contract);
                if f_contract < values[worst].min(f_reflect) {
                    simplex[worst] = contract;
                    values[worst] = f_contract;
                } else {
                    // Shrink toward the best vertex.
                    let anchor = simplex[best].clone();
                    for idx in 0..simplex.len() {
                        if idx == best {
                            continue;
                        }
                        for (x, a) in simplex[idx].iter_mut().zip(&anchor) {
                            *x = a + 0.5 * (*x - a);
                        }
                        values[idx] = f(&simplex[idx]);
                    }
                }
            }
        }

        let best = values
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.total_cmp(b))
            .map(|(i, _)| i)
            .expect("non-empty simplex");
        // Monotone trace: the final value may beat the last recorded one.
        if let Some(&last) = trace.last() {
            if values[best] < last {
                trace.push(values[best]);
            }
        }
        NelderMeadResult {
            best_point: simplex[best].clone(),
            best_value: values[best],
            trace,
            iterations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_a_shifted_quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 1.5).powi(2) + (x[1] + 0.5).powi(2) + 2.0;
        let result = NelderMead::default().minimize(f, &[0.0, 0.0]);
        assert!((result.best_point[0] - 1.5).abs() < 1e-3, "{:?}", result.best_point);
        assert!((result.best_point[1] + 0.5).abs() < 1e-3);
        assert!((result.best_value - 2.0).abs() < 1e-5);
    }

    #[test]
    fn trace_is_non_increasing() {
        let f = |x: &[f64]| x[0].powi(2) + (x[1] - 2.0).powi(2) * 3.0;
        let result = NelderMead::default().minimize(f, &[4.0, -4.0]);
        for w in result.trace.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn handles_one_dimension() {
        let f = |x: &[f64]| (x[0] - 3.0).powi(2);
        let result = NelderMead::default().minimize(f, &[0.0]);
        assert!((result.best_point[0] - 3.0).abs() < 1e-3);
    }

    #[test]
    fn respects_iteration_budget() {
        let f = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
        let nm = NelderMead { max_iters: 3, ..Default::default() };
        let result = nm.minimize(f, &[1.0, 1.0, 1.0]);
        assert!(result.iterations <= 3);
    }
}
