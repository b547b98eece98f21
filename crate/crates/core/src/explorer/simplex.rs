//! Nelder–Mead simplex search with restarts.
//!
//! Uses the dimension-adapted coefficients of Gao and Han, which keep
//! expansion and contraction steps useful in a few dozen dimensions.
//! Vertex batches (initial simplex, shrink) are scored in parallel; the
//! outcome does not depend on evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimplexOptions {
    /// Maximum number of objective evaluations, the starting point included.
    /// The starting point is evaluated even when the budget is zero.
    pub budget: usize,
    /// A simplex whose value spread falls below `tolerance * max(1, |f|)`
    /// has collapsed.
    pub tolerance: f64,
    pub initial_step: f64,
    /// Fresh simplices built around the incumbent after a collapse.
    pub restarts: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimplexTracePoint {
    pub iteration: usize,
    pub evaluations: usize,
    pub best: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOutcome {
    pub best: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    pub converged: bool,
    pub restarts_used: usize,
    pub trace: Vec<SimplexTracePoint>,
}

struct Budgeted<'a, F> {
    f: &'a F,
    used: usize,
    budget: usize,
}

impl<F: Fn(&[f64]) -> f64 + Sync> Budgeted<'_, F> {
    fn remaining(&self) -> usize {
        self.budget.saturating_sub(self.used)
    }

    fn eval(&mut self, x: &[f64]) -> f64 {
        self.used += 1;
        sanitize((self.f)(x))
    }

    fn eval_batch(&mut self, xs: &[Vec<f64>]) -> Vec<f64> {
        self.used += xs.len();
        let f = self.f;
        xs.par_iter().map(|x| sanitize(f(x))).collect()
    }
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

fn affine(a: &[f64], b: &[f64], c: f64) -> Vec<f64> {
    // a + c (b - a)
    a.iter().zip(b).map(|(x, y)| x + c * (y - x)).collect()
}

pub fn minimize<F>(f: &F, x0: &[f64], options: &SimplexOptions) -> SimplexOutcome
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let d = x0.len();
    let df = d as f64;
    let reflect = 1.0;
    let expand = 1.0 + 2.0 / df;
    let contract = 0.75 - 1.0 / (2.0 * df);
    let shrink = 1.0 - 1.0 / df;

    let mut fx = Budgeted {
        f,
        used: 0,
        budget: options.budget,
    };
    let mut best = x0.to_vec();
    let mut best_value = fx.eval(x0);
    let mut iteration = 0;
    let mut trace = vec![SimplexTracePoint {
        iteration,
        evaluations: fx.used,
        best: best_value,
    }];
    let mut converged = false;
    let mut restarts_used = 0;

    'restarts: for restart in 0..=options.restarts {
        if d == 0 || fx.remaining() < d {
            break;
        }
        restarts_used = restart;
        let start_value = best_value;
        let step = options.initial_step * 0.5f64.powi(restart as i32);
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed.wrapping_add(restart as u64));
        let mut vertices = vec![best.clone()];
        for i in 0..d {
            let mut v = best.clone();
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            v[i] += sign * step;
            vertices.push(v);
        }
        let mut values = vec![best_value];
        values.extend(fx.eval_batch(&vertices[1..]));

        loop {
            let mut order: Vec<usize> = (0..=d).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            vertices = order.iter().map(|&i| vertices[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            if values[0] < best_value {
                best_value = values[0];
                best = vertices[0].clone();
            }
            trace.push(SimplexTracePoint {
                iteration,
                evaluations: fx.used,
                best: best_value,
            });
            iteration += 1;

            let spread = values[d] - values[0];
            if spread.is_finite() && spread <= options.tolerance * values[0].abs().max(1.0) {
                break;
            }
            if fx.remaining() == 0 {
                converged = false;
                break 'restarts;
            }

            let mut centroid = vec![0.0; d];
            for v in &vertices[..d] {
                for (c, x) in centroid.iter_mut().zip(v) {
                    *c += x / df;
                }
            }
            let worst = &vertices[d];
            let xr = affine(&centroid, worst, -reflect);
            let fr = fx.eval(&xr);

            if fr < values[0] {
                if fx.remaining() > 0 {
                    let xe = affine(&centroid, worst, -expand);
                    let fe = fx.eval(&xe);
                    if fe < fr {
                        vertices[d] = xe;
                        values[d] = fe;
                        continue;
                    }
                }
                vertices[d] = xr;
                values[d] = fr;
                continue;
            }
            if fr < values[d - 1] {
                vertices[d] = xr;
                values[d] = fr;
                continue;
            }
            if fx.remaining() == 0 {
                continue;
            }
            let (xc, fc, accept) = if fr < values[d] {
                let xc = affine(&centroid, &xr, contract);
                let fc = fx.eval(&xc);
                (xc, fc, fc <= fr)
            } else {
                let xc = affine(&centroid, worst, contract);
                let fc = fx.eval(&xc);
                (xc, fc, fc < values[d])
            };
            if accept {
                vertices[d] = xc;
                values[d] = fc;
                continue;
            }
            let take = fx.remaining().min(d);
            let shrunk: Vec<Vec<f64>> = vertices[1..=take]
                .iter()
                .map(|v| affine(&vertices[0], v, shrink))
                .collect();
            let shrunk_values = fx.eval_batch(&shrunk);
            for (i, (v, fv)) in shrunk.into_iter().zip(shrunk_values).enumerate() {
                vertices[i + 1] = v;
                values[i + 1] = fv;
            }
        }

        converged = true;
        if restart > 0 && start_value - best_value <= options.tolerance * best_value.abs().max(1.0)
        {
            break;
        }
    }

    SimplexOutcome {
        best,
        best_value,
        evaluations: fx.used,
        converged,
        restarts_used,
        trace,
    }
}
