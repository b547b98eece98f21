//! Composite quadrature over parameter intervals, with a grid-doubling
//! convergence check.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{ParametricCurve, DEFAULT_FD_STEP};
use crate::error::{CurveError, Result};
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuadratureScheme {
    Simpson,
    /// `samples` panels with this many Gauss–Legendre nodes each.
    GaussLegendre {
        nodes_per_panel: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub scheme: QuadratureScheme,
    /// Subintervals (Simpson) or panels (Gauss–Legendre) over the interval.
    pub samples: usize,
    pub fd_step: f64,
    /// Relative tolerance for `|I(N) - I(2N)|`.
    pub tolerance: f64,
    pub check_convergence: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            scheme: QuadratureScheme::Simpson,
            samples: 2048,
            fd_step: DEFAULT_FD_STEP,
            tolerance: 1e-9,
            check_convergence: true,
        }
    }
}

impl QuadratureConfig {
    pub fn simpson(samples: usize) -> Self {
        Self {
            samples,
            ..Self::default()
        }
    }

    pub fn gauss_legendre(panels: usize, nodes_per_panel: usize) -> Self {
        Self {
            scheme: QuadratureScheme::GaussLegendre { nodes_per_panel },
            samples: panels,
            ..Self::default()
        }
    }

    pub fn without_convergence_check(mut self) -> Self {
        self.check_convergence = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        match self.scheme {
            QuadratureScheme::Simpson => {
                if self.samples < 64 || self.samples % 2 != 0 {
                    return Err(CurveError::InvalidQuadrature(format!(
                        "Simpson needs an even sample count >= 64, got {}",
                        self.samples
                    )));
                }
            }
            QuadratureScheme::GaussLegendre { nodes_per_panel } => {
                if self.samples == 0 || !(1..=64).contains(&nodes_per_panel) {
                    return Err(CurveError::InvalidQuadrature(format!(
                        "Gauss-Legendre needs >= 1 panel and 1..=64 nodes, got {} x {nodes_per_panel}",
                        self.samples
                    )));
                }
            }
        }
        if !(1e-7..=1e-3).contains(&self.fd_step) {
            return Err(CurveError::InvalidQuadrature(format!(
                "fd_step {:e} outside [1e-7, 1e-3]",
                self.fd_step
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(CurveError::InvalidQuadrature(
                "tolerance must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Quadrature grid on `[t0, t1]`.
    pub fn grid(&self, t0: f64, t1: f64) -> Result<Grid> {
        self.validate()?;
        if !(t0 < t1) {
            return Err(CurveError::InvalidArgument(format!(
                "empty integration interval [{t0}, {t1}]"
            )));
        }
        let grid = match self.scheme {
            QuadratureScheme::Simpson => {
                let n = if self.check_convergence {
                    2 * self.samples
                } else {
                    self.samples
                };
                let h = (t1 - t0) / n as f64;
                let points: Vec<f64> = (0..=n).map(|i| t0 + h * i as f64).collect();
                let fine = simpson_weights(n, h, 1);
                let coarse = self
                    .check_convergence
                    .then(|| simpson_weights(self.samples, 2.0 * h, 2));
                Grid {
                    points,
                    fine,
                    coarse,
                    tolerance: self.tolerance,
                }
            }
            QuadratureScheme::GaussLegendre { nodes_per_panel } => {
                let (nodes, weights) = gauss_legendre(nodes_per_panel);
                let mut points = Vec::new();
                let mut push_rule = |panels: usize| -> Vec<(usize, f64)> {
                    let width = (t1 - t0) / panels as f64;
                    let mut rule = Vec::with_capacity(panels * nodes.len());
                    for p in 0..panels {
                        let mid = t0 + width * (p as f64 + 0.5);
                        for (x, w) in nodes.iter().zip(&weights) {
                            rule.push((points.len(), 0.5 * width * w));
                            points.push(mid + 0.5 * width * x);
                        }
                    }
                    rule
                };
                let (fine, coarse) = if self.check_convergence {
                    let coarse = push_rule(self.samples);
                    (push_rule(2 * self.samples), Some(coarse))
                } else {
                    (push_rule(self.samples), None)
                };
                Grid {
                    points,
                    fine,
                    coarse,
                    tolerance: self.tolerance,
                }
            }
        };
        Ok(grid)
    }
}

/// Evaluation points plus one or two weight sets over them.
#[derive(Debug, Clone)]
pub struct Grid {
    points: Vec<f64>,
    fine: Vec<(usize, f64)>,
    coarse: Option<Vec<(usize, f64)>>,
    tolerance: f64,
}

impl Grid {
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Integral from values sampled at [`Grid::points`]. When the grid carries
    /// a coarse rule the two estimates must agree to the relative tolerance.
    pub fn integrate(&self, values: &[f64]) -> Result<f64> {
        debug_assert_eq!(values.len(), self.points.len());
        let apply = |rule: &[(usize, f64)]| rule.iter().map(|&(i, w)| w * values[i]).sum::<f64>();
        let fine = apply(&self.fine);
        if !fine.is_finite() {
            return Err(CurveError::NumericDomain("quadrature sum".into()));
        }
        if let Some(coarse) = &self.coarse {
            let coarse = apply(coarse);
            let difference = (fine - coarse).abs();
            let tolerance = self.tolerance * fine.abs().max(1.0);
            if !(difference <= tolerance) {
                return Err(CurveError::QuadratureFailure {
                    difference,
                    tolerance,
                });
            }
        }
        Ok(fine)
    }

    /// Evaluates `f` at every grid point (in parallel, order preserved).
    pub fn sample<T, F>(&self, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(f64) -> Result<T> + Sync,
    {
        self.points.par_iter().map(|&t| f(t)).collect()
    }
}

/// Composite Simpson weights on `n` subintervals of width `h`, addressing
/// every `stride`-th point.
fn simpson_weights(n: usize, h: f64, stride: usize) -> Vec<(usize, f64)> {
    (0..=n)
        .map(|i| {
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            (i * stride, w * h / 3.0)
        })
        .collect()
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` (Newton on `P_n`).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            x = 0.0;
            dp = 1.0;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `int_{t0}^{t1} f(t) dt`.
pub fn integrate<F>(f: F, t0: f64, t1: f64, q: &QuadratureConfig) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let grid = q.grid(t0, t1)?;
    let values = grid.sample(f)?;
    grid.integrate(&values)
}

fn speed_at(curve: &ParametricCurve, t: f64) -> Result<f64> {
    let jet = curve.jet(t, 1)?;
    Ok(linalg::norm(&jet[1]))
}

/// Length of the arc over `[t0, t1]`.
pub fn arc_length(curve: &ParametricCurve, t0: f64, t1: f64, q: &QuadratureConfig) -> Result<f64> {
    integrate(|t| speed_at(curve, t), t0, t1, q)
}

/// `int integrand(t) * |x'(t)| dt` over one period.
pub fn integrate_scalar_along<F>(
    curve: &ParametricCurve,
    integrand: F,
    q: &QuadratureConfig,
) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    integrate(
        |t| {
            let v = integrand(t);
            if !v.is_finite() {
                return Err(CurveError::NumericDomain(format!("integrand at t = {t}")));
            }
            Ok(v * speed_at(curve, t)?)
        },
        0.0,
        curve.period(),
        q,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle() -> ParametricCurve {
        ParametricCurve::analytic(2, 2.0 * PI, |t, k| {
            (0..=k)
                .map(|j| {
                    let p = t + j as f64 * PI / 2.0;
                    vec![p.cos(), p.sin()]
                })
                .collect()
        })
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::simpson(63).validate().is_err());
        assert!(QuadratureConfig::simpson(66).validate().is_ok());
        assert!(QuadratureConfig::simpson(65).validate().is_err());
        let mut q = QuadratureConfig::default();
        q.fd_step = 1.0;
        assert!(q.validate().is_err());
        assert!(QuadratureConfig::gauss_legendre(0, 8).validate().is_err());
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(5);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // degree 8 <= 2n - 1 = 9
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((s - 2.0 / 9.0).abs() < 1e-14);
        let (x1, w1) = gauss_legendre(1);
        assert_eq!((x1[0], w1[0]), (0.0, 2.0));
    }

    #[test]
    fn unit_circle_length() {
        let q = QuadratureConfig::default();
        let l = arc_length(&circle(), 0.0, 2.0 * PI, &q).unwrap();
        assert!((l - 2.0 * PI).abs() < 1e-12);
        let gl = QuadratureConfig::gauss_legendre(16, 8);
        let l = arc_length(&circle(), 0.0, 2.0 * PI, &gl).unwrap();
        assert!((l - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn reversed_interval_is_rejected() {
        let q = QuadratureConfig::default();
        assert!(arc_length(&circle(), 1.0, 0.0, &q).is_err());
    }

    #[test]
    fn non_convergence_is_reported() {
        // a spike too narrow for 64 subintervals
        let q = QuadratureConfig::simpson(64);
        let err = integrate(|t| Ok((-(t - 0.3).powi(2) / 1e-6).exp()), 0.0, 1.0, &q).unwrap_err();
        assert!(matches!(err, CurveError::QuadratureFailure { .. }));
    }

    #[test]
    fn constant_integrand_gives_arc_length() {
        let q = QuadratureConfig::default();
        let v = integrate_scalar_along(&circle(), |_| 1.0, &q).unwrap();
        assert!((v - 2.0 * PI).abs() < 1e-12);
        assert!(integrate_scalar_along(&circle(), |_| f64::NAN, &q).is_err());
    }
}
