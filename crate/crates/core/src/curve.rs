//! Periodic parametric curves `t -> R^n` with access to derivatives of any
//! supported order, either from analytic closures or from central finite
//! differences of the position map.

use std::fmt;
use std::sync::Arc;

use crate::error::{CurveError, Result};
use crate::linalg;

/// Returns the position and derivatives `0..=order` at `t`.
pub type JetFn = dyn Fn(f64, usize) -> Result<Vec<Vec<f64>>> + Send + Sync;
pub type PositionFn = dyn Fn(f64) -> Result<Vec<f64>> + Send + Sync;

/// Default finite-difference step for first derivatives.
pub const DEFAULT_FD_STEP: f64 = 1e-5;
/// Accuracy order of the central stencils.
pub const FD_ACCURACY: usize = 4;
/// Highest derivative order offered in finite-difference mode.
pub const FD_MAX_ORDER: usize = 8;
/// Tolerance for the periodicity check.
pub const CLOSURE_TOLERANCE: f64 = 1e-12;
/// Number of probe points for the periodicity check.
pub const CLOSURE_PROBES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMode {
    Analytic { max_order: Option<usize> },
    FiniteDifference { step: f64 },
}

#[derive(Clone)]
enum Source {
    Analytic {
        jet: Arc<JetFn>,
        max_order: Option<usize>,
    },
    FiniteDifference {
        position: Arc<PositionFn>,
        step: f64,
    },
}

/// A periodic map `t -> R^n`.
#[derive(Clone)]
pub struct ParametricCurve {
    dimension: usize,
    period: f64,
    source: Source,
}

impl fmt::Debug for ParametricCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricCurve")
            .field("dimension", &self.dimension)
            .field("period", &self.period)
            .field("mode", &self.mode())
            .finish()
    }
}

impl ParametricCurve {
    /// Curve with analytic derivatives of every order. `jet(t, k)` must return
    /// `k + 1` vectors of length `dimension`.
    pub fn analytic<F>(dimension: usize, period: f64, jet: F) -> Self
    where
        F: Fn(f64, usize) -> Vec<Vec<f64>> + Send + Sync + 'static,
    {
        Self::analytic_fallible(dimension, period, move |t, k| Ok(jet(t, k)))
    }

    /// As [`ParametricCurve::analytic`] for jets that can fail.
    pub fn analytic_fallible<F>(dimension: usize, period: f64, jet: F) -> Self
    where
        F: Fn(f64, usize) -> Result<Vec<Vec<f64>>> + Send + Sync + 'static,
    {
        Self {
            dimension,
            period,
            source: Source::Analytic {
                jet: Arc::new(jet),
                max_order: None,
            },
        }
    }

    /// Caps the derivative orders an analytic source provides.
    pub fn with_max_order(mut self, order: usize) -> Self {
        if let Source::Analytic { max_order, .. } = &mut self.source {
            *max_order = Some(order);
        }
        self
    }

    /// Curve known only through its position map; derivatives come from
    /// fourth-order central stencils.
    pub fn finite_difference<F>(
        dimension: usize,
        period: f64,
        position: F,
        step: f64,
    ) -> Result<Self>
    where
        F: Fn(f64) -> Vec<f64> + Send + Sync + 'static,
    {
        Self::finite_difference_fallible(dimension, period, move |t| Ok(position(t)), step)
    }

    /// As [`ParametricCurve::finite_difference`] for positions that can fail.
    pub fn finite_difference_fallible<F>(
        dimension: usize,
        period: f64,
        position: F,
        step: f64,
    ) -> Result<Self>
    where
        F: Fn(f64) -> Result<Vec<f64>> + Send + Sync + 'static,
    {
        check_fd_step(step)?;
        Ok(Self {
            dimension,
            period,
            source: Source::FiniteDifference {
                position: Arc::new(position),
                step,
            },
        })
    }

    /// The same curve with analytic derivatives discarded.
    pub fn to_finite_difference(&self, step: f64) -> Result<Self> {
        check_fd_step(step)?;
        let position: Arc<PositionFn> = match &self.source {
            Source::Analytic { jet, .. } => {
                let jet = Arc::clone(jet);
                Arc::new(move |t| Ok(jet(t, 0)?.swap_remove(0)))
            }
            Source::FiniteDifference { position, .. } => Arc::clone(position),
        };
        Ok(Self {
            dimension: self.dimension,
            period: self.period,
            source: Source::FiniteDifference { position, step },
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn mode(&self) -> DerivativeMode {
        match &self.source {
            Source::Analytic { max_order, .. } => DerivativeMode::Analytic {
                max_order: *max_order,
            },
            Source::FiniteDifference { step, .. } => {
                DerivativeMode::FiniteDifference { step: *step }
            }
        }
    }

    pub fn is_analytic(&self) -> bool {
        matches!(self.source, Source::Analytic { .. })
    }

    /// Highest derivative order available from the source.
    pub fn max_order(&self) -> Option<usize> {
        match &self.source {
            Source::Analytic { max_order, .. } => *max_order,
            Source::FiniteDifference { .. } => Some(FD_MAX_ORDER),
        }
    }

    pub fn position(&self, t: f64) -> Result<Vec<f64>> {
        Ok(self.jet(t, 0)?.swap_remove(0))
    }

    /// Position followed by derivatives `1..=order` at `t`.
    pub fn jet(&self, t: f64, order: usize) -> Result<Vec<Vec<f64>>> {
        if let Some(max) = self.max_order() {
            if order > max {
                return Err(CurveError::UnsupportedOrder {
                    requested: order,
                    max,
                });
            }
        }
        let jet = match &self.source {
            Source::Analytic { jet, .. } => jet(t, order)?,
            Source::FiniteDifference { position, step } => {
                fd_jet(position.as_ref(), t, order, *step, self.period)?
            }
        };
        if jet.len() != order + 1 {
            return Err(CurveError::InvalidArgument(format!(
                "jet returned {} entries for order {order}",
                jet.len()
            )));
        }
        for v in &jet {
            if v.len() != self.dimension {
                return Err(CurveError::DimensionMismatch {
                    expected: self.dimension,
                    actual: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(CurveError::NumericDomain(format!("curve jet at t = {t}")));
            }
        }
        Ok(jet)
    }

    /// Derivatives `1..=order` at `t`, with `1 <= order <= n`.
    pub fn derivatives_at(&self, t: f64, order: usize) -> Result<Vec<Vec<f64>>> {
        if order == 0 || order > self.dimension {
            return Err(CurveError::UnsupportedOrder {
                requested: order,
                max: self.dimension,
            });
        }
        let mut jet = self.jet(t, order)?;
        jet.remove(0);
        Ok(jet)
    }

    /// Largest `|x(t + T) - x(t)|` over the probe points.
    pub fn closure_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for i in 0..CLOSURE_PROBES {
            let t = self.period * i as f64 / CLOSURE_PROBES as f64;
            let a = self.position(t)?;
            let b = self.position(t + self.period)?;
            worst = worst.max(linalg::distance(&a, &b));
        }
        Ok(worst)
    }

    pub fn is_closed(&self) -> Result<bool> {
        Ok(self.closure_residual()? <= CLOSURE_TOLERANCE)
    }

    /// Image under `x -> A x + b` (`A` row-major, `n x n`).
    pub fn affine_image(&self, matrix: Vec<Vec<f64>>, offset: Vec<f64>) -> Result<Self> {
        let n = self.dimension;
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(CurveError::DimensionMismatch {
                expected: n,
                actual: matrix.len(),
            });
        }
        if offset.len() != n {
            return Err(CurveError::DimensionMismatch {
                expected: n,
                actual: offset.len(),
            });
        }
        let apply = move |v: &[f64], shift: bool| -> Vec<f64> {
            matrix
                .iter()
                .zip(&offset)
                .map(|(row, b)| linalg::dot(row, v) + if shift { *b } else { 0.0 })
                .collect()
        };
        Ok(self.map_jet(n, move |jet| {
            jet.iter()
                .enumerate()
                .map(|(k, v)| apply(v, k == 0))
                .collect()
        }))
    }

    /// Keeps only the listed coordinates, in the given order.
    pub fn coordinate_projection(&self, coords: &[usize]) -> Result<Self> {
        if let Some(&bad) = coords.iter().find(|&&c| c >= self.dimension) {
            return Err(CurveError::InvalidArgument(format!(
                "coordinate {bad} out of range for dimension {}",
                self.dimension
            )));
        }
        let coords = coords.to_vec();
        let m = coords.len();
        Ok(self.map_jet(m, move |jet| {
            jet.iter()
                .map(|v| coords.iter().map(|&c| v[c]).collect())
                .collect()
        }))
    }

    /// Applies a linear transformation to every jet entry; the derivative
    /// source kind is preserved.
    fn map_jet<F>(&self, dimension: usize, f: F) -> Self
    where
        F: Fn(Vec<Vec<f64>>) -> Vec<Vec<f64>> + Send + Sync + 'static,
    {
        let source = match &self.source {
            Source::Analytic { jet, max_order } => {
                let jet = Arc::clone(jet);
                Source::Analytic {
                    jet: Arc::new(move |t, k| Ok(f(jet(t, k)?))),
                    max_order: *max_order,
                }
            }
            Source::FiniteDifference { position, step } => {
                let position = Arc::clone(position);
                Source::FiniteDifference {
                    position: Arc::new(move |t| Ok(f(vec![position(t)?]).swap_remove(0))),
                    step: *step,
                }
            }
        };
        Self {
            dimension,
            period: self.period,
            source,
        }
    }
}

fn check_fd_step(step: f64) -> Result<()> {
    if !(1e-7..=1e-3).contains(&step) {
        return Err(CurveError::InvalidArgument(format!(
            "finite-difference step {step:e} outside [1e-7, 1e-3]"
        )));
    }
    Ok(())
}

/// Dimensionless step for the order-`k` stencil: `h^(1/k)` keeps the
/// roundoff term `eps / h_k^k` identical across orders.
pub fn fd_step_for_order(step: f64, k: usize) -> f64 {
    step.powf(1.0 / k as f64)
}

/// Scale applied to the dimensionless steps before dividing by the local
/// frequency.
pub const FD_STEP_SAFETY: f64 = 0.4;
/// Upper bound on the local frequency, in multiples of `2π / period`.
const FD_MAX_FREQUENCY_RATIO: f64 = 1e3;

/// Rate `|x''| / |x'|` at `t` from a coarse three-point estimate, clamped to
/// `[1, FD_MAX_FREQUENCY_RATIO] * 2π / period`.
pub fn local_frequency(position: &PositionFn, t: f64, step: f64, period: f64) -> Result<f64> {
    let floor = 2.0 * std::f64::consts::PI / period;
    let h = fd_step_for_order(step, 2) / floor;
    let (xm, x0, xp) = (position(t - h)?, position(t)?, position(t + h)?);
    let mut d1 = 0.0;
    let mut d2 = 0.0;
    for i in 0..x0.len() {
        d1 += ((xp[i] - xm[i]) / (2.0 * h)).powi(2);
        d2 += ((xp[i] - 2.0 * x0[i] + xm[i]) / (h * h)).powi(2);
    }
    let omega = (d2 / d1).sqrt();
    Ok(if omega.is_finite() {
        omega.clamp(floor, FD_MAX_FREQUENCY_RATIO * floor)
    } else {
        floor
    })
}

/// Central stencil weights for the `k`-th derivative on integer nodes
/// `-m..=m`, accurate to `FD_ACCURACY`.
pub fn central_stencil(k: usize) -> (Vec<f64>, Vec<f64>) {
    let m = (k + 1) / 2 + FD_ACCURACY / 2 - 1;
    let nodes: Vec<f64> = (-(m as i64)..=m as i64).map(|j| j as f64).collect();
    let weights = fornberg_weights(&nodes, 0.0, k);
    (nodes, weights)
}

/// Fornberg's recursion: weights for the derivative of order `order` at `z`.
fn fornberg_weights(nodes: &[f64], z: f64, order: usize) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; order + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// Derivatives by central differences with steps
/// `FD_STEP_SAFETY * h^(1/k) / ω`, `ω` the [`local_frequency`].
fn fd_jet(
    position: &PositionFn,
    t: f64,
    order: usize,
    step: f64,
    period: f64,
) -> Result<Vec<Vec<f64>>> {
    let x0 = position(t)?;
    let omega = if order > 0 {
        local_frequency(position, t, step, period)?
    } else {
        1.0
    };
    let n = x0.len();
    let mut jet = Vec::with_capacity(order + 1);
    jet.push(x0);
    for k in 1..=order {
        let h = FD_STEP_SAFETY * fd_step_for_order(step, k) / omega;
        let (nodes, weights) = central_stencil(k);
        let mut d = vec![0.0; n];
        for (node, w) in nodes.iter().zip(&weights) {
            if *w == 0.0 {
                continue;
            }
            let x = position(t + node * h)?;
            for (di, xi) in d.iter_mut().zip(&x) {
                *di += w * xi;
            }
        }
        let scale = h.powi(k as i32);
        d.iter_mut().for_each(|v| *v /= scale);
        jet.push(d);
    }
    Ok(jet)
}
