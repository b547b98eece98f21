//! Osculating indicatrices: the curve of osculating 2-planes of a curve in
//! `R^4`, viewed in `R^6` through unit-normalized Plücker coordinates.
//!
//! Components are ordered `(12, 13, 14, 23, 24, 34)` with
//! `p_ij = u_i v_j - u_j v_i` for the plane spanned by `u = x'`, `v = x''`.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::ccc::{make_ccc, minimal_period, torus_curve, winding_value, CccRecord, CccSpec};
use crate::curve::ParametricCurve;
use crate::error::{CurveError, Result};
use crate::frenet::curvature_profile;
use crate::functionals::{mixed_curvature_functional, ProfileSamples, CURVATURE_FLOOR};
use crate::linalg::{self, binomial_row, gcd, mean_and_std};
use crate::quadrature::QuadratureConfig;

/// Wedge norms at or below this are treated as a degenerate plane.
pub const WEDGE_FLOOR: f64 = 1e-10;
/// Allowed Plücker quadric residual for a unit bivector.
pub const QUADRIC_TOLERANCE: f64 = 1e-10;
/// Samples used when scanning a period for floors and constancy.
pub const SCAN_SAMPLES: usize = 256;
/// Indicatrix speed below this fails the regularity item.
pub const SPEED_FLOOR: f64 = 1e-8;

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Plücker components of `u ∧ v`.
pub fn wedge2(u: &[f64; 4], v: &[f64; 4]) -> [f64; 6] {
    PAIRS.map(|(i, j)| u[i] * v[j] - u[j] * v[i])
}

fn wedge_slices(u: &[f64], v: &[f64]) -> [f64; 6] {
    PAIRS.map(|(i, j)| u[i] * v[j] - u[j] * v[i])
}

/// `p12 p34 - p13 p24 + p14 p23`.
pub fn quadric_residual(p: &[f64; 6]) -> f64 {
    p[0] * p[5] - p[1] * p[4] + p[2] * p[3]
}

/// A point of `G(2,4)` on the unit sphere `S^5 ⊂ R^6`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PluckerPoint {
    components: [f64; 6],
}

impl PluckerPoint {
    pub fn components(&self) -> &[f64; 6] {
        &self.components
    }

    pub fn p12(&self) -> f64 {
        self.components[0]
    }
    pub fn p13(&self) -> f64 {
        self.components[1]
    }
    pub fn p14(&self) -> f64 {
        self.components[2]
    }
    pub fn p23(&self) -> f64 {
        self.components[3]
    }
    pub fn p24(&self) -> f64 {
        self.components[4]
    }
    pub fn p34(&self) -> f64 {
        self.components[5]
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.components)
    }

    pub fn quadric_residual(&self) -> f64 {
        quadric_residual(&self.components)
    }
}

/// Scales a decomposable bivector to unit length.
pub fn plucker_normalize(w: [f64; 6]) -> Result<PluckerPoint> {
    let norm = linalg::norm(&w);
    if !(norm > WEDGE_FLOOR) {
        return Err(CurveError::DegenerateOsculatingPlane { norm });
    }
    let components = w.map(|c| c / norm);
    let residual = quadric_residual(&components);
    if residual.abs() > QUADRIC_TOLERANCE {
        return Err(CurveError::NotDecomposable { residual });
    }
    Ok(PluckerPoint { components })
}

/// Osculating plane of a curve in `R^4` at `t`, without any curvature
/// precondition.
pub fn osculating_plane_at(curve: &ParametricCurve, t: f64) -> Result<PluckerPoint> {
    check_dimension(curve)?;
    let jet = curve.jet(t, 2)?;
    plucker_normalize(wedge_slices(&jet[1], &jet[2]))
}

fn check_dimension(curve: &ParametricCurve) -> Result<()> {
    if curve.dimension() != 4 {
        return Err(CurveError::DimensionMismatch {
            expected: 4,
            actual: curve.dimension(),
        });
    }
    Ok(())
}

/// Taylor coefficients of `w / |w|` from those of `w`, up to `order`.
fn normalized_series(w: &[[f64; 6]], order: usize) -> Result<Vec<[f64; 6]>> {
    // s = |w|^2
    let s: Vec<f64> = (0..=order)
        .map(|k| (0..=k).map(|i| linalg::dot(&w[i], &w[k - i])).sum())
        .collect();
    if !(s[0].sqrt() > WEDGE_FLOOR) {
        return Err(CurveError::DegenerateOsculatingPlane { norm: s[0].sqrt() });
    }
    // g = s^(-1/2) via s g' = p s' g
    let p = -0.5;
    let mut g = vec![0.0; order + 1];
    g[0] = s[0].powf(p);
    for k in 1..=order {
        let acc: f64 = (1..=k)
            .map(|j| ((p + 1.0) * j as f64 - k as f64) * s[j] * g[k - j])
            .sum();
        g[k] = acc / (k as f64 * s[0]);
    }
    Ok((0..=order)
        .map(|k| {
            let mut out = [0.0; 6];
            for i in 0..=k {
                for (o, wi) in out.iter_mut().zip(&w[i]) {
                    *o += wi * g[k - i];
                }
            }
            out
        })
        .collect())
}

/// Position and derivatives `0..=order` of the indicatrix at `t`, from the
/// base jet of order `order + 2` (Leibniz on the wedge, series for the
/// normalization).
fn indicatrix_jet(base: &ParametricCurve, t: f64, order: usize) -> Result<Vec<Vec<f64>>> {
    let x = base.jet(t, order + 2)?;
    let mut factorial = 1.0;
    let mut series = Vec::with_capacity(order + 1);
    for k in 0..=order {
        if k > 0 {
            factorial *= k as f64;
        }
        let binom = binomial_row(k);
        let mut wk = [0.0; 6];
        for (j, c) in binom.iter().enumerate() {
            let term = wedge_slices(&x[1 + j], &x[2 + k - j]);
            for (a, b) in wk.iter_mut().zip(term) {
                *a += c * b;
            }
        }
        series.push(wk.map(|v| v / factorial));
    }
    let normalized = normalized_series(&series, order)?;
    let mut factorial = 1.0;
    Ok(normalized
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if k > 0 {
                factorial *= k as f64;
            }
            c.iter().map(|v| v * factorial).collect()
        })
        .collect())
}

/// Checks `k1, k2 > CURVATURE_FLOOR` at [`SCAN_SAMPLES`] points.
fn check_transformable(curve: &ParametricCurve) -> Result<()> {
    for i in 0..SCAN_SAMPLES {
        let t = curve.period() * i as f64 / SCAN_SAMPLES as f64;
        let p = curvature_profile(curve, t, 3)?;
        for index in 1..=2 {
            let k = p.k(index);
            if !(k > CURVATURE_FLOOR) {
                return Err(CurveError::NotTransformable { index, floor: k, t });
            }
        }
    }
    Ok(())
}

/// The osculating indicatrix as a curve in `R^6` with the base period.
/// Analytic bases give analytic indicatrices; finite-difference bases give a
/// finite-difference indicatrix with the same step.
pub fn osculating_indicatrix(curve: &ParametricCurve) -> Result<ParametricCurve> {
    check_dimension(curve)?;
    check_transformable(curve)?;
    let base = curve.clone();
    let period = curve.period();
    if curve.is_analytic() {
        let indicatrix =
            ParametricCurve::analytic_fallible(6, period, move |t, k| indicatrix_jet(&base, t, k));
        Ok(match curve.max_order() {
            Some(max) => indicatrix.with_max_order(max.saturating_sub(2)),
            None => indicatrix,
        })
    } else {
        let step = match curve.mode() {
            crate::curve::DerivativeMode::FiniteDifference { step } => step,
            crate::curve::DerivativeMode::Analytic { .. } => unreachable!(),
        };
        ParametricCurve::finite_difference_fallible(
            6,
            period,
            move |t| Ok(osculating_plane_at(&base, t)?.components.to_vec()),
            step,
        )
    }
}

/// `λ = sqrt(a1^2 α1^2 + a2^2 α2^2) sqrt(a1^2 α1^4 + a2^2 α2^4)`.
pub fn lambda(a1: f64, a2: f64, alpha1: f64, alpha2: f64) -> f64 {
    (a1 * a1 * alpha1 * alpha1 + a2 * a2 * alpha2 * alpha2).sqrt()
        * (a1 * a1 * alpha1.powi(4) + a2 * a2 * alpha2.powi(4)).sqrt()
}

fn closed_form_at(a1: f64, a2: f64, b1: f64, b2: f64, t: f64) -> [f64; 6] {
    let l = lambda(a1, a2, b1, b2);
    let kk = a1 * a2 * b1 * b2 / l;
    let (s1, c1) = (b1 * t).sin_cos();
    let (s2, c2) = (b2 * t).sin_cos();
    [
        a1 * a1 * b1.powi(3) / l,
        kk * (b2 * s1 * c2 - b1 * c1 * s2),
        kk * (b1 * c1 * c2 + b2 * s1 * s2),
        -kk * (b2 * c1 * c2 + b1 * s1 * s2),
        kk * (b1 * s1 * c2 - b2 * c1 * s2),
        a2 * a2 * b2.powi(3) / l,
    ]
}

/// Indicatrix of the constant-curvature curve `spec` at `t`, in closed form.
pub fn indicatrix_closed_form(spec: &CccSpec, t: f64) -> [f64; 6] {
    closed_form_at(spec.a1(), spec.a2(), spec.alpha1(), spec.alpha2(), t)
}

/// [`indicatrix_closed_form`] with `p14`, `p23`, `p34` negated: the
/// orientation convention found in some references. It is an isometric
/// image of the indicatrix but does not satisfy the Plücker quadric.
pub fn indicatrix_closed_form_mirrored(spec: &CccSpec, t: f64) -> [f64; 6] {
    let mut p = indicatrix_closed_form(spec, t);
    p[2] = -p[2];
    p[3] = -p[3];
    p[5] = -p[5];
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndicatrixInvariants {
    pub lambda: f64,
    /// `ds~/dt = a1 a2 α1 α2 |α1^2 - α2^2| / λ`.
    pub speed: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

pub fn indicatrix_invariants_from_constants(
    a1: f64,
    a2: f64,
    b1: f64,
    b2: f64,
) -> IndicatrixInvariants {
    let l = lambda(a1, a2, b1, b2);
    let d = (b1 * b1 - b2 * b2).abs();
    let r = (b1 * b1 + b2 * b2).sqrt();
    IndicatrixInvariants {
        lambda: l,
        speed: a1 * a2 * b1 * b2 * d / l,
        k1: l * r / (a1 * a2 * b1 * b2 * d),
        k2: l * 2.0 / (a1 * a2 * d * r),
        k3: l / (a1 * a2 * b1 * b2 * r),
    }
}

pub fn indicatrix_invariants(spec: &CccSpec) -> IndicatrixInvariants {
    indicatrix_invariants_from_constants(spec.a1(), spec.a2(), spec.alpha1(), spec.alpha2())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckItem {
    pub item: u8,
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub values: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Report {
    pub spec: CccRecord,
    pub tolerance: f64,
    pub passed: bool,
    pub items: Vec<CheckItem>,
}

impl Theorem2Report {
    pub fn item(&self, item: u8) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.item == item)
    }
}

fn check(
    item: u8,
    name: &str,
    residual: f64,
    tolerance: f64,
    extra: bool,
    values: &[(&str, f64)],
) -> CheckItem {
    CheckItem {
        item,
        name: name.into(),
        passed: extra && residual <= tolerance,
        residual,
        tolerance,
        values: values.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }
}

/// Numerically checks the five properties of the osculating indicatrix of a
/// constant-curvature curve: closure and regularity, containment in the
/// affine 4-plane `p12 = const, p34 = const`, constant curvatures, and the
/// two integral identities `int k~1 ds~ = I` and
/// `int sqrt(k~1^2 + k~2^2 + k~3^2) ds~ = sqrt(2) I`, where
/// `I = int sqrt(k1^2 + k2^2 + k3^2) ds`. Failures are reported, not raised.
pub fn verify_theorem2(spec: &CccSpec, tolerance: f64) -> Result<Theorem2Report> {
    verify_theorem2_with(spec, tolerance, &QuadratureConfig::default())
}

pub fn verify_theorem2_with(
    spec: &CccSpec,
    tolerance: f64,
    q: &QuadratureConfig,
) -> Result<Theorem2Report> {
    let base = make_ccc(spec);
    let tilde = osculating_indicatrix(&base)?;
    let period = minimal_period(spec);
    let ts: Vec<f64> = (0..SCAN_SAMPLES)
        .map(|i| period * i as f64 / SCAN_SAMPLES as f64)
        .collect();

    let mut items = Vec::with_capacity(5);

    // 1: closed and regular
    let closure = tilde.closure_residual()?;
    let mut min_speed = f64::INFINITY;
    let mut positions = Vec::with_capacity(ts.len());
    let mut curvatures: [Vec<f64>; 3] = Default::default();
    for &t in &ts {
        let p = curvature_profile(&tilde, t, 4)?;
        min_speed = min_speed.min(p.speed);
        for (i, ks) in curvatures.iter_mut().enumerate() {
            ks.push(p.k(i + 1));
        }
        positions.push(tilde.position(t)?);
    }
    items.push(check(
        1,
        "closed and regular",
        closure,
        tolerance,
        min_speed > SPEED_FLOOR,
        &[("closure_residual", closure), ("min_speed", min_speed)],
    ));

    // 2: p12 and p34 constant
    let first: Vec<f64> = positions.iter().map(|p| p[0]).collect();
    let last: Vec<f64> = positions.iter().map(|p| p[5]).collect();
    let (p12, std12) = mean_and_std(&first);
    let (p34, std34) = mean_and_std(&last);
    items.push(check(
        2,
        "lies in a four-dimensional affine plane",
        std12.max(std34),
        tolerance,
        true,
        &[
            ("p12", p12),
            ("p34", p34),
            ("std_p12", std12),
            ("std_p34", std34),
        ],
    ));

    // 3: constant, non-vanishing curvatures (std relative to the mean)
    let mut worst: f64 = 0.0;
    let mut min_k = f64::INFINITY;
    let mut values = Vec::new();
    let names = [
        ("k1_tilde", "std_k1_tilde"),
        ("k2_tilde", "std_k2_tilde"),
        ("k3_tilde", "std_k3_tilde"),
    ];
    for (ks, (mean_name, std_name)) in curvatures.iter().zip(names) {
        let (mean, std) = mean_and_std(ks);
        worst = worst.max(std / mean.abs().max(1.0));
        min_k = min_k.min(ks.iter().copied().fold(f64::INFINITY, f64::min));
        values.push((mean_name, mean));
        values.push((std_name, std));
    }
    values.push(("min_curvature", min_k));
    items.push(check(
        3,
        "constant non-vanishing curvatures",
        worst,
        tolerance,
        min_k > CURVATURE_FLOOR,
        &values,
    ));

    // 4, 5: integral identities over the traversal period
    let base_samples = ProfileSamples::new(&base, 4, q)?;
    let base_value = base_samples.integrate(|p| p.mixed(2))?;
    let tilde_samples = ProfileSamples::new(&tilde, 4, q)?;
    let tilde_k1 = tilde_samples.integrate(|p| p.k(1))?;
    let tilde_mixed = tilde_samples.integrate(|p| p.mixed(2))?;
    let r4 = (tilde_k1 - base_value).abs();
    items.push(check(
        4,
        "total curvature of the indicatrix equals the mixed functional",
        r4,
        tolerance,
        true,
        &[
            ("indicatrix_total_curvature", tilde_k1),
            ("base_functional", base_value),
        ],
    ));
    let rhs = SQRT_2 * base_value;
    let r5 = (tilde_mixed - rhs).abs();
    items.push(check(
        5,
        "mixed functional of the indicatrix is sqrt(2) times the base",
        r5,
        tolerance,
        true,
        &[
            ("indicatrix_functional", tilde_mixed),
            ("sqrt2_base_functional", rhs),
        ],
    ));

    Ok(Theorem2Report {
        spec: spec.record(),
        tolerance,
        passed: items.iter().all(|i| i.passed),
        items,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationStep {
    pub step: usize,
    /// Winding pair relative to the traversal period (may share a factor).
    pub winding: (u64, u64),
    /// Winding pair of the minimal period.
    pub minimal_winding: (u64, u64),
    pub amplitudes: (f64, f64),
    pub frequencies: (f64, f64),
    /// `int sqrt(k1^2 + k2^2 + k3^2) ds` over the traversal period.
    pub value: f64,
    pub minimal_period_value: f64,
    /// Ratio to the previous step's value.
    pub ratio: Option<f64>,
    /// The same functional evaluated by the generic pipeline on the
    /// indicatrix of the previous step, restricted to its affine 4-plane.
    pub pipeline_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationHalt {
    pub step: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationReport {
    pub spec: CccRecord,
    pub traversal_period: f64,
    pub steps: Vec<IterationStep>,
    pub halted: Option<IterationHalt>,
}

/// Constants of the normal form of the indicatrix of
/// `(a1 cos α1 t, a1 sin α1 t, a2 cos α2 t, a2 sin α2 t)`.
///
/// In the rotated coordinates `(p24 ∓ p13)/√2`, `(p14 ± p23)/√2` the
/// oscillating part of the indicatrix is a pair of circles with frequencies
/// `α1 + α2` and `|α1 - α2|` and radii `κ|α1 - α2|/√2`, `κ(α1 + α2)/√2`,
/// where `κ = a1 a2 α1 α2 / λ`.
pub fn indicatrix_normal_form(a1: f64, a2: f64, b1: f64, b2: f64) -> ([f64; 2], [f64; 2]) {
    let kappa = a1 * a2 * b1 * b2 / lambda(a1, a2, b1, b2);
    let sum = b1 + b2;
    let diff = (b1 - b2).abs();
    ([kappa * diff / SQRT_2, kappa * sum / SQRT_2], [sum, diff])
}

/// Coordinates `p13, p14, p23, p24` of the indicatrix.
pub const AFFINE_COORDINATES: [usize; 4] = [1, 2, 3, 4];

/// Iterates the indicatrix transform `steps` times from `spec`. Each step
/// re-derives the normal form analytically and cross-checks its functional
/// against the generic pipeline (indicatrix, projection, quadrature).
pub fn iterate_transform(spec: &CccSpec, steps: usize) -> Result<IterationReport> {
    iterate_transform_with(spec, steps, &QuadratureConfig::default())
}

pub fn iterate_transform_with(
    spec: &CccSpec,
    steps: usize,
    q: &QuadratureConfig,
) -> Result<IterationReport> {
    if steps == 0 {
        return Err(CurveError::InvalidArgument(
            "iteration needs at least one step".into(),
        ));
    }
    let period = minimal_period(spec);
    let mut amplitudes = [spec.a1(), spec.a2()];
    let mut frequencies = [spec.alpha1(), spec.alpha2()];
    let mut winding = (spec.m1(), spec.m2());

    let record = |step: usize,
                  w: (u64, u64),
                  a: [f64; 2],
                  f: [f64; 2],
                  prev: Option<f64>,
                  pipeline: Option<f64>| {
        let value = period * (f[0] * f[0] + f[1] * f[1]).sqrt();
        let g = gcd(w.0, w.1);
        IterationStep {
            step,
            winding: w,
            minimal_winding: (w.0 / g, w.1 / g),
            amplitudes: (a[0], a[1]),
            frequencies: (f[0], f[1]),
            value,
            minimal_period_value: value / g as f64,
            ratio: prev.map(|p| value / p),
            pipeline_value: pipeline,
        }
    };

    let mut rows = vec![record(0, winding, amplitudes, frequencies, None, None)];
    debug_assert!(
        (rows[0].value - winding_value(winding.0, winding.1)).abs() < 1e-9 * rows[0].value
    );
    let mut halted = None;

    for step in 1..=steps {
        let current = torus_curve(amplitudes.to_vec(), frequencies.to_vec(), period);
        let pipeline = osculating_indicatrix(&current)
            .and_then(|tilde| tilde.coordinate_projection(&AFFINE_COORDINATES))
            .and_then(|flat| mixed_curvature_functional(&flat, 2, q));
        let pipeline_value = match pipeline {
            Ok(eval) => match eval.value() {
                Some(v) => v,
                None => {
                    halted = Some(IterationHalt {
                        step,
                        reason: "indicatrix curvature vanishes".into(),
                    });
                    break;
                }
            },
            Err(e) => {
                halted = Some(IterationHalt {
                    step,
                    reason: e.to_string(),
                });
                break;
            }
        };
        let (a, f) =
            indicatrix_normal_form(amplitudes[0], amplitudes[1], frequencies[0], frequencies[1]);
        amplitudes = a;
        frequencies = f;
        winding = (winding.0 + winding.1, winding.0.abs_diff(winding.1));
        let prev = rows.last().map(|r| r.value);
        rows.push(record(
            step,
            winding,
            amplitudes,
            frequencies,
            prev,
            Some(pipeline_value),
        ));
    }

    Ok(IterationReport {
        spec: spec.record(),
        traversal_period: period,
        steps: rows,
        halted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::frenet_at;
    use std::f64::consts::PI;

    fn base() -> CccSpec {
        CccSpec::new(1.0, 1.0, 1, 2, 1.0).unwrap()
    }

    /// 2x2 minors of the 2x4 matrix with rows u, v, by cofactor expansion.
    fn minors(u: &[f64; 4], v: &[f64; 4]) -> [f64; 6] {
        let mut out = [0.0; 6];
        let mut n = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let m = [[u[i], u[j]], [v[i], v[j]]];
                out[n] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                n += 1;
            }
        }
        out
    }

    #[test]
    fn wedge_of_basis_and_self() {
        let e1 = [1.0, 0.0, 0.0, 0.0];
        let e2 = [0.0, 1.0, 0.0, 0.0];
        assert_eq!(wedge2(&e1, &e2), [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let u = [0.3, -1.0, 2.0, 0.5];
        assert_eq!(wedge2(&u, &u), [0.0; 6]);
    }

    #[test]
    fn wedge_at_zero_for_base_spec() {
        let u = [0.0, 1.0, 0.0, 2.0];
        let v = [-1.0, 0.0, -4.0, 0.0];
        let w = wedge2(&u, &v);
        assert_eq!(w, minors(&u, &v));
        assert_eq!(w, [1.0, 0.0, 2.0, -4.0, 0.0, 8.0]);
        assert_eq!(quadric_residual(&w), 0.0);
        let p = plucker_normalize(w).unwrap();
        let r85 = 85f64.sqrt();
        let expected = [1.0 / r85, 0.0, 2.0 / r85, -4.0 / r85, 0.0, 8.0 / r85];
        for (a, b) in p.components().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn normalize_errors() {
        let p = plucker_normalize([2.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.components(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            plucker_normalize([1e-12, 0.0, 0.0, 0.0, 0.0, 0.0]),
            Err(CurveError::DegenerateOsculatingPlane { .. })
        ));
        // e1∧e2 + e3∧e4 is not decomposable
        assert!(matches!(
            plucker_normalize([1.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
            Err(CurveError::NotDecomposable { .. })
        ));
    }

    #[test]
    fn indicatrix_constant_coordinates_for_base_spec() {
        let tilde = osculating_indicatrix(&make_ccc(&base())).unwrap();
        let r85 = 85f64.sqrt();
        for i in 0..32 {
            let x = tilde.position(i as f64 * 0.2).unwrap();
            assert!((x[0] - 1.0 / r85).abs() < 1e-15);
            assert!((x[5] - 8.0 / r85).abs() < 1e-15);
            assert!((linalg::norm(&x) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn mirrored_form_is_the_reflected_curve() {
        let s = CccSpec::new(1.4, 0.6, 2, 5, 0.8).unwrap();
        let p = indicatrix_closed_form(&s, 0.37);
        let m = indicatrix_closed_form_mirrored(&s, 0.37);
        assert!(quadric_residual(&p).abs() < 1e-15);
        assert!(quadric_residual(&m).abs() > 1e-3);
        assert!((linalg::norm(&p) - linalg::norm(&m)).abs() < 1e-15);
    }

    #[test]
    fn series_derivatives_match_finite_differences() {
        let s = CccSpec::new(2.0, 0.7, 3, 2, 1.1).unwrap();
        let tilde = osculating_indicatrix(&make_ccc(&s)).unwrap();
        let fd = tilde.to_finite_difference(1e-5).unwrap();
        let a = tilde.jet(0.9, 3).unwrap();
        let b = fd.jet(0.9, 3).unwrap();
        for k in 1..=3 {
            let err = linalg::distance(&a[k], &b[k]) / linalg::norm(&a[k]);
            let tol = [0.0, 1e-8, 1e-6, 1e-4][k];
            assert!(err < tol, "order {k}: {err}");
        }
    }

    #[test]
    fn invariants_for_base_spec() {
        let inv = indicatrix_invariants(&base());
        let r17 = 17f64.sqrt();
        assert!((inv.lambda - 85f64.sqrt()).abs() < 1e-14);
        assert!((inv.speed - 6.0 / 85f64.sqrt()).abs() < 1e-15);
        assert!((inv.k1 - 5.0 * r17 / 6.0).abs() < 1e-14);
        assert!((inv.k2 - 2.0 * r17 / 3.0).abs() < 1e-14);
        assert!((inv.k3 - r17 / 2.0).abs() < 1e-14);
        assert!((inv.k1 * inv.speed - 5f64.sqrt()).abs() < 1e-14);
        let f = frenet_at(&osculating_indicatrix(&make_ccc(&base())).unwrap(), 0.3, 4).unwrap();
        assert!((f.speed - inv.speed).abs() < 1e-13);
        assert!((f.curvatures[0] - inv.k1).abs() < 1e-12);
        assert!((f.curvatures[1] - inv.k2).abs() < 1e-12);
        assert!((f.curvatures[2] - inv.k3).abs() < 1e-12);
    }

    #[test]
    fn circle_is_not_transformable() {
        let circle = torus_curve(vec![1.0, 1.0], vec![1.0, 1.0], 2.0 * PI);
        assert!(matches!(
            osculating_indicatrix(&circle),
            Err(CurveError::NotTransformable { index: 2, .. })
        ));
        let p0 = osculating_plane_at(&circle, 0.0).unwrap();
        let p1 = osculating_plane_at(&circle, 1.7).unwrap();
        assert!(linalg::distance(p0.components(), p1.components()) < 1e-10);
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let c = torus_curve(vec![1.0, 1.0, 1.0], vec![1.0, 2.0, 3.0], 2.0 * PI);
        assert!(matches!(
            osculating_indicatrix(&c),
            Err(CurveError::DimensionMismatch {
                expected: 4,
                actual: 6
            })
        ));
    }

    #[test]
    fn normal_form_matches_rotated_coordinates() {
        let s = CccSpec::new(1.3, 0.8, 1, 2, 1.0).unwrap();
        let (amp, freq) = indicatrix_normal_form(s.a1(), s.a2(), s.alpha1(), s.alpha2());
        assert_eq!(freq, [3.0, 1.0]);
        for &t in &[0.0, 0.5, 2.0] {
            let p = indicatrix_closed_form(&s, t);
            let fast = ((p[4] - p[1]) / SQRT_2).hypot((p[2] + p[3]) / SQRT_2);
            let slow = ((p[4] + p[1]) / SQRT_2).hypot((p[2] - p[3]) / SQRT_2);
            assert!((fast - amp[0]).abs() < 1e-14);
            assert!((slow - amp[1]).abs() < 1e-14);
        }
    }

    #[test]
    fn iteration_needs_a_step() {
        assert!(iterate_transform(&base(), 0).is_err());
    }
}
