//! Closed curves of constant curvatures on Clifford tori.
//!
//! In `R^4` these are `(a1 cos α1 t, a1 sin α1 t, a2 cos α2 t, a2 sin α2 t)`
//! with `α1 / α2 = m1 / m2` rational. Specs are built from the coprime
//! winding pair and a frequency scale, `α_i = scale * m_i`, so closure is
//! structural.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curve::ParametricCurve;
use crate::error::{CurveError, Result};
use crate::linalg::gcd;

/// JSON form of a [`CccSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CccRecord {
    pub a1: f64,
    pub a2: f64,
    pub m1: u64,
    pub m2: u64,
    #[serde(default = "unit_scale")]
    pub scale: f64,
}

fn unit_scale() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CccRecord", into = "CccRecord")]
pub struct CccSpec {
    a1: f64,
    a2: f64,
    m1: u64,
    m2: u64,
    scale: f64,
}

impl TryFrom<CccRecord> for CccSpec {
    type Error = CurveError;

    fn try_from(r: CccRecord) -> Result<Self> {
        CccSpec::new(r.a1, r.a2, r.m1, r.m2, r.scale)
    }
}

impl From<CccSpec> for CccRecord {
    fn from(s: CccSpec) -> Self {
        CccRecord {
            a1: s.a1,
            a2: s.a2,
            m1: s.m1,
            m2: s.m2,
            scale: s.scale,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(CurveError::InvalidSpec(format!(
            "{name} must be positive and finite, got {v}"
        )));
    }
    Ok(())
}

impl CccSpec {
    pub fn new(a1: f64, a2: f64, m1: u64, m2: u64, scale: f64) -> Result<Self> {
        positive("a1", a1)?;
        positive("a2", a2)?;
        positive("scale", scale)?;
        if m1 == 0 || m2 == 0 {
            return Err(CurveError::InvalidSpec(format!(
                "m1, m2 must be positive, got ({m1}, {m2})"
            )));
        }
        if m1 == m2 || gcd(m1, m2) != 1 {
            return Err(CurveError::InvalidSpec(format!(
                "m1, m2 must be coprime and distinct, got ({m1}, {m2})"
            )));
        }
        Ok(Self {
            a1,
            a2,
            m1,
            m2,
            scale,
        })
    }

    /// From free frequencies with their claimed winding ratio; the ratio
    /// must hold to 1e-12 relative.
    pub fn from_frequencies(
        a1: f64,
        a2: f64,
        alpha1: f64,
        alpha2: f64,
        m1: u64,
        m2: u64,
    ) -> Result<Self> {
        positive("alpha1", alpha1)?;
        positive("alpha2", alpha2)?;
        let spec = Self::new(a1, a2, m1, m2, alpha1 / m1 as f64)?;
        let implied = alpha2 / m2 as f64;
        if (implied - spec.scale).abs() > 1e-12 * spec.scale {
            return Err(CurveError::InvalidSpec(format!(
                "alpha1 / alpha2 = {} does not equal m1 / m2 = {m1}/{m2}",
                alpha1 / alpha2
            )));
        }
        Ok(spec)
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }
    pub fn a2(&self) -> f64 {
        self.a2
    }
    pub fn m1(&self) -> u64 {
        self.m1
    }
    pub fn m2(&self) -> u64 {
        self.m2
    }
    pub fn scale(&self) -> f64 {
        self.scale
    }
    pub fn alpha1(&self) -> f64 {
        self.scale * self.m1 as f64
    }
    pub fn alpha2(&self) -> f64 {
        self.scale * self.m2 as f64
    }

    /// Constant `ds/dt = sqrt(a1^2 α1^2 + a2^2 α2^2)`.
    pub fn speed(&self) -> f64 {
        let (a1, a2, b1, b2) = (self.a1, self.a2, self.alpha1(), self.alpha2());
        (a1 * a1 * b1 * b1 + a2 * a2 * b2 * b2).sqrt()
    }

    pub fn record(&self) -> CccRecord {
        (*self).into()
    }
}

/// Clifford-torus curve `(a_i cos α_i t, a_i sin α_i t)_i` in `R^{2n}`,
/// without any validation.
pub fn torus_curve(amplitudes: Vec<f64>, frequencies: Vec<f64>, period: f64) -> ParametricCurve {
    assert_eq!(amplitudes.len(), frequencies.len());
    let dim = 2 * amplitudes.len();
    ParametricCurve::analytic(dim, period, move |t, order| {
        (0..=order)
            .map(|k| {
                let shift = k as f64 * PI / 2.0;
                let mut v = Vec::with_capacity(dim);
                for (a, w) in amplitudes.iter().zip(&frequencies) {
                    let c = a * w.powi(k as i32);
                    let phase = w * t + shift;
                    v.push(c * phase.cos());
                    v.push(c * phase.sin());
                }
                v
            })
            .collect()
    })
}

/// The constant-curvature curve of `spec`, with analytic derivatives.
pub fn make_ccc(spec: &CccSpec) -> ParametricCurve {
    torus_curve(
        vec![spec.a1, spec.a2],
        vec![spec.alpha1(), spec.alpha2()],
        minimal_period(spec),
    )
}

/// `(k1, k2, k3)` in closed form.
pub fn closed_form_curvatures(spec: &CccSpec) -> [f64; 3] {
    let (a1, a2, b1, b2) = (spec.a1, spec.a2, spec.alpha1(), spec.alpha2());
    let v2 = a1 * a1 * b1 * b1 + a2 * a2 * b2 * b2;
    let acc = (a1 * a1 * b1.powi(4) + a2 * a2 * b2.powi(4)).sqrt();
    let k1 = acc / v2;
    let k2 = a1 * a2 * b1 * b2 * (b1 * b1 - b2 * b2).abs() / (v2 * acc);
    let k3 = b1 * b2 / acc;
    [k1, k2, k3]
}

/// `T = 2π m1 / α1` (equal to `2π m2 / α2`).
pub fn minimal_period(spec: &CccSpec) -> f64 {
    2.0 * PI * spec.m1 as f64 / spec.alpha1()
}

/// `2π sqrt(m1^2 + m2^2)`.
pub fn total_mixed_curvature_exact(spec: &CccSpec) -> f64 {
    winding_value(spec.m1, spec.m2)
}

pub fn winding_value(m1: u64, m2: u64) -> f64 {
    2.0 * PI * ((m1 * m1 + m2 * m2) as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleValue {
    pub value: f64,
    pub sum_of_squares: u64,
    pub witnesses: Vec<(u64, u64)>,
}

/// All values `2π sqrt(m1^2 + m2^2)` over admissible pairs with
/// `1 <= m1, m2 <= bound`, ascending, with their witnesses.
pub fn admissible_values(bound: u64) -> Vec<AdmissibleValue> {
    let mut by_sum: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for m1 in 1..=bound {
        for m2 in 1..=bound {
            if m1 != m2 && gcd(m1, m2) == 1 {
                by_sum.entry(m1 * m1 + m2 * m2).or_default().push((m1, m2));
            }
        }
    }
    by_sum
        .into_iter()
        .map(|(s, witnesses)| AdmissibleValue {
            value: 2.0 * PI * (s as f64).sqrt(),
            sum_of_squares: s,
            witnesses,
        })
        .collect()
}

/// Smallest admissible value by exhaustive enumeration up to `bound >= 3`.
pub fn minimal_admissible_value(bound: u64) -> Result<AdmissibleValue> {
    if bound < 3 {
        return Err(CurveError::InvalidArgument(format!(
            "search bound must be >= 3, got {bound}"
        )));
    }
    Ok(admissible_values(bound).swap_remove(0))
}

/// Every coprime, distinct pair up to `bound`.
pub fn coprime_table(bound: u64) -> Vec<(u64, u64)> {
    let mut pairs = Vec::new();
    for m1 in 1..=bound {
        for m2 in 1..=bound {
            if m1 != m2 && gcd(m1, m2) == 1 {
                pairs.push((m1, m2));
            }
        }
    }
    pairs
}

/// Constant-curvature closed curve in `R^{2n}`: `α_i = scale * windings[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EvenCccRecord", into = "EvenCccRecord")]
pub struct EvenCccSpec {
    amplitudes: Vec<f64>,
    windings: Vec<u64>,
    scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvenCccRecord {
    pub amplitudes: Vec<f64>,
    pub windings: Vec<u64>,
    #[serde(default = "unit_scale")]
    pub scale: f64,
}

impl TryFrom<EvenCccRecord> for EvenCccSpec {
    type Error = CurveError;

    fn try_from(r: EvenCccRecord) -> Result<Self> {
        EvenCccSpec::new(r.amplitudes, r.windings, r.scale)
    }
}

impl From<EvenCccSpec> for EvenCccRecord {
    fn from(s: EvenCccSpec) -> Self {
        EvenCccRecord {
            amplitudes: s.amplitudes,
            windings: s.windings,
            scale: s.scale,
        }
    }
}

impl EvenCccSpec {
    pub fn new(amplitudes: Vec<f64>, windings: Vec<u64>, scale: f64) -> Result<Self> {
        if amplitudes.len() != windings.len() {
            return Err(CurveError::InvalidSpec(format!(
                "{} amplitudes for {} windings",
                amplitudes.len(),
                windings.len()
            )));
        }
        if amplitudes.len() < 2 {
            return Err(CurveError::InvalidSpec(
                "half-dimension must be at least 2".into(),
            ));
        }
        for (i, &a) in amplitudes.iter().enumerate() {
            positive(&format!("a{}", i + 1), a)?;
        }
        positive("scale", scale)?;
        if windings.contains(&0) {
            return Err(CurveError::InvalidSpec("windings must be positive".into()));
        }
        for i in 0..windings.len() {
            if windings[i + 1..].contains(&windings[i]) {
                return Err(CurveError::InvalidSpec(format!(
                    "frequencies must be pairwise distinct, got {:?}",
                    windings
                )));
            }
        }
        if windings.iter().fold(0, |g, &m| gcd(g, m)) != 1 {
            return Err(CurveError::InvalidSpec(format!(
                "windings {:?} share a common factor",
                windings
            )));
        }
        Ok(Self {
            amplitudes,
            windings,
            scale,
        })
    }

    pub fn half_dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn windings(&self) -> &[u64] {
        &self.windings
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.windings
            .iter()
            .map(|&m| self.scale * m as f64)
            .collect()
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.scale
    }
}

impl From<&CccSpec> for EvenCccSpec {
    fn from(s: &CccSpec) -> Self {
        Self {
            amplitudes: vec![s.a1, s.a2],
            windings: vec![s.m1, s.m2],
            scale: s.scale,
        }
    }
}

pub fn make_even_ccc(spec: &EvenCccSpec) -> ParametricCurve {
    torus_curve(spec.amplitudes.clone(), spec.frequencies(), spec.period())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::distance;

    fn base() -> CccSpec {
        CccSpec::new(1.0, 1.0, 1, 2, 1.0).unwrap()
    }

    #[test]
    fn position_at_zero() {
        let x = make_ccc(&base()).position(0.0).unwrap();
        assert_eq!(x, vec![1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn first_derivative_at_zero() {
        let d = make_ccc(&base()).derivatives_at(0.0, 1).unwrap();
        assert!(distance(&d[0], &[0.0, 1.0, 0.0, 2.0]) < 1e-15);
    }

    #[test]
    fn closed_form_values_for_base_spec() {
        let [k1, k2, k3] = closed_form_curvatures(&base());
        let r17 = 17f64.sqrt();
        assert!((k1 - r17 / 5.0).abs() < 1e-15);
        assert!((k2 - 6.0 / (5.0 * r17)).abs() < 1e-15);
        assert!((k3 - 2.0 / r17).abs() < 1e-15);
        assert!((k1 * k1 + k2 * k2 + k3 * k3 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn prohibited_and_invalid_specs() {
        for (m1, m2) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 2), (2, 4)] {
            assert!(CccSpec::new(1.0, 1.0, m1, m2, 1.0).is_err(), "({m1},{m2})");
        }
        assert!(CccSpec::new(0.0, 1.0, 1, 2, 1.0).is_err());
        assert!(CccSpec::new(1.0, -1.0, 1, 2, 1.0).is_err());
        assert!(CccSpec::new(1.0, 1.0, 1, 2, f64::NAN).is_err());
        let msg = CccSpec::new(1.0, 1.0, 2, 2, 1.0).unwrap_err().to_string();
        assert!(msg.contains("m1, m2 must be coprime and distinct"), "{msg}");
    }

    #[test]
    fn periods() {
        assert!((minimal_period(&base()) - 2.0 * PI).abs() < 1e-15);
        let s = CccSpec::from_frequencies(2.0, 0.5, 3.0, 5.0, 3, 5).unwrap();
        assert!((minimal_period(&s) - 2.0 * PI).abs() < 1e-15);
        let s = CccSpec::from_frequencies(1.0, 1.0, 1.5, 2.5, 3, 5).unwrap();
        let t = minimal_period(&s);
        assert!((t - 4.0 * PI).abs() < 1e-14);
        assert!((t * s.alpha2() - 2.0 * PI * 5.0).abs() < 1e-12);
        assert!(CccSpec::from_frequencies(1.0, 1.0, 1.5, 2.6, 3, 5).is_err());
    }

    #[test]
    fn closure_of_three_five_spec() {
        let s = CccSpec::from_frequencies(2.0, 0.5, 3.0, 5.0, 3, 5).unwrap();
        let c = make_ccc(&s);
        let t = minimal_period(&s);
        let d = distance(&c.position(0.0).unwrap(), &c.position(t).unwrap());
        assert!(d < 1e-12, "{d}");
        assert!(c.is_closed().unwrap());
    }

    #[test]
    fn torus_residuals() {
        let s = CccSpec::new(2.0, 0.5, 3, 5, 1.0).unwrap();
        let c = make_ccc(&s);
        for i in 0..64 {
            let x = c.position(i as f64 * 0.1).unwrap();
            assert!((x[0] * x[0] + x[1] * x[1] - 4.0).abs() < 1e-12);
            assert!((x[2] * x[2] + x[3] * x[3] - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_functional_values() {
        let v = total_mixed_curvature_exact(&base());
        assert!((v - 2.0 * 5f64.sqrt() * PI).abs() < 1e-13);
        assert!((v - 14.0496295).abs() < 1e-6);
        let s = CccSpec::new(1.0, 1.0, 2, 1, 1.0).unwrap();
        assert_eq!(total_mixed_curvature_exact(&s), v);
        let s = CccSpec::new(1.0, 1.0, 3, 5, 1.0).unwrap();
        assert!((total_mixed_curvature_exact(&s) - 2.0 * PI * 34f64.sqrt()).abs() < 1e-13);
        assert!((total_mixed_curvature_exact(&s) - 36.636951).abs() < 1e-6);
    }

    #[test]
    fn minimal_value_enumeration() {
        assert!(minimal_admissible_value(2).is_err());
        for bound in [3, 10, 100] {
            let m = minimal_admissible_value(bound).unwrap();
            assert_eq!(m.witnesses, vec![(1, 2), (2, 1)]);
            assert!((m.value - 2.0 * 5f64.sqrt() * PI).abs() < 1e-13);
        }
        let second = &admissible_values(10)[1];
        assert_eq!(second.sum_of_squares, 10);
        assert_eq!(second.witnesses, vec![(1, 3), (3, 1)]);
    }

    #[test]
    fn even_spec_validation() {
        assert!(EvenCccSpec::new(vec![1.0; 3], vec![1, 2, 3], 1.0).is_ok());
        assert!(EvenCccSpec::new(vec![1.0; 3], vec![1, 2, 2], 1.0).is_err());
        assert!(EvenCccSpec::new(vec![1.0; 3], vec![2, 4, 6], 1.0).is_err());
        assert!(EvenCccSpec::new(vec![1.0; 2], vec![1, 2, 3], 1.0).is_err());
        assert!(EvenCccSpec::new(vec![1.0], vec![1], 1.0).is_err());
    }

    #[test]
    fn even_spec_reduces_to_ccc() {
        let s = CccSpec::new(3.0, 1.0, 2, 5, 0.7).unwrap();
        let a = make_ccc(&s);
        let b = make_even_ccc(&EvenCccSpec::from(&s));
        assert!((a.period() - b.period()).abs() < 1e-15);
        for &t in &[0.0, 0.4, 3.3] {
            let ja = a.jet(t, 4).unwrap();
            let jb = b.jet(t, 4).unwrap();
            for (u, v) in ja.iter().zip(&jb) {
                assert!(distance(u, v) < 1e-13);
            }
        }
    }

    #[test]
    fn spec_json_roundtrip_and_validation() {
        let s = CccSpec::new(2.0, 0.5, 3, 5, 1.0).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"a1":2.0,"a2":0.5,"m1":3,"m2":5,"scale":1.0}"#);
        let back: CccSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let bad = serde_json::from_str::<CccSpec>(r#"{"a1":1,"a2":1,"m1":2,"m2":2}"#);
        assert!(bad.is_err());
        let defaulted: CccSpec = serde_json::from_str(r#"{"a1":1,"a2":1,"m1":1,"m2":2}"#).unwrap();
        assert_eq!(defaulted.scale(), 1.0);
    }
}
