//! Searches trigonometric-polynomial closed curves in `R^4` for small values
//! of `int sqrt(k1^2 + k2^2 + k3^2) ds`, keeping `k1` and `k2` away from
//! zero with soft penalties.

pub mod simplex;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ccc::CccSpec;
use crate::curve::ParametricCurve;
use crate::error::{CurveError, Result};
use crate::functionals::{sharp_bound, ProfileSamples, CURVATURE_FLOOR, FENCHEL_BOUND};
use crate::linalg;
use crate::quadrature::QuadratureConfig;

pub use simplex::{SimplexOptions, SimplexOutcome, SimplexTracePoint};

/// Candidate curves slower than this somewhere are irregular.
pub const SPEED_FLOOR: f64 = 1e-6;
/// Grid doublings tried per objective evaluation.
pub const SEARCH_REFINEMENTS: usize = 4;
/// Grid doublings tried when validating a point.
pub const VALIDATION_REFINEMENTS: usize = 6;

/// Runs `eval` on `q`, doubling the grid while the quadrature has not
/// converged.
fn refined<T>(
    mut q: QuadratureConfig,
    refinements: usize,
    eval: impl Fn(&QuadratureConfig) -> Result<T>,
) -> Result<(T, usize)> {
    let mut attempt = 0;
    loop {
        match eval(&q) {
            Ok(v) => return Ok((v, q.samples)),
            Err(CurveError::QuadratureFailure { .. }) if attempt < refinements => {
                q.samples *= 2;
                attempt += 1;
            }
            Err(e) => return Err(e),
        }
    }
}
const REGULARITY_SAMPLES: usize = 256;

/// `x_i(t) = sum_h cos[i][h-1] cos(h t) + sin[i][h-1] sin(h t)`, period `2π`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FourierRecord", into = "FourierRecord")]
pub struct FourierCurveSpec {
    harmonics: usize,
    cos: Vec<Vec<f64>>,
    sin: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierRecord {
    pub harmonics: usize,
    pub cos: Vec<Vec<f64>>,
    pub sin: Vec<Vec<f64>>,
}

impl TryFrom<FourierRecord> for FourierCurveSpec {
    type Error = CurveError;

    fn try_from(r: FourierRecord) -> Result<Self> {
        FourierCurveSpec::new(r.harmonics, r.cos, r.sin)
    }
}

impl From<FourierCurveSpec> for FourierRecord {
    fn from(s: FourierCurveSpec) -> Self {
        FourierRecord {
            harmonics: s.harmonics,
            cos: s.cos,
            sin: s.sin,
        }
    }
}

impl FourierCurveSpec {
    pub fn new(harmonics: usize, cos: Vec<Vec<f64>>, sin: Vec<Vec<f64>>) -> Result<Self> {
        if harmonics == 0 {
            return Err(CurveError::InvalidSpec(
                "at least one harmonic is required".into(),
            ));
        }
        let shape_ok = |m: &Vec<Vec<f64>>| m.len() == 4 && m.iter().all(|r| r.len() == harmonics);
        if !shape_ok(&cos) || !shape_ok(&sin) {
            return Err(CurveError::InvalidSpec(format!(
                "coefficient tables must be 4 x {harmonics}"
            )));
        }
        if cos.iter().chain(&sin).flatten().any(|c| !c.is_finite()) {
            return Err(CurveError::InvalidSpec(
                "coefficients must be finite".into(),
            ));
        }
        if cos.iter().chain(&sin).flatten().all(|&c| c == 0.0) {
            return Err(CurveError::InvalidSpec("all coefficients vanish".into()));
        }
        Ok(Self {
            harmonics,
            cos,
            sin,
        })
    }

    /// The constant-curvature curve with winding `(m1, m2)` and frequencies
    /// `α_i = m_i`. The functional is invariant under the frequency scale,
    /// so `spec.scale()` is not used.
    pub fn from_ccc(spec: &CccSpec, harmonics: usize) -> Result<Self> {
        let (m1, m2) = (spec.m1() as usize, spec.m2() as usize);
        if harmonics < m1.max(m2) {
            return Err(CurveError::InvalidSpec(format!(
                "winding ({m1}, {m2}) needs at least {} harmonics",
                m1.max(m2)
            )));
        }
        let mut cos = vec![vec![0.0; harmonics]; 4];
        let mut sin = vec![vec![0.0; harmonics]; 4];
        cos[0][m1 - 1] = spec.a1();
        sin[1][m1 - 1] = spec.a1();
        cos[2][m2 - 1] = spec.a2();
        sin[3][m2 - 1] = spec.a2();
        Self::new(harmonics, cos, sin)
    }

    pub fn harmonics(&self) -> usize {
        self.harmonics
    }

    pub fn cos(&self) -> &[Vec<f64>] {
        &self.cos
    }

    pub fn sin(&self) -> &[Vec<f64>] {
        &self.sin
    }

    /// Coefficients flattened as `[cos row 0, sin row 0, cos row 1, ...]`.
    pub fn to_vector(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(8 * self.harmonics);
        for i in 0..4 {
            v.extend_from_slice(&self.cos[i]);
            v.extend_from_slice(&self.sin[i]);
        }
        v
    }

    pub fn from_vector(harmonics: usize, v: &[f64]) -> Result<Self> {
        if v.len() != 8 * harmonics {
            return Err(CurveError::DimensionMismatch {
                expected: 8 * harmonics,
                actual: v.len(),
            });
        }
        let mut chunks = v.chunks(harmonics);
        let mut cos = Vec::with_capacity(4);
        let mut sin = Vec::with_capacity(4);
        for _ in 0..4 {
            cos.push(chunks.next().unwrap().to_vec());
            sin.push(chunks.next().unwrap().to_vec());
        }
        Self::new(harmonics, cos, sin)
    }

    /// Adds independent uniform noise in `[-magnitude, magnitude]` to every
    /// coefficient.
    pub fn perturbed(&self, magnitude: f64, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<f64> = self
            .to_vector()
            .into_iter()
            .map(|c| c + magnitude * (2.0 * rng.random::<f64>() - 1.0))
            .collect();
        Self::from_vector(self.harmonics, &v)
    }
}

fn fourier_jet(spec: &FourierCurveSpec, t: f64, order: usize) -> Vec<Vec<f64>> {
    let mut jet = vec![vec![0.0; 4]; order + 1];
    for h in 1..=spec.harmonics {
        let hf = h as f64;
        let (s, c) = (hf * t).sin_cos();
        let mut power = 1.0;
        for (k, out) in jet.iter_mut().enumerate() {
            // d^k/dt^k of (cos, sin)(h t) = h^k (cos, sin)(h t + k π/2)
            let (ck, sk) = match k % 4 {
                0 => (c, s),
                1 => (-s, c),
                2 => (-c, -s),
                _ => (s, -c),
            };
            for i in 0..4 {
                out[i] += power * (spec.cos[i][h - 1] * ck + spec.sin[i][h - 1] * sk);
            }
            power *= hf;
        }
    }
    jet
}

/// The curve with analytic derivatives; rejects curves whose speed drops
/// below [`SPEED_FLOOR`].
pub fn make_fourier_curve(spec: &FourierCurveSpec) -> Result<ParametricCurve> {
    let curve = fourier_curve_unchecked(spec);
    let mut min_speed = f64::INFINITY;
    for i in 0..REGULARITY_SAMPLES {
        let t = 2.0 * PI * i as f64 / REGULARITY_SAMPLES as f64;
        let jet = curve.jet(t, 1)?;
        min_speed = min_speed.min(linalg::norm(&jet[1]));
    }
    if !(min_speed > SPEED_FLOOR) {
        return Err(CurveError::IrregularCurve { min_speed });
    }
    Ok(curve)
}

fn fourier_curve_unchecked(spec: &FourierCurveSpec) -> ParametricCurve {
    let spec = spec.clone();
    ParametricCurve::analytic(4, 2.0 * PI, move |t, k| fourier_jet(&spec, t, k))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenaltyWeights {
    pub w1: f64,
    pub w2: f64,
    pub eps1: f64,
    pub eps2: f64,
}

impl Default for PenaltyWeights {
    fn default() -> Self {
        Self {
            w1: 1e6,
            w2: 1e6,
            eps1: 1e-3,
            eps2: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveBreakdown {
    pub value: f64,
    pub penalty: f64,
    pub min_k1: f64,
    pub min_k2: f64,
    pub objective: f64,
}

/// Functional plus squared floor violations on the quadrature grid.
pub fn objective_breakdown(
    spec: &FourierCurveSpec,
    weights: &PenaltyWeights,
    q: &QuadratureConfig,
) -> Result<ObjectiveBreakdown> {
    let curve = make_fourier_curve(spec)?;
    let samples = ProfileSamples::new(&curve, 4, q)?;
    let value = samples.integrate(|p| p.mixed(2))?;
    let min_k1 = samples.floor(1).min;
    let min_k2 = samples.floor(2).min;
    let penalty = weights.w1 * (weights.eps1 - min_k1).max(0.0).powi(2)
        + weights.w2 * (weights.eps2 - min_k2).max(0.0).powi(2);
    let objective = value + penalty;
    if !objective.is_finite() {
        return Err(CurveError::NumericDomain("penalized objective".into()));
    }
    Ok(ObjectiveBreakdown {
        value,
        penalty,
        min_k1,
        min_k2,
        objective,
    })
}

/// Penalized objective; rejected candidates score `+inf`.
pub fn penalized_objective(
    spec: &FourierCurveSpec,
    weights: &PenaltyWeights,
    q: &QuadratureConfig,
) -> f64 {
    objective_breakdown(spec, weights, q)
        .map(|b| b.objective)
        .unwrap_or(f64::INFINITY)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExplorerConfig {
    pub budget: usize,
    pub seed: u64,
    pub restarts: usize,
    pub initial_step: f64,
    /// Simplex collapse tolerance (relative spread of values).
    pub tolerance: f64,
    pub penalty: PenaltyWeights,
    /// Simpson subintervals per objective evaluation.
    pub samples: usize,
    /// Candidates whose search quadrature disagrees with its half-resolution
    /// estimate by more than this (relative) are rejected.
    pub search_tolerance: f64,
    /// Simpson subintervals for re-validating the best point.
    pub validation_samples: usize,
    /// A feasible best value below `2 sqrt(5) π - violation_tolerance` is a
    /// conjecture violation.
    pub violation_tolerance: f64,
}

impl Default for ExplorerConfig {
    fn default() -> Self {
        Self {
            budget: 2000,
            seed: 42,
            restarts: 3,
            initial_step: 0.05,
            tolerance: 1e-10,
            penalty: PenaltyWeights::default(),
            samples: 512,
            search_tolerance: 1e-6,
            validation_samples: 2048,
            violation_tolerance: 1e-6,
        }
    }
}

impl ExplorerConfig {
    pub fn search_quadrature(&self) -> QuadratureConfig {
        QuadratureConfig {
            tolerance: self.search_tolerance,
            ..QuadratureConfig::simpson(self.samples)
        }
    }

    pub fn validation_quadrature(&self) -> QuadratureConfig {
        QuadratureConfig::simpson(self.validation_samples)
    }

    /// Penalized objective on the search grid, refined up to
    /// [`SEARCH_REFINEMENTS`] times; `+inf` if it never converges.
    pub fn search_objective(&self, spec: &FourierCurveSpec) -> f64 {
        refined(self.search_quadrature(), SEARCH_REFINEMENTS, |q| {
            objective_breakdown(spec, &self.penalty, q)
        })
        .map(|(b, _)| b.objective)
        .unwrap_or(f64::INFINITY)
    }

    /// Value and floors of `k1`, `k2` on the validation grid, refined up to
    /// [`VALIDATION_REFINEMENTS`] times, with the subinterval count used.
    pub fn validate_candidate(&self, spec: &FourierCurveSpec) -> Result<(f64, f64, f64, usize)> {
        let ((value, k1, k2), samples) =
            refined(self.validation_quadrature(), VALIDATION_REFINEMENTS, |q| {
                evaluate_candidate(spec, q)
            })?;
        Ok((value, k1, k2, samples))
    }

    pub fn validate(&self) -> Result<()> {
        self.search_quadrature().validate()?;
        if !(self.search_tolerance > 0.0) {
            return Err(CurveError::InvalidArgument(
                "search_tolerance must be positive".into(),
            ));
        }
        self.validation_quadrature().validate()?;
        if !(self.initial_step > 0.0)
            || !(self.tolerance > 0.0)
            || !(self.violation_tolerance >= 0.0)
        {
            return Err(CurveError::InvalidArgument(
                "initial_step and tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Objective values may be `+inf`; JSON has no infinity, so it is written
/// as `null` and read back as `+inf`.
mod unbounded {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub iteration: usize,
    pub evaluations: usize,
    /// Best penalized objective so far (non-increasing). `null` in JSON when
    /// no finite value has been seen.
    #[serde(with = "unbounded")]
    pub objective: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub sharp_bound: f64,
    pub fenchel_bound: f64,
    pub sharp_margin: f64,
    pub fenchel_margin: f64,
    /// Feasible and below the sharp bound by more than the tolerance.
    pub conjecture_violation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplorationResult {
    /// Functional of the starting curve (validation quadrature).
    pub initial_value: f64,
    /// Functional of the best curve (validation quadrature).
    pub best_value: f64,
    /// Simpson subintervals at which `best_value` converged.
    pub validation_samples: usize,
    /// Penalized objective of the best curve (search quadrature).
    #[serde(with = "unbounded")]
    pub best_objective: f64,
    pub best_spec: FourierCurveSpec,
    pub min_k1: f64,
    pub min_k2: f64,
    /// Floors of `k1` and `k2` exceed the vanishing threshold.
    pub feasible: bool,
    pub evaluations: usize,
    pub restarts_used: usize,
    pub converged: bool,
    pub verdict: Verdict,
    /// Winding pair of the starting constant-curvature curve, if any.
    pub initial_winding: Option<(u64, u64)>,
    pub trace: Vec<TraceEntry>,
}

/// Validated functional value and floors of a candidate.
pub fn evaluate_candidate(
    spec: &FourierCurveSpec,
    q: &QuadratureConfig,
) -> Result<(f64, f64, f64)> {
    let curve = make_fourier_curve(spec)?;
    let samples = ProfileSamples::new(&curve, 4, q)?;
    let value = samples.integrate(|p| p.mixed(2))?;
    Ok((value, samples.floor(1).min, samples.floor(2).min))
}

/// Derivative-free descent of the penalized objective from `initial`.
/// Deterministic for a fixed config.
pub fn minimize_functional(
    initial: &FourierCurveSpec,
    config: &ExplorerConfig,
) -> Result<ExplorationResult> {
    config.validate()?;
    make_fourier_curve(initial)?;
    let harmonics = initial.harmonics();

    let objective = |x: &[f64]| -> f64 {
        match FourierCurveSpec::from_vector(harmonics, x) {
            Ok(spec) => config.search_objective(&spec),
            Err(_) => f64::INFINITY,
        }
    };
    let outcome = simplex::minimize(
        &objective,
        &initial.to_vector(),
        &SimplexOptions {
            budget: config.budget,
            tolerance: config.tolerance,
            initial_step: config.initial_step,
            restarts: config.restarts,
            seed: config.seed,
        },
    );

    let best_spec = FourierCurveSpec::from_vector(harmonics, &outcome.best)?;
    let (initial_value, _, _, _) = config.validate_candidate(initial)?;
    let (best_value, min_k1, min_k2, validation_samples) = config.validate_candidate(&best_spec)?;
    let feasible = min_k1 > CURVATURE_FLOOR && min_k2 > CURVATURE_FLOOR;
    let sharp = sharp_bound();
    let sharp_margin = best_value - sharp;
    let verdict = Verdict {
        sharp_bound: sharp,
        fenchel_bound: FENCHEL_BOUND,
        sharp_margin,
        fenchel_margin: best_value - FENCHEL_BOUND,
        conjecture_violation: feasible && sharp_margin < -config.violation_tolerance,
    };

    Ok(ExplorationResult {
        initial_value,
        best_value,
        validation_samples,
        best_objective: outcome.best_value,
        best_spec,
        min_k1,
        min_k2,
        feasible,
        evaluations: outcome.evaluations,
        restarts_used: outcome.restarts_used,
        converged: outcome.converged,
        verdict,
        initial_winding: None,
        trace: outcome
            .trace
            .iter()
            .map(|p| TraceEntry {
                iteration: p.iteration,
                evaluations: p.evaluations,
                objective: p.best,
            })
            .collect(),
    })
}

/// Starting curve for an exploration run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialCurve {
    /// A constant-curvature curve embedded with `harmonics` harmonics, then
    /// perturbed.
    Ccc {
        a1: f64,
        a2: f64,
        m1: u64,
        m2: u64,
        #[serde(default)]
        perturbation: f64,
    },
    Fourier {
        spec: FourierCurveSpec,
        #[serde(default)]
        perturbation: f64,
    },
}

impl InitialCurve {
    /// Builds the starting spec; the perturbation is drawn from `seed`.
    pub fn build(&self, harmonics: usize, seed: u64) -> Result<FourierCurveSpec> {
        let (spec, magnitude) = match self {
            InitialCurve::Ccc {
                a1,
                a2,
                m1,
                m2,
                perturbation,
            } => (
                FourierCurveSpec::from_ccc(&CccSpec::new(*a1, *a2, *m1, *m2, 1.0)?, harmonics)?,
                *perturbation,
            ),
            InitialCurve::Fourier { spec, perturbation } => (spec.clone(), *perturbation),
        };
        if magnitude == 0.0 {
            Ok(spec)
        } else {
            spec.perturbed(magnitude, seed)
        }
    }

    pub fn winding(&self) -> Option<(u64, u64)> {
        match self {
            InitialCurve::Ccc { m1, m2, .. } => Some((*m1, *m2)),
            InitialCurve::Fourier { .. } => None,
        }
    }
}

/// Builds the starting curve and runs [`minimize_functional`].
pub fn explore(
    initial: &InitialCurve,
    harmonics: usize,
    config: &ExplorerConfig,
) -> Result<ExplorationResult> {
    let spec = initial.build(harmonics, config.seed)?;
    let mut result = minimize_functional(&spec, config)?;
    result.initial_winding = initial.winding();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccc::make_ccc;
    use crate::linalg::distance;

    fn base_embedding(h: usize) -> FourierCurveSpec {
        FourierCurveSpec::from_ccc(&CccSpec::new(1.0, 1.0, 1, 2, 1.0).unwrap(), h).unwrap()
    }

    #[test]
    fn embedding_reproduces_ccc_jets() {
        let spec = CccSpec::new(1.5, 0.5, 3, 2, 1.0).unwrap();
        let a = make_fourier_curve(&FourierCurveSpec::from_ccc(&spec, 4).unwrap()).unwrap();
        let b = make_ccc(&spec);
        for &t in &[0.0, 0.8, 4.0] {
            for (u, v) in a.jet(t, 5).unwrap().iter().zip(&b.jet(t, 5).unwrap()) {
                assert!(distance(u, v) < 1e-12);
            }
        }
        assert!(FourierCurveSpec::from_ccc(&spec, 2).is_err());
    }

    #[test]
    fn vector_roundtrip_and_shape_checks() {
        let s = base_embedding(3).perturbed(0.1, 3).unwrap();
        let back = FourierCurveSpec::from_vector(3, &s.to_vector()).unwrap();
        assert_eq!(back, s);
        assert!(FourierCurveSpec::from_vector(3, &[0.0; 23]).is_err());
        assert!(FourierCurveSpec::new(1, vec![vec![0.0]; 4], vec![vec![0.0]; 4]).is_err());
        assert!(FourierCurveSpec::new(2, vec![vec![1.0]; 4], vec![vec![0.0]; 4]).is_err());
    }

    #[test]
    fn feasible_ccc_point_has_zero_penalty() {
        let q = QuadratureConfig::default();
        let b = objective_breakdown(&base_embedding(2), &PenaltyWeights::default(), &q).unwrap();
        assert_eq!(b.penalty, 0.0);
        assert_eq!(b.objective, b.value);
        assert!((b.value - sharp_bound()).abs() < 1e-9);
    }

    #[test]
    fn circle_is_heavily_penalized() {
        let mut cos = vec![vec![0.0]; 4];
        let mut sin = vec![vec![0.0]; 4];
        cos[0][0] = 1.0;
        sin[1][0] = 1.0;
        let circle = FourierCurveSpec::new(1, cos, sin).unwrap();
        let q = QuadratureConfig::simpson(256);
        let b = objective_breakdown(&circle, &PenaltyWeights::default(), &q).unwrap();
        assert_eq!(b.min_k2, 0.0);
        assert!(b.penalty >= 1e6 * 1e-6 * 0.999);
    }

    #[test]
    fn irregular_curve_is_rejected() {
        // (cos t, 0, 0, 0) stops at t = 0
        let mut cos = vec![vec![0.0]; 4];
        cos[0][0] = 1.0;
        let s = FourierCurveSpec::new(1, cos, vec![vec![0.0]; 4]).unwrap();
        assert!(matches!(
            make_fourier_curve(&s),
            Err(CurveError::IrregularCurve { .. })
        ));
        let q = QuadratureConfig::simpson(128);
        assert_eq!(
            penalized_objective(&s, &PenaltyWeights::default(), &q),
            f64::INFINITY
        );
    }

    #[test]
    fn penalty_decreases_as_floor_rises() {
        let w = PenaltyWeights::default();
        let pen = |k2: f64| w.w2 * (w.eps2 - k2).max(0.0).powi(2);
        let h = 1e-5;
        for &k in &[0.0, 2e-4, 5e-4, 9e-4] {
            assert!((pen(k + h) - pen(k - h)) / (2.0 * h) < 0.0);
        }
        assert_eq!(pen(2e-3), 0.0);
    }

    #[test]
    fn zero_budget_echoes_initial_value() {
        let config = ExplorerConfig {
            budget: 0,
            ..ExplorerConfig::default()
        };
        let r = minimize_functional(&base_embedding(2), &config).unwrap();
        assert!(!r.converged);
        assert_eq!(r.best_spec, base_embedding(2));
        assert_eq!(r.best_value, r.initial_value);
    }

    #[test]
    fn config_json_defaults() {
        let c: ExplorerConfig = serde_json::from_str(r#"{"budget": 10}"#).unwrap();
        assert_eq!(c.budget, 10);
        assert_eq!(c.samples, 512);
        let i: InitialCurve = serde_json::from_str(
            r#"{"kind":"ccc","a1":1,"a2":1,"m1":1,"m2":2,"perturbation":0.1}"#,
        )
        .unwrap();
        assert_eq!(i.winding(), Some((1, 2)));
        let a = i.build(4, 42).unwrap();
        let b = i.build(4, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, i.build(4, 43).unwrap());
    }

    #[test]
    fn infinite_objective_survives_json() {
        let e = TraceEntry {
            iteration: 0,
            evaluations: 1,
            objective: f64::INFINITY,
        };
        let json = serde_json::to_string(&e).unwrap();
        assert!(json.contains("null"));
        assert_eq!(serde_json::from_str::<TraceEntry>(&json).unwrap(), e);
    }
}
