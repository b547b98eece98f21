//! Total-curvature functionals of closed curves and the inequalities they
//! satisfy, evaluated by quadrature with explicit margins.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curve::ParametricCurve;
use crate::error::{CurveError, Result};
use crate::frenet::{curvature_profile, CurvatureProfile};
use crate::quadrature::{Grid, QuadratureConfig};

/// Curvatures at or below this value count as vanishing.
pub const CURVATURE_FLOOR: f64 = 1e-8;
/// Default slack for inequality verdicts.
pub const VERDICT_TOLERANCE: f64 = 1e-9;

/// `2π`, the Fenchel–Borsuk bound.
pub const FENCHEL_BOUND: f64 = 2.0 * PI;

/// `2 sqrt(5) π`, the sharp bound for constant curvatures in `R^4`.
pub fn sharp_bound() -> f64 {
    2.0 * 5f64.sqrt() * PI
}

/// Curvature profiles on a quadrature grid over one period.
pub struct ProfileSamples {
    grid: Grid,
    profiles: Vec<CurvatureProfile>,
}

impl ProfileSamples {
    pub fn new(curve: &ParametricCurve, levels: usize, q: &QuadratureConfig) -> Result<Self> {
        let grid = q.grid(0.0, curve.period())?;
        let profiles = grid.sample(|t| curvature_profile(curve, t, levels))?;
        Ok(Self { grid, profiles })
    }

    pub fn profiles(&self) -> &[CurvatureProfile] {
        &self.profiles
    }

    /// `int f(profile) ds`.
    pub fn integrate<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(&CurvatureProfile) -> f64,
    {
        let values: Vec<f64> = self.profiles.iter().map(|p| f(p) * p.speed).collect();
        self.grid.integrate(&values)
    }

    /// Smallest `k_index` over the samples and where it occurs.
    pub fn floor(&self, index: usize) -> CurvatureFloor {
        let (min, at) =
            self.profiles
                .iter()
                .map(|p| (p.k(index), p.t))
                .fold(
                    (f64::INFINITY, 0.0),
                    |acc, x| if x.0 < acc.0 { x } else { acc },
                );
        CurvatureFloor { index, min, at }
    }

    /// First of `k_1..k_upto` whose floor is not above [`CURVATURE_FLOOR`].
    pub fn first_vanishing(&self, upto: usize) -> Option<CurvatureFloor> {
        (1..=upto)
            .map(|i| self.floor(i))
            .find(|f| !(f.min > CURVATURE_FLOOR))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureFloor {
    pub index: usize,
    pub min: f64,
    pub at: f64,
}

/// A functional value, or why the inequality it belongs to does not apply.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Evaluation {
    Applicable {
        value: f64,
    },
    Inapplicable {
        reason: String,
        floor: CurvatureFloor,
    },
}

impl Evaluation {
    pub fn value(&self) -> Option<f64> {
        match self {
            Evaluation::Applicable { value } => Some(*value),
            Evaluation::Inapplicable { .. } => None,
        }
    }
}

fn inapplicable(floor: CurvatureFloor) -> Evaluation {
    Evaluation::Inapplicable {
        reason: format!(
            "k{} vanishes (min {:e} at t = {})",
            floor.index, floor.min, floor.at
        ),
        floor,
    }
}

/// `int k1 ds` over one period.
pub fn total_first_curvature(curve: &ParametricCurve, q: &QuadratureConfig) -> Result<f64> {
    if curve.dimension() < 2 {
        return Err(CurveError::InvalidArgument(
            "curvature needs dimension >= 2".into(),
        ));
    }
    ProfileSamples::new(curve, 2, q)?.integrate(|p| p.k(1))
}

fn check_index(curve: &ParametricCurve, j: usize) -> Result<()> {
    let n = curve.dimension();
    if j < 2 || j + 1 > n {
        return Err(CurveError::InvalidArgument(format!(
            "mixed functional index j = {j} must satisfy 2 <= j <= {}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

/// `int sqrt(k_{j-1}^2 + k_j^2 + k_{j+1}^2) ds`, applicable when
/// `k_1..k_j` do not vanish. `k_n` does not exist and counts as zero.
pub fn mixed_curvature_functional(
    curve: &ParametricCurve,
    j: usize,
    q: &QuadratureConfig,
) -> Result<Evaluation> {
    check_index(curve, j)?;
    let levels = (j + 2).min(curve.dimension());
    let samples = ProfileSamples::new(curve, levels, q)?;
    mixed_from_samples(&samples, j)
}

pub(crate) fn mixed_from_samples(samples: &ProfileSamples, j: usize) -> Result<Evaluation> {
    if let Some(floor) = samples.first_vanishing(j) {
        return Ok(inapplicable(floor));
    }
    Ok(Evaluation::Applicable {
        value: samples.integrate(|p| p.mixed(j))?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveDescriptor {
    pub dimension: usize,
    pub period: f64,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedValue {
    pub j: usize,
    pub evaluation: Evaluation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityVerdict {
    /// Short label, e.g. `fenchel` or `sharp_j2`.
    pub label: String,
    pub description: String,
    pub bound: f64,
    pub value: Option<f64>,
    /// `value - bound`.
    pub margin: Option<f64>,
    /// `margin > -tolerance`; `None` when inapplicable.
    pub holds: Option<bool>,
    pub inapplicable: Option<String>,
}

impl InequalityVerdict {
    fn new(
        label: &str,
        description: String,
        bound: f64,
        evaluation: &Evaluation,
        tolerance: f64,
    ) -> Self {
        match evaluation {
            Evaluation::Applicable { value } => {
                let margin = value - bound;
                Self {
                    label: label.into(),
                    description,
                    bound,
                    value: Some(*value),
                    margin: Some(margin),
                    holds: Some(margin > -tolerance),
                    inapplicable: None,
                }
            }
            Evaluation::Inapplicable { reason, .. } => Self {
                label: label.into(),
                description,
                bound,
                value: None,
                margin: None,
                holds: None,
                inapplicable: Some(reason.clone()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalReport {
    pub curve: CurveDescriptor,
    pub tolerance: f64,
    pub total_first_curvature: f64,
    pub mixed: Vec<MixedValue>,
    pub inequalities: Vec<InequalityVerdict>,
    /// Minimum of each `k_i` over the quadrature samples.
    pub floors: Vec<CurvatureFloor>,
}

impl FunctionalReport {
    pub fn verdict(&self, label: &str) -> Option<&InequalityVerdict> {
        self.inequalities.iter().find(|v| v.label == label)
    }

    /// True when no applicable inequality fails.
    pub fn all_hold(&self) -> bool {
        self.inequalities.iter().all(|v| v.holds != Some(false))
    }
}

/// Evaluates every applicable functional of a closed curve against its
/// bound. In `R^4` the verdicts are `fenchel` (`int k1 >= 2π`), `mixed_j2`
/// and `mixed_j3` (`> 2π`), and `sharp_j2` (`>= 2 sqrt(5) π`). In other
/// dimensions every `mixed_j{j}` is reported, plus `sharp_j{j}` for even `j`
/// when the dimension is even.
pub fn inequality_report(
    curve: &ParametricCurve,
    q: &QuadratureConfig,
    provenance: &str,
    tolerance: f64,
) -> Result<FunctionalReport> {
    let n = curve.dimension();
    if n < 2 {
        return Err(CurveError::InvalidArgument(
            "curvature needs dimension >= 2".into(),
        ));
    }
    let samples = ProfileSamples::new(curve, n, q)?;
    let total_first = samples.integrate(|p| p.k(1))?;
    let floors: Vec<CurvatureFloor> = (1..n).map(|i| samples.floor(i)).collect();

    let mut mixed = Vec::new();
    for j in 2..n {
        mixed.push(MixedValue {
            j,
            evaluation: mixed_from_samples(&samples, j)?,
        });
    }

    let fenchel = Evaluation::Applicable { value: total_first };
    let mut inequalities = vec![InequalityVerdict::new(
        "fenchel",
        "int k1 ds >= 2 pi".into(),
        FENCHEL_BOUND,
        &fenchel,
        tolerance,
    )];
    for m in &mixed {
        let j = m.j;
        inequalities.push(InequalityVerdict::new(
            &format!("mixed_j{j}"),
            format!("int sqrt(k{}^2 + k{}^2 + k{}^2) ds > 2 pi", j - 1, j, j + 1),
            FENCHEL_BOUND,
            &m.evaluation,
            tolerance,
        ));
    }
    if n % 2 == 0 {
        for m in mixed.iter().filter(|m| m.j % 2 == 0) {
            let j = m.j;
            inequalities.push(InequalityVerdict::new(
                &format!("sharp_j{j}"),
                format!(
                    "int sqrt(k{}^2 + k{}^2 + k{}^2) ds >= 2 sqrt(5) pi",
                    j - 1,
                    j,
                    j + 1
                ),
                sharp_bound(),
                &m.evaluation,
                tolerance,
            ));
        }
    }

    Ok(FunctionalReport {
        curve: CurveDescriptor {
            dimension: n,
            period: curve.period(),
            provenance: provenance.into(),
        },
        tolerance,
        total_first_curvature: total_first,
        mixed,
        inequalities,
        floors,
    })
}
