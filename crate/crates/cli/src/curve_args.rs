use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use curvkit::explorer::{make_fourier_curve, FourierCurveSpec};
use curvkit::{make_ccc, CccSpec, ParametricCurve};
use serde::Serialize;

/// A constant-curvature curve `(a1 cos α1 t, a1 sin α1 t, a2 cos α2 t, a2 sin α2 t)`
/// with `α_i = scale * m_i`.
#[derive(Args, Debug, Clone, Serialize)]
pub struct SpecArgs {
    /// Read the curve parameters from a JSON file instead of the flags
    #[arg(long, value_name = "FILE", conflicts_with_all = ["a1", "a2", "m1", "m2", "scale"])]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a1: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a2: f64,
    #[arg(long, default_value_t = 1)]
    pub m1: u64,
    #[arg(long, default_value_t = 2)]
    pub m2: u64,
    /// Frequency scale: α_i = scale * m_i
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub scale: f64,
}

impl SpecArgs {
    pub fn build(&self) -> Result<CccSpec> {
        match &self.spec {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                serde_json::from_str(&text)
                    .with_context(|| format!("parsing spec {}", path.display()))
            }
            None => Ok(CccSpec::new(
                self.a1, self.a2, self.m1, self.m2, self.scale,
            )?),
        }
    }
}

/// Either a constant-curvature spec or a Fourier curve file.
#[derive(Args, Debug, Clone, Serialize)]
pub struct CurveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub ccc: SpecArgs,
    /// Use a Fourier curve (JSON with harmonics, cos, sin) instead
    #[arg(long, value_name = "FILE", conflicts_with_all = ["spec", "a1", "a2", "m1", "m2", "scale"])]
    pub fourier: Option<PathBuf>,
    /// Differentiate the position by finite differences with this step
    #[arg(long, value_name = "H")]
    pub fd_step: Option<f64>,
}

pub enum BuiltCurve {
    Ccc(CccSpec, ParametricCurve),
    Fourier(FourierCurveSpec, ParametricCurve),
}

impl BuiltCurve {
    pub fn curve(&self) -> &ParametricCurve {
        match self {
            BuiltCurve::Ccc(_, c) | BuiltCurve::Fourier(_, c) => c,
        }
    }

    pub fn ccc(&self) -> Option<&CccSpec> {
        match self {
            BuiltCurve::Ccc(s, _) => Some(s),
            BuiltCurve::Fourier(..) => None,
        }
    }

    pub fn describe(&self) -> serde_json::Value {
        match self {
            BuiltCurve::Ccc(s, _) => serde_json::json!({ "kind": "ccc", "spec": s }),
            BuiltCurve::Fourier(s, _) => serde_json::json!({ "kind": "fourier", "spec": s }),
        }
    }
}

impl CurveArgs {
    pub fn build(&self) -> Result<BuiltCurve> {
        let built = match &self.fourier {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let spec: FourierCurveSpec = serde_json::from_str(&text)
                    .with_context(|| format!("parsing Fourier curve {}", path.display()))?;
                let curve = make_fourier_curve(&spec)?;
                BuiltCurve::Fourier(spec, curve)
            }
            None => {
                let spec = self.ccc.build()?;
                let curve = make_ccc(&spec);
                BuiltCurve::Ccc(spec, curve)
            }
        };
        match self.fd_step {
            None => Ok(built),
            Some(h) => Ok(match built {
                BuiltCurve::Ccc(s, c) => BuiltCurve::Ccc(s, c.to_finite_difference(h)?),
                BuiltCurve::Fourier(s, c) => BuiltCurve::Fourier(s, c.to_finite_difference(h)?),
            }),
        }
    }
}
