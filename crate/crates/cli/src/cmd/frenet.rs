use anyhow::{bail, Result};
use clap::Args;
use curvkit::frenet::orthonormality_defect;
use curvkit::{closed_form_curvatures, frenet_at, FrenetApparatus};
use serde::{Deserialize, Serialize};

use super::{Run, Status};
use crate::curve_args::CurveArgs;
use crate::output::Outputs;

#[derive(Args, Debug, Clone, Serialize)]
pub struct FrenetArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub curve: CurveArgs,
    /// Parameter values (comma-separated); defaults to a uniform grid
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub t: Vec<f64>,
    /// Uniform grid size over one period when --t is absent
    #[arg(long, default_value_t = 16)]
    pub samples: usize,
    /// Number of frame vectors (defaults to the dimension)
    #[arg(long)]
    pub levels: Option<usize>,
    /// Allowed deviation from the closed-form curvatures
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrenetReport {
    pub curve: serde_json::Value,
    pub mode: String,
    pub levels: usize,
    pub points: Vec<FrenetApparatus>,
    pub max_orthonormality_defect: f64,
    /// Closed-form `(k1, k2, k3)` for constant-curvature curves.
    pub closed_form: Option<Vec<f64>>,
    pub max_closed_form_deviation: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn run(args: &FrenetArgs, out: &mut Outputs) -> Result<Run> {
    let built = args.curve.build()?;
    let curve = built.curve();
    let levels = args.levels.unwrap_or(curve.dimension());
    if levels < 1 || levels > curve.dimension() {
        bail!("levels must be between 1 and {}", curve.dimension());
    }
    let ts: Vec<f64> = if args.t.is_empty() {
        if args.samples == 0 {
            bail!("samples must be positive");
        }
        (0..args.samples)
            .map(|i| curve.period() * i as f64 / args.samples as f64)
            .collect()
    } else {
        args.t.clone()
    };
    let points = ts
        .iter()
        .map(|&t| frenet_at(curve, t, levels))
        .collect::<curvkit::Result<Vec<_>>>()?;
    let max_defect = points
        .iter()
        .map(|p| orthonormality_defect(&p.frame))
        .fold(0.0, f64::max);

    let closed_form = built.ccc().map(|s| closed_form_curvatures(s).to_vec());
    let max_dev = closed_form.as_ref().map(|exact| {
        points
            .iter()
            .flat_map(|p| p.curvatures.iter().zip(exact).map(|(k, e)| (k - e).abs()))
            .fold(0.0, f64::max)
    });
    let passed = max_defect <= 1e-10 && max_dev.is_none_or(|d| d <= args.tol);
    let report = FrenetReport {
        curve: built.describe(),
        mode: if curve.is_analytic() {
            "analytic"
        } else {
            "finite_difference"
        }
        .into(),
        levels,
        points,
        max_orthonormality_defect: max_defect,
        closed_form,
        max_closed_form_deviation: max_dev,
        tolerance: args.tol,
        passed,
    };
    out.json("frenet.json", &report)?;
    match max_dev {
        Some(d) => println!(
            "{} frames, max deviation from closed form {d:e}",
            report.points.len()
        ),
        None => println!("{} frames", report.points.len()),
    }
    if !passed {
        eprintln!("FAIL frenet: orthonormality defect {max_defect:e}, closed-form deviation {max_dev:?} (tol {:e})", args.tol);
    }
    Ok(Run::new(if passed {
        Status::Success
    } else {
        Status::Failure
    })
    .tolerance("curvature", args.tol))
}
