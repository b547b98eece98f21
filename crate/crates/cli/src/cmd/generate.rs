use anyhow::{bail, Result};
use clap::Args;
use curvkit::curvature_profile;
use serde::Serialize;

use super::{Run, Status};
use crate::curve_args::{BuiltCurve, CurveArgs};
use crate::output::{num, Outputs};

pub const COLUMNS: [&str; 9] = ["t", "x1", "x2", "x3", "x4", "speed", "k1", "k2", "k3"];

#[derive(Args, Debug, Clone, Serialize)]
pub struct GenerateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub curve: CurveArgs,
    /// Sample points over one period
    #[arg(long, default_value_t = 1024)]
    pub samples: usize,
}

pub fn run(args: &GenerateArgs, out: &mut Outputs) -> Result<Run> {
    if args.samples == 0 {
        bail!("samples must be positive");
    }
    let built = args.curve.build()?;
    let curve = built.curve();
    if curve.dimension() != 4 {
        bail!("generate expects a curve in R^4");
    }
    let period = curve.period();
    let mut rows = Vec::with_capacity(args.samples);
    for i in 0..args.samples {
        let t = period * i as f64 / args.samples as f64;
        let x = curve.position(t)?;
        let p = curvature_profile(curve, t, 4)?;
        let mut row = vec![num(t)];
        row.extend(x.iter().map(|v| num(*v)));
        row.push(num(p.speed));
        row.extend((1..=3).map(|k| num(p.k(k))));
        rows.push(row);
    }
    out.csv("curve.csv", &COLUMNS, &rows)?;
    match &built {
        BuiltCurve::Ccc(spec, _) => out.json("spec.json", spec)?,
        BuiltCurve::Fourier(spec, _) => out.json("spec.json", spec)?,
    };
    println!("wrote {} samples over period {}", args.samples, period);
    Ok(Run::new(Status::Success))
}
