use anyhow::{bail, Result};
use clap::Args;
use curvkit::grassmann::{indicatrix_closed_form, indicatrix_normal_form, quadric_residual};
use curvkit::{
    curvature_profile, indicatrix_invariants, osculating_indicatrix, IndicatrixInvariants,
};
use serde::{Deserialize, Serialize};

use super::{Run, Status};
use crate::curve_args::CurveArgs;
use crate::output::{num, Outputs};

pub const COLUMNS: [&str; 13] = [
    "t", "p12", "p13", "p14", "p23", "p24", "p34", "norm", "quadric", "speed", "k1", "k2", "k3",
];

#[derive(Args, Debug, Clone, Serialize)]
pub struct IndicatrixArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub curve: CurveArgs,
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    /// Allowed deviation from the closed forms and the Plücker identities
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    pub amplitudes: [f64; 2],
    pub frequencies: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatrixReport {
    pub curve: serde_json::Value,
    pub samples: usize,
    pub max_quadric_residual: f64,
    pub max_norm_deviation: f64,
    /// Means of the sampled speed and curvatures of the indicatrix.
    pub numeric: [f64; 4],
    pub closed_form: Option<IndicatrixInvariants>,
    pub normal_form: Option<NormalForm>,
    /// Largest deviation of the samples from the closed-form position,
    /// speed and curvatures.
    pub max_closed_form_deviation: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn run(args: &IndicatrixArgs, out: &mut Outputs) -> Result<Run> {
    if args.samples == 0 {
        bail!("samples must be positive");
    }
    let built = args.curve.build()?;
    let tilde = osculating_indicatrix(built.curve())?;
    let period = tilde.period();
    let closed = built.ccc().map(indicatrix_invariants);

    let mut rows = Vec::with_capacity(args.samples);
    let mut max_quadric: f64 = 0.0;
    let mut max_norm: f64 = 0.0;
    let mut max_dev: f64 = 0.0;
    let mut sums = [0.0; 4];
    for i in 0..args.samples {
        let t = period * i as f64 / args.samples as f64;
        let x = tilde.position(t)?;
        let p: [f64; 6] = x.clone().try_into().expect("indicatrix lives in R^6");
        let norm = p.iter().map(|v| v * v).sum::<f64>().sqrt();
        let quadric = quadric_residual(&p);
        let prof = curvature_profile(&tilde, t, 4)?;
        let values = [prof.speed, prof.k(1), prof.k(2), prof.k(3)];
        max_quadric = max_quadric.max(quadric.abs());
        max_norm = max_norm.max((norm - 1.0).abs());
        for (s, v) in sums.iter_mut().zip(values) {
            *s += v;
        }
        if let (Some(spec), Some(inv)) = (built.ccc(), &closed) {
            let exact = indicatrix_closed_form(spec, t);
            for (a, b) in x.iter().zip(exact) {
                max_dev = max_dev.max((a - b).abs());
            }
            for (a, b) in values.iter().zip([inv.speed, inv.k1, inv.k2, inv.k3]) {
                max_dev = max_dev.max((a - b).abs());
            }
        }
        let mut row = vec![num(t)];
        row.extend(x.iter().map(|v| num(*v)));
        row.extend([norm, quadric].map(num));
        row.extend(values.map(num));
        rows.push(row);
    }
    let normal_form = built.ccc().map(|s| {
        let (amplitudes, frequencies) =
            indicatrix_normal_form(s.a1(), s.a2(), s.alpha1(), s.alpha2());
        NormalForm {
            amplitudes,
            frequencies,
        }
    });
    let max_closed = closed.map(|_| max_dev);
    let passed =
        max_quadric <= args.tol && max_norm <= args.tol && max_closed.is_none_or(|d| d <= args.tol);
    let report = IndicatrixReport {
        curve: built.describe(),
        samples: args.samples,
        max_quadric_residual: max_quadric,
        max_norm_deviation: max_norm,
        numeric: sums.map(|s| s / args.samples as f64),
        closed_form: closed,
        normal_form,
        max_closed_form_deviation: max_closed,
        tolerance: args.tol,
        passed,
    };
    out.csv("indicatrix.csv", &COLUMNS, &rows)?;
    out.json("indicatrix.json", &report)?;
    println!(
        "indicatrix: speed {}, k~ ({}, {}, {}), max quadric residual {max_quadric:e}",
        report.numeric[0], report.numeric[1], report.numeric[2], report.numeric[3]
    );
    if !passed {
        eprintln!(
            "FAIL indicatrix: quadric {max_quadric:e}, norm {max_norm:e}, closed form {max_closed:?} (tol {:e})",
            args.tol
        );
    }
    Ok(Run::new(if passed {
        Status::Success
    } else {
        Status::Failure
    })
    .tolerance("identities", args.tol))
}
