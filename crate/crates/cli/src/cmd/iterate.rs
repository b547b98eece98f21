use std::f64::consts::SQRT_2;

use anyhow::Result;
use clap::Args;
use curvkit::grassmann::iterate_transform_with;
use curvkit::{IterationReport, QuadratureConfig};
use serde::Serialize;

use super::{Run, Status};
use crate::curve_args::SpecArgs;
use crate::output::{num, opt, Outputs};

pub const COLUMNS: [&str; 8] = [
    "step",
    "m1",
    "m2",
    "value",
    "ratio",
    "minimal_period_value",
    "pipeline_value",
    "status",
];

#[derive(Args, Debug, Clone, Serialize)]
pub struct IterateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spec: SpecArgs,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=64))]
    pub steps: u64,
    /// Allowed deviation of each ratio from sqrt(2)
    #[arg(long, default_value_t = 1e-6)]
    pub ratio_tol: f64,
    /// Allowed relative deviation of the pipeline cross-check
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 2048)]
    pub samples: usize,
}

pub fn run(args: &IterateArgs, out: &mut Outputs) -> Result<Run> {
    let spec = args.spec.build()?;
    let q = QuadratureConfig::simpson(args.samples);
    let report: IterationReport = iterate_transform_with(&spec, args.steps as usize, &q)?;

    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for s in &report.steps {
        let ratio_ok = s.ratio.is_none_or(|r| (r - SQRT_2).abs() <= args.ratio_tol);
        let pipeline_ok = s
            .pipeline_value
            .is_none_or(|p| (p - s.value).abs() <= args.tol * s.value);
        if !ratio_ok {
            failures.push(format!(
                "step {}: ratio {:?} differs from sqrt(2)",
                s.step, s.ratio
            ));
        }
        if !pipeline_ok {
            failures.push(format!(
                "step {}: pipeline value {:?} differs from {}",
                s.step, s.pipeline_value, s.value
            ));
        }
        rows.push(vec![
            s.step.to_string(),
            s.winding.0.to_string(),
            s.winding.1.to_string(),
            num(s.value),
            opt(s.ratio),
            num(s.minimal_period_value),
            opt(s.pipeline_value),
            if ratio_ok && pipeline_ok {
                "ok"
            } else {
                "deviates"
            }
            .to_string(),
        ]);
    }
    if let Some(h) = &report.halted {
        failures.push(format!("halted at step {}: {}", h.step, h.reason));
        rows.push(vec![
            h.step.to_string(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            "halted".to_string(),
        ]);
    }
    out.csv("iterate.csv", &COLUMNS, &rows)?;
    out.json("iterate.json", &report)?;
    for s in &report.steps {
        println!(
            "step {} ({}, {}): {}",
            s.step, s.winding.0, s.winding.1, s.value
        );
    }
    for f in &failures {
        eprintln!("FAIL {f}");
    }
    let status = if failures.is_empty() {
        Status::Success
    } else {
        Status::Failure
    };
    Ok(Run::new(status)
        .tolerance("ratio", args.ratio_tol)
        .tolerance("pipeline", args.tol))
}
