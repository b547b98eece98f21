use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use curvkit::explorer::{evaluate_candidate, explore};
use curvkit::{
    make_fourier_curve, total_first_curvature, ExplorationResult, ExplorerConfig, InitialCurve,
    PenaltyWeights, QuadratureConfig,
};
use serde::{Deserialize, Serialize};

use super::{Run, Status};
use crate::output::{num, Outputs};

pub const TRACE_COLUMNS: [&str; 3] = ["iteration", "evaluations", "objective"];

#[derive(Args, Debug, Clone, Serialize)]
pub struct ExploreArgs {
    /// Exploration config (JSON)
    #[arg(long, value_name = "FILE")]
    pub config: PathBuf,
}

/// On-disk exploration config. Omitted fields take the defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExploreConfig {
    pub harmonics: usize,
    pub initial: InitialCurve,
    pub budget: usize,
    pub seed: u64,
    pub restarts: usize,
    pub initial_step: f64,
    pub tolerance: f64,
    pub penalty: PenaltyWeights,
    pub samples: usize,
    pub search_tolerance: f64,
    pub validation_samples: usize,
    pub violation_tolerance: f64,
}

impl Default for ExploreConfig {
    fn default() -> Self {
        let c = ExplorerConfig::default();
        Self {
            harmonics: 4,
            initial: InitialCurve::Ccc {
                a1: 1.0,
                a2: 1.0,
                m1: 1,
                m2: 2,
                perturbation: 0.1,
            },
            budget: c.budget,
            seed: c.seed,
            restarts: c.restarts,
            initial_step: c.initial_step,
            tolerance: c.tolerance,
            penalty: c.penalty,
            samples: c.samples,
            search_tolerance: c.search_tolerance,
            validation_samples: c.validation_samples,
            violation_tolerance: c.violation_tolerance,
        }
    }
}

impl ExploreConfig {
    pub fn explorer(&self) -> ExplorerConfig {
        ExplorerConfig {
            budget: self.budget,
            seed: self.seed,
            restarts: self.restarts,
            initial_step: self.initial_step,
            tolerance: self.tolerance,
            penalty: self.penalty,
            samples: self.samples,
            search_tolerance: self.search_tolerance,
            validation_samples: self.validation_samples,
            violation_tolerance: self.violation_tolerance,
        }
    }
}

/// Independent re-evaluation of the best curve at the converged resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Revalidation {
    pub samples: usize,
    pub value: f64,
    pub min_k1: f64,
    pub min_k2: f64,
    pub total_first_curvature: f64,
    pub fenchel_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExploreReport {
    pub config: ExploreConfig,
    pub result: ExplorationResult,
    pub revalidation: Revalidation,
    pub finding: bool,
}

pub fn run(args: &ExploreArgs, out: &mut Outputs) -> Result<Run> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let config: ExploreConfig = serde_json::from_str(&text)
        .with_context(|| format!("parsing config {}", args.config.display()))?;
    let explorer = config.explorer();
    let result = explore(&config.initial, config.harmonics, &explorer)?;

    let q = QuadratureConfig::simpson(result.validation_samples);
    let (value, min_k1, min_k2) = evaluate_candidate(&result.best_spec, &q)?;
    let fenchel = total_first_curvature(&make_fourier_curve(&result.best_spec)?, &q)?;
    let revalidation = Revalidation {
        samples: result.validation_samples,
        value,
        min_k1,
        min_k2,
        total_first_curvature: fenchel,
        fenchel_holds: fenchel >= 2.0 * std::f64::consts::PI - 1e-6,
    };
    let finding = result.verdict.conjecture_violation;

    let rows: Vec<Vec<String>> = result
        .trace
        .iter()
        .map(|e| {
            vec![
                e.iteration.to_string(),
                e.evaluations.to_string(),
                num(e.objective),
            ]
        })
        .collect();
    out.csv("explore_trace.csv", &TRACE_COLUMNS, &rows)?;
    let report = ExploreReport {
        config,
        result,
        revalidation,
        finding,
    };
    out.json("explore.json", &report)?;

    let r = &report.result;
    println!(
        "explore: initial {} best {} after {} evaluations (converged: {})",
        r.initial_value, r.best_value, r.evaluations, r.converged
    );
    if finding {
        eprintln!(
            "FINDING: feasible curve with value {} below {} (margin {:e})",
            r.best_value, r.verdict.sharp_bound, r.verdict.sharp_margin
        );
    }
    let status = if finding {
        Status::Finding
    } else {
        Status::Success
    };
    let mut run = Run::new(status)
        .tolerance("violation", report.config.violation_tolerance)
        .tolerance("search", report.config.search_tolerance);
    run.seed = Some(report.config.seed);
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_explorer() {
        assert_eq!(
            ExploreConfig::default().explorer(),
            ExplorerConfig::default()
        );
    }

    #[test]
    fn bundled_config_is_the_default() {
        let text = include_str!("../../configs/default.json");
        let config: ExploreConfig = serde_json::from_str(text).unwrap();
        assert_eq!(config, ExploreConfig::default());
    }
}
