use anyhow::Result;
use clap::Args;
use curvkit::ccc::{admissible_values, AdmissibleValue};
use curvkit::minimal_admissible_value;
use serde::{Deserialize, Serialize};

use super::{Run, Status};
use crate::output::Outputs;

#[derive(Args, Debug, Clone, Serialize)]
pub struct MinvalArgs {
    /// Largest winding number enumerated
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(3..=100_000))]
    pub bound: u64,
    /// How many of the smallest values to list
    #[arg(long, default_value_t = 5)]
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinvalReport {
    pub bound: u64,
    pub minimum: AdmissibleValue,
    pub smallest: Vec<AdmissibleValue>,
}

pub fn run(args: &MinvalArgs, out: &mut Outputs) -> Result<Run> {
    let minimum = minimal_admissible_value(args.bound)?;
    let smallest = admissible_values(args.bound)
        .into_iter()
        .take(args.count)
        .collect();
    let report = MinvalReport {
        bound: args.bound,
        minimum,
        smallest,
    };
    out.json("minval.json", &report)?;
    println!(
        "minimum {} (sum of squares {}) at {:?}",
        report.minimum.value, report.minimum.sum_of_squares, report.minimum.witnesses
    );
    Ok(Run::new(Status::Success))
}
