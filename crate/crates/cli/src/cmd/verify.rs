use anyhow::Result;
use clap::Args;
use curvkit::grassmann::{indicatrix_closed_form, SCAN_SAMPLES};
use curvkit::util::mean_and_std;
use curvkit::{
    closed_form_curvatures, curvature_profile, indicatrix_invariants, inequality_report, make_ccc,
    minimal_period, mixed_curvature_functional, osculating_indicatrix, total_mixed_curvature_exact,
    CccSpec, FunctionalReport, QuadratureConfig, Theorem2Report,
};
use serde::{Deserialize, Serialize};

use super::{Run, Status};
use crate::curve_args::SpecArgs;
use crate::output::Outputs;

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spec: SpecArgs,
    /// Tolerance for every identity
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Simpson subintervals over one period
    #[arg(long, default_value_t = 2048)]
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureCheck {
    pub closed_form: [f64; 3],
    pub max_deviation: f64,
    pub max_std: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalCheck {
    pub exact: f64,
    pub quadrature: f64,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantCheck {
    /// Closed-form `(ds~/dt, k~1, k~2, k~3)`.
    pub closed_form: [f64; 4],
    /// Sample means of the same quantities on the numeric indicatrix.
    pub numeric: [f64; 4],
    /// Largest deviation of speed, curvatures and position from the closed forms.
    pub max_deviation: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub spec: CccSpec,
    pub tolerance: f64,
    pub samples: usize,
    pub passed: bool,
    pub failures: Vec<String>,
    pub curvatures: CurvatureCheck,
    pub functional: FunctionalCheck,
    pub indicatrix: InvariantCheck,
    pub theorem2: Theorem2Report,
    pub inequalities: FunctionalReport,
}

pub fn report(spec: &CccSpec, tol: f64, samples: usize) -> Result<VerifyReport> {
    let q = QuadratureConfig::simpson(samples);
    q.validate()?;
    let curve = make_ccc(spec);
    let period = minimal_period(spec);
    let ts: Vec<f64> = (0..SCAN_SAMPLES)
        .map(|i| period * i as f64 / SCAN_SAMPLES as f64)
        .collect();

    let exact = closed_form_curvatures(spec);
    let mut ks: [Vec<f64>; 3] = Default::default();
    let mut max_dev: f64 = 0.0;
    for &t in &ts {
        let p = curvature_profile(&curve, t, 4)?;
        for i in 0..3 {
            max_dev = max_dev.max((p.k(i + 1) - exact[i]).abs());
            ks[i].push(p.k(i + 1));
        }
    }
    let max_std = ks.iter().map(|k| mean_and_std(k).1).fold(0.0, f64::max);
    let curvatures = CurvatureCheck {
        closed_form: exact,
        max_deviation: max_dev,
        max_std,
        passed: max_dev <= tol && max_std <= tol,
    };

    let exact_value = total_mixed_curvature_exact(spec);
    let quadrature = mixed_curvature_functional(&curve, 2, &q)?
        .value()
        .ok_or_else(|| anyhow::anyhow!("mixed functional is inapplicable"))?;
    let residual = (quadrature - exact_value).abs();
    let functional = FunctionalCheck {
        exact: exact_value,
        quadrature,
        residual,
        passed: residual <= tol,
    };

    let inv = indicatrix_invariants(spec);
    let closed = [inv.speed, inv.k1, inv.k2, inv.k3];
    let tilde = osculating_indicatrix(&curve)?;
    let mut sums = [0.0; 4];
    let mut dev: f64 = 0.0;
    for &t in &ts {
        let p = curvature_profile(&tilde, t, 4)?;
        let values = [p.speed, p.k(1), p.k(2), p.k(3)];
        for i in 0..4 {
            sums[i] += values[i];
            dev = dev.max((values[i] - closed[i]).abs());
        }
        for (a, b) in tilde
            .position(t)?
            .iter()
            .zip(indicatrix_closed_form(spec, t))
        {
            dev = dev.max((a - b).abs());
        }
    }
    let indicatrix = InvariantCheck {
        closed_form: closed,
        numeric: sums.map(|s| s / ts.len() as f64),
        max_deviation: dev,
        passed: dev <= tol,
    };

    let theorem2 = curvkit::grassmann::verify_theorem2_with(spec, tol, &q)?;
    let inequalities = inequality_report(&curve, &q, "ccc", tol)?;

    let mut failures = Vec::new();
    if !curvatures.passed {
        failures.push(format!(
            "curvatures: deviation {max_dev:e}, std {max_std:e} > {tol:e}"
        ));
    }
    if !functional.passed {
        failures.push(format!("functional: residual {residual:e} > {tol:e}"));
    }
    if !indicatrix.passed {
        failures.push(format!(
            "indicatrix invariants: deviation {dev:e} > {tol:e}"
        ));
    }
    for item in theorem2.items.iter().filter(|i| !i.passed) {
        failures.push(format!(
            "indicatrix item {} ({}): residual {:e} > {tol:e}",
            item.item, item.name, item.residual
        ));
    }
    for v in inequalities
        .inequalities
        .iter()
        .filter(|v| v.holds == Some(false))
    {
        failures.push(format!("inequality {}: margin {:?}", v.label, v.margin));
    }
    Ok(VerifyReport {
        spec: *spec,
        tolerance: tol,
        samples,
        passed: failures.is_empty(),
        failures,
        curvatures,
        functional,
        indicatrix,
        theorem2,
        inequalities,
    })
}

pub fn run(args: &VerifyArgs, out: &mut Outputs) -> Result<Run> {
    let spec = args.spec.build()?;
    let report = report(&spec, args.tol, args.samples)?;
    out.json("verify.json", &report)?;
    for f in &report.failures {
        eprintln!("FAIL {f}");
    }
    println!(
        "verify: {} (functional {}, tol {:e})",
        if report.passed { "pass" } else { "fail" },
        report.functional.quadrature,
        args.tol
    );
    let status = if report.passed {
        Status::Success
    } else {
        Status::Failure
    };
    Ok(Run::new(status).tolerance("identities", args.tol))
}
