//! `verify`: runs a suite of acceptance checks and assembles the JSON report.

use std::time::Instant;

use dunkl::harness::{run_check, CheckResult, HarnessConfig, Suite};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const REPORT_SCHEMA: &str = "verify/v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    #[serde(flatten)]
    pub result: CheckResult,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub suite: Suite,
    pub pass: bool,
    pub checks: Vec<CheckEntry>,
    pub harness: HarnessConfig,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_seconds: Option<f64>,
}

/// Runs every check of `suite`; an error inside a check is recorded as a
/// failing entry. Wall times are included only with `timings`, so that
/// reports are otherwise byte-identical across runs.
pub fn run_suite(cfg: &RunConfig, suite: Suite, timings: bool, mut progress: impl FnMut(&CheckResult)) -> SuiteReport {
    let harness = cfg.harness_config();
    let start = Instant::now();
    let mut checks = Vec::new();
    for id in suite.criteria() {
        let t0 = Instant::now();
        let result = run_check(id, &harness).unwrap_or_else(|e| CheckResult {
            id,
            name: format!("error: {e}"),
            pass: false,
            tolerance: f64::NAN,
            observed: f64::NAN,
            metrics: Default::default(),
            seed: None,
        });
        progress(&result);
        checks.push(CheckEntry {
            result,
            wall_seconds: timings.then(|| t0.elapsed().as_secs_f64()),
        });
    }
    SuiteReport {
        schema: REPORT_SCHEMA.into(),
        suite,
        pass: checks.iter().all(|c| c.result.pass),
        checks,
        harness,
        wall_seconds: timings.then(|| start.elapsed().as_secs_f64()),
    }
}
