//! Parallel driver and plain-text report for the property checks.

use std::fmt::Write as _;

use quantumness::properties::{run_trial, CheckConfig, RunSummary, TrialOutcome, PROPERTY_SLACK};
use quantumness::random::trial_seed;
use rayon::prelude::*;

use crate::error::CliError;

/// Runs trials on the rayon pool; outcomes are folded in trial order, so the
/// summary does not depend on scheduling.
pub fn run_parallel(config: &CheckConfig, seed: u64, trials: u64) -> Result<(RunSummary, Vec<TrialOutcome>), CliError> {
    config.validate()?;
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(config, t, trial_seed(seed, t)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut summary = RunSummary::new();
    for o in &outcomes {
        summary.record(o);
    }
    Ok((summary, outcomes))
}

pub struct ReportContext<'a> {
    pub command: &'a str,
    pub seed: u64,
    pub config: &'a CheckConfig,
}

pub fn format_report(ctx: &ReportContext<'_>, summary: &RunSummary, outcomes: &[TrialOutcome], verbose: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "command: {}", ctx.command);
    let _ = writeln!(s, "seed: {}", ctx.seed);
    let _ = writeln!(s, "norm: {}", ctx.config.spec);
    let _ = writeln!(s, "dim: {}", ctx.config.dim);
    let _ = writeln!(s, "members: {}", ctx.config.members);
    let _ = writeln!(s, "trials: {}", summary.trials);
    let _ = writeln!(s, "slack: {PROPERTY_SLACK:e}");
    let _ = writeln!(s, "{:<26}{:>8}{:>8}  worst_excess", "property", "passed", "failed");
    for t in &summary.tallies {
        let _ = writeln!(
            s,
            "{:<26}{:>8}{:>8}  {:.3e}",
            t.property.name(),
            t.passed,
            t.failed,
            t.worst_excess
        );
    }
    let _ = writeln!(s, "worst slack: {:.3e}", summary.worst_excess());
    if verbose {
        for o in outcomes {
            let _ = writeln!(
                s,
                "trial {} sub-seed {} {}",
                o.trial,
                o.sub_seed,
                if o.passed() { "pass" } else { "FAIL" }
            );
        }
    }
    for (trial, sub_seed) in &summary.failures {
        let _ = writeln!(s, "FAIL trial {trial} sub-seed {sub_seed} (replay with --replay {sub_seed})");
        if let Some(o) = outcomes.iter().find(|o| o.trial == *trial) {
            for c in o.checks.iter().filter(|c| !c.passed) {
                let _ = writeln!(s, "  {} excess {:e}", c.property, c.excess);
            }
        }
    }
    let _ = writeln!(s, "result: {}", if summary.all_passed() { "PASS" } else { "FAIL" });
    s
}
