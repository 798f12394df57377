//! The sweep driver: a corpus of groups, a subgroup policy, and the check
//! battery, run deterministically with per-item parallelism.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use envelope_core::harness::{
    run_check, subgroups_for_policy, CheckConfig, CheckId, CheckReport, Pair, SubgroupPolicy,
    Verdict,
};

use crate::report::check_report_json;
use crate::resolve::{effective_order_cap, Resolver};
use crate::spec::GroupSpec;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyConfig {
    All,
    Representatives,
    Random { n: u32, seed: u64 },
}

impl PolicyConfig {
    pub fn parse(text: &str) -> Result<PolicyConfig> {
        match text {
            "all" => Ok(PolicyConfig::All),
            "representatives" => Ok(PolicyConfig::Representatives),
            other => {
                let parts: Vec<&str> = other.split(':').collect();
                match parts.as_slice() {
                    ["random", n, seed] => Ok(PolicyConfig::Random {
                        n: n.parse().context("random policy count")?,
                        seed: seed.parse().context("random policy seed")?,
                    }),
                    _ => bail!(
                        "unknown policy {other:?}; use all, representatives, or random:N:SEED"
                    ),
                }
            }
        }
    }
}

/// One reproducible run: corpus, policy, checks, seeds, output.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// `None` selects the built-in default corpus.
    pub corpus: Option<Vec<GroupSpec>>,
    pub subgroup_policy: PolicyConfig,
    /// `None` selects the whole battery.
    pub checks: Option<Vec<String>>,
    pub probe_depth: u32,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
    pub order_cap: usize,
    /// Include per-check wall times in the body (breaks byte-identical
    /// reproducibility, off by default).
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus: None,
            subgroup_policy: PolicyConfig::Representatives,
            checks: None,
            probe_depth: 5,
            seed: 42,
            output_path: None,
            order_cap: effective_order_cap(),
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn resolved_checks(&self) -> Result<Vec<CheckId>> {
        match &self.checks {
            None => Ok(CheckId::ALL.to_vec()),
            Some(names) => names
                .iter()
                .map(|n| CheckId::parse(n).ok_or_else(|| anyhow::anyhow!("unknown check id {n:?}")))
                .collect(),
        }
    }

    pub fn resolved_corpus(&self) -> Vec<GroupSpec> {
        self.corpus.clone().unwrap_or_else(default_corpus)
    }

    /// Validation that should reject a run before it starts.
    pub fn validate(&self) -> Result<()> {
        self.resolved_checks()?;
        if self.resolved_corpus().is_empty() {
            // an empty corpus is legal: the sweep is empty and exits 0
        }
        Ok(())
    }
}

/// The default corpus: every catalog group of order at most 64, plus the
/// symmetric group on 5 points (a carrier of non-solvable subgroups), so
/// that each check's precondition is met and unmet somewhere.
pub fn default_corpus() -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for n in 1..=64 {
        out.push(GroupSpec::catalog("C", n));
    }
    for n in 2..=32 {
        out.push(GroupSpec::catalog("D", 2 * n));
    }
    for n in [8, 16, 32, 64] {
        out.push(GroupSpec::catalog("Q", n));
    }
    out.push(GroupSpec::catalog("S", 3));
    out.push(GroupSpec::catalog("S", 4));
    out.push(GroupSpec::catalog("S", 5));
    out.push(GroupSpec::catalog("A", 4));
    out.push(GroupSpec::catalog("A", 5));
    out.push(GroupSpec::catalog("Heis", 3));
    out
}

/// Runs one check, turning a per-item panic into a failed report instead
/// of aborting the whole sweep.
fn run_item(check: CheckId, pair: &Pair<'_>, cfg: &CheckConfig) -> CheckReport {
    let outcome =
        std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run_check(check, pair, cfg)));
    outcome.unwrap_or_else(|payload| {
        let message = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "check panicked".to_string());
        CheckReport {
            check_id: check,
            group_name: pair.group_name.clone(),
            subgroup_generators: Vec::new(),
            parameters: Default::default(),
            verdict: Verdict::Fail,
            witness: Some(envelope_core::harness::Witness {
                relation: format!("check aborted: {message}"),
                elements: Vec::new(),
            }),
            runtime_ms: 0.0,
        }
    })
}

pub struct SweepOutcome {
    /// Body lines, in deterministic (corpus, subgroup, check) order.
    pub lines: Vec<Value>,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub groups: usize,
    pub pairs: usize,
}

/// Resolves the whole corpus up front. Failures here are configuration
/// errors: a corpus entry must be resolvable within the order cap.
pub fn resolve_corpus(
    config: &RunConfig,
) -> Result<Vec<(std::sync::Arc<envelope_core::FiniteGroup>, String)>> {
    let mut resolver = Resolver::new(config.order_cap);
    config
        .resolved_corpus()
        .iter()
        .map(|spec| {
            let group = resolver
                .resolve(spec)
                .with_context(|| format!("corpus entry {spec}"))?;
            Ok((group, spec.display_name()))
        })
        .collect()
}

/// Runs the sweep. Items execute in parallel; reports are merged in corpus
/// order, then subgroup order, then check order, independent of scheduling.
pub fn run_sweep(config: &RunConfig) -> Result<SweepOutcome> {
    run_sweep_on(config, &resolve_corpus(config)?)
}

pub fn run_sweep_on(
    config: &RunConfig,
    corpus: &[(std::sync::Arc<envelope_core::FiniteGroup>, String)],
) -> Result<SweepOutcome> {
    let checks = config.resolved_checks()?;
    let cfg = CheckConfig {
        probe_depth: config.probe_depth,
        ..CheckConfig::default()
    };

    let mut lines = Vec::new();
    let (mut pass, mut fail, mut skipped) = (0usize, 0usize, 0usize);
    let mut pairs_total = 0usize;

    for (group_index, (group, name)) in corpus.iter().enumerate() {
        let policy = match &config.subgroup_policy {
            PolicyConfig::All => SubgroupPolicy::All,
            PolicyConfig::Representatives => SubgroupPolicy::Representatives,
            PolicyConfig::Random { n, seed } => SubgroupPolicy::Random {
                count: *n,
                seed: seed.wrapping_add(group_index as u64),
            },
        };
        let subgroups = subgroups_for_policy(group, &policy);
        pairs_total += subgroups.len();

        let reports: Vec<CheckReport> = subgroups
            .par_iter()
            .flat_map_iter(|h| {
                let pair = Pair::new(group, name.clone(), h.clone());
                let cfg = &cfg;
                checks.iter().map(move |&check| {
                    let start = Instant::now();
                    let mut report = run_item(check, &pair, cfg);
                    report.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
                    report
                })
            })
            .collect();

        for report in reports {
            match &report.verdict {
                Verdict::Pass => pass += 1,
                Verdict::Fail => fail += 1,
                Verdict::Skipped(_) => skipped += 1,
            }
            lines.push(check_report_json(&report, config.timings));
        }
    }

    Ok(SweepOutcome {
        lines,
        pass,
        fail,
        skipped,
        groups: corpus.len(),
        pairs: pairs_total,
    })
}
