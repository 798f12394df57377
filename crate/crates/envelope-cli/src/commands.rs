//! Command implementations behind the CLI surface.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use envelope_core::gl2::{audit_claimed_chain, cross_validate_generator_reduction, AuditOptions};
use envelope_core::group::centralizer_lattice;
use envelope_core::harness::Verdict;
use envelope_core::{
    envelope_chain, iterated_centralizer_chain, upper_central_series, FiniteGroup, SmallOrdinal,
    Subgroup,
};

use crate::report::{
    audit_report_json, chain_record_json, emit, header_json, render_full, summary_json,
};
use crate::resolve::{save_cayley_file, Resolver};
use crate::spec::GroupSpec;
use crate::sweep::RunConfig;

/// Splits a subgroup selector on top-level commas: each token is an element
/// label, or `#id` for a raw element id. The named elements generate the
/// subgroup.
pub fn parse_selector(group: &FiniteGroup, selector: &str) -> Result<Vec<usize>> {
    let mut ids = Vec::new();
    let mut depth = 0usize;
    let mut token = String::new();
    let mut tokens = Vec::new();
    for c in selector.chars() {
        match c {
            '(' => {
                depth += 1;
                token.push(c);
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| anyhow!("unbalanced parenthesis in selector {selector:?}"))?;
                token.push(c);
            }
            ',' if depth == 0 => {
                tokens.push(core::mem::take(&mut token));
            }
            _ => token.push(c),
        }
    }
    tokens.push(token);
    for raw in tokens {
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(id_text) = t.strip_prefix('#') {
            let id: usize = id_text
                .parse()
                .with_context(|| format!("bad element id {t:?}"))?;
            if id >= group.order() {
                bail!(
                    "element id {id} out of range for a group of order {}",
                    group.order()
                );
            }
            ids.push(id);
        } else {
            let id = group
                .element_by_label(t)
                .ok_or_else(|| anyhow!("no element labeled {t:?} in this group"))?;
            ids.push(id);
        }
    }
    Ok(ids)
}

fn resolve_one(spec_text: &str, order_cap: usize) -> Result<(std::sync::Arc<FiniteGroup>, String)> {
    let spec = GroupSpec::parse(spec_text)?;
    let mut resolver = Resolver::new(order_cap);
    let group = resolver.resolve(&spec)?;
    Ok((group, spec.display_name()))
}

/// `envelope group`: inspect a group; optionally persist it as a Cayley
/// table file.
pub fn cmd_group(
    spec_text: &str,
    save_cayley: Option<&Path>,
    out: Option<&Path>,
    order_cap: usize,
) -> Result<i32> {
    let (group, name) = resolve_one(spec_text, order_cap)?;
    if let Some(path) = save_cayley {
        save_cayley_file(&group, path)?;
    }
    let (ucs, class) = upper_central_series(&group);
    let (derived, solvable) = group.derived_series();
    let value = json!({
        "name": name,
        "order": group.order(),
        "abelian": group.is_abelian(),
        "center": group.center().labels(),
        "nilpotency_class": class,
        "hypercenter_order": ucs.last_recorded().1.order(),
        "derived_series_orders": derived.iter().map(Subgroup::order).collect::<Vec<_>>(),
        "solvable": solvable,
    });
    emit(out, &format!("{value}\n"))?;
    Ok(0)
}

/// Which chains `envelope chain` reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ChainKind {
    Envelope,
    Centralizer,
    Central,
    All,
}

/// `envelope chain`: the three chains of one (group, subgroup) pair.
pub fn cmd_chain(
    spec_text: &str,
    selector: &str,
    max_text: &str,
    kind: ChainKind,
    out: Option<&Path>,
    order_cap: usize,
) -> Result<i32> {
    let (group, name) = resolve_one(spec_text, order_cap)?;
    let gens = parse_selector(&group, selector)?;
    let subgroup = group
        .generated_subgroup(&gens)
        .map_err(|e| anyhow!("{e}"))?;
    let max: SmallOrdinal = max_text
        .parse()
        .map_err(|e| anyhow!("bad --max ordinal literal: {e}"))?;

    let mut chains = serde_json::Map::new();
    if matches!(kind, ChainKind::Envelope | ChainKind::All) {
        let record = envelope_chain(&group, &subgroup, max).map_err(|e| anyhow!("{e}"))?;
        chains.insert("envelope".into(), chain_record_json(&record));
    }
    if matches!(kind, ChainKind::Centralizer | ChainKind::All) {
        let record =
            iterated_centralizer_chain(&group, &subgroup, max).map_err(|e| anyhow!("{e}"))?;
        chains.insert("iterated_centralizer".into(), chain_record_json(&record));
    }
    if matches!(kind, ChainKind::Central | ChainKind::All) {
        let (record, class) = upper_central_series(&group);
        chains.insert("upper_central_series".into(), chain_record_json(&record));
        chains.insert("nilpotency_class".into(), json!(class));
    }
    let value = json!({
        "group": name,
        "subgroup_generators": gens.iter().map(|&i| group.label(i)).collect::<Vec<_>>(),
        "subgroup_order": subgroup.order(),
        "max": max.to_string(),
        "chains": Value::Object(chains),
    });
    emit(out, &format!("{value}\n"))?;
    Ok(0)
}

/// `envelope sweep`: run the check battery over a corpus. An unresolvable
/// corpus is a configuration problem (status 2); a check failure in a
/// completed run is status 1.
pub fn cmd_sweep(config: &RunConfig, out: Option<&Path>) -> Result<i32> {
    let corpus = match crate::sweep::resolve_corpus(config) {
        Ok(corpus) => corpus,
        Err(err) => {
            eprintln!("configuration error: {err:#}");
            return Ok(2);
        }
    };
    let outcome = crate::sweep::run_sweep_on(config, &corpus)?;
    let header = header_json("sweep", config.seed);
    let (footer, fails) = summary_json(
        outcome
            .lines
            .iter()
            .map(|l| verdict_from_json(&l["verdict"]))
            .collect::<Result<Vec<_>>>()?
            .into_iter(),
    );
    let content = render_full(&header, &outcome.lines, &footer);
    let target = out.or(config.output_path.as_deref());
    emit(target, &content)?;
    eprintln!(
        "sweep: {} groups, {} subgroup pairs, {} pass / {} fail / {} skipped",
        outcome.groups, outcome.pairs, outcome.pass, outcome.fail, outcome.skipped
    );
    Ok(if fails > 0 { 1 } else { 0 })
}

fn verdict_from_json(v: &Value) -> Result<Verdict> {
    match v {
        Value::String(s) if s == "pass" => Ok(Verdict::Pass),
        Value::String(s) if s == "fail" => Ok(Verdict::Fail),
        Value::Object(m) if m.contains_key("skipped") => Ok(Verdict::Skipped(
            m["skipped"].as_str().unwrap_or_default().to_string(),
        )),
        other => bail!("unrecognized verdict {other}"),
    }
}

/// `envelope casestudy`: audit the symbolic monomial chain, emit the
/// JSON-lines report, and print the chain table.
pub fn cmd_casestudy(
    samples: u32,
    seed: u64,
    x_trials: u32,
    h_trials: u32,
    out: Option<&Path>,
) -> Result<i32> {
    let opts = AuditOptions {
        samples,
        seed,
        ..AuditOptions::default()
    };
    let start = Instant::now();
    let mut reports = audit_claimed_chain(&opts).map_err(|e| anyhow!("{e}"))?;
    reports.push(
        cross_validate_generator_reduction(x_trials, h_trials, seed, opts.arity)
            .map_err(|e| anyhow!("{e}"))?,
    );
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;

    let lines: Vec<Value> = reports
        .iter()
        .map(|r| audit_report_json(r, false, runtime_ms))
        .collect();
    let header = header_json("casestudy", seed);
    let (footer, fails) = summary_json(reports.iter().map(|r| r.verdict.clone()));
    let content = render_full(&header, &lines, &footer);
    emit(out, &content)?;

    // chain table, kept off the JSON stream
    let table = envelope_core::gl2::chain_table().map_err(|e| anyhow!("{e}"))?;
    let mut rendered = String::new();
    rendered.push_str(&format!(
        "{:<6} {:<44} {:<44} {:<6} note\n",
        "index", "derived", "claimed", "agree"
    ));
    for row in table {
        rendered.push_str(&format!(
            "{:<6} {:<44} {:<44} {:<6} {}\n",
            row.ordinal.to_string(),
            row.derived,
            row.claimed,
            row.agree
                .map(|a| if a { "yes" } else { "NO" })
                .unwrap_or("-"),
            row.note,
        ));
    }
    if out.is_some() {
        print!("{rendered}");
    } else {
        eprint!("{rendered}");
    }
    Ok(if fails > 0 { 1 } else { 0 })
}

/// `envelope lattice`: the centralizer lattice and its longest chain.
pub fn cmd_lattice(spec_text: &str, out: Option<&Path>, order_cap: usize) -> Result<i32> {
    let (group, name) = resolve_one(spec_text, order_cap)?;
    let lattice = centralizer_lattice(&group, order_cap).map_err(|e| anyhow!("{e}"))?;
    let value = json!({
        "group": name,
        "max_chain_length": lattice.max_chain_length,
        "entries": lattice.entries.iter().map(|e| json!({
            "order": e.subgroup.order(),
            "members": e.subgroup.labels(),
            "witnesses": e.witnesses.iter().map(|&w| group.label(w)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    emit(out, &format!("{value}\n"))?;
    Ok(0)
}

/// Loads a run configuration file and applies command line overrides;
/// errors here are configuration errors (exit status 2).
#[allow(clippy::too_many_arguments)]
pub fn build_run_config(
    config_path: Option<&PathBuf>,
    corpus: Option<&str>,
    policy: Option<&str>,
    checks: Option<&str>,
    probe_depth: Option<u32>,
    seed: Option<u64>,
    timings: bool,
    order_cap: usize,
) -> Result<RunConfig> {
    let mut config = match config_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => RunConfig {
            order_cap,
            ..RunConfig::default()
        },
    };
    // flags win over the file
    if let Some(corpus) = corpus {
        let specs: Result<Vec<GroupSpec>> = corpus
            .split(';')
            .map(|s| GroupSpec::parse(s.trim()))
            .collect();
        config.corpus = Some(specs?);
    }
    if let Some(policy) = policy {
        config.subgroup_policy = crate::sweep::PolicyConfig::parse(policy)?;
    }
    if let Some(checks) = checks {
        config.checks = Some(checks.split(',').map(|c| c.trim().to_string()).collect());
    }
    if let Some(p) = probe_depth {
        config.probe_depth = p;
    }
    if let Some(s) = seed {
        config.seed = s;
    }
    if timings {
        config.timings = true;
    }
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use envelope_core::catalog;

    #[test]
    fn selector_grammar() {
        let s4 = catalog::symmetric(4).unwrap();
        let ids = parse_selector(&s4, "(1 2 3 4),(1 3)").unwrap();
        assert_eq!(ids.len(), 2);
        let sub = s4.generated_subgroup(&ids).unwrap();
        assert_eq!(sub.order(), 8);

        let by_id = parse_selector(&s4, "#0").unwrap();
        assert_eq!(by_id, vec![0]);

        assert!(parse_selector(&s4, "(1 9)").is_err());
        assert!(parse_selector(&s4, "#99").is_err());
        assert_eq!(parse_selector(&s4, "").unwrap(), Vec::<usize>::new());

        let d8 = catalog::dihedral(8).unwrap();
        let ids = parse_selector(&d8, "r2,s").unwrap();
        assert_eq!(d8.generated_subgroup(&ids).unwrap().order(), 4);
    }
}
