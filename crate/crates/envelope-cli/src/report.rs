//! JSON-lines report rendering.
//!
//! A report file is one header object (the only place a timestamp may
//! appear), one line per check report, and a summary footer. Everything
//! after the header is the report body: byte-identical across runs with the
//! same configuration and seed. Per-check wall times are therefore not part
//! of the body unless timings are explicitly requested.

use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde_json::{json, Value};

use envelope_core::gl2::AuditReport;
use envelope_core::harness::{CheckReport, Verdict};
use envelope_core::ChainRecord;

pub fn verdict_json(verdict: &Verdict) -> Value {
    match verdict {
        Verdict::Pass => json!("pass"),
        Verdict::Fail => json!("fail"),
        Verdict::Skipped(reason) => json!({ "skipped": reason }),
    }
}

pub fn check_report_json(report: &CheckReport, timings: bool) -> Value {
    let mut value = json!({
        "check_id": report.check_id.as_str(),
        "group": report.group_name,
        "subgroup": report.subgroup_generators,
        "params": report.parameters,
        "verdict": verdict_json(&report.verdict),
        "witness": report.witness.as_ref().map(|w| json!({
            "relation": w.relation,
            "elements": w.elements.iter().map(|(_, l)| l.clone()).collect::<Vec<_>>(),
        })),
    });
    if timings {
        value["runtime_ms"] = json!(report.runtime_ms);
    }
    value
}

pub fn audit_report_json(report: &AuditReport, timings: bool, runtime_ms: f64) -> Value {
    let mut params = report.parameters.clone();
    params.insert("subject".into(), report.subject.clone());
    let mut value = json!({
        "check_id": report.check_id,
        "group": "monomial",
        "subgroup": ["H"],
        "params": params,
        "verdict": verdict_json(&report.verdict),
        "witness": report.witness.as_ref().map(|w| json!({
            "relation": w,
            "elements": Vec::<String>::new(),
        })),
    });
    if timings {
        value["runtime_ms"] = json!(runtime_ms);
    }
    value
}

/// Chain record serialization:
/// `{"direction": ..., "terms": [{"ordinal": "w*a+b", "members": [ids]}],
///   "stabilization": "w*a+b" | null, "first_entry": {"id": "ordinal"}}`.
pub fn chain_record_json(record: &ChainRecord<'_>) -> Value {
    json!({
        "direction": match record.direction() {
            envelope_core::ChainDirection::Ascending => "ascending",
            envelope_core::ChainDirection::Descending => "descending",
        },
        "terms": record.terms().iter().map(|(ordinal, term)| json!({
            "ordinal": ordinal.to_string(),
            "members": term.member_vec(),
        })).collect::<Vec<_>>(),
        "stabilization": record.stabilization().map(|s| s.to_string()),
        "first_entry": record.first_entry().map(|fe| {
            fe.iter()
                .map(|(elem, idx)| (elem.to_string(), json!(idx.to_string())))
                .collect::<serde_json::Map<String, Value>>()
        }),
    })
}

/// Counts verdicts into the summary footer object.
pub fn summary_json(verdicts: impl Iterator<Item = Verdict>) -> (Value, usize) {
    let (mut pass, mut fail, mut skipped) = (0usize, 0usize, 0usize);
    for v in verdicts {
        match v {
            Verdict::Pass => pass += 1,
            Verdict::Fail => fail += 1,
            Verdict::Skipped(_) => skipped += 1,
        }
    }
    (
        json!({ "summary": { "pass": pass, "fail": fail, "skipped": skipped } }),
        fail,
    )
}

/// Header line; the single place a wall-clock timestamp appears. The
/// conventions note applies to every report line below it: on finite
/// groups, hypercentral degree means nilpotency class.
pub fn header_json(command: &str, seed: u64) -> Value {
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    json!({ "run": {
        "command": command,
        "conventions": "finite groups: hypercentral degree = nilpotency class",
        "seed": seed,
        "timestamp": timestamp,
    } })
}

/// The deterministic part of a report: every line after the header.
pub fn render_body(body: &[Value], footer: &Value) -> String {
    let mut out = String::new();
    for line in body {
        out.push_str(&line.to_string());
        out.push('\n');
    }
    out.push_str(&footer.to_string());
    out.push('\n');
    out
}

pub fn render_full(header: &Value, body: &[Value], footer: &Value) -> String {
    format!("{header}\n{}", render_body(body, footer))
}

/// Writes a report to a file, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())
                .context("writing to stdout")?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use envelope_core::harness::{CheckConfig, Pair};
    use envelope_core::{catalog, envelope_chain, SmallOrdinal};

    #[test]
    fn check_report_json_is_schema_stable() {
        let s3 = catalog::symmetric(3).unwrap();
        let h = s3
            .generated_subgroup(&[s3.element_by_label("(1 2 3)").unwrap()])
            .unwrap();
        let pair = Pair::new(&s3, "S3", h);
        let report = envelope_core::harness::run_check(
            envelope_core::harness::CheckId::ChainShape,
            &pair,
            &CheckConfig::default(),
        );
        let v = check_report_json(&report, false);
        assert_eq!(v["check_id"], "chain_shape");
        assert_eq!(v["group"], "S3");
        assert_eq!(v["verdict"], "pass");
        assert!(v.get("runtime_ms").is_none());
        let with_timing = check_report_json(&report, true);
        assert!(with_timing.get("runtime_ms").is_some());
    }

    #[test]
    fn chain_record_json_matches_the_documented_schema() {
        let s3 = catalog::symmetric(3).unwrap();
        let h = s3
            .generated_subgroup(&[s3.element_by_label("(1 2 3)").unwrap()])
            .unwrap();
        let record = envelope_chain(&s3, &h, SmallOrdinal::omega_plus(1)).unwrap();
        let v = chain_record_json(&record);
        assert_eq!(v["direction"], "descending");
        assert_eq!(v["stabilization"], "1");
        let terms = v["terms"].as_array().unwrap();
        assert_eq!(terms[0]["ordinal"], "0");
        assert_eq!(terms.last().unwrap()["ordinal"], "w+1");
        assert!(v["first_entry"].is_null());
    }

    #[test]
    fn summary_counts() {
        let verdicts = vec![
            Verdict::Pass,
            Verdict::Fail,
            Verdict::Pass,
            Verdict::Skipped("reason".into()),
        ];
        let (summary, fails) = summary_json(verdicts.into_iter());
        assert_eq!(fails, 1);
        assert_eq!(summary["summary"]["pass"], 2);
        assert_eq!(summary["summary"]["skipped"], 1);
    }
}
