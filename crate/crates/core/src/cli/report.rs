//! Canonical JSON and plain-text reports.
//!
//! JSON objects use sorted keys (the default `serde_json` map) and integers
//! only, so equal inputs give byte-identical output once timing is removed.

use serde_json::{json, Map, Value};

use crate::module::FiniteModule;
use crate::props::{render_value, Verdict, WitnessValue};
use crate::ring::FiniteRing;
use crate::theorems::{SweepReport, TheoremVerdict, FINITENESS_NOTE};

pub const SCHEMA: u64 = 1;
const TIMING_KEYS: [&str; 2] = ["timing", "elapsed_us"];

/// A property result, or the reason it does not apply.
#[derive(Debug, Clone)]
pub enum PropertyLine {
    Decided(Verdict),
    NotApplicable { property: &'static str, reason: String },
}

/// One input file.
#[derive(Debug, Clone)]
pub struct InputInfo {
    pub role: &'static str,
    pub path: String,
    pub name: String,
    pub sha256: String,
}

pub fn tool() -> Value {
    json!({ "name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION") })
}

fn inputs_json(inputs: &[InputInfo]) -> Value {
    inputs
        .iter()
        .map(|i| json!({ "role": i.role, "path": i.path, "name": i.name, "sha256": i.sha256 }))
        .collect()
}

fn witness_value_json(v: &WitnessValue, ring: &FiniteRing, module: Option<&FiniteModule>) -> Value {
    let mcoeffs = |m: usize| match module {
        Some(md) => json!(md.coeffs(m)),
        None => json!(m),
    };
    match v {
        WitnessValue::Ring(x) => json!(ring.coeffs(*x)),
        WitnessValue::Module(m) => mcoeffs(*m),
        WitnessValue::Hom(h) => json!(h),
        WitnessValue::Elements(es) => Value::Array(es.iter().map(|&m| mcoeffs(m)).collect()),
        WitnessValue::Count(n) => json!(n),
    }
}

fn witness_kind(v: &WitnessValue) -> &'static str {
    match v {
        WitnessValue::Ring(_) => "ring_element",
        WitnessValue::Module(_) => "module_element",
        WitnessValue::Hom(_) => "endomorphism",
        WitnessValue::Elements(_) => "element_set",
        WitnessValue::Count(_) => "count",
    }
}

pub fn property_json(line: &PropertyLine, ring: &FiniteRing, module: Option<&FiniteModule>) -> Value {
    match line {
        PropertyLine::NotApplicable { property, reason } => {
            json!({ "property": property, "status": "not_applicable", "reason": reason })
        }
        PropertyLine::Decided(v) => {
            let witness = v.witness.as_ref().map_or(Value::Null, |w| {
                Value::Array(
                    w.items
                        .iter()
                        .map(|(name, val)| {
                            json!({
                                "name": name,
                                "kind": witness_kind(val),
                                "value": witness_value_json(val, ring, module),
                                "text": render_value(val, ring, module),
                            })
                        })
                        .collect(),
                )
            });
            json!({
                "property": v.property,
                "status": "decided",
                "holds": v.holds,
                "witness": witness,
                "elapsed_us": v.elapsed.as_micros() as u64,
            })
        }
    }
}

pub fn theorem_json(v: &TheoremVerdict) -> Value {
    let mut o = Map::new();
    o.insert("theorem".into(), json!(v.theorem));
    o.insert("instance".into(), json!(v.instance));
    o.insert("outcome".into(), json!(v.outcome.tag()));
    o.insert("reason".into(), json!(v.outcome.reason()));
    o.insert(
        "clauses".into(),
        v.clauses
            .iter()
            .map(|c| json!({ "label": c.label, "value": c.value }))
            .collect(),
    );
    o.insert("counterexample".into(), json!(v.counterexample));
    o.insert("note".into(), json!(v.note));
    o.insert("elapsed_us".into(), json!(v.elapsed.as_micros() as u64));
    Value::Object(o)
}

/// Report of a `check` run.
pub fn check_report(
    inputs: &[InputInfo],
    ring: &FiniteRing,
    ring_label: &str,
    module: Option<(&FiniteModule, &str)>,
    lines: &[PropertyLine],
    total_us: u64,
) -> Value {
    let m = module.map(|(m, _)| m);
    json!({
        "schema": SCHEMA,
        "tool": tool(),
        "command": "check",
        "inputs": inputs_json(inputs),
        "subject": {
            "ring": ring_label,
            "ring_order": ring.order(),
            "module": module.map(|(_, l)| l),
            "module_order": m.map(|m| m.order()),
        },
        "properties": lines.iter().map(|l| property_json(l, ring, m)).collect::<Vec<_>>(),
        "timing": { "total_us": total_us },
    })
}

/// Report of a single-instance `verify` run.
pub fn verify_report(inputs: &[InputInfo], verdicts: &[TheoremVerdict], total_us: u64) -> Value {
    json!({
        "schema": SCHEMA,
        "tool": tool(),
        "command": "verify",
        "inputs": inputs_json(inputs),
        "theorems": verdicts.iter().map(theorem_json).collect::<Vec<_>>(),
        "timing": { "total_us": total_us },
    })
}

/// Report of a catalog sweep.
pub fn sweep_report(catalog: &str, inputs: &[InputInfo], report: &SweepReport, total_us: u64) -> Value {
    let summary: Map<String, Value> = report
        .summary()
        .into_iter()
        .map(|(id, s)| {
            (
                id.to_string(),
                json!({ "pass": s.pass, "fail": s.fail, "skipped": s.skipped, "resource_limit": s.resource_limit }),
            )
        })
        .collect();
    let t = report.totals();
    json!({
        "schema": SCHEMA,
        "tool": tool(),
        "command": "sweep",
        "catalog": catalog,
        "inputs": inputs_json(inputs),
        "finiteness": FINITENESS_NOTE,
        "summary": summary,
        "totals": { "pass": t.pass, "fail": t.fail, "skipped": t.skipped, "resource_limit": t.resource_limit },
        "verdicts": report.entries.iter().map(|e| theorem_json(&e.verdict)).collect::<Vec<_>>(),
        "timing": { "total_us": total_us },
    })
}

/// Removes every timing field in place.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(o) => {
            for k in TIMING_KEYS {
                o.remove(k);
            }
            o.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Plain-text rendering of a property list.
pub fn property_text(lines: &[PropertyLine], ring: &FiniteRing, module: Option<&FiniteModule>) -> String {
    let mut out = String::new();
    for l in lines {
        match l {
            PropertyLine::NotApplicable { property, reason } => {
                out.push_str(&format!("{property} = n/a ({reason})\n"));
            }
            PropertyLine::Decided(v) => {
                out.push_str(&format!("{} = {}", v.property, v.holds));
                if let Some(w) = &v.witness {
                    out.push_str(&format!("  witness: {}", w.render(ring, module)));
                }
                out.push('\n');
            }
        }
    }
    out
}

pub fn theorem_text(v: &TheoremVerdict) -> String {
    let mut out = format!("{} on {}: {}", v.theorem, v.instance, v.outcome.tag());
    if let Some(r) = v.outcome.reason() {
        out.push_str(&format!(" ({r})"));
    }
    out.push('\n');
    for c in &v.clauses {
        out.push_str(&format!("  [{}] {}\n", if c.value { "T" } else { "F" }, c.label));
    }
    if let Some(cx) = &v.counterexample {
        out.push_str(&format!("  counterexample: {cx}\n"));
    }
    if let Some(n) = v.note {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}

pub fn sweep_text(catalog: &str, report: &SweepReport) -> String {
    let mut out = format!("sweep over catalog '{catalog}'\n");
    out.push_str(&format!("{:<24} {:>5} {:>5} {:>7} {:>6}\n", "theorem", "pass", "fail", "skipped", "limit"));
    for (id, s) in report.summary() {
        out.push_str(&format!(
            "{id:<24} {:>5} {:>5} {:>7} {:>6}\n",
            s.pass, s.fail, s.skipped, s.resource_limit
        ));
    }
    for f in report.failures() {
        out.push_str(&format!(
            "FAIL {} on {}: {}\n",
            f.verdict.theorem,
            f.verdict.instance,
            f.verdict.counterexample.as_deref().unwrap_or("")
        ));
    }
    let t = report.totals();
    out.push_str(&format!(
        "total: {} pass, {} fail, {} skipped, {} resource limit\n",
        t.pass, t.fail, t.skipped, t.resource_limit
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip_and_strip() {
        let mut v = json!({ "b": 1, "a": { "elapsed_us": 5, "z": [1, 2] }, "timing": { "total_us": 3 } });
        let s = canonical(&v);
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(canonical(&back), s);
        strip_timing(&mut v);
        assert_eq!(v, json!({ "b": 1, "a": { "z": [1, 2] } }));
    }
}
