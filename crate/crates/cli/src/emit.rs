//! Text and JSON Lines rendering of results.
//!
//! JSON keys appear in a fixed order given by the field order of the
//! structs below; `aux` maps are sorted by key. See `docs/format.md`.

use std::collections::BTreeMap;

use corecalc::Field;
use serde::Serialize;
use serde_json::Value;

use crate::exec::{Meta, Record};
use crate::script::{ScriptError, Session};

#[derive(Serialize)]
struct RingJson {
    vars: Vec<String>,
    field: String,
    order: String,
}

#[derive(Serialize)]
struct OutputJson<'a> {
    generators: &'a Option<Vec<String>>,
    value: &'a Option<Value>,
    aux: &'a BTreeMap<String, Value>,
}

#[derive(Serialize)]
struct MetaJson<'a> {
    route: &'a Option<String>,
    reduction_number: Option<u32>,
    seed: u64,
    trials: Option<u32>,
    exact: Option<bool>,
    warnings: &'a [String],
}

#[derive(Serialize)]
struct SuccessJson<'a> {
    verb: &'a str,
    ring: RingJson,
    inputs: &'a [Value],
    output: OutputJson<'a>,
    meta: MetaJson<'a>,
    elapsed_ms: Option<u64>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: &'a str,
    line: usize,
}

#[derive(Serialize)]
struct FailureJson<'a> {
    verb: &'a str,
    ring: RingJson,
    inputs: &'a [Value],
    error: ErrorBody<'a>,
    elapsed_ms: Option<u64>,
}

#[derive(Serialize)]
struct ScriptErrorBody<'a> {
    code: &'a str,
    message: String,
    line: usize,
    column: usize,
}

#[derive(Serialize)]
struct ScriptFailureJson<'a> {
    error: ScriptErrorBody<'a>,
}

fn field_name(field: Field) -> String {
    match field {
        Field::Rationals => "QQ".into(),
        Field::Prime(p) => format!("Fp({p})"),
    }
}

fn ring_json(session: &Session) -> RingJson {
    RingJson {
        vars: session.ring.var_names().to_vec(),
        field: field_name(session.ring.field()),
        order: session.order.name(),
    }
}

fn meta_json(meta: &Meta) -> MetaJson<'_> {
    MetaJson {
        route: &meta.route,
        reduction_number: meta.reduction_number,
        seed: meta.seed,
        trials: meta.trials,
        exact: meta.exact,
        warnings: &meta.warnings,
    }
}

/// One JSON object per record, without a trailing newline.
pub fn json_line(session: &Session, record: &Record) -> String {
    let text = match &record.outcome {
        Ok(out) => serde_json::to_string(&SuccessJson {
            verb: record.verb,
            ring: ring_json(session),
            inputs: &record.inputs,
            output: OutputJson {
                generators: &out.generators,
                value: &out.value,
                aux: &out.aux,
            },
            meta: meta_json(&out.meta),
            elapsed_ms: record.elapsed_ms,
        }),
        Err(e) => serde_json::to_string(&FailureJson {
            verb: record.verb,
            ring: ring_json(session),
            inputs: &record.inputs,
            error: ErrorBody {
                code: e.code,
                message: &e.message,
                line: record.line,
            },
            elapsed_ms: record.elapsed_ms,
        }),
    };
    text.expect("records serialize")
}

pub fn script_error_json(e: &ScriptError) -> String {
    serde_json::to_string(&ScriptFailureJson {
        error: ScriptErrorBody {
            code: e.code(),
            message: e.message(),
            line: e.line,
            column: e.column,
        },
    })
    .expect("errors serialize")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Text lines for a successful record: `ideal: ...`, `value: ...`, the
/// auxiliary values, a `meta:` line when a route applies, and warnings.
pub fn text_lines(record: &Record) -> Vec<String> {
    let Ok(out) = &record.outcome else {
        return Vec::new();
    };
    let mut lines = Vec::new();
    if let Some(gens) = &out.generators {
        lines.push(format!("ideal: {}", gens.join(", ")));
    }
    if let Some(v) = &out.value {
        lines.push(format!("value: {}", scalar(v)));
    }
    for (k, v) in &out.aux {
        lines.push(format!("{k}: {}", scalar(v)));
    }
    let m = &out.meta;
    if let Some(route) = &m.route {
        let mut parts = vec![format!("route={route}")];
        if let Some(r) = m.reduction_number {
            parts.push(format!("reduction_number={r}"));
        }
        if let Some(t) = m.trials {
            parts.push(format!("trials={t}"));
        }
        if let Some(e) = m.exact {
            parts.push(format!("exact={e}"));
        }
        parts.push(format!("seed={}", m.seed));
        lines.push(format!("meta: {}", parts.join(" ")));
    }
    for w in &m.warnings {
        lines.push(format!("warning: {w}"));
    }
    if let Some(ms) = record.elapsed_ms {
        lines.push(format!("elapsed_ms: {ms}"));
    }
    lines
}

/// The stderr line for a failed record.
pub fn text_error(record: &Record) -> Option<String> {
    record.outcome.as_ref().err().map(|e| {
        format!(
            "error[{}] line {} ({}): {}",
            e.code, record.line, record.verb, e.message
        )
    })
}

pub fn script_error_text(e: &ScriptError) -> String {
    format!("error[{}] line {}, col {}: {}", e.code(), e.line, e.column, e.message())
}
