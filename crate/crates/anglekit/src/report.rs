//! Report assembly and output.
//!
//! Every command produces a JSON document with a top-level `"schema": 1` and
//! a CSV table. Reports carry no timing or host data, so they are
//! byte-identical across runs with the same inputs.

use anglekit_core::{Certificate, CtxValue};
use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::Path;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: u64,
    pub passed: u64,
    pub failed: u64,
    pub worst_slack: Option<f64>,
    pub worst_context: Option<Value>,
}

impl Summary {
    pub fn of<'a>(certs: impl IntoIterator<Item = &'a Certificate>) -> Summary {
        let mut s = Summary { total: 0, passed: 0, failed: 0, worst_slack: None, worst_context: None };
        let mut worst: Option<&Certificate> = None;
        for c in certs {
            s.total += 1;
            if c.pass {
                s.passed += 1;
            } else {
                s.failed += 1;
            }
            if worst.is_none_or(|w| c.slack < w.slack || (c.slack.is_nan() && !w.slack.is_nan())) {
                worst = Some(c);
            }
        }
        if let Some(w) = worst {
            s.worst_slack = Some(w.slack);
            s.worst_context = Some(context_json(w));
        }
        s
    }
}

/// `{"id": ..., <context entries>}`.
pub fn context_json(c: &Certificate) -> Value {
    let mut m = Map::new();
    m.insert("id".into(), json!(c.id));
    for (k, v) in c.context.iter() {
        m.insert((*k).into(), ctx_value(v));
    }
    Value::Object(m)
}

pub fn ctx_value(v: &CtxValue) -> Value {
    match v {
        CtxValue::Int(i) => json!(i),
        CtxValue::Real(x) => json!(x),
        CtxValue::Text(t) => json!(t),
    }
}

/// A CSV table: header plus rows of preformatted cells.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn certificates<'a>(certs: impl IntoIterator<Item = &'a Certificate>) -> Table {
        Table {
            header: vec!["id", "lhs", "rhs", "slack", "pass"],
            rows: certs
                .into_iter()
                .map(|c| vec![c.id.to_string(), num(c.lhs), num(c.rhs), num(c.slack), c.pass.to_string()])
                .collect(),
        }
    }
}

/// Shortest round-trip decimal form.
pub fn num(x: f64) -> String {
    format!("{x}")
}

pub struct Output {
    pub json: Value,
    pub table: Table,
}

pub fn render(out: &Output, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_vec_pretty(&out.json)?;
            s.push(b'\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&out.table.header)?;
            for r in &out.table.rows {
                w.write_record(r)?;
            }
            Ok(w.into_inner().context("flushing CSV")?)
        }
    }
}

pub fn emit(out: &Output, format: Format, path: Option<&Path>) -> Result<()> {
    let bytes = render(out, format)?;
    match path {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}
