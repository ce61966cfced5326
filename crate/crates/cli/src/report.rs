use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Report,
}

impl Outcome {
    fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Report => "report",
        }
    }

    pub fn from_checks(ok: bool) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub outcome: Outcome,
    pub payload: Value,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json!({
                "command": self.command,
                "inputs": self.inputs,
                "outcome": self.outcome.as_str(),
                "payload": self.payload,
            })
            .to_string(),
            Format::Text => {
                let mut out = format!("{}: {}\n", self.command, self.outcome.as_str());
                render_text(&self.payload, &mut out);
                out.trim_end().to_string()
            }
        }
    }
}

/// Integers that fit in 64 bits stay numbers; larger ones become strings.
pub fn big(x: &BigInt) -> Value {
    if let Some(v) = x.to_i64() {
        json!(v)
    } else if let Some(v) = x.to_u64() {
        json!(v)
    } else {
        json!(x.to_string())
    }
}

pub fn bigs(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}

pub fn rational(x: &BigRational) -> Value {
    json!(x.to_string())
}

pub fn rational64(x: &Rational64) -> Value {
    json!(x.to_string())
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            xs.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn render_table(rows: &[Value], out: &mut String) {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    let cells: Vec<Vec<String>> =
        rows.iter().map(|r| cols.iter().map(|c| r.get(c).map_or("-".into(), scalar)).collect()).collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |vals: Vec<&str>| -> String {
        vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    out.push_str(&line(cols.iter().map(String::as_str).collect()));
    out.push('\n');
    for r in &cells {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
}

fn render_text(v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            let w = m.keys().map(String::len).max().unwrap_or(0);
            let mut tables = Vec::new();
            for (k, val) in m {
                match val {
                    Value::Array(xs) if xs.iter().any(Value::is_object) => tables.push((k, xs)),
                    _ => out.push_str(&format!("{k:<w$}  {}\n", scalar(val))),
                }
            }
            for (k, rows) in tables {
                out.push_str(&format!("\n{k}\n"));
                render_table(rows, out);
            }
        }
        Value::Array(xs) if xs.iter().any(Value::is_object) => render_table(xs, out),
        other => {
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
}
