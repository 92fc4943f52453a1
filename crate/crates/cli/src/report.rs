//! Command reports: JSON for machines, aligned `key  value` lines for people.
//!
//! Every number is written as a string, rationals as `p/q` in lowest terms.

use std::fmt::Display;
use std::time::Duration;

use serde_json::{Map, Value};

pub const SCHEMA: &str = "hx-report/1";

/// Keys owned by the envelope; command outputs may not reuse them.
const RESERVED: [&str; 7] = ["schema", "command", "argv", "inputs", "certification", "threads", "timing"];

pub fn num(x: impl Display) -> Value {
    Value::String(x.to_string())
}

pub fn opt_num<T: Display>(x: Option<T>) -> Value {
    x.map_or(Value::Null, num)
}

pub fn strings<I, T>(items: I) -> Value
where
    I: IntoIterator<Item = T>,
    T: Display,
{
    Value::Array(items.into_iter().map(num).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A property is false or a claim failed.
    Fail,
    /// A search ran out of budget.
    Budget,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Budget => 3,
        }
    }
}

pub struct Report {
    command: &'static str,
    argv: Vec<String>,
    inputs: Vec<(String, Value)>,
    outputs: Vec<(String, Value)>,
    certification: Vec<(String, Value)>,
    threads: usize,
    timing: Option<Duration>,
    /// Printed verbatim instead of the table in human mode.
    raw: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, argv: Vec<String>, threads: usize) -> Self {
        Report {
            command,
            argv,
            inputs: Vec::new(),
            outputs: Vec::new(),
            certification: Vec::new(),
            threads,
            timing: None,
            raw: None,
        }
    }

    pub fn input(&mut self, key: &str, v: Value) -> &mut Self {
        self.inputs.push((key.into(), v));
        self
    }

    pub fn output(&mut self, key: &str, v: Value) -> &mut Self {
        debug_assert!(!RESERVED.contains(&key), "{key} is an envelope key");
        self.outputs.push((key.into(), v));
        self
    }

    pub fn certify(&mut self, key: &str, v: Value) -> &mut Self {
        self.certification.push((key.into(), v));
        self
    }

    pub fn set_timing(&mut self, elapsed: Duration) {
        self.timing = Some(elapsed);
    }

    pub fn set_raw(&mut self, text: String) {
        self.raw = Some(text);
    }

    pub fn to_json(&self) -> Value {
        let obj = |pairs: &[(String, Value)]| Value::Object(pairs.iter().cloned().collect::<Map<_, _>>());
        let mut top = Map::new();
        top.insert("schema".into(), num(SCHEMA));
        top.insert("command".into(), num(self.command));
        top.insert("argv".into(), strings(&self.argv));
        top.insert("inputs".into(), obj(&self.inputs));
        top.insert("certification".into(), obj(&self.certification));
        top.insert("threads".into(), num(self.threads));
        if let Some(t) = self.timing {
            let mut timing = Map::new();
            timing.insert("elapsed_ms".into(), num(format!("{:.3}", t.as_secs_f64() * 1e3)));
            top.insert("timing".into(), Value::Object(timing));
        }
        for (k, v) in &self.outputs {
            top.insert(k.clone(), v.clone());
        }
        Value::Object(top)
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
            s.push('\n');
            return s;
        }
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        let mut rows: Vec<(String, &Value)> = Vec::new();
        rows.extend(self.outputs.iter().map(|(k, v)| (k.clone(), v)));
        rows.extend(self.certification.iter().map(|(k, v)| (k.clone(), v)));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            human_row(&mut out, &k, v, width);
        }
        if let Some(t) = self.timing {
            human_row(&mut out, "elapsed_ms", &num(format!("{:.3}", t.as_secs_f64() * 1e3)), width);
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn human_row(out: &mut String, key: &str, v: &Value, width: usize) {
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{key:<width$}  {s}\n"));
        return;
    }
    match v {
        Value::String(block) => {
            out.push_str(&format!("{key}:\n"));
            for line in block.lines() {
                out.push_str(&format!("    {line}\n"));
            }
        }
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) => {
            let joined: Vec<String> = items.iter().filter_map(scalar).collect();
            out.push_str(&format!("{key:<width$}  [{}]\n", joined.join(", ")));
        }
        Value::Array(items) => {
            out.push_str(&format!("{key}: {} item(s)\n", items.len()));
            for (i, item) in items.iter().enumerate() {
                match item {
                    Value::Object(m) => {
                        let parts: Vec<String> = m
                            .iter()
                            .map(|(k, v)| format!("{k}={}", scalar(v).unwrap_or_else(|| v.to_string())))
                            .collect();
                        out.push_str(&format!("  [{i}] {}\n", parts.join(" ")));
                    }
                    Value::String(block) => {
                        out.push_str(&format!("  [{i}]\n"));
                        for line in block.lines() {
                            out.push_str(&format!("    {line}\n"));
                        }
                    }
                    other => out.push_str(&format!("  [{i}] {other}\n")),
                }
            }
        }
        Value::Object(m) => {
            out.push_str(&format!("{key}:\n"));
            let w = m.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in m {
                out.push_str(&format!("  {k:<w$}  {}\n", scalar(v).unwrap_or_else(|| v.to_string())));
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
