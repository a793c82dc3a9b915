//! Reports and their canonical text / JSON forms.
use serde_json::{Map, Value};
use twistdef::homalg::scalar::format_scalar;
use twistdef::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub status: Status,
    /// Keys are kept sorted.
    pub findings: Map<String, Value>,
    pub witnesses: Vec<Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), status: Status::Ok, findings: Map::new(), witnesses: Vec::new() }
    }

    pub fn error(command: &str, message: String) -> Self {
        let mut r = Report::new(command);
        r.status = Status::Error;
        r.set("message", message);
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.findings.insert(key.into(), value.into());
        self
    }

    /// Records a witness and marks the report as a violation.
    pub fn violate(&mut self, witness: impl Into<Value>) -> &mut Self {
        self.status = Status::Violation;
        self.witnesses.push(witness.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone().into());
        m.insert("status".into(), self.status.name().into());
        m.insert("findings".into(), Value::Object(self.findings.clone()));
        m.insert("witnesses".into(), Value::Array(self.witnesses.clone()));
        Value::Object(m)
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let head = match self.status {
                    Status::Ok => "OK",
                    Status::Violation => "VIOLATION",
                    Status::Error => "ERROR",
                };
                let mut s = format!("{head}: {}\n", self.command);
                for (k, v) in &self.findings {
                    s.push_str(&format!("  {k}: {}\n", plain(v)));
                }
                for w in &self.witnesses {
                    s.push_str(&format!("  witness: {}\n", plain(w)));
                }
                s
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn scalar(x: &Scalar) -> Value {
    Value::String(format_scalar(x))
}

pub fn scalars(xs: &[Scalar]) -> Value {
    Value::Array(xs.iter().map(scalar).collect())
}

/// `{label: "p/q"}` over the nonzero coordinates.
pub fn sparse(labels: impl Fn(usize) -> String, xs: &[Scalar]) -> Value {
    let mut m = Map::new();
    for (i, x) in xs.iter().enumerate() {
        if *x != Scalar::default() {
            m.insert(labels(i), scalar(x));
        }
    }
    Value::Object(m)
}

/// Linear combination in reading form, e.g. `-1/2 f + 3 g`.
pub fn expression(terms: &[(String, Scalar)]) -> String {
    let one = Scalar::from_integer(1.into());
    let mut out = String::new();
    for (label, c) in terms.iter().filter(|(_, c)| *c != Scalar::default()) {
        let negative = *c < Scalar::default();
        let mag = if negative { -c.clone() } else { c.clone() };
        let body = if mag == one { label.clone() } else { format!("{} {label}", format_scalar(&mag)) };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
