//! JSON loading with locations, and a path-tracking view for schema decoding.
use std::fmt;

use serde_json::Value;
use twistdef::homalg::scalar::parse_scalar;
use twistdef::Scalar;

/// Failure to turn input text into a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputError {
    /// Malformed JSON; 1-based line and column.
    Parse { line: usize, column: usize, message: String },
    /// Well-formed JSON that does not fit the schema; `path` is a JSON path such as
    /// `$.payload.brackets[0].x`.
    Schema { path: String, message: String },
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Parse { line, column, message } => write!(f, "parse error at {line}:{column}: {message}"),
            InputError::Schema { path, message } => write!(f, "schema error at {path}: {message}"),
        }
    }
}

impl std::error::Error for InputError {}

pub fn parse_text(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Parse {
        line: e.line().max(1),
        column: e.column().max(1),
        message: strip_location(&e.to_string()),
    })
}

fn strip_location(s: &str) -> String {
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s.to_string(),
    }
}

/// A JSON value together with its path from the document root.
#[derive(Clone, Copy)]
pub struct At<'a> {
    pub value: &'a Value,
    path: &'a str,
    parent: Option<&'a At<'a>>,
}

/// Owned path segment, kept alive by the caller while children are in use.
pub struct Seg(String);

impl<'a> At<'a> {
    pub fn root(value: &'a Value) -> Self {
        At { value, path: "$", parent: None }
    }

    pub fn path(&self) -> String {
        match self.parent {
            Some(p) => format!("{}{}", p.path(), self.path),
            None => self.path.to_string(),
        }
    }

    pub fn error(&self, message: impl Into<String>) -> InputError {
        InputError::Schema { path: self.path(), message: message.into() }
    }

    fn child<'b>(&'b self, value: &'b Value, seg: &'b Seg) -> At<'b> {
        At { value, path: &seg.0, parent: Some(self) }
    }

    pub fn seg_field(name: &str) -> Seg {
        Seg(format!(".{name}"))
    }

    pub fn seg_index(i: usize) -> Seg {
        Seg(format!("[{i}]"))
    }

    pub fn seg_key(k: &str) -> Seg {
        Seg(format!("[{k:?}]"))
    }

    pub fn object(&self) -> Result<&'a serde_json::Map<String, Value>, InputError> {
        self.value.as_object().ok_or_else(|| self.error("expected an object"))
    }

    pub fn array(&self) -> Result<&'a Vec<Value>, InputError> {
        self.value.as_array().ok_or_else(|| self.error("expected an array"))
    }

    pub fn str(&self) -> Result<&'a str, InputError> {
        self.value.as_str().ok_or_else(|| self.error("expected a string"))
    }

    pub fn usize(&self) -> Result<usize, InputError> {
        self.value.as_u64().map(|n| n as usize).ok_or_else(|| self.error("expected a nonnegative integer"))
    }

    pub fn i32(&self) -> Result<i32, InputError> {
        self.value
            .as_i64()
            .and_then(|n| i32::try_from(n).ok())
            .ok_or_else(|| self.error("expected an integer"))
    }

    /// `"p/q"` string or JSON integer.
    pub fn scalar(&self) -> Result<Scalar, InputError> {
        match self.value {
            Value::String(s) => parse_scalar(s).map_err(|e| self.error(e.to_string())),
            Value::Number(n) if n.is_i64() || n.is_u64() => {
                parse_scalar(&n.to_string()).map_err(|e| self.error(e.to_string()))
            }
            _ => Err(self.error("expected a rational as an integer or a \"p/q\" string")),
        }
    }

    /// Rejects keys outside `allowed`.
    pub fn only(&self, allowed: &[&str]) -> Result<(), InputError> {
        for k in self.object()?.keys() {
            if !allowed.contains(&k.as_str()) {
                return Err(self.error(format!("unknown field {k:?}")));
            }
        }
        Ok(())
    }
}

/// Runs `f` on the field `name` of `at` (an error if missing).
pub fn field<T>(at: &At, name: &str, f: impl FnOnce(&At) -> Result<T, InputError>) -> Result<T, InputError> {
    let v = at.object()?.get(name).ok_or_else(|| at.error(format!("missing field {name:?}")))?;
    let seg = At::seg_field(name);
    f(&at.child(v, &seg))
}

pub fn opt_field<T>(at: &At, name: &str, f: impl FnOnce(&At) -> Result<T, InputError>) -> Result<Option<T>, InputError> {
    match at.object()?.get(name) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => {
            let seg = At::seg_field(name);
            f(&at.child(v, &seg)).map(Some)
        }
    }
}

/// Maps `f` over the elements of an array.
pub fn each<T>(at: &At, mut f: impl FnMut(&At) -> Result<T, InputError>) -> Result<Vec<T>, InputError> {
    let mut out = Vec::new();
    for (i, v) in at.array()?.iter().enumerate() {
        let seg = At::seg_index(i);
        out.push(f(&at.child(v, &seg))?);
    }
    Ok(out)
}

/// Maps `f` over the entries of an object, in key order.
pub fn entries<T>(at: &At, mut f: impl FnMut(&str, &At) -> Result<T, InputError>) -> Result<Vec<T>, InputError> {
    let mut out = Vec::new();
    for (k, v) in at.object()? {
        let seg = At::seg_key(k);
        out.push(f(k, &at.child(v, &seg))?);
    }
    Ok(out)
}
