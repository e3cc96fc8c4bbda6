//! Stable, schema-versioned run reports.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::check::{Check, Finding};
use crate::graph_model::VertexSet;
use crate::scalar::Scalar;

pub const SCHEMA: &str = "isospec-report/1";

/// A scalar as a JSON string: `"p/q"` or 17 significant digits.
pub fn scalar<S: Scalar>(x: &S) -> Value {
    Value::String(x.render())
}

pub fn scalars<S: Scalar>(xs: &[S]) -> Value {
    Value::Array(xs.iter().map(scalar).collect())
}

pub fn float(x: f64) -> Value {
    scalar(&x)
}

pub fn floats(xs: &[f64]) -> Value {
    scalars(xs)
}

pub fn sets(classes: &[VertexSet]) -> Value {
    Value::Array(classes.iter().map(|q| json!(q.members())).collect())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub findings: Vec<Finding>,
    pub data: Map<String, Value>,
}

impl RunReport {
    pub fn new(command: impl IntoIterator<Item = impl Into<String>>) -> Self {
        RunReport { command: command.into_iter().map(Into::into).collect(), ..Default::default() }
    }

    pub fn input(&mut self, name: impl Into<String>, bytes: &[u8]) {
        self.inputs.push((name.into(), sha256_hex(bytes)));
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.data.insert(key.to_string(), value);
    }

    pub fn extend_checks(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "inputs": self.inputs.iter().map(|(n, d)| json!({"name": n, "sha256": d})).collect::<Vec<_>>(),
            "passed": self.passed(),
            "checks": self.checks,
            "findings": self.findings,
            "data": self.data,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serialises");
        s.push('\n');
        s
    }

    /// Human-readable rendering: data as `key: value` lines, then checks and findings.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.data {
            out.push_str(&format!("{k}: {}\n", plain(v)));
        }
        for c in &self.checks {
            out.push_str(&format!("[{}] {}: {}\n", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail));
        }
        for f in &self.findings {
            let tag = match f.holds {
                Some(true) => "holds",
                Some(false) => "fails",
                None => "n/a",
            };
            out.push_str(&format!("[finding {tag}] {}: {}\n", f.name, f.detail));
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn stable_rendering() {
        let mut r = RunReport::new(["iso", "k4.json"]);
        r.input("k4.json", b"{}");
        r.set("iota", scalar(&q(8, 9)));
        r.set("lambda", float(0.5));
        r.checks.push(Check::new("x", true, "ok"));
        let a = r.to_json();
        assert_eq!(a, r.clone().to_json());
        assert!(a.contains("\"8/9\""));
        assert!(a.contains("5.0000000000000000e-1"));
        assert!(a.contains("44136fa355b3678a1146ad16f7e8649e94fb4fc21fe77e8310c060f61caaff8a"));
        assert!(r.passed());
        assert!(r.to_text().contains("iota: 8/9"));
    }
}
