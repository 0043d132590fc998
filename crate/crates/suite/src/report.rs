//! Machine-readable stage outcomes and their JSON/CSV/text renderings.

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The claim holds and the witnesses listed are the known, expected ones.
    ExpectedWitness,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ExpectedWitness => "expected-witness",
        }
    }

    pub fn is_success(self) -> bool {
        self != Status::Fail
    }
}

/// One verified (or refuted) claim. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub stage: String,
    pub claim: String,
    pub parameters: Map<String, Value>,
    pub status: Status,
    pub witnesses: Vec<Value>,
    pub runtime_ms: u64,
    pub tool_version: &'static str,
}

impl VerificationReport {
    pub fn new(stage: &str, claim: &str) -> Self {
        VerificationReport {
            stage: stage.into(),
            claim: claim.into(),
            parameters: Map::new(),
            status: Status::Pass,
            witnesses: Vec::new(),
            runtime_ms: 0,
            tool_version: TOOL_VERSION,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.into(), value.into());
        self
    }

    /// Records a counterexample and marks the report failed.
    pub fn fail_with(&mut self, witness: Value) {
        self.status = Status::Fail;
        self.witnesses.push(witness);
    }

    pub fn expect(&mut self, witness: Value) {
        if self.status == Status::Pass {
            self.status = Status::ExpectedWitness;
        }
        self.witnesses.push(witness);
    }

    /// Fails with `witness` unless `ok`.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        if !ok {
            self.fail_with(witness());
        }
    }

    pub fn error(&mut self, err: impl std::fmt::Display) {
        self.fail_with(json!({ "error": err.to_string() }));
    }
}

/// A computed result in all three output forms, plus whether it verifies.
#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    pub success: bool,
}

impl Output {
    pub fn from_reports(reports: &[VerificationReport]) -> Self {
        let headers = [
            "stage",
            "status",
            "claim",
            "witnesses",
            "runtime_ms",
            "tool_version",
        ]
        .map(String::from)
        .to_vec();
        let rows = reports
            .iter()
            .map(|r| {
                vec![
                    r.stage.clone(),
                    r.status.as_str().into(),
                    r.claim.clone(),
                    Value::Array(r.witnesses.clone()).to_string(),
                    r.runtime_ms.to_string(),
                    r.tool_version.into(),
                ]
            })
            .collect();
        let mut text = String::new();
        for r in reports {
            text.push_str(&format!(
                "[{}] {}: {}\n",
                r.status.as_str(),
                r.stage,
                r.claim
            ));
            for w in &r.witnesses {
                text.push_str(&format!("    {w}\n"));
            }
        }
        let json = if reports.len() == 1 {
            serde_json::to_value(&reports[0])
        } else {
            serde_json::to_value(reports)
        }
        .expect("reports serialize");
        Output {
            json,
            headers,
            rows,
            text,
            success: reports.iter().all(|r| r.status.is_success()),
        }
    }

    /// A table whose JSON form is an array of objects keyed by `headers`.
    pub fn table(headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        let json = Value::Array(
            rows.iter()
                .map(|row| {
                    Value::Object(
                        headers
                            .iter()
                            .zip(row)
                            .map(|(h, v)| (h.to_string(), Value::String(v.clone())))
                            .collect(),
                    )
                })
                .collect(),
        );
        let mut text = headers.join("\t");
        text.push('\n');
        for row in &rows {
            text.push_str(&row.join("\t"));
            text.push('\n');
        }
        Output {
            json,
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows,
            text,
            success: true,
        }
    }

    pub fn render(&self, format: crate::config::Format) -> Result<String, crate::SuiteError> {
        use crate::config::Format;
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)
                    .expect("csv output is utf-8")
            }
            Format::Text => self.text.clone(),
        })
    }
}

/// Removes every `runtime_ms` key, recursively, for run-to-run comparison.
pub fn strip_runtime(value: &mut Value) {
    match value {
        Value::Object(map) => {
            map.remove("runtime_ms");
            map.values_mut().for_each(strip_runtime);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_runtime),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_order_is_stable() {
        let r = VerificationReport::new("s", "c").param("k", "1");
        let s = serde_json::to_string(&r).unwrap();
        let keys = [
            "stage",
            "claim",
            "parameters",
            "status",
            "witnesses",
            "runtime_ms",
            "tool_version",
        ];
        let pos: Vec<usize> = keys
            .iter()
            .map(|k| s.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{s}");
    }

    #[test]
    fn failing_check_leaves_a_witness() {
        let mut r = VerificationReport::new("s", "c");
        r.check(true, || json!(0));
        assert_eq!(r.status, Status::Pass);
        r.check(false, || json!({ "n": "7" }));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witnesses.len(), 1);
    }

    #[test]
    fn strip_runtime_recurses() {
        let mut v = json!([{ "runtime_ms": 3, "x": { "runtime_ms": 1, "y": 2 } }]);
        strip_runtime(&mut v);
        assert_eq!(v, json!([{ "x": { "y": 2 } }]));
    }
}
