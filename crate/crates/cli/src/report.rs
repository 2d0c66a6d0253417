//! The structured document printed by `--json`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use univoque::classify::Verdict;
use univoque::numerics::{refine_interval, BaseValue, FieldElement};

/// One command run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// Inputs after parsing, rendered canonically.
    pub inputs: BTreeMap<String, Value>,
    pub result: Value,
    /// Witness indices, depths and enclosures backing the result.
    pub certificates: BTreeMap<String, Value>,
    /// `true` when an exact decision was out of reach at the given depth.
    pub unknown: bool,
    pub timing_ms: f64,
}

/// What a command hands back before timing and the command name are added.
#[derive(Debug, Default)]
pub struct Outcome {
    pub inputs: BTreeMap<String, Value>,
    pub result: Value,
    pub certificates: BTreeMap<String, Value>,
    pub unknown: bool,
    pub text: String,
}

impl Outcome {
    pub fn input(&mut self, key: &str, value: Value) -> &mut Self {
        self.inputs.insert(key.to_string(), value);
        self
    }

    pub fn certificate(&mut self, key: &str, value: Value) -> &mut Self {
        self.certificates.insert(key.to_string(), value);
        self
    }

    pub fn line(&mut self, text: impl AsRef<str>) -> &mut Self {
        self.text.push_str(text.as_ref());
        self.text.push('\n');
        self
    }

    /// Records a verdict as a certificate and flags the run when it is
    /// undecided.
    pub fn verdict(&mut self, key: &str, v: &Verdict) -> &mut Self {
        self.unknown |= v.is_unknown();
        self.certificate(key, serde_json::to_value(v).expect("verdicts serialize"))
    }
}

pub fn base_json(text: &str, q: &BaseValue, precision: u32) -> Value {
    let iv = refine_interval(q, precision);
    json!({
        "spec": text,
        "value": q.to_string(),
        "M": q.m(),
        "approx": q.approx(),
        "exact_arithmetic": q.is_exact(),
        "interval": iv,
    })
}

pub fn point_json(x: &FieldElement) -> Value {
    json!({ "exact": x.to_string(), "approx": x.to_f64() })
}

pub fn verdict_text(v: &Verdict) -> String {
    match v.status {
        univoque::classify::Status::In => "in".to_string(),
        univoque::classify::Status::Out { witness } => format!("out (fails at n = {witness})"),
        univoque::classify::Status::UnknownAtDepth { depth } => format!("unknown at depth {depth}"),
    }
}
