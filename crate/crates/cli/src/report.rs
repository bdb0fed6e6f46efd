use std::time::Instant;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Overflow,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Overflow => "overflow",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Overflow => 3,
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Collects command inputs for the digest.
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn new(argv: &[String]) -> Self {
        let mut hasher = Sha256::new();
        for a in argv {
            hasher.update(a.as_bytes());
            hasher.update([0u8]);
        }
        Inputs { hasher }
    }

    pub fn add(&mut self, text: &str) {
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(text.as_bytes());
    }

    fn digest(self) -> String {
        self.hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// Results are flattened into the top-level object.
pub fn render(command: &str, argv: &[String], inputs: Inputs, verdict: Verdict, results: Value, started: Instant) -> String {
    let mut obj = Map::new();
    obj.insert("tool".into(), json!("cluster-presents"));
    obj.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    obj.insert("format_version".into(), json!(FORMAT_VERSION));
    obj.insert("command".into(), json!(command));
    obj.insert("argv".into(), json!(argv));
    obj.insert("inputs_digest".into(), json!(inputs.digest()));
    obj.insert("verdict".into(), json!(verdict.as_str()));
    if let Value::Object(fields) = results {
        for (k, v) in fields {
            obj.insert(k, v);
        }
    }
    obj.insert(
        "timings".into(),
        json!({ "total_ms": started.elapsed().as_secs_f64() * 1000.0 }),
    );
    serde_json::to_string_pretty(&Value::Object(obj)).expect("reports serialize")
}
