use serde_json::{json, Value};

/// Result of one command: a verdict, a plain-text rendering and a
/// structured document with stable keys.
#[derive(Debug, Clone)]
pub struct Report {
    pub ok: bool,
    pub text: String,
    pub data: Value,
}

impl Report {
    pub fn new(ok: bool, text: String, data: Value) -> Self {
        Report { ok, text, data }
    }

    /// The structured document: `command`, `verdict` and the command's own
    /// keys under `result`.
    pub fn structured(&self, command: &str) -> String {
        let doc = json!({ "command": command, "verdict": self.ok, "result": self.data });
        let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
        s.push('\n');
        s
    }
}
