//! Versioned JSON envelopes for command output.

use serde_json::{json, Value};

pub const SCHEMA: &str = "jacpair/1";

/// Wraps `result` as `{"schema": "jacpair/1", "command": …, "result": …}`.
pub fn envelope(command: &str, result: Value) -> Value {
    json!({ "schema": SCHEMA, "command": command, "result": result })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

/// Error envelope carrying the exit code.
pub fn error_envelope(command: &str, err: &crate::Error) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "error": { "message": err.to_string(), "exit_code": err.exit_code() },
    })
}
