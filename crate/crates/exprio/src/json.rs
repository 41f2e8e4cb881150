//! The structured output envelope: `{status, result, witness}`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Envelope {
    pub status: Status,
    pub result: Value,
    /// Certificate polynomials as text, when the operation produces any.
    pub witness: Option<Vec<String>>,
}

impl Envelope {
    pub fn ok(result: impl Serialize) -> Self {
        Envelope { status: Status::Ok, result: serde_json::to_value(result).expect("serializable"), witness: None }
    }

    pub fn with_witness<I, S>(mut self, w: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.witness = Some(w.into_iter().map(|s| s.to_string()).collect());
        self
    }

    /// A domain error from the library.
    pub fn domain_error(kind: &str, message: impl Into<String>) -> Self {
        Envelope { status: Status::Error, result: json!({ "kind": kind, "message": message.into() }), witness: None }
    }

    /// A parse error, located in the named input.
    pub fn parse_error(e: &ParseError, source: &str) -> Self {
        Envelope {
            status: Status::Error,
            result: json!({
                "kind": "parse",
                "parse_kind": e.kind,
                "message": e.message,
                "source": source,
                "span": e.span,
            }),
            witness: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Checks that `v` has the envelope shape.
pub fn validate_envelope(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("envelope is not an object")?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "status" | "result" | "witness") {
            return Err(format!("unexpected key '{key}'"));
        }
    }
    match obj.get("status").and_then(Value::as_str) {
        Some("ok") | Some("error") => {}
        other => return Err(format!("bad status {other:?}")),
    }
    if !obj.contains_key("result") {
        return Err("missing 'result'".into());
    }
    match obj.get("witness") {
        None | Some(Value::Null) => {}
        Some(Value::Array(items)) if items.iter().all(Value::is_string) => {}
        Some(w) => return Err(format!("witness must be a list of strings, got {w}")),
    }
    if obj["status"] == "error" {
        let r = obj["result"].as_object().ok_or("error result is not an object")?;
        if !r.get("message").is_some_and(Value::is_string) || !r.get("kind").is_some_and(Value::is_string) {
            return Err("error result needs 'kind' and 'message'".into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::{ParseErrorKind, SourceSpan};

    #[test]
    fn envelopes_validate() {
        let ok = Envelope::ok(json!({ "degree": 2 })).with_witness(["x*y*z"]);
        let v: Value = serde_json::from_str(&ok.to_json()).unwrap();
        assert_eq!(v["status"], "ok");
        assert_eq!(v["witness"][0], "x*y*z");
        validate_envelope(&v).unwrap();
        let pe = ParseError::new(ParseErrorKind::Syntax, "boom", SourceSpan::new(1, 2));
        let v = serde_json::to_value(Envelope::parse_error(&pe, "a.map")).unwrap();
        assert_eq!(v["result"]["span"]["start"], 1);
        validate_envelope(&v).unwrap();
        assert!(validate_envelope(&json!({ "status": "maybe", "result": 1 })).is_err());
        assert!(validate_envelope(&json!({ "status": "ok", "result": 1, "extra": 0 })).is_err());
    }
}
