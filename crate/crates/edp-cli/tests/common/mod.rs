//! Shared helpers for the CLI and acceptance suites: running the binary and
//! validating reports against the shipped schemas.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn edp_binary() -> &'static str {
    env!("CARGO_BIN_EXE_edp")
}

pub fn run_edp(args: &[&str]) -> Output {
    Command::new(edp_binary())
        .args(args)
        .output()
        .expect("edp binary should run")
}

pub fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

pub fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

pub fn load_schema(name: &str) -> Value {
    let path = schema_dir().join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    serde_json::from_str(&text).expect("schema parses")
}

/// Validates `value` against the subset of JSON Schema the shipped schemas
/// use: type (with null unions), enum, object properties / required /
/// additionalProperties, array items / minItems / maxItems, minimum, and
/// the one hex-digest pattern.
pub fn validate(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(types) = schema.get("type") {
        let names: Vec<&str> = match types {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().map(|t| t.as_str().expect("type name")).collect(),
            _ => panic!("bad type clause in schema"),
        };
        let ok = names.iter().any(|t| match *t {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            other => panic!("unsupported type {other}"),
        });
        if !ok {
            return Err(format!("{path}: expected {names:?}, got {value}"));
        }
    }
    if let Some(allowed) = schema.get("enum") {
        let allowed = allowed.as_array().expect("enum list");
        if !allowed.contains(value) {
            return Err(format!("{path}: {value} not in {allowed:?}"));
        }
    }
    if value.is_null() {
        return Ok(()); // nullable union already satisfied above
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_f64) {
        if let Some(v) = value.as_f64() {
            if v < min {
                return Err(format!("{path}: {v} below minimum {min}"));
            }
        }
    }
    if let Some(pattern) = schema.get("pattern").and_then(Value::as_str) {
        let s = value.as_str().ok_or_else(|| format!("{path}: pattern on non-string"))?;
        match pattern {
            "^[0-9a-f]{64}$" => {
                if s.len() != 64 || !s.chars().all(|c| c.is_ascii_hexdigit() && !c.is_uppercase())
                {
                    return Err(format!("{path}: not a sha256 hex digest: {s}"));
                }
            }
            other => panic!("unsupported pattern {other}"),
        }
    }
    if let Some(obj) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required {
                let key = key.as_str().expect("required key");
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required key {key}"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        let additional = schema.get("additionalProperties");
        for (key, child) in obj {
            let child_path = format!("{path}.{key}");
            match props.and_then(|p| p.get(key)) {
                Some(sub) => validate(sub, child, &child_path)?,
                None => match additional {
                    Some(Value::Bool(false)) => {
                        return Err(format!("{path}: unexpected key {key}"));
                    }
                    Some(Value::Bool(true)) | None => {}
                    Some(sub) => validate(sub, child, &child_path)?,
                },
            }
        }
    }
    if let Some(arr) = value.as_array() {
        if let Some(min_items) = schema.get("minItems").and_then(Value::as_u64) {
            if (arr.len() as u64) < min_items {
                return Err(format!("{path}: fewer than {min_items} items"));
            }
        }
        if let Some(max_items) = schema.get("maxItems").and_then(Value::as_u64) {
            if (arr.len() as u64) > max_items {
                return Err(format!("{path}: more than {max_items} items"));
            }
        }
        if let Some(items) = schema.get("items") {
            for (i, child) in arr.iter().enumerate() {
                validate(items, child, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

pub fn assert_valid(schema_name: &str, value: &Value) {
    let schema = load_schema(schema_name);
    if let Err(e) = validate(&schema, value, "$") {
        panic!("{schema_name} schema violation: {e}\nvalue: {value:#}");
    }
}
