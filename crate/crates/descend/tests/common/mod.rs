//! Helpers shared by the integration tests of the `descend` crate.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

use regex::Regex;
use serde_json::Value;

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn corpus_dir() -> PathBuf {
    manifest_dir().join("corpus")
}

pub fn schema(name: &str) -> Value {
    let path = manifest_dir().join("schemas").join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Runs the command line in-process and returns (exit code, stdout, stderr).
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("descend").chain(args.iter().copied());
    let code = descend::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

pub fn path_str(p: &Path) -> String {
    p.to_str().unwrap().to_string()
}

/// Validates `instance` against a JSON Schema restricted to the keywords
/// our schema files use. Any other keyword makes the check fail, so a schema
/// edit cannot silently widen what is accepted.
pub fn validate(schema: &Value, instance: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(schema, schema, instance, "$", &mut errors);
    errors
}

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.is_i64() || v.is_u64(),
        other => panic!("unknown type `{}` in schema", other),
    }
}

fn check(root: &Value, schema: &Value, v: &Value, at: &str, errors: &mut Vec<String>) {
    let Some(obj) = schema.as_object() else {
        if schema == &Value::Bool(false) {
            errors.push(format!("{}: not allowed", at));
        }
        return;
    };
    for (key, s) in obj {
        match key.as_str() {
            "$schema" | "title" | "description" | "$defs" => {}
            "$ref" => {
                let name = s.as_str().unwrap().strip_prefix("#/$defs/").unwrap();
                check(root, &root["$defs"][name], v, at, errors);
            }
            "type" => {
                let ok = match s {
                    Value::String(t) => type_matches(t, v),
                    Value::Array(ts) => ts.iter().any(|t| type_matches(t.as_str().unwrap(), v)),
                    _ => panic!("bad type keyword"),
                };
                if !ok {
                    errors.push(format!("{}: expected type {}, got {}", at, s, v));
                }
            }
            "enum" => {
                if !s.as_array().unwrap().contains(v) {
                    errors.push(format!("{}: {} not in {}", at, v, s));
                }
            }
            "minimum" => {
                if let Some(x) = v.as_f64() {
                    if x < s.as_f64().unwrap() {
                        errors.push(format!("{}: {} below {}", at, x, s));
                    }
                }
            }
            "maximum" => {
                if let Some(x) = v.as_f64() {
                    if x > s.as_f64().unwrap() {
                        errors.push(format!("{}: {} above {}", at, x, s));
                    }
                }
            }
            "pattern" => {
                if let Some(text) = v.as_str() {
                    if !Regex::new(s.as_str().unwrap()).unwrap().is_match(text) {
                        errors.push(format!("{}: `{}` does not match {}", at, text, s));
                    }
                }
            }
            "minItems" => {
                if let Some(a) = v.as_array() {
                    if (a.len() as u64) < s.as_u64().unwrap() {
                        errors.push(format!("{}: fewer than {} items", at, s));
                    }
                }
            }
            "items" => {
                if let Some(a) = v.as_array() {
                    for (i, item) in a.iter().enumerate() {
                        check(root, s, item, &format!("{}[{}]", at, i), errors);
                    }
                }
            }
            "required" => {
                if let Some(o) = v.as_object() {
                    for name in s.as_array().unwrap() {
                        if !o.contains_key(name.as_str().unwrap()) {
                            errors.push(format!("{}: missing `{}`", at, name));
                        }
                    }
                }
            }
            "properties" => {
                if let Some(o) = v.as_object() {
                    for (name, sub) in s.as_object().unwrap() {
                        if let Some(field) = o.get(name) {
                            check(root, sub, field, &format!("{}.{}", at, name), errors);
                        }
                    }
                }
            }
            "additionalProperties" => {
                if let Some(o) = v.as_object() {
                    let declared = obj.get("properties").and_then(Value::as_object);
                    for (name, field) in o {
                        if declared.is_some_and(|d| d.contains_key(name)) {
                            continue;
                        }
                        check(root, s, field, &format!("{}.{}", at, name), errors);
                    }
                }
            }
            "propertyNames" => {
                if let Some(o) = v.as_object() {
                    for name in o.keys() {
                        check(
                            root,
                            s,
                            &Value::String(name.clone()),
                            &format!("{}<{}>", at, name),
                            errors,
                        );
                    }
                }
            }
            other => panic!(
                "schema keyword `{}` is not supported by the test validator",
                other
            ),
        }
    }
}
