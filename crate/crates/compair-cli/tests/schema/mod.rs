//! Minimal JSON Schema checker covering exactly the keyword subset used by
//! the schemas shipped under `schemas/`. Unknown keywords are an error, so a
//! schema cannot silently contain constraints this checker does not enforce.

use std::path::Path;

use serde_json::Value;

const METADATA_KEYS: &[&str] = &["$schema", "title", "description", "$defs"];
const KNOWN_KEYS: &[&str] = &[
    "$ref",
    "type",
    "enum",
    "const",
    "required",
    "properties",
    "additionalProperties",
    "items",
    "oneOf",
    "minimum",
];

pub fn validate_file(schema_path: &Path, value: &Value) -> Result<(), String> {
    let text = std::fs::read_to_string(schema_path)
        .map_err(|e| format!("cannot read {}: {e}", schema_path.display()))?;
    let schema: Value =
        serde_json::from_str(&text).map_err(|e| format!("schema is not JSON: {e}"))?;
    validate(value, &schema, &schema)
}

fn lookup_ref<'a>(root: &'a Value, reference: &str) -> Result<&'a Value, String> {
    let name = reference
        .strip_prefix("#/$defs/")
        .ok_or_else(|| format!("unsupported $ref \"{reference}\""))?;
    root.get("$defs")
        .and_then(|defs| defs.get(name))
        .ok_or_else(|| format!("dangling $ref \"{reference}\""))
}

fn validate(value: &Value, schema: &Value, root: &Value) -> Result<(), String> {
    let obj = schema
        .as_object()
        .ok_or_else(|| "schema node must be an object".to_string())?;
    for key in obj.keys() {
        if !METADATA_KEYS.contains(&key.as_str()) && !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(format!("schema keyword \"{key}\" is not supported"));
        }
    }

    if let Some(reference) = obj.get("$ref") {
        let reference = reference.as_str().ok_or("$ref must be a string")?;
        return validate(value, lookup_ref(root, reference)?, root);
    }

    if let Some(branches) = obj.get("oneOf") {
        let branches = branches.as_array().ok_or("oneOf must be an array")?;
        let matching = branches
            .iter()
            .filter(|branch| validate(value, branch, root).is_ok())
            .count();
        if matching != 1 {
            return Err(format!(
                "{matching} of {} oneOf branches match {value}",
                branches.len()
            ));
        }
    }

    if let Some(expected) = obj.get("const") {
        if value != expected {
            return Err(format!("expected const {expected}, got {value}"));
        }
    }

    if let Some(choices) = obj.get("enum") {
        let choices = choices.as_array().ok_or("enum must be an array")?;
        if !choices.contains(value) {
            return Err(format!("{value} is not one of {choices:?}"));
        }
    }

    if let Some(types) = obj.get("type") {
        let names: Vec<&str> = match types {
            Value::String(s) => vec![s.as_str()],
            Value::Array(list) => list.iter().filter_map(|t| t.as_str()).collect(),
            _ => return Err("type must be a string or array".into()),
        };
        let matches = names.iter().any(|name| match *name {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
            "number" => value.is_number(),
            other => panic!("unsupported type name \"{other}\""),
        });
        if !matches {
            return Err(format!("{value} does not have type {names:?}"));
        }
    }

    if let Some(minimum) = obj.get("minimum") {
        if let (Some(min), Some(v)) = (minimum.as_i64(), value.as_i64()) {
            if v < min {
                return Err(format!("{v} is below minimum {min}"));
            }
        }
    }

    if let Some(required) = obj.get("required") {
        let required = required.as_array().ok_or("required must be an array")?;
        let map = value
            .as_object()
            .ok_or_else(|| format!("expected an object, got {value}"))?;
        for key in required {
            let key = key.as_str().ok_or("required entries must be strings")?;
            if !map.contains_key(key) {
                return Err(format!("missing required property \"{key}\""));
            }
        }
    }

    if let Some(properties) = obj.get("properties") {
        let properties = properties.as_object().ok_or("properties must be an object")?;
        if let Some(map) = value.as_object() {
            for (key, subschema) in properties {
                if let Some(subvalue) = map.get(key) {
                    validate(subvalue, subschema, root)
                        .map_err(|e| format!("property \"{key}\": {e}"))?;
                }
            }
            if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
                for key in map.keys() {
                    if !properties.contains_key(key) {
                        return Err(format!("unexpected property \"{key}\""));
                    }
                }
            }
        }
    }

    if let Some(items) = obj.get("items") {
        if let Some(list) = value.as_array() {
            for (i, item) in list.iter().enumerate() {
                validate(item, items, root).map_err(|e| format!("item {i}: {e}"))?;
            }
        }
    }

    Ok(())
}
