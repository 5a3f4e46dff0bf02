//! Strict parser from JSON text to [`CadSequence`]: unknown keys are
//! rejected, every field is required, and all model invariants are enforced
//! before a sequence is returned.

use serde_json::{Map, Value};

use crate::error::{ParseError, SchemaErrorKind};
use crate::types::*;
use crate::validate::validate;

/// Parse and fully validate minimal-JSON sequence text.
pub fn parse_sequence(text: &str) -> Result<CadSequence, ParseError> {
    let value: Value = serde_json::from_str(text)?;
    let seq = walk_document(&value)?;
    let violations = validate(&seq);
    if violations.is_empty() {
        Ok(seq)
    } else {
        Err(ParseError::InvariantViolation { violations })
    }
}

fn walk_document(value: &Value) -> Result<CadSequence, ParseError> {
    let root = as_object(value, "")?;
    check_keys(root, "", &["parts"])?;
    let parts_val = require(root, "", "parts")?;
    let parts_arr = as_array(parts_val, "parts")?;
    let mut parts = Vec::with_capacity(parts_arr.len());
    for (i, pv) in parts_arr.iter().enumerate() {
        parts.push(walk_part(pv, &format!("parts[{i}]"))?);
    }
    Ok(CadSequence { parts })
}

fn walk_part(value: &Value, path: &str) -> Result<Part, ParseError> {
    let obj = as_object(value, path)?;
    check_keys(obj, path, &["coordinate_system", "sketch", "extrusion"])?;
    let cs = walk_coordinate_system(
        require(obj, path, "coordinate_system")?,
        &format!("{path}.coordinate_system"),
    )?;
    let sketch = walk_sketch(require(obj, path, "sketch")?, &format!("{path}.sketch"))?;
    let extrusion = walk_extrusion(
        require(obj, path, "extrusion")?,
        &format!("{path}.extrusion"),
    )?;
    Ok(Part {
        coordinate_system: cs,
        sketch,
        extrusion,
    })
}

fn walk_coordinate_system(value: &Value, path: &str) -> Result<CoordinateSystem, ParseError> {
    let obj = as_object(value, path)?;
    check_keys(obj, path, &["origin", "x_axis", "y_axis", "z_axis"])?;
    Ok(CoordinateSystem {
        origin: walk_vec3(require(obj, path, "origin")?, &format!("{path}.origin"))?,
        x_axis: walk_vec3(require(obj, path, "x_axis")?, &format!("{path}.x_axis"))?,
        y_axis: walk_vec3(require(obj, path, "y_axis")?, &format!("{path}.y_axis"))?,
        z_axis: walk_vec3(require(obj, path, "z_axis")?, &format!("{path}.z_axis"))?,
    })
}

fn walk_sketch(value: &Value, path: &str) -> Result<Sketch, ParseError> {
    let obj = as_object(value, path)?;
    check_keys(obj, path, &["profiles"])?;
    let arr = as_array(require(obj, path, "profiles")?, &format!("{path}.profiles"))?;
    let mut profiles = Vec::with_capacity(arr.len());
    for (i, pv) in arr.iter().enumerate() {
        profiles.push(walk_profile(pv, &format!("{path}.profiles[{i}]"))?);
    }
    Ok(Sketch { profiles })
}

fn walk_profile(value: &Value, path: &str) -> Result<Profile, ParseError> {
    let obj = as_object(value, path)?;
    check_keys(obj, path, &["loops"])?;
    let arr = as_array(require(obj, path, "loops")?, &format!("{path}.loops"))?;
    let mut loops = Vec::with_capacity(arr.len());
    for (i, lv) in arr.iter().enumerate() {
        loops.push(walk_loop(lv, &format!("{path}.loops[{i}]"))?);
    }
    Ok(Profile { loops })
}

fn walk_loop(value: &Value, path: &str) -> Result<Loop, ParseError> {
    let obj = as_object(value, path)?;
    check_keys(obj, path, &["curves"])?;
    let arr = as_array(require(obj, path, "curves")?, &format!("{path}.curves"))?;
    let mut curves = Vec::with_capacity(arr.len());
    for (i, cv) in arr.iter().enumerate() {
        curves.push(walk_curve(cv, &format!("{path}.curves[{i}]"))?);
    }
    Ok(Loop { curves })
}

fn walk_curve(value: &Value, path: &str) -> Result<Curve, ParseError> {
    let obj = as_object(value, path)?;
    let ty_val = require(obj, path, "type")?;
    let ty = ty_val.as_str().ok_or_else(|| {
        ParseError::schema(
            format!("{path}.type"),
            SchemaErrorKind::WrongType,
            "expected string",
        )
    })?;
    match ty {
        "line" => {
            check_keys(obj, path, &["type", "start", "end"])?;
            Ok(Curve::Line {
                start: walk_vec2(require(obj, path, "start")?, &format!("{path}.start"))?,
                end: walk_vec2(require(obj, path, "end")?, &format!("{path}.end"))?,
            })
        }
        "arc" => {
            check_keys(obj, path, &["type", "start", "mid", "end"])?;
            Ok(Curve::Arc {
                start: walk_vec2(require(obj, path, "start")?, &format!("{path}.start"))?,
                mid: walk_vec2(require(obj, path, "mid")?, &format!("{path}.mid"))?,
                end: walk_vec2(require(obj, path, "end")?, &format!("{path}.end"))?,
            })
        }
        "circle" => {
            check_keys(obj, path, &["type", "center", "radius"])?;
            Ok(Curve::Circle {
                center: walk_vec2(require(obj, path, "center")?, &format!("{path}.center"))?,
                radius: walk_number(require(obj, path, "radius")?, &format!("{path}.radius"))?,
            })
        }
        other => Err(ParseError::schema(
            format!("{path}.type"),
            SchemaErrorKind::UnknownVariant,
            format!("unknown curve type {other:?} (expected line, arc, or circle)"),
        )),
    }
}

fn walk_extrusion(value: &Value, path: &str) -> Result<Extrusion, ParseError> {
    let obj = as_object(value, path)?;
    check_keys(
        obj,
        path,
        &["distance_toward", "distance_opposite", "operation", "sketch_scale"],
    )?;
    let op_path = format!("{path}.operation");
    let op_val = require(obj, path, "operation")?;
    let op_str = op_val.as_str().ok_or_else(|| {
        ParseError::schema(&op_path, SchemaErrorKind::WrongType, "expected string")
    })?;
    let operation = match op_str {
        "new_body" => BooleanOp::NewBody,
        "join" => BooleanOp::Join,
        "cut" => BooleanOp::Cut,
        "intersect" => BooleanOp::Intersect,
        other => {
            return Err(ParseError::schema(
                &op_path,
                SchemaErrorKind::UnknownVariant,
                format!("unknown operation {other:?}"),
            ))
        }
    };
    Ok(Extrusion {
        distance_toward: walk_number(
            require(obj, path, "distance_toward")?,
            &format!("{path}.distance_toward"),
        )?,
        distance_opposite: walk_number(
            require(obj, path, "distance_opposite")?,
            &format!("{path}.distance_opposite"),
        )?,
        operation,
        sketch_scale: walk_number(
            require(obj, path, "sketch_scale")?,
            &format!("{path}.sketch_scale"),
        )?,
    })
}

fn walk_vec2(value: &Value, path: &str) -> Result<Vec2, ParseError> {
    let arr = as_array(value, path)?;
    if arr.len() != 2 {
        return Err(ParseError::schema(
            path,
            SchemaErrorKind::WrongArity,
            format!("expected 2 components, got {}", arr.len()),
        ));
    }
    Ok(Vec2::new(
        walk_number(&arr[0], &format!("{path}[0]"))?,
        walk_number(&arr[1], &format!("{path}[1]"))?,
    ))
}

fn walk_vec3(value: &Value, path: &str) -> Result<Vec3, ParseError> {
    let arr = as_array(value, path)?;
    if arr.len() != 3 {
        return Err(ParseError::schema(
            path,
            SchemaErrorKind::WrongArity,
            format!("expected 3 components, got {}", arr.len()),
        ));
    }
    Ok(Vec3::new(
        walk_number(&arr[0], &format!("{path}[0]"))?,
        walk_number(&arr[1], &format!("{path}[1]"))?,
        walk_number(&arr[2], &format!("{path}[2]"))?,
    ))
}

fn walk_number(value: &Value, path: &str) -> Result<f64, ParseError> {
    value.as_f64().ok_or_else(|| {
        ParseError::schema(path, SchemaErrorKind::WrongType, "expected number")
    })
}

fn as_object<'a>(value: &'a Value, path: &str) -> Result<&'a Map<String, Value>, ParseError> {
    value.as_object().ok_or_else(|| {
        ParseError::schema(
            display_path(path),
            SchemaErrorKind::WrongType,
            "expected object",
        )
    })
}

fn as_array<'a>(value: &'a Value, path: &str) -> Result<&'a Vec<Value>, ParseError> {
    value.as_array().ok_or_else(|| {
        ParseError::schema(
            display_path(path),
            SchemaErrorKind::WrongType,
            "expected array",
        )
    })
}

fn require<'a>(
    obj: &'a Map<String, Value>,
    path: &str,
    key: &str,
) -> Result<&'a Value, ParseError> {
    obj.get(key).ok_or_else(|| {
        ParseError::schema(
            join(path, key),
            SchemaErrorKind::MissingField,
            format!("missing required field {key:?}"),
        )
    })
}

fn check_keys(obj: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<(), ParseError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(ParseError::schema(
                join(path, key),
                SchemaErrorKind::UnknownField,
                format!("unknown field {key:?}"),
            ));
        }
    }
    Ok(())
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn display_path(path: &str) -> String {
    if path.is_empty() {
        "$".to_string()
    } else {
        path.to_string()
    }
}
