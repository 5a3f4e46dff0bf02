//! Model-invariant validation. Violations are data, not errors: callers that
//! score invalidity consume the whole list.

use std::fmt;

use crate::types::*;
use crate::{AXIS_TOL, LOOP_CLOSURE_TOL, POINT_DISTINCT_TOL};

/// Reason code for a single invariant failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationCode {
    NonFiniteNumber,
    NonUnitAxis,
    NonOrthogonalAxes,
    LeftHandedFrame,
    DegenerateLine,
    DegenerateArc,
    NonPositiveRadius,
    EmptyLoop,
    CircleNotAlone,
    TooFewCurves,
    OpenLoop,
    EmptyProfile,
    EmptySketch,
    EmptyParts,
    FirstOpNotNewBody,
    NegativeDistance,
    ZeroExtent,
    NonPositiveSketchScale,
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One invariant failure, pointing at the JSON path of the offending value.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub path: String,
    pub code: ViolationCode,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.code, self.path, self.detail)
    }
}

struct Ctx {
    violations: Vec<Violation>,
}

impl Ctx {
    fn push(&mut self, path: String, code: ViolationCode, detail: impl Into<String>) {
        self.violations.push(Violation {
            path,
            code,
            detail: detail.into(),
        });
    }
}

/// Check every type invariant of a sequence. Returns an empty list iff the
/// sequence is valid. Total: never panics, regardless of input values.
pub fn validate(seq: &CadSequence) -> Vec<Violation> {
    let mut ctx = Ctx { violations: Vec::new() };

    if seq.parts.is_empty() {
        ctx.push("parts".into(), ViolationCode::EmptyParts, "sequence has no parts");
    } else if seq.parts[0].extrusion.operation != BooleanOp::NewBody {
        ctx.push(
            "parts[0].extrusion.operation".into(),
            ViolationCode::FirstOpNotNewBody,
            format!(
                "first part must be new_body, got {}",
                seq.parts[0].extrusion.operation.as_str()
            ),
        );
    }

    for (pi, part) in seq.parts.iter().enumerate() {
        let base = format!("parts[{pi}]");
        check_coordinate_system(&mut ctx, &part.coordinate_system, &format!("{base}.coordinate_system"));
        check_sketch(&mut ctx, &part.sketch, &format!("{base}.sketch"));
        check_extrusion(&mut ctx, &part.extrusion, &format!("{base}.extrusion"));
    }

    ctx.violations
}

fn check_vec3(ctx: &mut Ctx, v: Vec3, path: &str) -> bool {
    if !v.is_finite() {
        ctx.push(path.into(), ViolationCode::NonFiniteNumber, "component is NaN or infinite");
        return false;
    }
    true
}

fn check_vec2(ctx: &mut Ctx, v: Vec2, path: &str) -> bool {
    if !v.is_finite() {
        ctx.push(path.into(), ViolationCode::NonFiniteNumber, "component is NaN or infinite");
        return false;
    }
    true
}

fn check_coordinate_system(ctx: &mut Ctx, cs: &CoordinateSystem, path: &str) {
    let mut finite = check_vec3(ctx, cs.origin, &format!("{path}.origin"));
    finite &= check_vec3(ctx, cs.x_axis, &format!("{path}.x_axis"));
    finite &= check_vec3(ctx, cs.y_axis, &format!("{path}.y_axis"));
    finite &= check_vec3(ctx, cs.z_axis, &format!("{path}.z_axis"));
    if !finite {
        return;
    }

    for (name, axis) in [("x_axis", cs.x_axis), ("y_axis", cs.y_axis), ("z_axis", cs.z_axis)] {
        if (axis.norm() - 1.0).abs() > AXIS_TOL {
            ctx.push(
                format!("{path}.{name}"),
                ViolationCode::NonUnitAxis,
                format!("norm {} is not 1 within {AXIS_TOL}", axis.norm()),
            );
        }
    }
    for (an, a, bn, b) in [
        ("x_axis", cs.x_axis, "y_axis", cs.y_axis),
        ("y_axis", cs.y_axis, "z_axis", cs.z_axis),
        ("x_axis", cs.x_axis, "z_axis", cs.z_axis),
    ] {
        if a.dot(b).abs() > AXIS_TOL {
            ctx.push(
                path.into(),
                ViolationCode::NonOrthogonalAxes,
                format!("{an} and {bn} have dot product {}", a.dot(b)),
            );
        }
    }
    let cross = cs.x_axis.cross(cs.y_axis);
    if (cross - cs.z_axis).norm() > AXIS_TOL {
        ctx.push(
            format!("{path}.z_axis"),
            ViolationCode::LeftHandedFrame,
            "z_axis does not equal cross(x_axis, y_axis)",
        );
    }
}

fn check_sketch(ctx: &mut Ctx, sketch: &Sketch, path: &str) {
    if sketch.profiles.is_empty() {
        ctx.push(format!("{path}.profiles"), ViolationCode::EmptySketch, "sketch has no profiles");
    }
    for (i, profile) in sketch.profiles.iter().enumerate() {
        check_profile(ctx, profile, &format!("{path}.profiles[{i}]"));
    }
}

fn check_profile(ctx: &mut Ctx, profile: &Profile, path: &str) {
    if profile.loops.is_empty() {
        ctx.push(format!("{path}.loops"), ViolationCode::EmptyProfile, "profile has no loops");
    }
    for (i, lp) in profile.loops.iter().enumerate() {
        check_loop(ctx, lp, &format!("{path}.loops[{i}]"));
    }
}

fn check_loop(ctx: &mut Ctx, lp: &Loop, path: &str) {
    if lp.curves.is_empty() {
        ctx.push(format!("{path}.curves"), ViolationCode::EmptyLoop, "loop has no curves");
        return;
    }

    let n_circles = lp.curves.iter().filter(|c| c.is_circle()).count();
    if n_circles > 0 && lp.curves.len() > 1 {
        ctx.push(
            format!("{path}.curves"),
            ViolationCode::CircleNotAlone,
            "a circle must be the only curve in its loop",
        );
    } else if n_circles == 0 && lp.curves.len() < 2 {
        ctx.push(
            format!("{path}.curves"),
            ViolationCode::TooFewCurves,
            "a non-circle loop needs at least 2 curves",
        );
    }

    let mut all_finite = true;
    for (i, curve) in lp.curves.iter().enumerate() {
        all_finite &= check_curve(ctx, curve, &format!("{path}.curves[{i}]"));
    }

    // Closure only makes sense for chains of finite, endpoint-bearing curves.
    if n_circles == 0 && all_finite && lp.curves.len() >= 2 {
        let k = lp.curves.len();
        for i in 0..k {
            let end = lp.curves[i].end_point();
            let start = lp.curves[(i + 1) % k].start_point();
            if let (Some(e), Some(s)) = (end, start) {
                let gap = e.distance(s);
                if gap > LOOP_CLOSURE_TOL {
                    ctx.push(
                        format!("{path}.curves[{i}]"),
                        ViolationCode::OpenLoop,
                        format!(
                            "end of curve {i} is {gap:.3e} from start of curve {} (tolerance {LOOP_CLOSURE_TOL:.0e})",
                            (i + 1) % k
                        ),
                    );
                }
            }
        }
    }
}

fn check_curve(ctx: &mut Ctx, curve: &Curve, path: &str) -> bool {
    match curve {
        Curve::Line { start, end } => {
            let f = check_vec2(ctx, *start, &format!("{path}.start"))
                & check_vec2(ctx, *end, &format!("{path}.end"));
            if f && start.distance(*end) <= POINT_DISTINCT_TOL {
                ctx.push(
                    path.into(),
                    ViolationCode::DegenerateLine,
                    "line start and end coincide",
                );
            }
            f
        }
        Curve::Arc { start, mid, end } => {
            let f = check_vec2(ctx, *start, &format!("{path}.start"))
                & check_vec2(ctx, *mid, &format!("{path}.mid"))
                & check_vec2(ctx, *end, &format!("{path}.end"));
            if f {
                let distinct = start.distance(*mid) > POINT_DISTINCT_TOL
                    && mid.distance(*end) > POINT_DISTINCT_TOL
                    && start.distance(*end) > POINT_DISTINCT_TOL;
                // Twice the signed triangle area; zero means no circumcircle.
                let area2 = (*mid - *start).cross(*end - *start);
                if !distinct || area2.abs() <= POINT_DISTINCT_TOL {
                    ctx.push(
                        path.into(),
                        ViolationCode::DegenerateArc,
                        "arc points are collinear or coincident",
                    );
                }
            }
            f
        }
        Curve::Circle { center, radius } => {
            let mut f = check_vec2(ctx, *center, &format!("{path}.center"));
            if !radius.is_finite() {
                ctx.push(
                    format!("{path}.radius"),
                    ViolationCode::NonFiniteNumber,
                    "radius is NaN or infinite",
                );
                f = false;
            } else if *radius <= 0.0 {
                ctx.push(
                    format!("{path}.radius"),
                    ViolationCode::NonPositiveRadius,
                    format!("radius {radius} must be > 0"),
                );
            }
            f
        }
    }
}

fn check_extrusion(ctx: &mut Ctx, ext: &Extrusion, path: &str) {
    let mut finite = true;
    for (name, v) in [
        ("distance_toward", ext.distance_toward),
        ("distance_opposite", ext.distance_opposite),
        ("sketch_scale", ext.sketch_scale),
    ] {
        if !v.is_finite() {
            ctx.push(
                format!("{path}.{name}"),
                ViolationCode::NonFiniteNumber,
                "value is NaN or infinite",
            );
            finite = false;
        }
    }
    if !finite {
        return;
    }
    for (name, v) in [
        ("distance_toward", ext.distance_toward),
        ("distance_opposite", ext.distance_opposite),
    ] {
        if v < 0.0 {
            ctx.push(
                format!("{path}.{name}"),
                ViolationCode::NegativeDistance,
                format!("{name} {v} must be >= 0"),
            );
        }
    }
    if ext.distance_toward + ext.distance_opposite <= 0.0 {
        ctx.push(
            path.into(),
            ViolationCode::ZeroExtent,
            "distance_toward + distance_opposite must be > 0",
        );
    }
    if ext.sketch_scale <= 0.0 {
        ctx.push(
            format!("{path}.sketch_scale"),
            ViolationCode::NonPositiveSketchScale,
            format!("sketch_scale {} must be > 0", ext.sketch_scale),
        );
    }
}
