//! Minimal-JSON CAD construction sequences: typed model, strict parser,
//! canonical serializer, and invariant validation.
//!
//! A sequence is an ordered list of parts; each part places a sketch plane,
//! draws closed profiles out of lines, arcs, and circles, and extrudes them
//! into a solid combined with the bodies built so far.

mod error;
mod parse;
mod types;
mod validate;

pub use error::{ParseError, SchemaErrorKind};
pub use parse::parse_sequence;
pub use types::{
    BooleanOp, CadSequence, CoordinateSystem, Curve, Extrusion, Loop, Part, Profile, Sketch,
    Vec2, Vec3,
};
pub use validate::{validate, Violation, ViolationCode};

/// Loop-closure tolerance in model units: consecutive curve endpoints of a
/// non-circle loop must coincide within this distance.
pub const LOOP_CLOSURE_TOL: f64 = 1e-6;

/// Tolerance for unit-norm, orthogonality, and handedness checks on
/// coordinate-system axes.
pub const AXIS_TOL: f64 = 1e-6;

/// Minimum distance between distinct curve endpoints (degenerate-line guard).
pub const POINT_DISTINCT_TOL: f64 = 1e-9;

/// Serialize a sequence to its canonical JSON text: fixed key order, shortest
/// round-trip float rendering. `parse_sequence(serialize_sequence(seq))`
/// yields a structurally equal sequence.
pub fn serialize_sequence(seq: &CadSequence) -> String {
    serde_json::to_string(seq).expect("sequence serialization is infallible")
}
