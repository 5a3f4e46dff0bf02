use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// 2D point in sketch-plane coordinates. Serialized as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product of two in-plane vectors.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Serialize for Vec2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.x)?;
        seq.serialize_element(&self.y)?;
        seq.end()
    }
}

/// 3D point or direction in model units. Serialized as `[x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn distance(self, o: Vec3) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        Vec3::new(self.x / n, self.y / n, self.z / n)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Serialize for Vec3 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(3))?;
        seq.serialize_element(&self.x)?;
        seq.serialize_element(&self.y)?;
        seq.serialize_element(&self.z)?;
        seq.end()
    }
}

/// Placement of a sketch plane: origin plus a right-handed orthonormal frame.
/// Sketch (u, v) coordinates map to `origin + u*x_axis + v*y_axis`; extrusion
/// runs along `z_axis`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoordinateSystem {
    pub origin: Vec3,
    pub x_axis: Vec3,
    pub y_axis: Vec3,
    pub z_axis: Vec3,
}

impl CoordinateSystem {
    /// Identity frame at the world origin.
    pub fn identity() -> Self {
        CoordinateSystem {
            origin: Vec3::ZERO,
            x_axis: Vec3::new(1.0, 0.0, 0.0),
            y_axis: Vec3::new(0.0, 1.0, 0.0),
            z_axis: Vec3::new(0.0, 0.0, 1.0),
        }
    }

    /// Map a sketch point at height `h` along the plane normal into 3D.
    pub fn to_world(&self, p: Vec2, h: f64) -> Vec3 {
        self.origin + self.x_axis * p.x + self.y_axis * p.y + self.z_axis * h
    }
}

/// One sketch primitive. Arcs are encoded by three points (start, mid, end)
/// so their orientation is unambiguous.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Curve {
    Line { start: Vec2, end: Vec2 },
    Arc { start: Vec2, mid: Vec2, end: Vec2 },
    Circle { center: Vec2, radius: f64 },
}

impl Curve {
    /// Start point for chaining, if the curve has endpoints.
    pub fn start_point(&self) -> Option<Vec2> {
        match self {
            Curve::Line { start, .. } | Curve::Arc { start, .. } => Some(*start),
            Curve::Circle { .. } => None,
        }
    }

    /// End point for chaining, if the curve has endpoints.
    pub fn end_point(&self) -> Option<Vec2> {
        match self {
            Curve::Line { end, .. } | Curve::Arc { end, .. } => Some(*end),
            Curve::Circle { .. } => None,
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, Curve::Circle { .. })
    }
}

/// Closed chain of curves: either a single circle, or two or more
/// endpoint-connected non-circle curves.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Loop {
    pub curves: Vec<Curve>,
}

/// A face with holes: the first loop is the outer boundary, the rest are holes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Profile {
    pub loops: Vec<Loop>,
}

/// Sketch contents of a part.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sketch {
    pub profiles: Vec<Profile>,
}

/// How an extruded body combines with the scene built so far.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BooleanOp {
    NewBody,
    Join,
    Cut,
    Intersect,
}

impl BooleanOp {
    pub fn as_str(&self) -> &'static str {
        match self {
            BooleanOp::NewBody => "new_body",
            BooleanOp::Join => "join",
            BooleanOp::Cut => "cut",
            BooleanOp::Intersect => "intersect",
        }
    }
}

/// Two-sided extrusion: `distance_toward` along +z_axis, `distance_opposite`
/// along -z_axis. Sketch coordinates are multiplied by `sketch_scale` before
/// placement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extrusion {
    pub distance_toward: f64,
    pub distance_opposite: f64,
    pub operation: BooleanOp,
    pub sketch_scale: f64,
}

impl Extrusion {
    pub fn total_distance(&self) -> f64 {
        self.distance_toward + self.distance_opposite
    }
}

/// One construction step: a placed sketch plus its extrusion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Part {
    pub coordinate_system: CoordinateSystem,
    pub sketch: Sketch,
    pub extrusion: Extrusion,
}

impl Part {
    pub fn profiles(&self) -> &[Profile] {
        &self.sketch.profiles
    }
}

/// A full construction history. The first part's operation must be `new_body`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CadSequence {
    pub parts: Vec<Part>,
}
