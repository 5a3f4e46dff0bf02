use cad_schema::{
    parse_sequence, serialize_sequence, validate, BooleanOp, CadSequence, CoordinateSystem,
    Curve, Extrusion, Loop, ParseError, Part, Profile, Sketch, Vec2, Vec3, ViolationCode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn fixture_text() -> String {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/unit_square.json");
    std::fs::read_to_string(path).unwrap()
}

fn unit_square_loop() -> Loop {
    let p = [
        Vec2::new(0.0, 0.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(1.0, 1.0),
        Vec2::new(0.0, 1.0),
    ];
    Loop {
        curves: (0..4)
            .map(|i| Curve::Line {
                start: p[i],
                end: p[(i + 1) % 4],
            })
            .collect(),
    }
}

fn unit_square_sequence() -> CadSequence {
    CadSequence {
        parts: vec![Part {
            coordinate_system: CoordinateSystem::identity(),
            sketch: Sketch {
                profiles: vec![Profile {
                    loops: vec![unit_square_loop()],
                }],
            },
            extrusion: Extrusion {
                distance_toward: 1.0,
                distance_opposite: 0.0,
                operation: BooleanOp::NewBody,
                sketch_scale: 1.0,
            },
        }],
    }
}

#[test]
fn parses_documented_unit_square_fixture() {
    let seq = parse_sequence(&fixture_text()).unwrap();
    assert_eq!(seq.parts.len(), 1);
    assert_eq!(seq.parts[0].profiles().len(), 1);
    let curves = &seq.parts[0].profiles()[0].loops[0].curves;
    assert_eq!(curves.len(), 4);
    assert!(curves.iter().all(|c| matches!(c, Curve::Line { .. })));
    assert_eq!(seq, unit_square_sequence());
}

#[test]
fn negative_radius_is_invariant_violation_with_path() {
    let text = fixture_text().replace(
        r#"{ "type": "line", "start": [0.0, 0.0], "end": [1.0, 0.0] },"#,
        r#"{ "type": "circle", "center": [0.0, 0.0], "radius": -1.0 },"#,
    );
    match parse_sequence(&text) {
        Err(ParseError::InvariantViolation { violations }) => {
            assert!(violations
                .iter()
                .any(|v| v.code == ViolationCode::NonPositiveRadius
                    && v.path.starts_with("parts[0].sketch")
                    && v.path.ends_with("radius")));
        }
        other => panic!("expected invariant violation, got {other:?}"),
    }
}

#[test]
fn truncated_text_is_malformed_json() {
    let text = fixture_text();
    let truncated = &text[..text.len() / 2];
    assert!(matches!(
        parse_sequence(truncated),
        Err(ParseError::MalformedJson(_))
    ));
}

#[test]
fn unknown_keys_are_rejected() {
    let text = fixture_text().replace(
        r#""distance_toward": 1.0,"#,
        r#""distance_toward": 1.0, "taper_angle": 0.0,"#,
    );
    match parse_sequence(&text) {
        Err(ParseError::SchemaViolation { path, .. }) => {
            assert_eq!(path, "parts[0].extrusion.taper_angle");
        }
        other => panic!("expected schema violation, got {other:?}"),
    }
}

#[test]
fn missing_field_names_its_path() {
    let text = fixture_text().replace(r#""sketch_scale": 1.0"#, r#""sketch_scale2": 1.0"#);
    let err = parse_sequence(&text).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("parts[0].extrusion"), "got: {msg}");
}

#[test]
fn serialize_parse_is_fixpoint() {
    let seq = unit_square_sequence();
    let text = serialize_sequence(&seq);
    let back = parse_sequence(&text).unwrap();
    assert_eq!(back, seq);
    // Determinism: structurally equal values serialize byte-identically.
    assert_eq!(serialize_sequence(&back), text);
}

#[test]
fn parsing_ignores_whitespace_layout() {
    let pretty = fixture_text();
    let compact = serialize_sequence(&parse_sequence(&pretty).unwrap());
    assert_eq!(
        parse_sequence(&pretty).unwrap(),
        parse_sequence(&compact).unwrap()
    );
}

#[test]
fn floats_round_trip_exactly() {
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    let mut seq = unit_square_sequence();
    for _ in 0..1000 {
        let x = rng.random_range(-1.0e3..1.0e3) * rng.random_range(1.0e-6..1.0);
        seq.parts[0].coordinate_system.origin = Vec3::new(0.1 + 0.2, 0.0, x);
        let text = serialize_sequence(&seq);
        let back = parse_sequence(&text).unwrap();
        assert_eq!(back.parts[0].coordinate_system.origin.z.to_bits(), x.to_bits());
        assert_eq!(
            back.parts[0].coordinate_system.origin.x.to_bits(),
            (0.1f64 + 0.2).to_bits()
        );
    }
}

#[test]
fn validate_accepts_valid_sequence() {
    assert!(validate(&unit_square_sequence()).is_empty());
}

#[test]
fn validate_flags_first_op_not_new_body() {
    let mut seq = unit_square_sequence();
    seq.parts[0].extrusion.operation = BooleanOp::Cut;
    let violations = validate(&seq);
    assert!(violations
        .iter()
        .any(|v| v.code == ViolationCode::FirstOpNotNewBody));
}

#[test]
fn validate_detects_open_loop_beyond_tolerance() {
    let mut seq = unit_square_sequence();
    // Shift one endpoint by 1e-3, well past the 1e-6 closure tolerance.
    if let Curve::Line { end, .. } = &mut seq.parts[0].sketch.profiles[0].loops[0].curves[1] {
        end.y += 1.0e-3;
    }
    let violations = validate(&seq);
    assert!(
        violations.iter().any(|v| v.code == ViolationCode::OpenLoop),
        "got {violations:?}"
    );
    // A gap below tolerance is accepted.
    let mut seq = unit_square_sequence();
    if let Curve::Line { end, .. } = &mut seq.parts[0].sketch.profiles[0].loops[0].curves[1] {
        end.y += 1.0e-8;
    }
    assert!(validate(&seq)
        .iter()
        .all(|v| v.code != ViolationCode::OpenLoop));
}

#[test]
fn validate_is_total_on_hostile_values() {
    let mut seq = unit_square_sequence();
    seq.parts[0].coordinate_system.x_axis = Vec3::new(f64::NAN, 0.0, 0.0);
    seq.parts[0].extrusion.sketch_scale = f64::INFINITY;
    let violations = validate(&seq);
    assert!(violations
        .iter()
        .any(|v| v.code == ViolationCode::NonFiniteNumber));
}

#[test]
fn validate_flags_axis_problems() {
    let mut seq = unit_square_sequence();
    seq.parts[0].coordinate_system.x_axis = Vec3::new(2.0, 0.0, 0.0);
    assert!(validate(&seq)
        .iter()
        .any(|v| v.code == ViolationCode::NonUnitAxis));

    let mut seq = unit_square_sequence();
    // Left-handed frame: negate z.
    seq.parts[0].coordinate_system.z_axis = Vec3::new(0.0, 0.0, -1.0);
    assert!(validate(&seq)
        .iter()
        .any(|v| v.code == ViolationCode::LeftHandedFrame));
}

#[test]
fn circle_must_be_alone_in_loop() {
    let mut seq = unit_square_sequence();
    seq.parts[0].sketch.profiles[0].loops[0].curves.push(Curve::Circle {
        center: Vec2::new(0.5, 0.5),
        radius: 0.1,
    });
    assert!(validate(&seq)
        .iter()
        .any(|v| v.code == ViolationCode::CircleNotAlone));
}

/// Build a random valid sequence: random rotated frames, polygonal loops with
/// occasional arcs, circles as hole loops.
fn random_sequence(rng: &mut ChaCha12Rng) -> CadSequence {
    let n_parts = rng.random_range(1..=3);
    let mut parts = Vec::new();
    for pi in 0..n_parts {
        let cs = random_frame(rng);
        let n_sides = rng.random_range(3..=6);
        let radius = rng.random_range(0.5..2.0);
        let mut pts: Vec<Vec2> = (0..n_sides)
            .map(|i| {
                let a = i as f64 / n_sides as f64 * std::f64::consts::TAU;
                Vec2::new(radius * a.cos(), radius * a.sin())
            })
            .collect();
        // Nudge one vertex so shapes are irregular but stay convex-ish.
        pts[0].x += rng.random_range(0.0..0.2);
        let mut curves: Vec<Curve> = (0..n_sides)
            .map(|i| Curve::Line {
                start: pts[i],
                end: pts[(i + 1) % n_sides],
            })
            .collect();
        if rng.random_bool(0.4) {
            // Replace the first edge by an arc bulging outward.
            if let Curve::Line { start, end } = curves[0] {
                let m = (start + end) * 0.5;
                let out = m * (1.0 + 0.2 / m.norm().max(0.5));
                curves[0] = Curve::Arc { start, mid: out, end };
            }
        }
        let mut loops = vec![Loop { curves }];
        if rng.random_bool(0.5) {
            loops.push(Loop {
                curves: vec![Curve::Circle {
                    center: Vec2::new(0.0, 0.0),
                    radius: radius * 0.25,
                }],
            });
        }
        parts.push(Part {
            coordinate_system: cs,
            sketch: Sketch {
                profiles: vec![Profile { loops }],
            },
            extrusion: Extrusion {
                distance_toward: rng.random_range(0.0..2.0),
                distance_opposite: rng.random_range(0.1..1.0),
                operation: if pi == 0 {
                    BooleanOp::NewBody
                } else {
                    [BooleanOp::NewBody, BooleanOp::Join, BooleanOp::Cut, BooleanOp::Intersect]
                        [rng.random_range(0..4)]
                },
                sketch_scale: rng.random_range(0.2..3.0),
            },
        });
    }
    CadSequence { parts }
}

fn random_frame(rng: &mut ChaCha12Rng) -> CoordinateSystem {
    // Gram-Schmidt from two random directions.
    loop {
        let a = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let b = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if a.norm() < 1e-3 {
            continue;
        }
        let x = a.normalized();
        let b_perp = b - x * x.dot(b);
        if b_perp.norm() < 1e-3 {
            continue;
        }
        let y = b_perp.normalized();
        let z = x.cross(y);
        return CoordinateSystem {
            origin: Vec3::new(
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
            ),
            x_axis: x,
            y_axis: y,
            z_axis: z,
        };
    }
}

#[test]
fn parse_serialize_identity_over_random_sequences() {
    let mut rng = ChaCha12Rng::seed_from_u64(42);
    for trial in 0..200 {
        let seq = random_sequence(&mut rng);
        assert!(
            validate(&seq).is_empty(),
            "trial {trial}: generator produced invalid sequence: {:?}",
            validate(&seq)
        );
        let text = serialize_sequence(&seq);
        let back = parse_sequence(&text).unwrap();
        assert_eq!(back, seq, "trial {trial}");
        assert_eq!(serialize_sequence(&back), text, "trial {trial}");
    }
}
