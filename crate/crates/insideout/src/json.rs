//! JSON records (schema version 1) and the small input files the CLI reads.
//!
//! Exact scalars are written as strings, `"p/q"` or `"p"`; approximate ones
//! as JSON numbers with 17 significant digits. On input, strings and numbers
//! are both accepted: integers and `p/q` strings are exact, anything with a
//! fraction or exponent is approximate.

use std::str::FromStr;

use serde_json::{Map, Number, Value};

use insideout_core::kernel::{
    CellComplex, ConvexPolyhedron, Mat2, Mat3, Motion2, Motion3, NumericMode, Polyhedron, Scalar, SimplePolygon, Vec2,
    Vec3,
};
use insideout_core::model::{
    Anchor, ChainPlan, Condition, Dissection, FacetOrigin, Metadata, PlanarDissection, PlanarPiece, SolidDissection,
    SolidPiece, VerificationReport, Violation,
};

use crate::IoError;

pub const SCHEMA_VERSION: u64 = 1;

/// A JSON value together with its path, for error messages.
#[derive(Clone, Copy)]
struct At<'a> {
    value: &'a Value,
    path: &'a str,
}

fn schema(path: &str, message: impl Into<String>) -> IoError {
    IoError::Schema { path: path.to_string(), message: message.into() }
}

impl<'a> At<'a> {
    fn err(&self, message: impl Into<String>) -> IoError {
        schema(self.path, message)
    }

    fn object(&self) -> Result<&'a Map<String, Value>, IoError> {
        self.value.as_object().ok_or_else(|| self.err("expected an object"))
    }

    fn get(&self, key: &str) -> Option<(&'a Value, String)> {
        self.value.as_object()?.get(key).map(|v| (v, format!("{}.{key}", self.path)))
    }

    fn array(&self) -> Result<&'a [Value], IoError> {
        self.value.as_array().map(Vec::as_slice).ok_or_else(|| self.err("expected an array"))
    }

    fn str(&self) -> Result<&'a str, IoError> {
        self.value.as_str().ok_or_else(|| self.err("expected a string"))
    }

    fn u64(&self) -> Result<u64, IoError> {
        self.value.as_u64().ok_or_else(|| self.err("expected a non-negative integer"))
    }

    fn bool(&self) -> Result<bool, IoError> {
        self.value.as_bool().ok_or_else(|| self.err("expected a boolean"))
    }

    fn scalar(&self) -> Result<Scalar, IoError> {
        let text = match self.value {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(self.err("expected a number or a \"p/q\" string")),
        };
        Scalar::from_str(text.trim()).map_err(|_| IoError::NumberFormat { path: self.path.to_string(), text })
    }
}

/// Runs `f` on the child at `key`, failing when it is missing.
fn field<T>(at: At, key: &str, f: impl FnOnce(At) -> Result<T, IoError>) -> Result<T, IoError> {
    let (value, path) = at.get(key).ok_or_else(|| at.err(format!("missing key {key:?}")))?;
    f(At { value, path: &path })
}

fn optional<T>(at: At, key: &str, f: impl FnOnce(At) -> Result<T, IoError>) -> Result<Option<T>, IoError> {
    match at.get(key) {
        None | Some((Value::Null, _)) => Ok(None),
        Some((value, path)) => f(At { value, path: &path }).map(Some),
    }
}

fn each<T>(at: At, mut f: impl FnMut(At) -> Result<T, IoError>) -> Result<Vec<T>, IoError> {
    at.array()?
        .iter()
        .enumerate()
        .map(|(i, value)| {
            let path = format!("{}[{i}]", at.path);
            f(At { value, path: &path })
        })
        .collect()
}

fn scalars(at: At, len: usize) -> Result<Vec<Scalar>, IoError> {
    let xs = each(at, |x| x.scalar())?;
    if xs.len() != len {
        return Err(at.err(format!("expected {len} numbers, found {}", xs.len())));
    }
    Ok(xs)
}

fn vec2(at: At) -> Result<Vec2, IoError> {
    let mut xs = scalars(at, 2)?.into_iter();
    Ok(Vec2::new(xs.next().unwrap(), xs.next().unwrap()))
}

fn vec3(at: At) -> Result<Vec3, IoError> {
    let xs: [Scalar; 3] = scalars(at, 3)?.try_into().expect("length checked");
    Ok(Vec3::from_coords(xs))
}

fn faces(at: At) -> Result<Vec<Vec<usize>>, IoError> {
    each(at, |f| each(f, |i| i.u64().map(|i| i as usize)))
}

fn motion2(at: At) -> Result<Motion2, IoError> {
    let rows = field(at, "rotation", |r| each(r, |row| scalars(row, 2)))?;
    if rows.len() != 2 {
        return Err(at.err("rotation must be 2x2"));
    }
    let m: [[Scalar; 2]; 2] = rows
        .into_iter()
        .map(|r| <[Scalar; 2]>::try_from(r).expect("length checked"))
        .collect::<Vec<_>>()
        .try_into()
        .expect("length checked");
    Ok(Motion2::new(Mat2(m), field(at, "translation", vec2)?))
}

fn motion3(at: At) -> Result<Motion3, IoError> {
    let rows = field(at, "rotation", |r| each(r, |row| scalars(row, 3)))?;
    if rows.len() != 3 {
        return Err(at.err("rotation must be 3x3"));
    }
    let m: [[Scalar; 3]; 3] = rows
        .into_iter()
        .map(|r| <[Scalar; 3]>::try_from(r).expect("length checked"))
        .collect::<Vec<_>>()
        .try_into()
        .expect("length checked");
    Ok(Motion3::new(Mat3(m), field(at, "translation", vec3)?))
}

fn facet_origin(at: At) -> Result<Vec<FacetOrigin>, IoError> {
    each(at, |x| match x.str()? {
        "boundary" => Ok(FacetOrigin::Boundary),
        "cut" => Ok(FacetOrigin::Cut),
        other => Err(x.err(format!("unknown facet origin {other:?}"))),
    })
}

fn metadata(at: At) -> Result<Metadata, IoError> {
    at.object()?;
    Ok(Metadata {
        construction: optional(at, "construction", |x| x.str().map(str::to_string))?,
        stiffness: optional(at, "stiffness", |x| {
            let text = match x.value {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return Err(x.err("expected an integer")),
            };
            text.parse::<u128>().map_err(|_| x.err("expected an integer"))
        })?,
        chains: optional(at, "chains", |x| {
            let anchor = field(x, "anchor", |a| match a.str()? {
                "vertex" => Ok(Anchor::Vertex),
                "midpoint" => Ok(Anchor::Midpoint),
                other => Err(a.err(format!("unknown anchor {other:?}"))),
            })?;
            let lengths = field(x, "lengths", |l| each(l, |c| c.u64().map(|c| c as usize)))?;
            Ok(ChainPlan { anchor, lengths })
        })?,
        depth: optional(at, "depth", |x| x.u64().map(|d| d as u32))?,
        fallback: optional(at, "fallback", |x| x.bool())?.unwrap_or(false),
    })
}

fn mode(at: At) -> Result<NumericMode, IoError> {
    match field(at, "mode", |m| m.str().map(str::to_string))?.as_str() {
        "exact" => Ok(NumericMode::Exact),
        "approx" => {
            let epsilon = optional(at, "epsilon", |e| e.scalar())?
                .map(|e| e.to_f64())
                .unwrap_or(NumericMode::DEFAULT_EPSILON);
            if !(epsilon > 0.0 && epsilon.is_finite()) {
                return Err(at.err("epsilon must be positive"));
            }
            Ok(NumericMode::Approx { epsilon })
        }
        other => Err(schema(&format!("{}.mode", at.path), format!("unknown mode {other:?}"))),
    }
}

fn cell_bodies(at: At, mode: &NumericMode) -> Result<Vec<ConvexPolyhedron>, IoError> {
    each(at, |cell| {
        let vertices = field(cell, "vertices", |v| each(v, vec3))?;
        let body = match optional(cell, "faces", faces)? {
            Some(faces) => ConvexPolyhedron::new(Polyhedron { vertices, faces }, mode),
            None => match vertices.len() {
                4 => ConvexPolyhedron::tetrahedron(vertices.try_into().expect("length checked"), mode),
                6 => ConvexPolyhedron::octahedron(vertices.try_into().expect("length checked"), mode),
                n => return Err(cell.err(format!("cannot infer faces for {n} vertices"))),
            },
        };
        body.map_err(|e| IoError::Invariant { path: cell.path.to_string(), source: e })
    })
}

/// Parses and validates a record. Piece geometry is kept as given; the
/// verifier judges it.
pub fn parse_dissection(text: &str) -> Result<Dissection, IoError> {
    let root: Value = serde_json::from_str(text)?;
    let at = At { value: &root, path: "$" };
    at.object()?;
    let version = field(at, "version", |v| v.u64())?;
    if version != SCHEMA_VERSION {
        return Err(schema("$.version", format!("unsupported version {version}")));
    }
    let space = field(at, "space", |v| v.u64())?;
    let mode = mode(at)?;
    let meta = optional(at, "metadata", metadata)?.unwrap_or_default();
    let invariant = |path: &'static str| move |e| IoError::Invariant { path: path.to_string(), source: e };
    let pieces_at = |f: &mut dyn FnMut(At) -> Result<(), IoError>| field(at, "pieces", |p| each(p, &mut *f).map(drop));
    let d = match space {
        2 => {
            let ring = field(at, "original", |o| field(o, "polygon", |p| each(p, vec2)))?;
            let original = SimplePolygon::new(ring, &mode).map_err(invariant("$.original.polygon"))?;
            let witness_motion = field(at, "witness_motion", motion2)?;
            let mut pieces = Vec::new();
            pieces_at(&mut |p| {
                pieces.push(PlanarPiece {
                    id: field(p, "id", |i| i.u64())? as usize,
                    vertices: field(p, "vertices", |v| each(v, vec2))?,
                    facet_origin: field(p, "facet_origin", facet_origin)?,
                    motion: field(p, "motion", motion2)?,
                });
                Ok(())
            })?;
            Dissection::Planar(PlanarDissection { mode, original, witness_motion, pieces, metadata: meta })
        }
        3 => {
            let bodies = field(at, "original", |o| field(o, "cells", |c| cell_bodies(c, &mode)))?;
            let original = CellComplex::new(bodies, &mode).map_err(invariant("$.original.cells"))?;
            let witness_motion = field(at, "witness_motion", motion3)?;
            let mut pieces = Vec::new();
            pieces_at(&mut |p| {
                pieces.push(SolidPiece {
                    id: field(p, "id", |i| i.u64())? as usize,
                    shape: Polyhedron {
                        vertices: field(p, "vertices", |v| each(v, vec3))?,
                        faces: field(p, "faces", faces)?,
                    },
                    facet_origin: field(p, "facet_origin", facet_origin)?,
                    motion: field(p, "motion", motion3)?,
                });
                Ok(())
            })?;
            Dissection::Solid(SolidDissection { mode, original, witness_motion, pieces, metadata: meta })
        }
        other => return Err(schema("$.space", format!("space must be 2 or 3, not {other}"))),
    };
    if d.piece_count() == 0 {
        return Err(schema("$.pieces", "a record needs at least one piece"));
    }
    if !insideout_core::verify::mode_consistent(&d) {
        return Err(IoError::Core(insideout_core::Error::ModeMismatch("exact record contains floats".into())));
    }
    Ok(d)
}

pub fn scalar_value(x: &Scalar) -> Value {
    match x {
        Scalar::Exact(_) => Value::String(x.to_canonical_string()),
        Scalar::Approx(v) => {
            let text = format!("{v:.16e}");
            Value::Number(Number::from_str(&text).expect("formatted float is valid JSON"))
        }
    }
}

fn vec2_value(v: &Vec2) -> Value {
    Value::Array(vec![scalar_value(&v.x), scalar_value(&v.y)])
}

fn vec3_value(v: &Vec3) -> Value {
    Value::Array(v.coords().into_iter().map(scalar_value).collect())
}

fn rows_value<const N: usize>(m: &[[Scalar; N]; N]) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(scalar_value).collect())).collect())
}

fn motion2_value(m: &Motion2) -> Value {
    let mut o = Map::new();
    o.insert("rotation".into(), rows_value(&m.rotation.0));
    o.insert("translation".into(), vec2_value(&m.translation));
    Value::Object(o)
}

fn motion3_value(m: &Motion3) -> Value {
    let mut o = Map::new();
    o.insert("rotation".into(), rows_value(&m.rotation.0));
    o.insert("translation".into(), vec3_value(&m.translation));
    Value::Object(o)
}

fn faces_value(faces: &[Vec<usize>]) -> Value {
    Value::Array(faces.iter().map(|f| Value::Array(f.iter().map(|&i| Value::from(i)).collect())).collect())
}

fn flags_value(flags: &[FacetOrigin]) -> Value {
    Value::Array(flags.iter().map(|f| Value::from(f.as_str())).collect())
}

fn metadata_value(m: &Metadata) -> Value {
    let mut o = Map::new();
    if let Some(c) = &m.construction {
        o.insert("construction".into(), Value::from(c.as_str()));
    }
    if let Some(t) = m.stiffness {
        o.insert("stiffness".into(), Value::from(t.to_string()));
    }
    if let Some(plan) = &m.chains {
        let mut p = Map::new();
        p.insert("anchor".into(), Value::from(plan.anchor.as_str()));
        p.insert("lengths".into(), Value::Array(plan.lengths.iter().map(|&c| Value::from(c)).collect()));
        o.insert("chains".into(), Value::Object(p));
    }
    if let Some(d) = m.depth {
        o.insert("depth".into(), Value::from(d));
    }
    o.insert("fallback".into(), Value::from(m.fallback));
    Value::Object(o)
}

pub fn dissection_value(d: &Dissection) -> Value {
    let mut o = Map::new();
    o.insert("version".into(), Value::from(SCHEMA_VERSION));
    o.insert("space".into(), Value::from(d.space()));
    match d.mode() {
        NumericMode::Exact => {
            o.insert("mode".into(), Value::from("exact"));
        }
        NumericMode::Approx { epsilon } => {
            o.insert("mode".into(), Value::from("approx"));
            o.insert("epsilon".into(), scalar_value(&Scalar::float(*epsilon)));
        }
    }
    match d {
        Dissection::Planar(p) => {
            let mut orig = Map::new();
            orig.insert("polygon".into(), Value::Array(p.original.vertices().iter().map(vec2_value).collect()));
            o.insert("original".into(), Value::Object(orig));
            o.insert("witness_motion".into(), motion2_value(&p.witness_motion));
            let pieces = p.pieces.iter().map(|x| {
                let mut q = Map::new();
                q.insert("id".into(), Value::from(x.id));
                q.insert("vertices".into(), Value::Array(x.vertices.iter().map(vec2_value).collect()));
                q.insert("facet_origin".into(), flags_value(&x.facet_origin));
                q.insert("motion".into(), motion2_value(&x.motion));
                Value::Object(q)
            });
            o.insert("pieces".into(), Value::Array(pieces.collect()));
        }
        Dissection::Solid(s) => {
            let cells = s.original.cells().iter().map(|c| {
                let mut q = Map::new();
                q.insert("vertices".into(), Value::Array(c.vertices().iter().map(vec3_value).collect()));
                q.insert("faces".into(), faces_value(c.faces()));
                Value::Object(q)
            });
            let mut orig = Map::new();
            orig.insert("cells".into(), Value::Array(cells.collect()));
            o.insert("original".into(), Value::Object(orig));
            o.insert("witness_motion".into(), motion3_value(&s.witness_motion));
            let pieces = s.pieces.iter().map(|x| {
                let mut q = Map::new();
                q.insert("id".into(), Value::from(x.id));
                q.insert("vertices".into(), Value::Array(x.shape.vertices.iter().map(vec3_value).collect()));
                q.insert("faces".into(), faces_value(&x.shape.faces));
                q.insert("facet_origin".into(), flags_value(&x.facet_origin));
                q.insert("motion".into(), motion3_value(&x.motion));
                Value::Object(q)
            });
            o.insert("pieces".into(), Value::Array(pieces.collect()));
        }
    }
    if !d.metadata().is_empty() {
        o.insert("metadata".into(), metadata_value(d.metadata()));
    }
    Value::Object(o)
}

/// Pretty-printed record with a trailing newline.
pub fn serialize_dissection(d: &Dissection) -> String {
    let mut s = serde_json::to_string_pretty(&dissection_value(d)).expect("values always serialize");
    s.push('\n');
    s
}

fn violation_fields(v: &Violation, o: &mut Map<String, Value>) {
    o.insert("violation".into(), Value::from(v.name()));
    match v {
        Violation::Overlap { other } | Violation::Undecidable { other } => {
            o.insert("other".into(), Value::from(*other));
        }
        Violation::InvalidGeometry(why) => {
            o.insert("detail".into(), Value::from(why.as_str()));
        }
        _ => {}
    }
}

pub fn report_value(r: &VerificationReport) -> Value {
    let mut conditions = Map::new();
    for c in [Condition::Motions, Condition::Partition, Condition::RearrangedPartition, Condition::InsideOut] {
        conditions.insert(c.as_str().into(), Value::from(r.condition(c)));
    }
    let diagnostics = r.diagnostics.iter().map(|d| {
        let mut o = Map::new();
        o.insert("condition".into(), Value::from(d.condition.as_str()));
        o.insert("piece".into(), d.piece.map_or(Value::Null, Value::from));
        o.insert("facet".into(), d.facet.map_or(Value::Null, Value::from));
        violation_fields(&d.violation, &mut o);
        if let Some(loc) = &d.location {
            o.insert("location".into(), Value::Array(loc.iter().map(scalar_value).collect()));
        }
        Value::Object(o)
    });
    let mut o = Map::new();
    o.insert("pass".into(), Value::from(r.pass()));
    o.insert("piece_count".into(), Value::from(r.piece_count));
    o.insert("conditions".into(), Value::Object(conditions));
    o.insert("diagnostics".into(), Value::Array(diagnostics.collect()));
    Value::Object(o)
}

/// How floats in input files are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FloatPolicy {
    /// Replace every float by the exact dyadic rational it denotes.
    Exact,
    /// Keep floats; exact inputs stay exact.
    Keep,
}

fn apply_policy(x: Scalar, policy: FloatPolicy, path: &str) -> Result<Scalar, IoError> {
    match (policy, &x) {
        (FloatPolicy::Exact, Scalar::Approx(v)) => {
            Scalar::exact_from_f64(*v).map_err(|_| IoError::NumberFormat { path: path.to_string(), text: v.to_string() })
        }
        _ => Ok(x),
    }
}

/// Either a bare array or an object holding the array under `key`.
fn list_under<'a>(root: &'a Value, key: &str) -> (At<'a>, &'static str) {
    match root.get(key) {
        Some(v) => (At { value: v, path: "$.list" }, "$.list"),
        None => (At { value: root, path: "$" }, "$"),
    }
}

fn points<T>(at: At, policy: FloatPolicy, dim: usize, make: impl Fn(Vec<Scalar>) -> T) -> Result<Vec<T>, IoError> {
    each(at, |p| {
        let xs = scalars(p, dim)?
            .into_iter()
            .map(|x| apply_policy(x, policy, p.path))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(make(xs))
    })
}

/// A polygon file: `{"polygon": [[x, y], ...]}` or a bare list of points.
pub fn parse_polygon_file(text: &str, policy: FloatPolicy) -> Result<Vec<Vec2>, IoError> {
    let root: Value = serde_json::from_str(text)?;
    let (at, _) = list_under(&root, "polygon");
    points(at, policy, 2, |xs| Vec2::new(xs[0].clone(), xs[1].clone()))
}

/// A vertex file: `{"vertices": [[x, y, z], ...]}` or a bare list of points.
pub fn parse_vertices_file(text: &str, policy: FloatPolicy) -> Result<Vec<Vec3>, IoError> {
    let root: Value = serde_json::from_str(text)?;
    let (at, _) = list_under(&root, "vertices");
    points(at, policy, 3, |xs| Vec3::from_coords(xs.try_into().expect("three coordinates")))
}

/// A cell file: `{"cells": [{"kind": "tet"|"oct", "vertices": [...]}, ...]}`.
pub fn parse_cells_file(text: &str, policy: FloatPolicy) -> Result<Vec<Vec<Vec3>>, IoError> {
    let root: Value = serde_json::from_str(text)?;
    let at = At { value: &root, path: "$" };
    field(at, "cells", |cells| {
        each(cells, |cell| {
            let vertices = field(cell, "vertices", |v| {
                points(v, policy, 3, |xs| Vec3::from_coords(xs.try_into().expect("three coordinates")))
            })?;
            let kind = optional(cell, "kind", |k| k.str().map(str::to_string))?;
            let expected = match kind.as_deref() {
                None => vertices.len(),
                Some("tet") => 4,
                Some("oct") => 6,
                Some(other) => return Err(cell.err(format!("unknown cell kind {other:?}"))),
            };
            if vertices.len() != expected || !(expected == 4 || expected == 6) {
                return Err(cell.err("a tet has 4 vertices and an oct 6"));
            }
            Ok(vertices)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_translation_and_integer_rotation() {
        let v: Value = serde_json::from_str(r#"{"rotation":[[1,0],[0,1]],"translation":["1/2","0"]}"#).unwrap();
        let m = motion2(At { value: &v, path: "$" }).unwrap();
        assert_eq!(m.rotation, Mat2::identity());
        assert_eq!(m.translation, Vec2::new(Scalar::ratio(1, 2), Scalar::zero()));
    }

    #[test]
    fn zero_denominator_is_a_number_error() {
        let v: Value = serde_json::from_str(r#"["2/0", "1"]"#).unwrap();
        let err = vec2(At { value: &v, path: "$.p" }).unwrap_err();
        assert!(matches!(err, IoError::NumberFormat { ref path, .. } if path == "$.p[0]"), "{err}");
    }

    #[test]
    fn floats_keep_seventeen_digits() {
        let v = scalar_value(&Scalar::float(0.1));
        assert_eq!(v.to_string(), "1.0000000000000001e-1");
        let back = At { value: &v, path: "$" }.scalar().unwrap();
        assert_eq!(back.to_f64(), 0.1);
    }

    #[test]
    fn missing_key_names_its_path() {
        let err = parse_dissection(r#"{"version":1,"space":2,"mode":"exact","original":{}}"#).unwrap_err();
        assert!(matches!(err, IoError::Schema { ref path, .. } if path == "$.original"), "{err}");
    }
}
