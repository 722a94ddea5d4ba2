//! JSON documents.
//!
//! Rationals are written as strings `"p/q"` (`"p"` when integral); JSON
//! integers are accepted on input, floats never are. Matrices are row-major
//! arrays of rows.

use num::BigInt;
use serde_json::{json, Map, Value};

use crate::constraint::TilingCertificate;
use crate::cube::{CoverageReport, GridRegion};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{format_rational, parse_rational, IntMatrix, Matrix, Permutation, QMatrix, QVector, Rational};
use crate::periodic::{LatticeConstruction, PeriodicTiling};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rational_to_json(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        Value::Number(n) => Err(parse_err(format!("{n} is not an exact rational; write it as \"p/q\""))),
        other => Err(parse_err(format!("expected a rational, found {other}"))),
    }
}

fn integer_from_json(v: &Value) -> Result<BigInt> {
    let x = rational_from_json(v)?;
    if !x.is_integer() {
        return Err(parse_err(format!("expected an integer, found {x}")));
    }
    Ok(x.to_integer())
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

pub fn vector_to_json(x: &[Rational]) -> Value {
    Value::Array(x.iter().map(rational_to_json).collect())
}

pub fn vector_from_json(v: &Value) -> Result<QVector> {
    array(v, "vector")?.iter().map(rational_from_json).collect()
}

fn matrix_to_json_with<T>(m: &Matrix<T>, f: impl Fn(&T) -> Value) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(&f).collect()))
            .collect(),
    )
}

fn matrix_from_json_with<T>(v: &Value, f: impl Fn(&Value) -> Result<T>) -> Result<Matrix<T>> {
    let rows = array(v, "matrix")?
        .iter()
        .map(|row| array(row, "matrix row")?.iter().map(&f).collect::<Result<Vec<T>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() || rows[0].is_empty() {
        return Err(parse_err("matrix must be non-empty"));
    }
    Matrix::from_rows(rows)
}

pub fn matrix_to_json(m: &QMatrix) -> Value {
    matrix_to_json_with(m, rational_to_json)
}

pub fn matrix_from_json(v: &Value) -> Result<QMatrix> {
    matrix_from_json_with(v, rational_from_json)
}

pub fn int_matrix_to_json(m: &IntMatrix) -> Value {
    matrix_to_json_with(m, |x| Value::String(x.to_string()))
}

pub fn int_matrix_from_json(v: &Value) -> Result<IntMatrix> {
    matrix_from_json_with(v, integer_from_json)
}

/// A square matrix given bare, as `{"basis": ...}`, or as `{"matrix": ...}`.
pub fn square_matrix_from_json(v: &Value) -> Result<QMatrix> {
    let inner = match v {
        Value::Object(map) => map
            .get("basis")
            .or_else(|| map.get("matrix"))
            .ok_or_else(|| parse_err("expected a \"basis\" or \"matrix\" field"))?,
        _ => v,
    };
    let m = matrix_from_json(inner)?;
    m.dim()?;
    Ok(m)
}

pub fn lattice_to_json(l: &Lattice) -> Value {
    json!({ "basis": matrix_to_json(l.basis()) })
}

pub fn lattice_from_json(v: &Value) -> Result<Lattice> {
    Lattice::new(square_matrix_from_json(v)?)
}

pub fn tiling_to_json(t: &PeriodicTiling) -> Value {
    json!({
        "lattice": matrix_to_json(t.lattice().basis()),
        "offsets": t.offsets().iter().map(|o| vector_to_json(o)).collect::<Vec<_>>(),
    })
}

pub fn tiling_from_json(v: &Value) -> Result<PeriodicTiling> {
    let lattice = v
        .get("lattice")
        .ok_or_else(|| parse_err("tiling needs a \"lattice\" field"))?;
    let offsets = v
        .get("offsets")
        .ok_or_else(|| parse_err("tiling needs an \"offsets\" field"))?;
    let offsets = array(offsets, "offsets")?
        .iter()
        .map(vector_from_json)
        .collect::<Result<Vec<_>>>()?;
    PeriodicTiling::new(lattice_from_json(lattice)?, offsets)
}

pub fn permutation_to_json(p: &Permutation) -> Value {
    json!(p.image())
}

pub fn permutation_from_json(v: &Value) -> Result<Permutation> {
    let image = array(v, "permutation")?
        .iter()
        .map(|x| {
            x.as_u64()
                .and_then(|i| usize::try_from(i).ok())
                .ok_or_else(|| parse_err(format!("permutation entry {x} is not a non-negative integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::new(image)
}

pub fn certificate_to_json(c: &TilingCertificate) -> Value {
    json!({
        "P": permutation_to_json(&c.p),
        "R": int_matrix_to_json(&c.r),
        "G": matrix_to_json(&c.g),
    })
}

pub fn certificate_from_json(v: &Value) -> Result<TilingCertificate> {
    let field = |k: &str| v.get(k).ok_or_else(|| parse_err(format!("certificate needs a \"{k}\" field")));
    Ok(TilingCertificate {
        p: permutation_from_json(field("P")?)?,
        r: int_matrix_from_json(field("R")?)?,
        g: matrix_from_json(field("G")?)?,
    })
}

pub fn region_to_json(r: &GridRegion) -> Value {
    json!({
        "lo": vector_to_json(&r.lo),
        "hi": vector_to_json(&r.hi),
        "mesh": rational_to_json(&r.mesh),
    })
}

/// Coverage report; the per-point multiplicities are included only on request.
pub fn coverage_report_to_json(report: &CoverageReport, include_entries: bool) -> Value {
    let mut doc = Map::new();
    doc.insert("verdict".into(), json!(report.verdict.as_str()));
    doc.insert("region".into(), region_to_json(&report.region));
    doc.insert("shape".into(), json!(report.shape()));
    doc.insert("points".into(), json!(report.len()));
    let witness = report
        .witness
        .as_ref()
        .map(|(x, m)| json!({ "point": vector_to_json(x), "multiplicity": m }));
    doc.insert("witness".into(), witness.unwrap_or(Value::Null));
    if include_entries {
        let entries: Vec<Value> = report
            .entries()
            .map(|(x, m)| json!({ "point": vector_to_json(&x), "multiplicity": m }))
            .collect();
        doc.insert("entries".into(), Value::Array(entries));
    }
    Value::Object(doc)
}

pub fn construction_to_json(c: &LatticeConstruction) -> Value {
    json!({
        "basis": matrix_to_json(c.lattice.basis()),
        "pairs": c.pairs.iter().map(|p| json!({ "v": p.v, "w": p.w })).collect::<Vec<_>>(),
        "shift": vector_to_json(&c.shift),
        "relabelings": c.relabelings,
        "staircase": c.staircase,
    })
}
