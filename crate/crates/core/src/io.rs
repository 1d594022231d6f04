//! JSON encodings of polynomials, series, polygons, triangulations and cones.

use serde_json::{json, Map, Value};

use crate::algebra::{BivariatePolynomial, Monomial, Rational, TruncatedSeries};
use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon, Triangulation};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn coeffs_to_json(p: &BivariatePolynomial) -> Value {
    let mut m = Map::new();
    for ((i, j), c) in p.graded_lex_terms() {
        m.insert(format!("{i},{j}"), Value::String(c.to_string()));
    }
    Value::Object(m)
}

fn coeffs_from_json(v: &Value) -> Result<BivariatePolynomial> {
    let obj = v.as_object().ok_or_else(|| parse_err("\"coeffs\" must be an object"))?;
    let mut terms = Vec::with_capacity(obj.len());
    for (k, c) in obj {
        terms.push((parse_monomial(k)?, parse_rational(c)?));
    }
    Ok(BivariatePolynomial::from_terms(terms))
}

fn parse_monomial(key: &str) -> Result<Monomial> {
    let (i, j) = key
        .split_once(',')
        .ok_or_else(|| parse_err(format!("bad exponent key {key:?}")))?;
    let p = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| parse_err(format!("bad exponent key {key:?}")))
    };
    Ok((p(i)?, p(j)?))
}

fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<Rational>()
            .map_err(|e| parse_err(format!("bad rational {s:?}: {e}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|n| Rational::from_integer(n.into()))
            .ok_or_else(|| parse_err(format!("non-integer number {n}; write rationals as strings"))),
        other => Err(parse_err(format!("bad rational {other}"))),
    }
}

pub fn poly_to_json(p: &BivariatePolynomial) -> Value {
    json!({ "coeffs": coeffs_to_json(p) })
}

pub fn poly_from_json(v: &Value) -> Result<BivariatePolynomial> {
    coeffs_from_json(v.get("coeffs").ok_or_else(|| parse_err("missing \"coeffs\""))?)
}

pub fn series_to_json(s: &TruncatedSeries) -> Value {
    json!({ "truncation": s.truncation(), "coeffs": coeffs_to_json(&s.to_poly()) })
}

pub fn series_from_json(v: &Value) -> Result<TruncatedSeries> {
    let n = v
        .get("truncation")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("missing or invalid \"truncation\""))?;
    let p = coeffs_from_json(v.get("coeffs").ok_or_else(|| parse_err("missing \"coeffs\""))?)?;
    if p.degree().is_some_and(|d| d as u64 > n) {
        return Err(parse_err("series has terms above its truncation"));
    }
    Ok(TruncatedSeries::from_poly(&p, n as usize))
}

fn point_to_json(p: LatticePoint) -> Value {
    json!([p.x, p.y])
}

fn point_from_json(v: &Value) -> Result<LatticePoint> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| parse_err(format!("expected an [x, y] pair, got {v}")))?;
    let c = |e: &Value| e.as_i64().ok_or_else(|| parse_err(format!("non-integer coordinate {e}")));
    Ok(LatticePoint::new(c(&arr[0])?, c(&arr[1])?))
}

fn points_from_json(v: &Value) -> Result<Vec<LatticePoint>> {
    v.as_array()
        .ok_or_else(|| parse_err("expected an array of points"))?
        .iter()
        .map(point_from_json)
        .collect()
}

pub fn polygon_to_json(p: &LatticePolygon) -> Value {
    json!({ "vertices": p.vertices().iter().map(|&v| point_to_json(v)).collect::<Vec<_>>() })
}

/// Reads a polygon and canonicalizes it through the convex hull.
pub fn polygon_from_json(v: &Value) -> Result<LatticePolygon> {
    let pts = points_from_json(v.get("vertices").ok_or_else(|| parse_err("missing \"vertices\""))?)?;
    if pts.is_empty() {
        return Err(parse_err("polygon needs at least one vertex"));
    }
    Ok(LatticePolygon::from_points(&pts))
}

pub fn triangulation_to_json(t: &Triangulation) -> Value {
    Value::Array(
        t.triples()
            .iter()
            .map(|tri| Value::Array(tri.iter().map(|&p| point_to_json(p)).collect()))
            .collect(),
    )
}

/// Reads a list of vertex triples and validates it against `parent`.
pub fn triangulation_from_json(v: &Value, parent: &LatticePolygon) -> Result<Triangulation> {
    let triples = v
        .as_array()
        .ok_or_else(|| parse_err("triangulation must be a list of triples"))?
        .iter()
        .map(|t| {
            let pts = points_from_json(t)?;
            <[LatticePoint; 3]>::try_from(pts).map_err(|_| parse_err("each triangle needs three vertices"))
        })
        .collect::<Result<Vec<_>>>()?;
    Triangulation::from_triples(parent.clone(), &triples)
}

pub fn cone_to_json(c: &RationalCone) -> Value {
    json!({ "rays": c.rays().iter().map(|&v| point_to_json(v)).collect::<Vec<_>>() })
}

/// Reads `{"rays": [...]}` as the positive hull of the given integer rays.
pub fn cone_from_json(v: &Value) -> Result<RationalCone> {
    let rays = points_from_json(v.get("rays").ok_or_else(|| parse_err("missing \"rays\""))?)?;
    RationalCone::from_rays(&rays)
}
