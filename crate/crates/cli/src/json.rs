//! JSON encodings. Integers are emitted as exact JSON numbers, rationals as strings.

use std::str::FromStr;

use num_bigint::BigInt;
use purefield::exactmath::{QPolynomial, Rational};
use purefield::newton::{NewtonPolygon, OreFactor};
use purefield::oracle::{CertificationReport, MaximalityOutcome};
use purefield::periodicity::{AtlasRow, PeriodAtlas, SkipReason};
use purefield::purebasis::{IndexReport, IntegralBasis};
use serde_json::{json, Map, Number, Value};

pub fn big(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integer"))
}

pub fn rational(x: &Rational) -> Value {
    Value::String(x.to_string())
}

/// Coefficient strings, constant term first.
pub fn poly_coeffs(f: &QPolynomial) -> Value {
    Value::Array(f.coeffs().iter().map(rational).collect())
}

fn index_map(per_prime: &std::collections::BTreeMap<u64, u64>) -> Value {
    Value::Object(per_prime.iter().map(|(p, e)| (p.to_string(), json!(e))).collect())
}

pub fn basis(b: &IntegralBasis, report: &IndexReport) -> Value {
    let field = b.field();
    let elements: Vec<Value> = b
        .elements()
        .iter()
        .map(|e| json!({ "num": e.numerator_coeffs().iter().map(big).collect::<Vec<_>>(), "den": big(e.denominator()) }))
        .collect();
    let (den, matrix) = b.canonical();
    let rows: Vec<Value> = matrix.to_rows().iter().map(|r| Value::Array(r.iter().map(big).collect())).collect();
    json!({
        "n": field.n(),
        "m": field.m(),
        "elements": elements,
        "hnf": { "den": big(den), "matrix": rows },
        "index": index_map(&report.per_prime),
        "index_total": big(&report.total_index),
        "disc_field": big(&report.field_discriminant),
        "disc_poly": big(&report.poly_discriminant),
    })
}

pub fn index(report: &IndexReport) -> Value {
    let polygon: Map<String, Value> = report
        .polygon
        .iter()
        .map(|(p, (bound, exact))| (p.to_string(), json!({ "bound": bound, "exact": exact })))
        .collect();
    json!({
        "n": report.n,
        "m": report.m,
        "index": index_map(&report.per_prime),
        "total": big(&report.total_index),
        "disc_field": big(&report.field_discriminant),
        "disc_poly": big(&report.poly_discriminant),
        "polygon": polygon,
    })
}

fn polygon_body(poly: &NewtonPolygon) -> Map<String, Value> {
    let pair = |&(x, y): &(u64, u64)| json!([x, y]);
    let sides: Vec<Value> = poly
        .sides
        .iter()
        .map(|s| {
            json!({
                "slope": format!("-{}/{}", s.h, s.e),
                "degree": s.degree,
                "residual": s.residual.to_string(),
                "separable": s.residual.is_separable().unwrap_or(false),
            })
        })
        .collect();
    let mut body = Map::new();
    body.insert("points".into(), Value::Array(poly.points.iter().map(pair).collect()));
    body.insert("vertices".into(), Value::Array(poly.vertices.iter().map(pair).collect()));
    body.insert("sides".into(), Value::Array(sides));
    body
}

/// One factor of `X^(p^k) - m` modulo `p`.
pub fn polygon(p: u64, k: u32, m: i64, factor: &OreFactor) -> Value {
    let mut body = polygon_body(&factor.polygon);
    body.insert("p".into(), json!(p));
    body.insert("k".into(), json!(k));
    body.insert("m".into(), json!(m));
    body.insert("phi".into(), Value::String(factor.phi.to_string()));
    body.insert("phi_index".into(), json!(factor.phi_index));
    body.insert("regular".into(), json!(factor.regular));
    Value::Object(body)
}

pub fn skip_reason(reason: SkipReason) -> &'static str {
    match reason {
        SkipReason::NoSquareFreeMembers => "class has no square-free members",
    }
}

pub fn atlas(a: &PeriodAtlas) -> Value {
    let rows: Map<String, Value> = a
        .rows
        .iter()
        .map(|(r, row)| {
            let v = match row {
                AtlasRow::Basis(row) => json!({
                    "witness": row.witness,
                    "second_witness": row.second_witness,
                    "basis": row.basis.iter().map(poly_coeffs).collect::<Vec<_>>(),
                }),
                AtlasRow::Skip(reason) => json!({ "skip": skip_reason(*reason) }),
                AtlasRow::Unknown { bound } => json!({ "unknown": { "bound": bound } }),
            };
            (r.to_string(), v)
        })
        .collect();
    json!({ "n": a.n, "n0": a.n0, "rows": rows })
}

pub fn certification(n: u64, m: i64, report: &CertificationReport) -> Value {
    let maximality: Map<String, Value> = report
        .maximality
        .iter()
        .map(|(p, o)| {
            let v = match o {
                MaximalityOutcome::Proved => json!("proved"),
                MaximalityOutcome::CounterexampleFound(e) => json!({ "counterexample": poly_coeffs(&e.to_qpoly()) }),
                MaximalityOutcome::Skipped(reason) => json!({ "skipped": reason }),
            };
            (p.to_string(), v)
        })
        .collect();
    json!({
        "n": n,
        "m": m,
        "integrality": report.integrality,
        "ring_closed": report.ring_closed,
        "disc_match": report.disc_match,
        "maximality": maximality,
        "certified": report.certified(),
        "failures": report.failures(),
    })
}

/// Canonical text form: sorted keys, two-space indent, trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
