//! JSON interchange for curves, duals and census reports. Every document
//! carries `"schema": 1`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::census::{
    BhReport, CensusReport, FlexCensus, FlexKind, SingClass, SingReport, TrialOutcome,
};
use crate::curves::CurveC;
use crate::dualize::{DualCurve, DualMethod};
use crate::error::{Error, Result};
use crate::gf::{Field, Gf};
use crate::ideals::PointClass;
use crate::mpoly::{parse_poly, poly_to_text};

pub const SCHEMA: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldJson {
    k: usize,
    /// Low degree first, monic.
    modulus: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveJson {
    schema: u32,
    p: u64,
    q: u64,
    field: FieldJson,
    a: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DualJson {
    schema: u32,
    p: u64,
    field: FieldJson,
    degree: u32,
    method: String,
    #[serde(rename = "H")]
    h: String,
}

fn field_json(f: &Gf) -> FieldJson {
    FieldJson {
        k: f.k(),
        modulus: f.modulus().to_vec(),
    }
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::SchemaError(format!("{path}: {}", e.inner()))
    })
}

fn check_schema(v: u32) -> Result<()> {
    if v != SCHEMA {
        return Err(Error::SchemaError(format!(
            "schema: unsupported version {v}"
        )));
    }
    Ok(())
}

fn load_field(p: u64, fj: &FieldJson) -> Result<Gf> {
    if fj.modulus.len() != fj.k + 1 {
        return Err(Error::SchemaError(format!(
            "field.modulus: expected {} coefficients, got {}",
            fj.k + 1,
            fj.modulus.len()
        )));
    }
    if fj.modulus.last() != Some(&1) {
        return Err(Error::InvalidModulus);
    }
    Gf::with_modulus(p, &fj.modulus)
}

pub fn curve_to_json(c: &CurveC<Gf>) -> String {
    let f = c.field();
    let doc = CurveJson {
        schema: SCHEMA,
        p: f.p(),
        q: c.q(),
        field: field_json(f),
        a: c.coeffs().iter().map(|x| f.coords(x)).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

pub fn curve_from_json(text: &str) -> Result<CurveC<Gf>> {
    let doc: CurveJson = parse(text)?;
    check_schema(doc.schema)?;
    let f = load_field(doc.p, &doc.field)?;
    if doc.a.len() != 27 {
        return Err(Error::SchemaError(format!(
            "a: expected 27 coefficients, got {}",
            doc.a.len()
        )));
    }
    let mut a = Vec::with_capacity(27);
    for (i, co) in doc.a.iter().enumerate() {
        if co.len() != f.k() {
            return Err(Error::SchemaError(format!(
                "a[{i}]: expected {} coordinates, got {}",
                f.k(),
                co.len()
            )));
        }
        a.push(
            f.from_coords(co)
                .map_err(|_| Error::SchemaError(format!("a[{i}]: coordinate out of range")))?,
        );
    }
    CurveC::new(&f, doc.q, a)
}

pub fn dual_to_json(f: &Gf, d: &DualCurve<Gf>) -> String {
    let doc = DualJson {
        schema: SCHEMA,
        p: f.p(),
        field: field_json(f),
        degree: d.degree,
        method: d.method.as_str().into(),
        h: poly_to_text(f, &d.h),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

pub fn dual_from_json(text: &str) -> Result<(Gf, DualCurve<Gf>)> {
    let doc: DualJson = parse(text)?;
    check_schema(doc.schema)?;
    let f = load_field(doc.p, &doc.field)?;
    let method = match doc.method.as_str() {
        "interpolation" => DualMethod::Interpolation,
        "closed-form" => DualMethod::ClosedForm,
        m => return Err(Error::SchemaError(format!("method: unknown value {m:?}"))),
    };
    let h = parse_poly(&f, &doc.h, 3)?;
    if h.total_degree().unwrap_or(0) != doc.degree {
        return Err(Error::SchemaError(format!(
            "degree: {} does not match H",
            doc.degree
        )));
    }
    Ok((
        f,
        DualCurve {
            h,
            degree: doc.degree,
            method,
        },
    ))
}

/// A point over a residue field of the work field: its degree, the
/// residue modulus and the coordinates, all as work-field element indices.
fn point_json(w: &Gf, p: &PointClass<Gf>) -> Value {
    let idx = |v: &Vec<u32>| v.iter().map(|x| w.index_of(*x)).collect::<Vec<u64>>();
    json!({
        "degree": p.degree(),
        "residue_modulus": p.field.modulus().coeffs().iter().map(|x| w.index_of(*x)).collect::<Vec<u64>>(),
        "coords": p.coords.iter().map(idx).collect::<Vec<_>>(),
    })
}

fn class_str(c: &SingClass) -> &'static str {
    match c {
        SingClass::Node => "node",
        SingClass::Special { .. } => "special",
        SingClass::Unknown => "unknown",
    }
}

pub fn sing_reports_json(w: &Gf, reports: &[SingReport]) -> Value {
    Value::Array(
        reports
            .iter()
            .map(|r| {
                json!({
                    "point": point_json(w, &r.point),
                    "mu": r.mu,
                    "branches": r.branches,
                    "class": class_str(&r.class),
                })
            })
            .collect(),
    )
}

pub fn flex_census_json(w: &Gf, fc: &FlexCensus) -> Value {
    json!({
        "flex_count": fc.flex_count,
        "hyperflex_count": fc.hyperflex_count,
        "certified": fc.certified,
        "points": fc.points.iter().map(|p| json!({
            "point": point_json(w, &p.point),
            "line_mult": p.line_mult,
            "kind": match p.kind { FlexKind::Flex => "flex", FlexKind::Hyperflex => "hyperflex" },
        })).collect::<Vec<_>>(),
    })
}

pub fn census_report_json(r: &CensusReport) -> Value {
    json!({
        "q": r.q,
        "seed": r.seed,
        "retries": r.retries,
        "tensor": r.tensor,
        "dual_degree": r.dual_degree,
        "nodes": r.node_count,
        "specials": r.specials.iter().map(|g| json!({
            "mu": g.mu, "r": g.r, "count": g.count, "on_triangle": g.on_triangle,
        })).collect::<Vec<_>>(),
        "flexes": r.flex_count,
        "hyperflexes": r.hyperflex_count,
        "genus_source": r.genus_source,
        "genus_dual": r.genus_dual,
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name, "expected": c.expected, "found": c.found, "pass": c.pass,
        })).collect::<Vec<_>>(),
        "pass": r.pass(),
    })
}

pub fn trial_json(t: &TrialOutcome) -> Value {
    json!({
        "trial": t.trial,
        "seed": t.seed,
        "report": t.report.as_ref().map(census_report_json),
        "error": t.error,
        "pass": t.pass(),
    })
}

pub fn bh_report_json(f: &Gf, r: &BhReport) -> Value {
    json!({
        "q": r.q,
        "h": poly_to_text(f, &r.polynomial),
        "nodes_off_triangle": r.nodes_off_triangle,
        "singular_on_triangle": r.singular_on_triangle,
        "other_off_triangle": r.other_off_triangle,
        "pass": r.pass(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::fermat_curve;

    #[test]
    fn fermat_round_trip_is_byte_identical() {
        let f = Gf::new(2, 8, 0).unwrap();
        let c = fermat_curve(&f, 2).unwrap();
        let text = curve_to_json(&c);
        let back = curve_from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(curve_to_json(&back), text);
    }

    #[test]
    fn wrong_length_tensor() {
        let f = Gf::new(2, 1, 0).unwrap();
        let c = fermat_curve(&f, 2).unwrap();
        let mut v: Value = serde_json::from_str(&curve_to_json(&c)).unwrap();
        v["a"].as_array_mut().unwrap().pop();
        let err = curve_from_json(&v.to_string()).unwrap_err();
        assert!(
            matches!(err, Error::SchemaError(ref s) if s.starts_with("a:")),
            "{err:?}"
        );
    }

    #[test]
    fn reducible_modulus() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        let text = r#"{"schema":1,"p":2,"q":2,"field":{"k":2,"modulus":[1,0,1]},"a":[]}"#;
        assert_eq!(curve_from_json(text).unwrap_err(), Error::InvalidModulus);
    }

    #[test]
    fn missing_field_reports_path() {
        let text = r#"{"schema":1,"p":2,"q":2,"field":{"k":1},"a":[]}"#;
        let err = curve_from_json(text).unwrap_err();
        assert!(
            matches!(err, Error::SchemaError(ref s) if s.contains("field")),
            "{err:?}"
        );
    }

    #[test]
    fn dual_round_trip() {
        let f = Gf::new(3, 2, 0).unwrap();
        let d = crate::dualize::fermat_dual_closed_form(3, &f).unwrap();
        let text = dual_to_json(&f, &d);
        let (g, back) = dual_from_json(&text).unwrap();
        assert_eq!(g, f);
        assert_eq!(back, d);
        assert_eq!(dual_to_json(&g, &back), text);
    }
}
