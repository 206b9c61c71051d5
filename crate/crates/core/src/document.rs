//! JSON documents for algebras, pairs, fans and polytopes.
//!
//! An algebra document is either
//! `{"presentation": {"nvars": n, "generators": ["S1^3", ..]}}` or
//! `{"structure_constants": {"table": [[[c_ijk]]], "unit": [..], "labels": [..]}}`,
//! optionally with `"u_basis"` and `"complement"`. Elements are polynomials
//! in the presentation variables or coordinate vectors; rationals are JSON
//! integers or strings such as `"-1/2"`.

use serde_json::{json, Value};

use crate::artin::Algebra;
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, parse_rational, Rational};
use crate::poly::{parse_poly, VarNames};
use crate::polytope::{LatticePolytope, PolytopeDocument};
use crate::toric::{Fan, FanDocument};

/// A parsed algebra document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub algebra: Algebra,
    pub u_basis: Option<Vec<Vec<Rational>>>,
    pub complement: Option<Vec<Rational>>,
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(Error::Parse(format!("{n} is not an integer; write fractions as strings"))),
        },
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{what} must be an array")))
}

fn vector(v: &Value, what: &str) -> Result<Vec<Rational>> {
    array(v, what)?.iter().map(rational).collect()
}

fn element(v: &Value, a: &Algebra, names: Option<&VarNames>) -> Result<Vec<Rational>> {
    match v {
        Value::String(s) => {
            let names = names.ok_or_else(|| Error::Parse("polynomial elements need a presentation".into()))?;
            a.element_of_poly(&parse_poly(s, names)?)
        }
        other => {
            let x = vector(other, "element")?;
            if x.len() != a.dim() {
                return Err(Error::InvalidInput(format!("element has length {}, expected {}", x.len(), a.dim())));
            }
            Ok(x)
        }
    }
}

pub fn parse_algebra_document(v: &Value) -> Result<AlgebraDocument> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("algebra document must be an object".into()))?;
    for key in obj.keys() {
        if !["presentation", "structure_constants", "u_basis", "complement"].contains(&key.as_str()) {
            return Err(Error::Parse(format!("unknown field {key}")));
        }
    }
    let (algebra, names) = match (obj.get("presentation"), obj.get("structure_constants")) {
        (Some(p), None) => {
            let nvars = p
                .get("nvars")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("presentation.nvars must be a non-negative integer".into()))?
                as usize;
            let names = VarNames::indexed("S", 1, nvars);
            let gens = array(p.get("generators").unwrap_or(&Value::Null), "presentation.generators")?
                .iter()
                .map(|g| match g {
                    Value::String(s) => parse_poly(s, &names),
                    _ => Err(Error::Parse("generators must be strings".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            (Algebra::from_presentation(nvars, &gens)?, Some(names))
        }
        (None, Some(s)) => {
            let table = array(s.get("table").unwrap_or(&Value::Null), "structure_constants.table")?
                .iter()
                .map(|row| array(row, "table row")?.iter().map(|c| vector(c, "table entry")).collect())
                .collect::<Result<Vec<Vec<Vec<Rational>>>>>()?;
            let unit = s.get("unit").map(|u| vector(u, "unit")).transpose()?;
            let labels = s
                .get("labels")
                .map(|l| {
                    array(l, "labels")?
                        .iter()
                        .map(|x| x.as_str().map(String::from).ok_or_else(|| Error::Parse("labels must be strings".into())))
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?;
            let a = Algebra::from_structure_constants(&table, unit, labels)?;
            if !a.validate() {
                return Err(Error::InvalidInput("structure constants do not define a unital commutative associative algebra".into()));
            }
            (a, None)
        }
        _ => return Err(Error::Parse("exactly one of presentation and structure_constants is required".into())),
    };
    let u_basis = obj
        .get("u_basis")
        .map(|u| array(u, "u_basis")?.iter().map(|x| element(x, &algebra, names.as_ref())).collect())
        .transpose()?;
    let complement = obj.get("complement").map(|c| element(c, &algebra, names.as_ref())).transpose()?;
    Ok(AlgebraDocument { algebra, u_basis, complement })
}

fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(fmt_rational(c))).collect())
}

/// Document for an algebra, with an optional U-basis given as vectors.
pub fn algebra_document(a: &Algebra, u_basis: Option<&[Vec<Rational>]>) -> Value {
    let mut doc = match a.presentation() {
        Some(p) => {
            let names = VarNames::indexed("S", 1, p.nvars());
            json!({"presentation": {"nvars": p.nvars(), "generators": p.gb.to_text(&names)}})
        }
        None => {
            let table: Vec<Value> = a.table().iter().map(|row| Value::Array(row.iter().map(|v| vector_json(v)).collect())).collect();
            json!({"structure_constants": {"table": table, "unit": vector_json(a.unit()), "labels": a.labels()}})
        }
    };
    if let Some(u) = u_basis {
        doc["u_basis"] = Value::Array(u.iter().map(|v| vector_json(v)).collect());
    }
    doc
}

pub fn parse_fan_document(v: &Value) -> Result<Fan> {
    let doc: FanDocument = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("fan document: {e}")))?;
    Fan::try_from(doc)
}

pub fn parse_polytope_document(v: &Value) -> Result<LatticePolytope> {
    let doc: PolytopeDocument =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("polytope document: {e}")))?;
    LatticePolytope::try_from(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn presentation_roundtrip() {
        let v = parse_json(r#"{"presentation": {"nvars": 2, "generators": ["x1^2 - x2", "x1*x2"]}, "u_basis": ["S1"]}"#).unwrap();
        let doc = parse_algebra_document(&v).unwrap();
        assert_eq!(doc.algebra.dim(), 3);
        let out = algebra_document(&doc.algebra, doc.u_basis.as_deref());
        let again = parse_algebra_document(&out).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn structure_constant_roundtrip() {
        let a = Algebra::product_of_fields(2);
        let out = algebra_document(&a, None);
        let doc = parse_algebra_document(&out).unwrap();
        assert_eq!(doc.algebra, a);
        let bad = json!({"structure_constants": {"table": [[["1", "0"], ["0", "1"]], [["0", "0"], ["0", "0"]]]}});
        assert!(parse_algebra_document(&bad).is_err());
    }

    #[test]
    fn malformed() {
        assert!(matches!(parse_json("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_algebra_document(&json!({"presentation": {"nvars": 1}, "extra": 1})), Err(Error::Parse(_))));
        let v = json!({"presentation": {"nvars": 1, "generators": ["S1^3"]}, "complement": ["0", "1/2", 0]});
        assert_eq!(parse_algebra_document(&v).unwrap().complement.unwrap(), vec![q(0), crate::exact::qf(1, 2), q(0)]);
        let fan = json!({"rank": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]});
        let f = parse_fan_document(&fan).unwrap();
        assert_eq!(serde_json::to_value(&f).unwrap(), fan);
    }
}
