//! Text and JSON encodings shared by the command-line tool and the web demo.
//!
//! Field elements are integers in `[0, q^m)` (little-endian base-q digits are
//! the GF(q)-coordinates); vectors are comma-separated or JSON arrays;
//! polynomials are little-endian coefficient lists.

use serde::{Deserialize, Serialize};

use crate::decoder::{DecodeOutcome, GabidulinCode};
use crate::error::{Error, Result};
use crate::galois::{FElem, Field, FieldCtx, FieldDescriptor};
use crate::lmodule::Mat2;

/// `{"field": {...}, "g": [ints], "k": int}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub field: FieldDescriptor,
    pub g: Vec<u64>,
    pub k: usize,
}

impl CodeDescriptor {
    pub fn build(&self) -> Result<GabidulinCode> {
        let field = FieldCtx::from_descriptor(&self.field)?;
        let g = self
            .g
            .iter()
            .map(|&v| field.elem(v))
            .collect::<Result<Vec<_>>>()?;
        GabidulinCode::new(&field, g, self.k)
    }

    pub fn of(code: &GabidulinCode) -> Self {
        CodeDescriptor {
            field: code.field().descriptor(),
            g: code.g().iter().map(|a| a.value() as u64).collect(),
            k: code.k(),
        }
    }
}

/// `[[row1.first, row1.second], [row2.first, row2.second]]`.
pub type BasisJson = [[Vec<u32>; 2]; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub message: Vec<u32>,
    pub codeword: Vec<u32>,
    pub error: Vec<u32>,
}

/// `{"distance": t, "j": j, "list": [...], "basis": [[...],[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeJson {
    pub distance: usize,
    pub j: usize,
    pub list: Vec<EntryJson>,
    pub basis: BasisJson,
}

fn values(v: &[FElem]) -> Vec<u32> {
    v.iter().map(|a| a.value()).collect()
}

impl OutcomeJson {
    pub fn of(outcome: &DecodeOutcome, k: usize) -> Self {
        OutcomeJson {
            distance: outcome.distance,
            j: outcome.j_final,
            list: outcome
                .entries
                .iter()
                .map(|e| EntryJson {
                    message: e.message.padded_values(k),
                    codeword: values(&e.codeword),
                    error: values(&e.error),
                })
                .collect(),
            basis: basis_json(&outcome.basis),
        }
    }
}

pub fn basis_json(basis: &Mat2) -> BasisJson {
    basis.values()
}

/// Parses a field descriptor given inline as JSON.
pub fn parse_field(json: &str) -> Result<Field> {
    let desc: FieldDescriptor =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("field descriptor: {e}")))?;
    FieldCtx::from_descriptor(&desc)
}

/// One vector: `3,0,a^2` or a JSON array such as `[3,0,"a^2"]`.
pub fn parse_vector(field: &Field, line: &str) -> Result<Vec<FElem>> {
    let line = line.trim();
    if line.starts_with('[') {
        let items: Vec<serde_json::Value> =
            serde_json::from_str(line).map_err(|e| Error::Parse(format!("vector: {e}")))?;
        return items
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_u64()
                    .ok_or_else(|| Error::Parse(format!("bad element {n}")))
                    .and_then(|n| field.elem(n)),
                serde_json::Value::String(s) => field.parse_elem(s),
                other => Err(Error::Parse(format!("bad element {other}"))),
            })
            .collect();
    }
    if line.is_empty() {
        return Ok(Vec::new());
    }
    line.split(',').map(|s| field.parse_elem(s)).collect()
}

pub fn format_vector_int(v: &[FElem]) -> String {
    v.iter()
        .map(|a| a.value().to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn format_vector_text(field: &Field, v: &[FElem]) -> String {
    v.iter()
        .map(|&a| field.format_elem(a))
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linpoly::LinPoly;

    #[test]
    fn vector_syntaxes_agree() {
        let f = parse_field(r#"{"p":2,"s":1,"m":3,"top_modulus":[1,1,0,1]}"#).unwrap();
        let a = parse_vector(&f, "3,0,2").unwrap();
        let b = parse_vector(&f, "a^3, 0, a").unwrap();
        let c = parse_vector(&f, r#"[3, 0, "a"]"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(format_vector_int(&a), "3,0,2");
        assert_eq!(format_vector_text(&f, &a), "a^3,0,a");
        assert!(parse_vector(&f, "9").is_err());
        assert!(parse_field("{").is_err());
    }

    #[test]
    fn outcome_json_shape() {
        let code = CodeDescriptor {
            field: FieldDescriptor {
                p: 2,
                s: 1,
                m: 3,
                base_modulus: None,
                top_modulus: Some(vec![1, 1, 0, 1]),
            },
            g: vec![1, 2, 4],
            k: 2,
        }
        .build()
        .unwrap();
        let f = code.field().clone();
        let msg = code.message(LinPoly::x(&f)).unwrap();
        let out = code.list_decode(&code.encode(&msg)).unwrap();
        let json = serde_json::to_value(OutcomeJson::of(&out, 2)).unwrap();
        assert_eq!(json["distance"], 0);
        assert_eq!(json["j"], 0);
        assert_eq!(json["list"][0]["message"], serde_json::json!([1, 0]));
        assert_eq!(json["list"][0]["codeword"], serde_json::json!([1, 2, 4]));
        assert_eq!(json["basis"].as_array().unwrap().len(), 2);
        let desc = CodeDescriptor::of(&code);
        assert_eq!(desc.g, vec![1, 2, 4]);
    }
}
