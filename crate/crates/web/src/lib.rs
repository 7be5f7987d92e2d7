//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes the code as a field descriptor, a point list and a
//! dimension, and returns a JSON string. The plain functions below the
//! bindings do the work and are tested natively.

use gabidulin::channel::corrupt;
use gabidulin::format::{
    basis_json, format_vector_text, parse_field, parse_vector, BasisJson, OutcomeJson,
};
use gabidulin::lmodule::Branch;
use gabidulin::{interpolation_trace, FElem, Field, GabidulinCode, LinPoly, Mat2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub fn transmit(
    field: &str,
    g: &str,
    k: usize,
    message: &str,
    rank: usize,
    seed: u64,
) -> Result<String, JsValue> {
    transmit_json(field, g, k, message, rank, seed).map_err(JsValue::from)
}

#[wasm_bindgen]
pub fn decode(field: &str, g: &str, k: usize, received: &str) -> Result<String, JsValue> {
    decode_json(field, g, k, received).map_err(JsValue::from)
}

#[wasm_bindgen]
pub fn trace(field: &str, g: &str, k: usize, received: &str) -> Result<String, JsValue> {
    trace_json(field, g, k, received).map_err(JsValue::from)
}

fn code(field: &str, g: &str, k: usize) -> Result<GabidulinCode, String> {
    let f = parse_field(field).map_err(|e| e.to_string())?;
    let g = parse_vector(&f, g).map_err(|e| e.to_string())?;
    GabidulinCode::new(&f, g, k).map_err(|e| e.to_string())
}

fn vector(f: &Field, s: &str) -> Result<Vec<FElem>, String> {
    parse_vector(f, s).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

#[derive(Serialize)]
struct Transmission {
    codeword: String,
    received: String,
    rank: usize,
}

/// Encodes `message` and adds a seeded error of rank exactly `rank`.
pub fn transmit_json(
    field: &str,
    g: &str,
    k: usize,
    message: &str,
    rank: usize,
    seed: u64,
) -> Result<String, String> {
    let code = code(field, g, k)?;
    let f = code.field();
    let poly = LinPoly::from_coeffs(f, vector(f, message)?).map_err(|e| e.to_string())?;
    let msg = code.message(poly).map_err(|e| e.to_string())?;
    let c = code.encode(&msg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = corrupt(f, &c, rank, &mut rng).map_err(|e| e.to_string())?;
    Ok(to_json(&Transmission {
        codeword: format_vector_text(f, &c),
        received: format_vector_text(f, &r),
        rank,
    }))
}

#[derive(Serialize)]
struct EntryView {
    message: String,
    codeword: String,
    error: String,
}

#[derive(Serialize)]
struct DecodeView {
    #[serde(flatten)]
    raw: OutcomeJson,
    radius: usize,
    entries: Vec<EntryView>,
}

pub fn decode_json(field: &str, g: &str, k: usize, received: &str) -> Result<String, String> {
    let code = code(field, g, k)?;
    let f = code.field();
    let out = code
        .list_decode(&vector(f, received)?)
        .map_err(|e| e.to_string())?;
    let entries = out
        .entries
        .iter()
        .map(|e| EntryView {
            message: e.message.poly().to_string(),
            codeword: format_vector_text(f, &e.codeword),
            error: format_vector_text(f, &e.error),
        })
        .collect();
    Ok(to_json(&DecodeView {
        raw: OutcomeJson::of(&out, k),
        radius: code.unique_radius(),
        entries,
    }))
}

#[derive(Serialize)]
struct StepView {
    step: usize,
    branch: &'static str,
    delta: String,
    gamma: String,
    rows: [[String; 2]; 2],
    basis: BasisJson,
}

fn rows(b: &Mat2) -> [[String; 2]; 2] {
    b.rows
        .clone()
        .map(|r| [r.first.to_string(), r.second.to_string()])
}

/// Every intermediate basis with the discrepancies that produced it.
pub fn trace_json(field: &str, g: &str, k: usize, received: &str) -> Result<String, String> {
    let code = code(field, g, k)?;
    let f = code.field();
    let steps =
        interpolation_trace(f, code.g(), &vector(f, received)?, k).map_err(|e| e.to_string())?;
    let view: Vec<StepView> = steps
        .iter()
        .enumerate()
        .map(|(i, s)| StepView {
            step: i + 1,
            branch: match s.branch {
                Branch::RaiseFirst => "raise row 1",
                Branch::RaiseSecond => "raise row 2",
            },
            delta: f.format_elem(s.delta),
            gamma: f.format_elem(s.gamma),
            rows: rows(&s.basis),
            basis: basis_json(&s.basis),
        })
        .collect();
    Ok(to_json(&view))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    const F8: &str = r#"{"p":2,"m":3,"top_modulus":[1,1,0,1]}"#;

    #[test]
    fn worked_example_trace() {
        let v: Value =
            serde_json::from_str(&trace_json(F8, "1,a,a^2", 2, "a^3,0,a").unwrap()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 3);
        assert_eq!(v[0]["rows"][0][0], "x^[1] + x^[0]");
        assert_eq!(v[0]["rows"][1][0], "a^3 x^[0]");
        assert_eq!(
            v[2]["basis"],
            serde_json::json!([[[7, 0, 4], [1]], [[1, 6, 2], [5, 2]]])
        );
    }

    #[test]
    fn worked_example_decode() {
        let v: Value =
            serde_json::from_str(&decode_json(F8, "1,a,a^2", 2, "a^3,0,a").unwrap()).unwrap();
        assert_eq!(v["distance"], 1);
        assert_eq!(v["entries"].as_array().unwrap().len(), 7);
        assert_eq!(v["list"].as_array().unwrap().len(), 7);
    }

    #[test]
    fn transmit_then_decode() {
        let t: Value =
            serde_json::from_str(&transmit_json(F8, "1,a,a^2", 1, "a^5", 1, 3).unwrap()).unwrap();
        let v: Value = serde_json::from_str(
            &decode_json(F8, "1,a,a^2", 1, t["received"].as_str().unwrap()).unwrap(),
        )
        .unwrap();
        assert_eq!(v["distance"], 1);
        assert_eq!(v["entries"][0]["codeword"], t["codeword"]);
    }

    #[test]
    fn errors_are_messages() {
        assert!(decode_json("{", "1", 1, "1").is_err());
        assert!(transmit_json(F8, "1,a,a^2", 2, "1", 4, 0)
            .unwrap_err()
            .contains("rank"));
    }
}
