#![allow(dead_code)]

use gabidulin::{
    interpolation_trace, DecodeOutcome, FElem, Field, FieldCtx, GabidulinCode, LinPoly, Position,
    QDeg, Weights,
};

/// F_8 with α³ = α + 1, g = (1, α, α²), k = 2, r = (α³, 0, α).
pub fn example() -> (Field, GabidulinCode, Vec<FElem>) {
    let f = FieldCtx::new(2, 1, 3, None, Some(vec![1, 1, 0, 1])).unwrap();
    let g = vec![f.one(), f.alpha(), f.alpha_pow(2)];
    let code = GabidulinCode::new(&f, g, 2).unwrap();
    let r = vec![f.alpha_pow(3), f.zero(), f.alpha()];
    (f, code, r)
}

/// Linearized polynomial from α-exponents; `None` is a zero coefficient.
pub fn apoly(f: &Field, exps: &[Option<i64>]) -> LinPoly {
    let coeffs = exps
        .iter()
        .map(|e| e.map_or(f.zero(), |k| f.alpha_pow(k)))
        .collect();
    LinPoly::from_coeffs(f, coeffs).unwrap()
}

/// The seven closest messages, as padded coefficient encodings.
pub fn example_messages(f: &Field) -> Vec<Vec<u32>> {
    let ap = |k| f.alpha_pow(k).value();
    let mut v = vec![
        vec![ap(1), 1],     // x^2 + αx
        vec![ap(2), ap(5)], // α⁵x^2 + α²x
        vec![ap(4), ap(3)], // α³x^2 + α⁴x
        vec![0, ap(4)],     // α⁴x^2
        vec![ap(6), ap(6)], // α⁶x^2 + α⁶x
        vec![ap(3), ap(2)], // α²x^2 + α³x
        vec![1, ap(1)],     // αx^2 + x
    ];
    v.sort();
    v
}

/// Checks after every interpolation step `i`: both rows vanish at all points
/// so far, row 1 leads in position 1 and row 2 in position 2 under the
/// `(0, k-1)` weights, and the two weighted degrees sum to `i + k - 1`.
/// Returns the number of individual checks performed.
pub fn check_trace(f: &Field, g: &[FElem], r: &[FElem], k: usize) -> Result<usize, String> {
    let steps = interpolation_trace(f, g, r, k).map_err(|e| e.to_string())?;
    let w = Weights::for_dimension(k);
    let mut checks = 0;
    for (i, step) in steps.iter().enumerate() {
        for (row_idx, row) in step.basis.rows.iter().enumerate() {
            for j in 0..=i {
                let v = row.apply(g[j], r[j]).map_err(|e| e.to_string())?;
                if !v.is_zero() {
                    return Err(format!(
                        "step {}: row {} does not vanish at point {}",
                        i + 1,
                        row_idx + 1,
                        j + 1
                    ));
                }
                checks += 1;
            }
        }
        let (d1, p1) = step.basis.rows[0].leading(w).map_err(|e| e.to_string())?;
        let (d2, p2) = step.basis.rows[1].leading(w).map_err(|e| e.to_string())?;
        if (p1, p2) != (Position::First, Position::Second) {
            return Err(format!(
                "step {}: leading positions {:?}, {:?}",
                i + 1,
                p1,
                p2
            ));
        }
        if !step.basis.is_minimal_gb(w).unwrap() {
            return Err(format!("step {}: not minimal", i + 1));
        }
        let expected = (i + 1) as i64 + k as i64 - 1;
        if d1 + d2 != expected {
            return Err(format!(
                "step {}: weighted degrees {d1} + {d2} != {expected}",
                i + 1
            ));
        }
        checks += 3;
    }
    Ok(checks)
}

/// Consistency of every list entry with its error span polynomial, which
/// has q-degree equal to the distance and `D(r_i) = D(c_i)`.
pub fn check_error_span(
    code: &GabidulinCode,
    received: &[FElem],
    out: &DecodeOutcome,
) -> Result<usize, String> {
    let f = code.field();
    let mut checks = 0;
    for entry in &out.entries {
        let d = code
            .error_span_poly(&entry.message, received)
            .map_err(|e| e.to_string())?;
        if d.qdeg() != QDeg::Finite(out.distance as i64) {
            return Err(format!(
                "qdeg(D) = {} but distance = {}",
                d.qdeg(),
                out.distance
            ));
        }
        if d.leading_coeff() != Some(f.one()) {
            return Err("error span polynomial is not monic".into());
        }
        for (&ri, &ci) in received.iter().zip(&entry.codeword) {
            if d.eval(ri).unwrap() != d.eval(ci).unwrap() {
                return Err("D(r_i) != D(c_i)".into());
            }
            checks += 1;
        }
        // [D∘M, -D] lies in the interpolation module
        let n_poly = d.compose(entry.message.poly()).unwrap();
        for (&gi, &ri) in code.g().iter().zip(received) {
            if f.sub(n_poly.eval(gi).unwrap(), d.eval(ri).unwrap()) != f.zero() {
                return Err("[D∘M, -D] is not a module element".into());
            }
        }
        checks += 2;
    }
    Ok(checks)
}
