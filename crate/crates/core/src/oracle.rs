//! Slow, independent cross-checks: exhaustive nearest-codeword search,
//! determinant forms of the annihilator and Lagrange polynomials, and
//! exhaustive symbolic divisibility.
//!
//! None of these share an algorithm with the main decoding path. Codewords
//! are enumerated as GF(p)-combinations of `β·g_j^[i]` rather than through
//! polynomial evaluation, and the determinant forms use cofactor expansion.

use crate::decoder::GabidulinCode;
use crate::error::{Error, Result};
use crate::galois::{FElem, Field};
use crate::linpoly::LinPoly;

/// Default cap on enumerated codewords or quotients.
pub const DEFAULT_ORACLE_BUDGET: u64 = 1 << 22;

fn check_budget(order: u64, k: usize, budget: u64) -> Result<()> {
    let needed = (order as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// The GF(p)-basis `β·g_j^[i]` of the code, one vector per message digit.
fn digit_basis(code: &GabidulinCode) -> Result<Vec<Vec<FElem>>> {
    let field = code.field();
    let p = field.p() as u64;
    let mut basis = Vec::new();
    for i in 0..code.k() {
        for e in 0..field.s() * field.m() {
            let beta = field.elem(p.pow(e))?;
            basis.push(
                code.g()
                    .iter()
                    .map(|&gj| field.mul(beta, field.frobenius(gj, i as i64)))
                    .collect(),
            );
        }
    }
    Ok(basis)
}

/// Visits `start + Σ d_i·basis_i` for every digit string `d` over GF(p),
/// changing one digit per step. Binary fields walk a reflected Gray code,
/// other fields an odometer.
fn walk(field: &Field, basis: &[Vec<FElem>], start: Vec<FElem>, mut visit: impl FnMut(&[FElem])) {
    let mut current = start;
    visit(&current);
    let add = |current: &mut [FElem], v: &[FElem]| {
        for (c, &b) in current.iter_mut().zip(v) {
            *c = field.add(*c, b);
        }
    };
    if field.p() == 2 {
        for step in 1u64..1 << basis.len() {
            add(&mut current, &basis[step.trailing_zeros() as usize]);
            visit(&current);
        }
        return;
    }
    let p = field.p();
    let mut digits = vec![0u32; basis.len()];
    let mut idx = 0;
    while idx < basis.len() {
        // the p-th addition of basis[idx] cancels it, which is the carry
        add(&mut current, &basis[idx]);
        digits[idx] += 1;
        if digits[idx] < p {
            visit(&current);
            idx = 0;
        } else {
            digits[idx] = 0;
            idx += 1;
        }
    }
}

/// Calls `visit` on every codeword, walking the GF(p)-coordinates of the
/// message space so each step adds one basis codeword.
pub fn for_each_codeword(
    code: &GabidulinCode,
    budget: u64,
    visit: impl FnMut(&[FElem]),
) -> Result<()> {
    let field = code.field();
    check_budget(field.order() as u64, code.k(), budget)?;
    let basis = digit_basis(code)?;
    walk(field, &basis, vec![field.zero(); code.n()], visit);
    Ok(())
}

/// Minimal rank distance to `received` and every codeword attaining it,
/// sorted by encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closest {
    pub distance: usize,
    pub codewords: Vec<Vec<FElem>>,
}

pub fn brute_force_closest(
    code: &GabidulinCode,
    received: &[FElem],
    budget: u64,
) -> Result<Closest> {
    let field = code.field();
    if received.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: received.len(),
        });
    }
    if received.iter().any(|&a| !field.owns(a)) {
        return Err(Error::FieldMismatch);
    }
    check_budget(field.order() as u64, code.k(), budget)?;
    // walk the errors r - c directly
    let basis: Vec<Vec<FElem>> = digit_basis(code)?
        .into_iter()
        .map(|v| v.into_iter().map(|a| field.neg(a)).collect())
        .collect();
    let mut best = usize::MAX;
    let mut errors = Vec::new();
    walk(field, &basis, received.to_vec(), |e| {
        let t = field.rank_q(e);
        if t < best {
            best = t;
            errors.clear();
        }
        if t == best {
            errors.push(e.to_vec());
        }
    });
    let mut codewords: Vec<Vec<FElem>> = errors
        .into_iter()
        .map(|e| {
            received
                .iter()
                .zip(e)
                .map(|(&r, e)| field.sub(r, e))
                .collect()
        })
        .collect();
    codewords.sort();
    Ok(Closest {
        distance: best,
        codewords,
    })
}

/// Minimum rank weight over all nonzero codewords.
pub fn minimum_distance(code: &GabidulinCode, budget: u64) -> Result<usize> {
    let field = code.field();
    let mut best = usize::MAX;
    for_each_codeword(code, budget, |cw| {
        if cw.iter().any(|c| !c.is_zero()) {
            best = best.min(field.rank_q(cw));
        }
    })?;
    Ok(best)
}

/// Determinant by cofactor expansion along the first row.
pub fn det(field: &Field, matrix: &[Vec<FElem>]) -> FElem {
    let n = matrix.len();
    match n {
        0 => field.one(),
        1 => matrix[0][0],
        _ => {
            let mut acc = field.zero();
            for col in 0..n {
                if matrix[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<FElem>> = matrix[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != col)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let term = field.mul(matrix[0][col], det(field, &minor));
                acc = if col % 2 == 0 {
                    field.add(acc, term)
                } else {
                    field.sub(acc, term)
                };
            }
            acc
        }
    }
}

fn moore_rows(field: &Field, v: &[FElem], rows: usize) -> Vec<Vec<FElem>> {
    (0..rows)
        .map(|i| {
            v.iter()
                .map(|&a| field.pow(a, (field.q() as u64).pow(i as u32)))
                .collect()
        })
        .collect()
}

/// `det` of a square matrix whose last column is `(x^[0], …, x^[rows-1])`,
/// given only its constant columns, as a linearized polynomial.
fn det_with_x_column(field: &Field, constant_cols: &[Vec<FElem>]) -> LinPoly {
    let size = constant_cols.len() + 1;
    let coeffs = (0..size)
        .map(|row| {
            let minor: Vec<Vec<FElem>> = (0..size)
                .filter(|&r| r != row)
                .map(|r| constant_cols.iter().map(|col| col[r]).collect())
                .collect();
            let d = det(field, &minor);
            // cofactor sign of entry (row, size-1)
            if (row + size - 1).is_multiple_of(2) {
                d
            } else {
                field.neg(d)
            }
        })
        .collect();
    LinPoly::from_coeffs(field, coeffs).expect("same field")
}

fn columns(rows: &[Vec<FElem>]) -> Vec<Vec<FElem>> {
    let ncols = rows.first().map_or(0, Vec::len);
    (0..ncols)
        .map(|c| rows.iter().map(|row| row[c]).collect())
        .collect()
}

/// Monic normalization of `det M_{n+1}(g₁, …, g_n, x)`.
pub fn annihilator_det(field: &Field, g: &[FElem]) -> Result<LinPoly> {
    if g.iter().any(|&a| !field.owns(a)) {
        return Err(Error::FieldMismatch);
    }
    let cols = columns(&moore_rows(field, g, g.len() + 1));
    let poly = det_with_x_column(field, &cols);
    if poly.coeff(g.len()).is_zero() {
        return Err(Error::LinearlyDependent);
    }
    poly.monic()
}

/// `Σ (-1)^(n-i) r_i det(D_i(g, x)) / det(M_n(g))`, where `D_i` is
/// `M_n(g₁, …, g_n, x)` with column `i` removed.
pub fn lagrange_det(field: &Field, g: &[FElem], r: &[FElem]) -> Result<LinPoly> {
    if g.len() != r.len() {
        return Err(Error::LengthMismatch {
            expected: g.len(),
            got: r.len(),
        });
    }
    if g.iter().chain(r).any(|&a| !field.owns(a)) {
        return Err(Error::FieldMismatch);
    }
    let n = g.len();
    let moore = moore_rows(field, g, n);
    let denom = det(field, &moore);
    if denom.is_zero() {
        return Err(Error::LinearlyDependent);
    }
    let cols = columns(&moore);
    let mut acc = LinPoly::zero(field);
    for (i, &ri) in r.iter().enumerate() {
        let others: Vec<Vec<FElem>> = (0..n)
            .filter(|&c| c != i)
            .map(|c| cols[c].clone())
            .collect();
        let term = det_with_x_column(field, &others);
        let mut scale = field.div(ri, denom)?;
        // 1-based exponent n - (i+1)
        if (n - i - 1) % 2 == 1 {
            scale = field.neg(scale);
        }
        acc = acc.add(&term.scale(scale)?)?;
    }
    Ok(acc)
}

/// Searches every `M` with `qdeg M < k` for `D ∘ M = N`.
pub fn divisibility_exhaustive(
    numerator: &LinPoly,
    divisor: &LinPoly,
    k: usize,
    budget: u64,
) -> Result<Option<LinPoly>> {
    let field = numerator.field();
    if divisor.field().id() != field.id() {
        return Err(Error::FieldMismatch);
    }
    if divisor.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let order = field.order() as u64;
    check_budget(order, k, budget)?;
    let elements: Vec<FElem> = field.elements().collect();
    for index in 0..order.pow(k as u32) {
        let mut idx = index;
        let coeffs = (0..k)
            .map(|_| {
                let c = elements[(idx % order) as usize];
                idx /= order;
                c
            })
            .collect();
        let candidate = LinPoly::from_coeffs(field, coeffs)?;
        if divisor.compose(&candidate)? == *numerator {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldCtx;

    fn f8() -> Field {
        FieldCtx::new(2, 1, 3, None, Some(vec![1, 1, 0, 1])).unwrap()
    }

    #[test]
    fn determinant_small() {
        let f = FieldCtx::new(5, 1, 1, None, None).unwrap();
        let e = |v| f.elem(v).unwrap();
        // [[1,2],[3,4]] -> 4 - 6 = -2 = 3 mod 5
        assert_eq!(det(&f, &[vec![e(1), e(2)], vec![e(3), e(4)]]), e(3));
        assert_eq!(det(&f, &[]), f.one());
    }

    #[test]
    fn annihilator_forms() {
        let f = f8();
        assert_eq!(
            annihilator_det(&f, &[f.one()]).unwrap(),
            LinPoly::from_values(&f, &[1, 1]).unwrap()
        );
        assert_eq!(
            annihilator_det(&f, &[f.one(), f.alpha()]).unwrap(),
            LinPoly::from_values(&f, &[0b110, 0b111, 1]).unwrap()
        );
        assert_eq!(
            annihilator_det(&f, &[f.alpha(), f.alpha()]),
            Err(Error::LinearlyDependent)
        );
    }

    #[test]
    fn lagrange_forms() {
        let f = f8();
        let a3 = f.alpha_pow(3);
        assert_eq!(
            lagrange_det(&f, &[f.one()], &[a3]).unwrap(),
            LinPoly::monomial(&f, a3, 0).unwrap()
        );
        let g = [f.one(), f.alpha()];
        assert!(lagrange_det(&f, &g, &[f.zero(); 2]).unwrap().is_zero());
        // odd characteristic, where the signs matter
        let f27 = FieldCtx::new(3, 1, 3, None, None).unwrap();
        let g = [f27.one(), f27.alpha(), f27.alpha_pow(5)];
        let r = [f27.alpha_pow(7), f27.zero(), f27.alpha_pow(20)];
        let lam = lagrange_det(&f27, &g, &r).unwrap();
        for (&gi, &ri) in g.iter().zip(&r) {
            assert_eq!(lam.eval(gi).unwrap(), ri);
        }
    }

    #[test]
    fn exhaustive_divisibility() {
        let f = f8();
        let d = LinPoly::from_values(&f, &[3, 1]).unwrap();
        let m0 = LinPoly::from_values(&f, &[5, 6]).unwrap();
        let n = d.compose(&m0).unwrap();
        assert_eq!(
            divisibility_exhaustive(&n, &d, 2, 1 << 10).unwrap(),
            Some(m0)
        );
        assert_eq!(
            divisibility_exhaustive(&d, &d, 1, 1 << 10).unwrap(),
            Some(LinPoly::x(&f))
        );
        assert!(matches!(
            divisibility_exhaustive(&d, &d, 4, 16),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn closest_to_a_codeword_is_itself() {
        let f = f8();
        let code = GabidulinCode::new(&f, vec![f.one(), f.alpha(), f.alpha_pow(2)], 2).unwrap();
        let msg = code.message_from_values(&[4, 7]).unwrap();
        let c = code.encode(&msg);
        let closest = brute_force_closest(&code, &c, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(closest.distance, 0);
        assert_eq!(closest.codewords, vec![c]);
    }

    #[test]
    fn enumeration_visits_each_codeword_once() {
        let f = FieldCtx::new(3, 1, 2, None, None).unwrap();
        let code = GabidulinCode::new(&f, vec![f.one(), f.alpha()], 1).unwrap();
        let mut seen = std::collections::HashSet::new();
        for_each_codeword(&code, 1 << 10, |cw| {
            assert!(seen.insert(cw.to_vec()));
        })
        .unwrap();
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn enumeration_matches_encoding() {
        for f in [f8(), FieldCtx::new(3, 1, 2, None, None).unwrap()] {
            let g: Vec<FElem> = (0..f.m()).map(|i| f.alpha_pow(i as i64)).collect();
            let code = GabidulinCode::new(&f, g, 2).unwrap();
            let mut walked = Vec::new();
            for_each_codeword(&code, 1 << 12, |cw| walked.push(cw.to_vec())).unwrap();
            let mut encoded = Vec::new();
            for a in f.elements() {
                for b in f.elements() {
                    let msg = code
                        .message_from_values(&[a.value() as u64, b.value() as u64])
                        .unwrap();
                    encoded.push(code.encode(&msg));
                }
            }
            walked.sort();
            encoded.sort();
            assert_eq!(walked, encoded);
        }
    }
}
