//! Random messages, words and rank errors for simulations.

use rand::Rng;

use crate::decoder::{GabidulinCode, Message};
use crate::error::{Error, Result};
use crate::galois::{FElem, Field};
use crate::linpoly::LinPoly;

fn random_matrix<R: Rng + ?Sized>(
    field: &Field,
    rows: usize,
    cols: usize,
    rng: &mut R,
) -> Vec<Vec<u32>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(0..field.q())).collect())
        .collect()
}

fn full_rank<R: Rng + ?Sized>(
    field: &Field,
    rows: usize,
    cols: usize,
    rng: &mut R,
) -> Vec<Vec<u32>> {
    let rank = rows.min(cols);
    loop {
        let mat = random_matrix(field, rows, cols, rng);
        if field.rref(&mut mat.clone()).len() == rank {
            return mat;
        }
    }
}

/// An error vector of length `n` whose GF(q)-rank is exactly `t`.
///
/// Draws full-rank `A` (m×t) and `B` (t×n) over GF(q) by rejection and maps
/// the columns of `A·B` back into GF(q^m).
pub fn random_rank_error<R: Rng + ?Sized>(
    field: &Field,
    n: usize,
    t: usize,
    rng: &mut R,
) -> Result<Vec<FElem>> {
    let m = field.m() as usize;
    let max = m.min(n);
    if t > max {
        return Err(Error::RankOutOfRange { t, max });
    }
    if t == 0 {
        return Ok(vec![field.zero(); n]);
    }
    let a = full_rank(field, m, t, rng);
    let b = full_rank(field, t, n, rng);
    (0..n)
        .map(|col| {
            let coords: Vec<u32> = (0..m)
                .map(|row| {
                    (0..t).fold(0, |acc, l| {
                        field.base_add(acc, field.base_mul(a[row][l], b[l][col]))
                    })
                })
                .collect();
            field.from_coords(&coords)
        })
        .collect()
}

pub fn random_elem<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> FElem {
    field
        .elem(rng.random_range(0..field.order()) as u64)
        .expect("in range")
}

pub fn random_word<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Vec<FElem> {
    (0..n).map(|_| random_elem(field, rng)).collect()
}

pub fn random_message<R: Rng + ?Sized>(code: &GabidulinCode, rng: &mut R) -> Message {
    let coeffs = random_word(code.field(), code.k(), rng);
    code.message(LinPoly::from_coeffs(code.field(), coeffs).expect("same field"))
        .expect("degree below k")
}

/// `word + e` with `e` of rank exactly `t`.
pub fn corrupt<R: Rng + ?Sized>(
    field: &Field,
    word: &[FElem],
    t: usize,
    rng: &mut R,
) -> Result<Vec<FElem>> {
    let e = random_rank_error(field, word.len(), t, rng)?;
    Ok(word.iter().zip(e).map(|(&c, e)| field.add(c, e)).collect())
}

/// A random GF(q)-independent tuple of `n` points.
pub fn random_points<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Result<Vec<FElem>> {
    let m = field.m() as usize;
    if n > m {
        return Err(Error::RankOutOfRange { t: n, max: m });
    }
    loop {
        let g = random_word(field, n, rng);
        if field.is_linearly_independent(&g) {
            return Ok(g);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldCtx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn errors_have_requested_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in [
            FieldCtx::new(2, 1, 5, None, None).unwrap(),
            FieldCtx::new(3, 1, 3, None, None).unwrap(),
            FieldCtx::new(2, 2, 3, None, None).unwrap(),
        ] {
            let m = f.m() as usize;
            for n in 1..=m {
                for t in 0..=n.min(m) {
                    for _ in 0..5 {
                        let e = random_rank_error(&f, n, t, &mut rng).unwrap();
                        assert_eq!(e.len(), n);
                        assert_eq!(f.rank_q(&e), t);
                    }
                }
            }
            assert!(matches!(
                random_rank_error(&f, 2, 3, &mut rng),
                Err(Error::RankOutOfRange { t: 3, max: 2 })
            ));
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let f = FieldCtx::new(2, 1, 4, None, None).unwrap();
        let word = vec![f.one(); 4];
        let a = corrupt(&f, &word, 2, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        let b = corrupt(&f, &word, 2, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            corrupt(&f, &word, 0, &mut ChaCha8Rng::seed_from_u64(1)).unwrap(),
            word
        );
    }
}
