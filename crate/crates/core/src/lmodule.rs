//! Pairs and 2×2 matrices over the ring of linearized polynomials, the
//! weighted term-over-position order, and the iterative Gröbner-basis update
//! of the interpolation module.
//!
//! A decoding basis is stored literally as `[[P, -K], [N, -D]]`: the second
//! column holds the negated polynomials, so evaluating a row at a point
//! `(g, r)` yields the discrepancy directly.

use crate::error::{Error, Result};
use crate::galois::{FElem, Field};
use crate::linpoly::{LinPoly, QDeg};

/// `[first, second] = first·e₁ + second·e₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vec2 {
    pub first: LinPoly,
    pub second: LinPoly,
}

/// Weights `(k₁, k₂)` of the weighted q-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Weights {
    pub k1: i64,
    pub k2: i64,
}

impl Weights {
    pub fn new(k1: i64, k2: i64) -> Self {
        Weights { k1, k2 }
    }

    /// The `(0, k-1)` weights used for a code of dimension `k`.
    pub fn for_dimension(k: usize) -> Self {
        Weights {
            k1: 0,
            k2: k as i64 - 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    First,
    Second,
}

impl Position {
    pub fn index(self) -> usize {
        match self {
            Position::First => 1,
            Position::Second => 2,
        }
    }
}

impl Vec2 {
    pub fn new(first: LinPoly, second: LinPoly) -> Self {
        Vec2 { first, second }
    }

    pub fn is_zero(&self) -> bool {
        self.first.is_zero() && self.second.is_zero()
    }

    pub fn add(&self, other: &Vec2) -> Result<Vec2> {
        Ok(Vec2 {
            first: self.first.add(&other.first)?,
            second: self.second.add(&other.second)?,
        })
    }

    /// Left action `a ∘ [f, g] = [a∘f, a∘g]`.
    pub fn compose_left(&self, a: &LinPoly) -> Result<Vec2> {
        Ok(Vec2 {
            first: a.compose(&self.first)?,
            second: a.compose(&self.second)?,
        })
    }

    /// `max{k₁ + qdeg(first), k₂ + qdeg(second)}`.
    pub fn weighted_qdeg(&self, w: Weights) -> QDeg {
        (self.first.qdeg() + w.k1).max(self.second.qdeg() + w.k2)
    }

    /// Leading weighted degree and position. On a tie the second position
    /// wins, since the order ranks `e₁` below `e₂` at equal weighted degree.
    pub fn leading(&self, w: Weights) -> Result<(i64, Position)> {
        let d1 = self.first.qdeg() + w.k1;
        let d2 = self.second.qdeg() + w.k2;
        match (d1, d2) {
            (QDeg::NegInf, QDeg::NegInf) => Err(Error::ZeroVector),
            (d1, QDeg::Finite(d)) if QDeg::Finite(d) >= d1 => Ok((d, Position::Second)),
            (QDeg::Finite(d), _) => Ok((d, Position::First)),
            _ => unreachable!(),
        }
    }

    /// `Q(g, r) = first(g) + second(r)`.
    pub fn apply(&self, g: FElem, r: FElem) -> Result<FElem> {
        let f = self.first.field();
        Ok(f.add(self.first.eval(g)?, self.second.eval(r)?))
    }

    pub fn values(&self) -> [Vec<u32>; 2] {
        [self.first.values(), self.second.values()]
    }
}

/// Two rows of a basis of a submodule of the rank-2 free module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub rows: [Vec2; 2],
}

impl Mat2 {
    pub fn new(row1: Vec2, row2: Vec2) -> Self {
        Mat2 { rows: [row1, row2] }
    }

    pub fn from_entries(a: LinPoly, b: LinPoly, c: LinPoly, d: LinPoly) -> Self {
        Mat2::new(Vec2::new(a, b), Vec2::new(c, d))
    }

    /// `[[x, 0], [0, x]]`.
    pub fn identity(field: &Field) -> Self {
        let x = LinPoly::x(field);
        let z = LinPoly::zero(field);
        Mat2::from_entries(x.clone(), z.clone(), z, x)
    }

    pub fn entry(&self, i: usize, j: usize) -> &LinPoly {
        let row = &self.rows[i];
        if j == 0 {
            &row.first
        } else {
            &row.second
        }
    }

    /// Matrix composition: entry `(i, j) = A_{i1} ∘ B_{1j} + A_{i2} ∘ B_{2j}`.
    pub fn compose(&self, other: &Mat2) -> Result<Mat2> {
        let entry = |i: usize, j: usize| -> Result<LinPoly> {
            self.entry(i, 0)
                .compose(other.entry(0, j))?
                .add(&self.entry(i, 1).compose(other.entry(1, j))?)
        };
        Ok(Mat2::from_entries(
            entry(0, 0)?,
            entry(0, 1)?,
            entry(1, 0)?,
            entry(1, 1)?,
        ))
    }

    /// True iff the two rows have different leading positions.
    pub fn is_minimal_gb(&self, w: Weights) -> Result<bool> {
        let (_, p1) = self.rows[0].leading(w)?;
        let (_, p2) = self.rows[1].leading(w)?;
        Ok(p1 != p2)
    }

    /// Coefficient dump `[[row1.first, row1.second], [row2.first, row2.second]]`.
    pub fn values(&self) -> [[Vec<u32>; 2]; 2] {
        [self.rows[0].values(), self.rows[1].values()]
    }
}

/// Which update matrix a step applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `[[x^[1] - Γ^(q-1) x, 0], [Δ x, -Γ x]]`
    RaiseFirst,
    /// `[[Δ x, -Γ x], [0, x^[1] - Δ^(q-1) x]]`
    RaiseSecond,
}

/// One update of the interpolation basis.
#[derive(Clone, Debug)]
pub struct Step {
    pub basis: Mat2,
    pub delta: FElem,
    pub gamma: FElem,
    pub branch: Branch,
}

fn scalar_x(field: &Field, c: FElem) -> LinPoly {
    LinPoly::monomial(field, c, 0).expect("element of this field")
}

fn frobenius_step(field: &Field, c: FElem) -> LinPoly {
    let scaled = field.pow(c, field.q() as u64 - 1);
    LinPoly::from_coeffs(field, vec![field.neg(scaled), field.one()]).expect("same field")
}

/// Adds the interpolation point `(g, r)` to a minimal basis for dimension `k`.
///
/// `step` is only used to label a degenerate-update error.
pub fn gb_step(basis: &Mat2, g: FElem, r: FElem, k: usize, step: usize) -> Result<Step> {
    let field = basis.rows[0].first.field().clone();
    let gamma = basis.rows[0].apply(g, r)?;
    let delta = basis.rows[1].apply(g, r)?;
    if gamma.is_zero() && delta.is_zero() {
        return Err(Error::DegenerateStep { step });
    }
    let p = &basis.rows[0].first;
    let d = &basis.rows[1].second;
    let raise_first =
        (p.qdeg() <= d.qdeg() + (k as i64 - 1) && !gamma.is_zero()) || delta.is_zero();
    let zero = LinPoly::zero(&field);
    let (update, branch) = if raise_first {
        (
            Mat2::from_entries(
                frobenius_step(&field, gamma),
                zero,
                scalar_x(&field, delta),
                scalar_x(&field, field.neg(gamma)),
            ),
            Branch::RaiseFirst,
        )
    } else {
        (
            Mat2::from_entries(
                scalar_x(&field, delta),
                scalar_x(&field, field.neg(gamma)),
                zero,
                frobenius_step(&field, delta),
            ),
            Branch::RaiseSecond,
        )
    };
    Ok(Step {
        basis: update.compose(basis)?,
        delta,
        gamma,
        branch,
    })
}

fn check_points(field: &Field, g: &[FElem], r: &[FElem], k: usize) -> Result<()> {
    if g.len() != r.len() {
        return Err(Error::LengthMismatch {
            expected: g.len(),
            got: r.len(),
        });
    }
    if k == 0 || k > g.len().max(1) {
        return Err(Error::InvalidCode(format!(
            "dimension k={k} must satisfy 1 <= k <= n={}",
            g.len()
        )));
    }
    if g.iter().chain(r).any(|&a| !field.owns(a)) {
        return Err(Error::FieldMismatch);
    }
    if !field.is_linearly_independent(g) {
        return Err(Error::LinearlyDependent);
    }
    Ok(())
}

/// Every intermediate step `B_1, …, B_n` of the interpolation fold.
pub fn interpolation_trace(field: &Field, g: &[FElem], r: &[FElem], k: usize) -> Result<Vec<Step>> {
    check_points(field, g, r, k)?;
    let mut basis = Mat2::identity(field);
    let mut steps = Vec::with_capacity(g.len());
    for (i, (&gi, &ri)) in g.iter().zip(r).enumerate() {
        let step = gb_step(&basis, gi, ri, k, i + 1)?;
        basis = step.basis.clone();
        steps.push(step);
    }
    Ok(steps)
}

/// Minimal Gröbner basis `B_n` of the interpolation module of `(g, r)` under
/// the `(0, k-1)`-weighted order.
pub fn interpolation_basis(field: &Field, g: &[FElem], r: &[FElem], k: usize) -> Result<Mat2> {
    Ok(interpolation_trace(field, g, r, k)?
        .pop()
        .map_or_else(|| Mat2::identity(field), |s| s.basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldCtx;
    use crate::linpoly::{annihilator, lagrange};

    fn f8() -> Field {
        FieldCtx::new(2, 1, 3, None, Some(vec![1, 1, 0, 1])).unwrap()
    }

    fn poly(f: &Field, v: &[u64]) -> LinPoly {
        LinPoly::from_values(f, v).unwrap()
    }

    fn vec2(f: &Field, a: &[u64], b: &[u64]) -> Vec2 {
        Vec2::new(poly(f, a), poly(f, b))
    }

    /// Encoding of α^k in F_8 with α³ = α + 1.
    fn ap(f: &Field, k: i64) -> u64 {
        f.alpha_pow(k).value() as u64
    }

    #[test]
    fn weighted_degrees() {
        let f = f8();
        let w01 = Weights::new(0, 1);
        let b1 = vec2(&f, &[ap(&f, 5), 0, ap(&f, 2)], &[1]);
        assert_eq!(b1.weighted_qdeg(w01), QDeg::Finite(2));
        assert_eq!(b1.leading(w01).unwrap(), (2, Position::First));
        let b2 = vec2(&f, &[1, ap(&f, 4), ap(&f, 1)], &[ap(&f, 6), ap(&f, 1)]);
        assert_eq!(b2.weighted_qdeg(w01), QDeg::Finite(2));
        assert_eq!(b2.leading(w01).unwrap(), (2, Position::Second));

        let w00 = Weights::new(0, 0);
        assert_eq!(vec2(&f, &[1], &[1]).weighted_qdeg(w00), QDeg::Finite(0));
        assert_eq!(
            vec2(&f, &[0, 1], &[1]).leading(w00).unwrap(),
            (1, Position::First)
        );
        assert_eq!(
            vec2(&f, &[1], &[1]).leading(w00).unwrap(),
            (0, Position::Second)
        );
        assert_eq!(vec2(&f, &[], &[]).leading(w00), Err(Error::ZeroVector));
        assert_eq!(vec2(&f, &[], &[]).weighted_qdeg(w00), QDeg::NegInf);
    }

    #[test]
    fn matrix_composition_identity() {
        let f = f8();
        let id = Mat2::identity(&f);
        let b1 = Mat2::new(vec2(&f, &[1, 1], &[]), vec2(&f, &[3], &[1]));
        assert_eq!(id.compose(&b1).unwrap(), b1);
        assert_eq!(b1.compose(&id).unwrap(), b1);
    }

    #[test]
    fn row_application() {
        let f = f8();
        let row = vec2(&f, &[3], &[1]);
        assert_eq!(row.apply(f.one(), f.alpha_pow(3)).unwrap(), f.zero());
        let (g, r) = (f.alpha_pow(4), f.alpha_pow(6));
        assert_eq!(vec2(&f, &[1], &[]).apply(g, r).unwrap(), g);
        assert_eq!(vec2(&f, &[], &[1]).apply(g, r).unwrap(), r);
    }

    #[test]
    fn minimality_check() {
        let f = f8();
        let w01 = Weights::new(0, 1);
        let b3 = Mat2::new(
            vec2(&f, &[ap(&f, 5), 0, ap(&f, 2)], &[1]),
            vec2(&f, &[1, ap(&f, 4), ap(&f, 1)], &[ap(&f, 6), ap(&f, 1)]),
        );
        assert!(b3.is_minimal_gb(w01).unwrap());
        let both_first = Mat2::new(vec2(&f, &[1], &[]), vec2(&f, &[0, 1], &[]));
        assert!(!both_first.is_minimal_gb(Weights::new(0, 3)).unwrap());
        assert!(Mat2::identity(&f)
            .is_minimal_gb(Weights::new(0, 0))
            .unwrap());
        let with_zero = Mat2::new(vec2(&f, &[1], &[]), vec2(&f, &[], &[]));
        assert_eq!(with_zero.is_minimal_gb(w01), Err(Error::ZeroVector));
    }

    #[test]
    fn degenerate_step_is_reported() {
        let f = f8();
        let basis = Mat2::new(vec2(&f, &[1, 1], &[]), vec2(&f, &[], &[1]));
        // both rows vanish at (1, 0)
        assert_eq!(
            gb_step(&basis, f.one(), f.zero(), 2, 4).unwrap_err(),
            Error::DegenerateStep { step: 4 }
        );
        let g = [f.one(), f.one()];
        assert_eq!(
            interpolation_basis(&f, &g, &[f.zero(); 2], 1),
            Err(Error::LinearlyDependent)
        );
    }

    #[test]
    fn zero_received_word() {
        let f = f8();
        let g = [f.one(), f.alpha(), f.alpha_pow(2)];
        for k in 1..=3 {
            let b = interpolation_basis(&f, &g, &[f.zero(); 3], k).unwrap();
            assert_eq!(b.rows[1], vec2(&f, &[], &[1]));
            assert!(b.rows[0].second.is_zero());
            assert_eq!(
                b.rows[0].first.monic().unwrap(),
                annihilator(&f, &g).unwrap()
            );
        }
    }

    #[test]
    fn first_k_steps_reproduce_recursion() {
        for f in [f8(), FieldCtx::new(3, 1, 3, None, None).unwrap()] {
            let g = [f.alpha_pow(3), f.alpha(), f.alpha_pow(6)];
            let r = [f.alpha_pow(5), f.one(), f.zero()];
            let steps = interpolation_trace(&f, &g, &r, 3).unwrap();
            for (i, step) in steps.iter().enumerate() {
                assert_eq!(step.branch, Branch::RaiseFirst);
                let pi = annihilator(&f, &g[..=i]).unwrap();
                let lam = lagrange(&f, &g[..=i], &r[..=i]).unwrap();
                let row1 = &step.basis.rows[0];
                let row2 = &step.basis.rows[1];
                let c1 = row1.first.leading_coeff().unwrap();
                assert_eq!(row1.first, pi.scale(c1).unwrap());
                assert!(row1.second.is_zero());
                // row 2 = c · [-Λ, x]
                let c2 = row2.second.coeff(0);
                assert_eq!(row2.second, LinPoly::x(&f).scale(c2).unwrap());
                assert_eq!(row2.first, lam.neg().scale(c2).unwrap());
            }
        }
    }
}
