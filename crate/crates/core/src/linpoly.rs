//! q-linearized polynomials `f(x) = Σ a_i x^[i]` with `x^[i] = x^(q^i)`.
//!
//! Under addition and composition these form a non-commutative ring; the
//! product here is always composition, `compose(f, g) = f(g(x))`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Add;

use crate::error::{Error, Result};
use crate::galois::{FElem, Field};

/// q-degree of a linearized polynomial. The zero polynomial has degree
/// [`QDeg::NegInf`], which orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QDeg {
    NegInf,
    Finite(i64),
}

impl QDeg {
    pub fn finite(self) -> Option<i64> {
        match self {
            QDeg::NegInf => None,
            QDeg::Finite(d) => Some(d),
        }
    }
}

impl Add<i64> for QDeg {
    type Output = QDeg;

    fn add(self, rhs: i64) -> QDeg {
        match self {
            QDeg::NegInf => QDeg::NegInf,
            QDeg::Finite(d) => QDeg::Finite(d + rhs),
        }
    }
}

impl fmt::Display for QDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QDeg::NegInf => f.write_str("-inf"),
            QDeg::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense linearized polynomial; `coeffs[i]` multiplies `x^[i]`. Trailing zero
/// coefficients are always stripped.
#[derive(Clone)]
pub struct LinPoly {
    field: Field,
    coeffs: Vec<FElem>,
}

impl PartialEq for LinPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.id() == other.field.id() && self.coeffs == other.coeffs
    }
}

impl Eq for LinPoly {}

impl Hash for LinPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.id().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for LinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinPoly({self})")
    }
}

impl fmt::Display for LinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c != self.field.one() {
                write!(f, "{} ", self.field.format_elem(c))?;
            }
            write!(f, "x^[{i}]")?;
        }
        Ok(())
    }
}

impl LinPoly {
    fn normalized(field: Field, mut coeffs: Vec<FElem>) -> LinPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LinPoly { field, coeffs }
    }

    pub fn zero(field: &Field) -> LinPoly {
        LinPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    /// The identity map `x = x^[0]`.
    pub fn x(field: &Field) -> LinPoly {
        LinPoly {
            field: field.clone(),
            coeffs: vec![field.one()],
        }
    }

    /// `c · x^[i]`.
    pub fn monomial(field: &Field, c: FElem, i: usize) -> Result<LinPoly> {
        let mut coeffs = vec![field.zero(); i + 1];
        coeffs[i] = c;
        Self::from_coeffs(field, coeffs)
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<FElem>) -> Result<LinPoly> {
        if coeffs.iter().any(|&c| !field.owns(c)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::normalized(field.clone(), coeffs))
    }

    /// From little-endian integer encodings, e.g. `[0, 1, 1]` is `x^[2] + x^[1]`.
    pub fn from_values(field: &Field, values: &[u64]) -> Result<LinPoly> {
        let coeffs = values
            .iter()
            .map(|&v| field.elem(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalized(field.clone(), coeffs))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FElem] {
        &self.coeffs
    }

    /// Coefficient of `x^[i]` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FElem {
        self.coeffs.get(i).copied().unwrap_or(self.field.zero())
    }

    /// Little-endian integer encodings of the coefficients.
    pub fn values(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }

    pub fn qdeg(&self) -> QDeg {
        match self.coeffs.len() {
            0 => QDeg::NegInf,
            n => QDeg::Finite(n as i64 - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<FElem> {
        self.coeffs.last().copied()
    }

    fn same_field(&self, other: &LinPoly) -> Result<()> {
        if self.field.id() != other.field.id() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn eval(&self, a: FElem) -> Result<FElem> {
        if !self.field.owns(a) {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        // Horner-like accumulation of the Frobenius orbit of a
        let mut acc = f.zero();
        let mut power = a;
        for &c in &self.coeffs {
            acc = f.add(acc, f.mul(c, power));
            power = f.frobenius(power, 1);
        }
        Ok(acc)
    }

    pub fn add(&self, other: &LinPoly) -> Result<LinPoly> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Self::normalized(f.clone(), coeffs))
    }

    pub fn sub(&self, other: &LinPoly) -> Result<LinPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LinPoly {
        let f = &self.field;
        LinPoly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    /// `c · f`, i.e. `(c x) ∘ f`.
    pub fn scale(&self, c: FElem) -> Result<LinPoly> {
        if !self.field.owns(c) {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|&a| f.mul(c, a)).collect();
        Ok(Self::normalized(f.clone(), coeffs))
    }

    /// `x^[i] ∘ f`: Frobenius applied to every coefficient, degree shifted by `i`.
    pub fn lift(&self, i: usize) -> LinPoly {
        if self.is_zero() {
            return self.clone();
        }
        let f = &self.field;
        let mut coeffs = vec![f.zero(); i];
        coeffs.extend(self.coeffs.iter().map(|&c| f.frobenius(c, i as i64)));
        LinPoly {
            field: f.clone(),
            coeffs,
        }
    }

    /// `self ∘ other`: `result[i+j] = Σ self_i · other_j^[i]`.
    pub fn compose(&self, other: &LinPoly) -> Result<LinPoly> {
        self.same_field(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f));
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = f.mul(a, f.frobenius(b, i as i64));
                coeffs[i + j] = f.add(coeffs[i + j], term);
            }
        }
        Ok(Self::normalized(f.clone(), coeffs))
    }

    /// Symbolic right division: returns `(Q, R)` with
    /// `self = divisor ∘ Q + R` and `qdeg(R) < qdeg(divisor)`.
    pub fn right_divide(&self, divisor: &LinPoly) -> Result<(LinPoly, LinPoly)> {
        self.same_field(divisor)?;
        let f = &self.field;
        let (Some(t), Some(lead)) = (divisor.qdeg().finite(), divisor.leading_coeff()) else {
            return Err(Error::ZeroPolynomial);
        };
        let t = t as usize;
        let lead_inv = f.inv(lead)?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len().saturating_sub(t)];
        while rem.len() > t {
            let n = rem.len() - 1;
            let top = rem[n];
            if !top.is_zero() {
                // D_t · c^[t] = N_n
                let c = f.frobenius(f.mul(top, lead_inv), -(t as i64));
                let shift = n - t;
                quot[shift] = c;
                for (i, &d) in divisor.coeffs.iter().enumerate() {
                    let term = f.mul(d, f.frobenius(c, i as i64));
                    rem[shift + i] = f.sub(rem[shift + i], term);
                }
            }
            rem.pop();
        }
        Ok((
            Self::normalized(f.clone(), quot),
            Self::normalized(f.clone(), rem),
        ))
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Result<LinPoly> {
        let lead = self.leading_coeff().ok_or(Error::ZeroPolynomial)?;
        self.scale(self.field.inv(lead)?)
    }

    /// A GF(q)-basis of the roots of `self` inside GF(q^m), read off the
    /// kernel of the GF(q)-linear map `a ↦ self(a)`.
    pub fn root_space(&self) -> Result<Vec<FElem>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = &self.field;
        let m = f.m() as usize;
        let q = f.q() as u64;
        // column j holds coords of self(z^j); z^j is encoded as q^j
        let images: Vec<Vec<u32>> = (0..m)
            .map(|j| {
                let basis = f.elem(q.pow(j as u32)).expect("power basis element");
                Ok(f.coords_q(self.eval(basis)?))
            })
            .collect::<Result<_>>()?;
        let rows: Vec<Vec<u32>> = (0..m)
            .map(|r| (0..m).map(|c| images[c][r]).collect())
            .collect();
        f.kernel(rows, m)
            .into_iter()
            .map(|coords| f.from_coords(&coords))
            .collect()
    }
}

/// The k×n Moore matrix; row `i` holds `v_j^[i]`.
pub fn moore(field: &Field, v: &[FElem], k: usize) -> Vec<Vec<FElem>> {
    (0..k)
        .map(|i| v.iter().map(|&a| field.frobenius(a, i as i64)).collect())
        .collect()
}

fn check_points(field: &Field, g: &[FElem]) -> Result<()> {
    if g.iter().any(|&a| !field.owns(a)) {
        return Err(Error::FieldMismatch);
    }
    if !field.is_linearly_independent(g) {
        return Err(Error::LinearlyDependent);
    }
    Ok(())
}

/// `x^[1] - c^(q-1) x`, the one-step annihilator factor.
fn frobenius_step(field: &Field, c: FElem) -> LinPoly {
    let scaled = field.pow(c, field.q() as u64 - 1);
    LinPoly::normalized(field.clone(), vec![field.neg(scaled), field.one()])
}

/// Monic q-annihilator of `span_q(g)`, built by
/// `Π_{i+1} = (x^[1] - Π_i(g_{i+1})^(q-1) x) ∘ Π_i` from `Π_0 = x`.
pub fn annihilator(field: &Field, g: &[FElem]) -> Result<LinPoly> {
    check_points(field, g)?;
    let mut pi = LinPoly::x(field);
    for &gi in g {
        let step = frobenius_step(field, pi.eval(gi)?);
        pi = step.compose(&pi)?;
    }
    Ok(pi)
}

/// q-Lagrange polynomial: the unique `Λ` with `qdeg Λ < n` and `Λ(g_i) = r_i`,
/// built jointly with the annihilator recursion.
pub fn lagrange(field: &Field, g: &[FElem], r: &[FElem]) -> Result<LinPoly> {
    check_points(field, g)?;
    if g.len() != r.len() {
        return Err(Error::LengthMismatch {
            expected: g.len(),
            got: r.len(),
        });
    }
    if r.iter().any(|&a| !field.owns(a)) {
        return Err(Error::FieldMismatch);
    }
    let mut pi = LinPoly::x(field);
    let mut lambda = LinPoly::zero(field);
    for (&gi, &ri) in g.iter().zip(r) {
        let pi_at = pi.eval(gi)?;
        let miss = field.sub(lambda.eval(gi)?, ri);
        let correction = pi.scale(field.div(miss, pi_at)?)?;
        lambda = lambda.sub(&correction)?;
        pi = frobenius_step(field, pi_at).compose(&pi)?;
    }
    Ok(lambda)
}
