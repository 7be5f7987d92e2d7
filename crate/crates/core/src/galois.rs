//! Finite-field tower arithmetic GF(p) ⊂ GF(q = p^s) ⊂ GF(q^m).
//!
//! Elements of GF(q^m) are stored by their integer encoding: the little-endian
//! base-q digits are the coordinates over GF(q) in the power basis
//! `1, z, …, z^(m-1)` of a root `z` of the top modulus. Elements of GF(q) are
//! encoded the same way one level down, so the integer encoding of a GF(q^m)
//! element is also its little-endian base-p digit string. The subfield GF(q)
//! therefore sits inside GF(q^m) as the encodings `0..q`.
//!
//! Multiplication goes through exp/log tables built once per [`FieldCtx`];
//! field sizes are meant for desk-scale experiments (at most 2^24 elements).

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_ORDER: u64 = 1 << 24;

static NEXT_FIELD_ID: AtomicU32 = AtomicU32::new(1);

/// Shared handle to an immutable field context.
pub type Field = Arc<FieldCtx>;

/// An element of GF(q^m), tagged with the id of the field it belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FElem {
    value: u32,
    field: u32,
}

impl FElem {
    /// Integer encoding in `[0, q^m)`.
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn field_id(self) -> u32 {
        self.field
    }
}

impl fmt::Debug for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

/// JSON form of a field: `{"p":2,"s":1,"m":3,"top_modulus":[1,1,0,1]}`.
///
/// Coefficient lists are little-endian. `base_modulus` entries are GF(p)
/// values, `top_modulus` entries are integer encodings of GF(q) elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    #[serde(default = "one")]
    pub s: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_modulus: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

/// Arithmetic on small integer-encoded scalars, used by the generic
/// polynomial helpers that build both levels of the tower.
trait Scalars {
    fn size(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn sub(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;
}

struct PrimeField {
    p: u32,
}

impl Scalars for PrimeField {
    fn size(&self) -> u32 {
        self.p
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    fn inv(&self, a: u32) -> u32 {
        // Fermat: a^(p-2)
        let p = self.p as u64;
        let mut base = a as u64 % p;
        let mut exp = p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u32
    }
}

/// GF(q) with exp/log tables.
struct BaseField {
    p: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Scalars for BaseField {
    fn size(&self) -> u32 {
        self.q
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        add_digits(a, b, self.p)
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        add_digits(a, neg_digits(b, self.p), self.p)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let group = self.exp.len();
        self.exp[(self.log[a as usize] as usize + self.log[b as usize] as usize) % group]
    }

    fn inv(&self, a: u32) -> u32 {
        let group = self.exp.len();
        self.exp[(group - self.log[a as usize] as usize) % group]
    }
}

fn add_digits(a: u32, b: u32, p: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (mut a, mut b, p) = (a as u64, b as u64, p as u64);
    let (mut out, mut place) = (0u64, 1u64);
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out as u32
}

fn neg_digits(a: u32, p: u32) -> u32 {
    if p == 2 {
        return a;
    }
    let (mut a, p) = (a as u64, p as u64);
    let (mut out, mut place) = (0u64, 1u64);
    while a > 0 {
        out += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    out as u32
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn to_digits(mut v: u64, base: u64, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for d in out.iter_mut() {
        *d = (v % base) as u32;
        v /= base;
    }
    out
}

fn from_digits(digits: &[u32], base: u64) -> u64 {
    digits
        .iter()
        .rev()
        .fold(0u64, |acc, &d| acc * base + d as u64)
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo the nonzero polynomial `b`.
fn poly_rem<F: Scalars>(f: &F, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = f.mul(r[dr], lead_inv);
        for (i, &bi) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = f.sub(r[idx], f.mul(c, bi));
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod<F: Scalars>(f: &F, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(ai, bj));
        }
    }
    poly_rem(f, &prod, modulus)
}

fn poly_powmod<F: Scalars>(f: &F, a: &[u32], mut e: u64, modulus: &[u32]) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(f, &acc, &base, modulus);
        }
        base = poly_mulmod(f, &base, &base, modulus);
        e >>= 1;
    }
    acc
}

/// Irreducibility by trial division with every monic polynomial of degree
/// at most half the input degree.
fn is_irreducible<F: Scalars>(f: &F, poly: &[u32]) -> bool {
    let mut poly = poly.to_vec();
    trim(&mut poly);
    if poly.len() < 2 {
        return false;
    }
    let d = poly.len() - 1;
    let n = f.size() as u64;
    for e in 1..=d / 2 {
        for t in 0..n.pow(e as u32) {
            let mut cand = to_digits(t, n, e);
            cand.push(1);
            if poly_rem(f, &poly, &cand).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `d`, in order of the integer
/// formed by its lower coefficients read as little-endian digits.
fn smallest_irreducible<F: Scalars>(f: &F, d: u32) -> Vec<u32> {
    let n = f.size() as u64;
    for t in 0..n.pow(d) {
        let mut cand = to_digits(t, n, d as usize);
        cand.push(1);
        if is_irreducible(f, &cand) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// exp/log tables of the field `F[z]/(modulus)` for its smallest-encoded
/// primitive element.
fn build_tables<F: Scalars>(f: &F, modulus: &[u32]) -> (u32, Vec<u32>, Vec<u32>) {
    let n = f.size() as u64;
    let d = modulus.len() - 1;
    let order = n.pow(d as u32);
    let group = order - 1;
    let factors = prime_factors(group);
    let one = vec![1u32];
    let generator = (1..order)
        .find(|&v| {
            let mut poly = to_digits(v, n, d);
            trim(&mut poly);
            factors.iter().all(|&r| {
                let mut pw = poly_powmod(f, &poly, group / r, modulus);
                trim(&mut pw);
                pw != one
            })
        })
        .expect("multiplicative group of a finite field is cyclic");

    let gen_poly = to_digits(generator, n, d);
    let mut exp = Vec::with_capacity(group as usize);
    let mut log = vec![0u32; order as usize];
    let mut cur = vec![1u32];
    for i in 0..group {
        let v = from_digits(&cur, n);
        exp.push(v as u32);
        log[v as usize] = i as u32;
        cur = poly_mulmod(f, &cur, &gen_poly, modulus);
    }
    (generator as u32, exp, log)
}

fn check_modulus<F: Scalars>(f: &F, given: Vec<u32>, degree: u32) -> Result<Vec<u32>> {
    if given.len() != degree as usize + 1 || given.last() != Some(&1) {
        return Err(Error::ModulusDegree {
            expected: degree,
            got: given,
        });
    }
    if let Some(&bad) = given.iter().find(|&&c| c >= f.size()) {
        return Err(Error::ModulusCoefficient(bad));
    }
    if !is_irreducible(f, &given) {
        return Err(Error::ReducibleModulus(given));
    }
    Ok(given)
}

/// Parameters, moduli and lookup tables of the tower GF(p) ⊂ GF(q) ⊂ GF(q^m).
///
/// Immutable after construction; share it through [`Field`].
pub struct FieldCtx {
    id: u32,
    p: u32,
    s: u32,
    m: u32,
    order: u32,
    base_modulus: Vec<u32>,
    top_modulus: Vec<u32>,
    base: BaseField,
    alpha: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    // q^i mod (q^m - 1) for i < m
    frob_shift: Vec<u64>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("m", &self.m)
            .field("base_modulus", &self.base_modulus)
            .field("top_modulus", &self.top_modulus)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds GF(q^m) with q = p^s. Omitted moduli default to the smallest
    /// monic irreducible polynomial of the required degree.
    pub fn new(
        p: u32,
        s: u32,
        m: u32,
        base_modulus: Option<Vec<u32>>,
        top_modulus: Option<Vec<u32>>,
    ) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if s == 0 || m == 0 {
            return Err(Error::ZeroDegree { s, m });
        }
        let order = (p as u64)
            .checked_pow(s.saturating_mul(m))
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge(
                (p as u64).saturating_pow(s.saturating_mul(m)),
            ))?;

        let prime = PrimeField { p };
        let base_modulus = match base_modulus {
            Some(given) => check_modulus(&prime, given, s)?,
            None => smallest_irreducible(&prime, s),
        };
        let (_, base_exp, base_log) = build_tables(&prime, &base_modulus);
        let q = p.pow(s);
        let base = BaseField {
            p,
            q,
            exp: base_exp,
            log: base_log,
        };

        let top_modulus = match top_modulus {
            Some(given) => check_modulus(&base, given, m)?,
            None => smallest_irreducible(&base, m),
        };
        let (alpha, exp, log) = build_tables(&base, &top_modulus);
        let group = order - 1;
        let frob_shift = (0..m)
            .map(|i| {
                if group == 0 {
                    0
                } else {
                    (q as u64).pow(i) % group
                }
            })
            .collect();

        Ok(Arc::new(FieldCtx {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            p,
            s,
            m,
            order: order as u32,
            base_modulus,
            top_modulus,
            base,
            alpha,
            exp,
            log,
            frob_shift,
        }))
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Field> {
        Self::new(
            desc.p,
            desc.s,
            desc.m,
            desc.base_modulus.clone(),
            desc.top_modulus.clone(),
        )
    }

    /// Descriptor with both moduli filled in.
    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            s: self.s,
            m: self.m,
            base_modulus: Some(self.base_modulus.clone()),
            top_modulus: Some(self.top_modulus.clone()),
        }
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Size of the base field GF(q).
    pub fn q(&self) -> u32 {
        self.base.q
    }

    /// Number of elements of GF(q^m).
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn base_modulus(&self) -> &[u32] {
        &self.base_modulus
    }

    pub fn top_modulus(&self) -> &[u32] {
        &self.top_modulus
    }

    /// The primitive element used for `a^k` notation.
    pub fn alpha(&self) -> FElem {
        self.wrap(self.alpha)
    }

    fn wrap(&self, value: u32) -> FElem {
        FElem {
            value,
            field: self.id,
        }
    }

    #[inline]
    fn check(&self, a: FElem) {
        assert_eq!(a.field, self.id, "element from a different field");
    }

    pub fn owns(&self, a: FElem) -> bool {
        a.field == self.id
    }

    pub fn zero(&self) -> FElem {
        self.wrap(0)
    }

    pub fn one(&self) -> FElem {
        self.wrap(1)
    }

    /// Element from its integer encoding.
    pub fn elem(&self, value: u64) -> Result<FElem> {
        if value >= self.order as u64 {
            return Err(Error::InvalidElement {
                value,
                order: self.order,
            });
        }
        Ok(self.wrap(value as u32))
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FElem> + '_ {
        (0..self.order).map(|v| self.wrap(v))
    }

    /// `alpha^k`, exponent taken modulo q^m - 1.
    pub fn alpha_pow(&self, k: i64) -> FElem {
        let group = self.exp.len() as i64;
        self.wrap(self.exp[k.rem_euclid(group) as usize])
    }

    /// Discrete logarithm to base alpha; `None` for zero.
    pub fn log_alpha(&self, a: FElem) -> Option<u32> {
        self.check(a);
        (!a.is_zero()).then(|| self.log[a.value as usize])
    }

    /// Checked arithmetic: rejects operands from different fields and
    /// division by zero.
    pub fn arith(&self, a: FElem, b: FElem, op: Op) -> Result<FElem> {
        if !self.owns(a) || !self.owns(b) {
            return Err(Error::FieldMismatch);
        }
        Ok(match op {
            Op::Add => self.add(a, b),
            Op::Sub => self.sub(a, b),
            Op::Mul => self.mul(a, b),
            Op::Div => self.div(a, b)?,
        })
    }

    pub fn add(&self, a: FElem, b: FElem) -> FElem {
        self.check(a);
        self.check(b);
        self.wrap(add_digits(a.value, b.value, self.p))
    }

    pub fn neg(&self, a: FElem) -> FElem {
        self.check(a);
        self.wrap(neg_digits(a.value, self.p))
    }

    pub fn sub(&self, a: FElem, b: FElem) -> FElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FElem, b: FElem) -> FElem {
        self.check(a);
        self.check(b);
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let group = self.exp.len();
        let e = (self.log[a.value as usize] as usize + self.log[b.value as usize] as usize) % group;
        self.wrap(self.exp[e])
    }

    pub fn inv(&self, a: FElem) -> Result<FElem> {
        self.check(a);
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let group = self.exp.len();
        Ok(self.wrap(self.exp[(group - self.log[a.value as usize] as usize) % group]))
    }

    pub fn div(&self, a: FElem, b: FElem) -> Result<FElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FElem, e: u64) -> FElem {
        self.check(a);
        if e == 0 {
            return self.one();
        }
        if a.is_zero() {
            return self.zero();
        }
        let group = self.exp.len() as u64;
        let idx = (self.log[a.value as usize] as u64 % group) * (e % group) % group;
        self.wrap(self.exp[idx as usize])
    }

    /// `a^(q^i)`; `i` is reduced modulo m, so negative powers invert the
    /// Frobenius automorphism.
    pub fn frobenius(&self, a: FElem, i: i64) -> FElem {
        self.check(a);
        if a.is_zero() {
            return a;
        }
        let r = i.rem_euclid(self.m as i64) as usize;
        let group = self.exp.len() as u64;
        let idx = (self.log[a.value as usize] as u64 * self.frob_shift[r]) % group;
        self.wrap(self.exp[idx as usize])
    }

    /// Coordinates over GF(q) in the power basis of the top modulus root.
    pub fn coords_q(&self, a: FElem) -> Vec<u32> {
        self.check(a);
        to_digits(a.value as u64, self.base.q as u64, self.m as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FElem> {
        if coords.len() != self.m as usize {
            return Err(Error::LengthMismatch {
                expected: self.m as usize,
                got: coords.len(),
            });
        }
        if let Some(&bad) = coords.iter().find(|&&c| c >= self.base.q) {
            return Err(Error::InvalidElement {
                value: bad as u64,
                order: self.base.q,
            });
        }
        Ok(self.wrap(from_digits(coords, self.base.q as u64) as u32))
    }

    /// Multiplies by a GF(q) scalar (given by its encoding in `0..q`).
    pub fn scale_base(&self, lambda: u32, a: FElem) -> FElem {
        assert!(lambda < self.base.q, "scalar outside GF(q)");
        self.mul(self.wrap(lambda), a)
    }

    pub fn base_add(&self, a: u32, b: u32) -> u32 {
        self.base.add(a, b)
    }

    pub fn base_sub(&self, a: u32, b: u32) -> u32 {
        self.base.sub(a, b)
    }

    pub fn base_mul(&self, a: u32, b: u32) -> u32 {
        self.base.mul(a, b)
    }

    /// Rank over GF(q) of the m×n matrix whose columns are `coords_q(v_i)`.
    pub fn rank_q(&self, v: &[FElem]) -> usize {
        v.iter().for_each(|&a| self.check(a));
        if self.base.q == 2 {
            // coordinates over GF(2) are the bits of the encoding;
            // pivots[b] holds the basis vector whose top bit is b
            let mut pivots = [0u32; 32];
            let mut rank = 0;
            for &a in v {
                let mut x = a.value;
                while x != 0 {
                    let top = 31 - x.leading_zeros() as usize;
                    if pivots[top] == 0 {
                        pivots[top] = x;
                        rank += 1;
                        break;
                    }
                    x ^= pivots[top];
                }
            }
            return rank;
        }
        let mut rows: Vec<Vec<u32>> = v.iter().map(|&a| self.coords_q(a)).collect();
        self.rref(&mut rows).len()
    }

    pub fn is_linearly_independent(&self, v: &[FElem]) -> bool {
        self.rank_q(v) == v.len()
    }

    /// Row-reduces `rows` over GF(q) in place; returns pivot columns.
    pub(crate) fn rref(&self, rows: &mut [Vec<u32>]) -> Vec<usize> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = self.base.inv(rows[r][col]);
            for x in rows[r].iter_mut() {
                *x = self.base.mul(*x, inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[col] != 0 {
                    let factor = row[col];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = self.base.sub(*x, self.base.mul(factor, y));
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        pivots
    }

    /// Basis of `{x : A x = 0}` over GF(q) for the given row-major matrix.
    pub(crate) fn kernel(&self, mut rows: Vec<Vec<u32>>, ncols: usize) -> Vec<Vec<u32>> {
        let pivots = self.rref(&mut rows);
        (0..ncols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut x = vec![0u32; ncols];
                x[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = self.base.sub(0, rows[r][free]);
                }
                x
            })
            .collect()
    }

    /// Text form: `0`, `1`, `a`, or `a^k` with `a` the primitive element.
    pub fn format_elem(&self, a: FElem) -> String {
        match self.log_alpha(a) {
            None => "0".into(),
            Some(0) => "1".into(),
            Some(1) => "a".into(),
            Some(k) => format!("a^{k}"),
        }
    }

    /// Parses an integer encoding or `a`, `a^k` (also `α`).
    pub fn parse_elem(&self, s: &str) -> Result<FElem> {
        let s = s.trim();
        let power = s.strip_prefix('a').or_else(|| s.strip_prefix('α'));
        if let Some(rest) = power {
            if rest.is_empty() {
                return Ok(self.alpha());
            }
            let k = rest
                .strip_prefix('^')
                .and_then(|k| k.trim().parse::<i64>().ok())
                .ok_or_else(|| Error::Parse(format!("bad power notation `{s}`")))?;
            return Ok(self.alpha_pow(k));
        }
        let v = s
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad field element `{s}`")))?;
        self.elem(v)
    }
}
