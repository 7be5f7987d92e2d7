//! Gabidulin codes: encoding, rank distance, the error-span polynomial and
//! the minimal-list decoder.
//!
//! Decoding runs in two phases. The interpolation phase folds the received
//! word into a minimal Gröbner basis `[b₁; b₂]` of the interpolation module
//! (see [`crate::lmodule`]). The parametrization phase then walks
//! `a ∘ b₁ + c ∘ b₂` over all `a` with `qdeg a ≤ ℓ₂ - ℓ₁ + j` and all monic
//! `c` with `qdeg c = j`, for `j = 0, 1, …`, and keeps every pair `[N, -D]`
//! where `D` right-divides `N` with a quotient of q-degree below `k`. The first
//! level `j` that yields anything holds exactly the closest messages.

use std::collections::BTreeMap;
use std::thread;

use crate::error::{Error, Result};
use crate::galois::{FElem, Field};
use crate::linpoly::{annihilator, LinPoly, QDeg};
use crate::lmodule::{interpolation_basis, Mat2, Position, Vec2, Weights};

/// Default cap on parametrization candidates per level.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Rank distance `rank_q(x - y)`.
pub fn rank_distance(field: &Field, x: &[FElem], y: &[FElem]) -> Result<usize> {
    Ok(field.rank_q(&sub_vectors(field, x, y)?))
}

fn sub_vectors(field: &Field, x: &[FElem], y: &[FElem]) -> Result<Vec<FElem>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    if x.iter().chain(y).any(|&a| !field.owns(a)) {
        return Err(Error::FieldMismatch);
    }
    Ok(x.iter().zip(y).map(|(&a, &b)| field.sub(a, b)).collect())
}

/// A message polynomial of q-degree below the code dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Message(LinPoly);

impl Message {
    pub fn poly(&self) -> &LinPoly {
        &self.0
    }

    pub fn into_poly(self) -> LinPoly {
        self.0
    }

    /// Coefficient encodings padded to length `k`.
    pub fn padded_values(&self, k: usize) -> Vec<u32> {
        let mut v = self.0.values();
        v.resize(k.max(v.len()), 0);
        v
    }
}

/// The evaluation code `{(f(g₁), …, f(g_n)) : qdeg f < k}`.
#[derive(Clone, Debug)]
pub struct GabidulinCode {
    field: Field,
    g: Vec<FElem>,
    k: usize,
}

impl GabidulinCode {
    pub fn new(field: &Field, g: Vec<FElem>, k: usize) -> Result<Self> {
        if g.iter().any(|&a| !field.owns(a)) {
            return Err(Error::FieldMismatch);
        }
        let n = g.len();
        if n == 0 || k == 0 || k > n {
            return Err(Error::InvalidCode(format!(
                "need 1 <= k <= n, got n={n}, k={k}"
            )));
        }
        if n > field.m() as usize {
            return Err(Error::InvalidCode(format!(
                "n={n} exceeds m={}, evaluation points cannot be independent",
                field.m()
            )));
        }
        if !field.is_linearly_independent(&g) {
            return Err(Error::LinearlyDependent);
        }
        Ok(GabidulinCode {
            field: field.clone(),
            g,
            k,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn g(&self) -> &[FElem] {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.g.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `floor((n - k) / 2)`.
    pub fn unique_radius(&self) -> usize {
        (self.n() - self.k) / 2
    }

    pub fn message(&self, poly: LinPoly) -> Result<Message> {
        if poly.field().id() != self.field.id() {
            return Err(Error::FieldMismatch);
        }
        match poly.qdeg() {
            QDeg::Finite(d) if d >= self.k as i64 => {
                Err(Error::MessageTooLong { qdeg: d, k: self.k })
            }
            _ => Ok(Message(poly)),
        }
    }

    pub fn message_from_values(&self, values: &[u64]) -> Result<Message> {
        self.message(LinPoly::from_values(&self.field, values)?)
    }

    pub fn encode(&self, msg: &Message) -> Vec<FElem> {
        self.g
            .iter()
            .map(|&gi| msg.0.eval(gi).expect("message checked against this field"))
            .collect()
    }

    fn check_received(&self, received: &[FElem]) -> Result<()> {
        if received.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: received.len(),
            });
        }
        if received.iter().any(|&a| !self.field.owns(a)) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Monic `D` whose roots are the GF(q)-span of the error
    /// `received - encode(msg)`; `qdeg D` is the rank distance.
    pub fn error_span_poly(&self, msg: &Message, received: &[FElem]) -> Result<LinPoly> {
        self.check_received(received)?;
        let error = sub_vectors(&self.field, received, &self.encode(msg))?;
        let mut support: Vec<FElem> = Vec::new();
        for e in error {
            support.push(e);
            if !self.field.is_linearly_independent(&support) {
                support.pop();
            }
        }
        annihilator(&self.field, &support)
    }

    pub fn list_decode(&self, received: &[FElem]) -> Result<DecodeOutcome> {
        self.list_decode_with(received, &DecodeOptions::default())
    }

    /// All messages whose codewords are at minimal rank distance from
    /// `received`.
    pub fn list_decode_with(
        &self,
        received: &[FElem],
        opts: &DecodeOptions,
    ) -> Result<DecodeOutcome> {
        self.check_received(received)?;
        let basis = interpolation_basis(&self.field, &self.g, received, self.k)?;
        let w = Weights::for_dimension(self.k);
        let (l_top, pos_top) = basis.rows[0].leading(w)?;
        let (l_bot, pos_bot) = basis.rows[1].leading(w)?;
        let (b1, l1, b2, l2) = match (pos_top, pos_bot) {
            (Position::First, Position::Second) => (&basis.rows[0], l_top, &basis.rows[1], l_bot),
            (Position::Second, Position::First) => (&basis.rows[1], l_bot, &basis.rows[0], l_top),
            _ => {
                return Err(Error::Internal(
                    "interpolation basis lost minimality".into(),
                ))
            }
        };

        let search = Parametrization::new(&self.field, b1, b2, self.k);
        for j in 0..=self.n() {
            let a_deg = l2 - l1 + j as i64;
            let messages = search.level(a_deg, j, opts)?;
            if !messages.is_empty() {
                return self.outcome(received, messages, j, basis);
            }
        }
        Err(Error::Internal(format!(
            "parametrization found no solution up to j={}",
            self.n()
        )))
    }

    fn outcome(
        &self,
        received: &[FElem],
        messages: Vec<LinPoly>,
        j: usize,
        basis: Mat2,
    ) -> Result<DecodeOutcome> {
        let mut entries = Vec::with_capacity(messages.len());
        let mut distance = None;
        for poly in messages {
            let message = Message(poly);
            let codeword = self.encode(&message);
            let error = sub_vectors(&self.field, received, &codeword)?;
            let t = self.field.rank_q(&error);
            if *distance.get_or_insert(t) != t {
                return Err(Error::Internal(format!(
                    "list mixes rank distances {} and {t}",
                    distance.unwrap_or_default()
                )));
            }
            entries.push(DecodeEntry {
                message,
                codeword,
                error,
            });
        }
        Ok(DecodeOutcome {
            distance: distance.unwrap_or_default(),
            j_final: j,
            entries,
            basis,
        })
    }

    /// The decoded message when it is unique and within `floor((n-k)/2)`.
    pub fn unique_decode(&self, received: &[FElem]) -> Result<UniqueDecode> {
        let outcome = self.list_decode(received)?;
        Ok(if outcome.entries.len() > 1 {
            UniqueDecode::Ambiguous(outcome)
        } else if outcome.distance > self.unique_radius() {
            UniqueDecode::BeyondRadius(outcome)
        } else {
            UniqueDecode::Decoded(outcome.entries[0].message.clone())
        })
    }
}

#[derive(Clone, Debug)]
pub struct DecodeOptions {
    /// Maximum candidate pairs `(a, c)` examined at one level `j`.
    pub budget: u64,
    /// Worker threads for the candidate grid; 1 runs inline.
    pub jobs: usize,
}

impl Default for DecodeOptions {
    fn default() -> Self {
        DecodeOptions {
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeEntry {
    pub message: Message,
    pub codeword: Vec<FElem>,
    pub error: Vec<FElem>,
}

#[derive(Clone, Debug)]
pub struct DecodeOutcome {
    /// Minimal rank distance between the received word and the code.
    pub distance: usize,
    /// Parametrization level that produced the list.
    pub j_final: usize,
    /// Sorted by message coefficient encodings.
    pub entries: Vec<DecodeEntry>,
    /// The interpolation basis `B_n`.
    pub basis: Mat2,
}

#[derive(Clone, Debug)]
pub enum UniqueDecode {
    Decoded(Message),
    Ambiguous(DecodeOutcome),
    BeyondRadius(DecodeOutcome),
}

/// Precomputed lifts `x^[i] ∘ b` of both basis rows.
struct Parametrization<'a> {
    field: &'a Field,
    elements: Vec<FElem>,
    b1: &'a Vec2,
    b2: &'a Vec2,
    k: usize,
}

type Coeffs = [Vec<FElem>; 2];

impl<'a> Parametrization<'a> {
    fn new(field: &'a Field, b1: &'a Vec2, b2: &'a Vec2, k: usize) -> Self {
        Parametrization {
            field,
            elements: field.elements().collect(),
            b1,
            b2,
            k,
        }
    }

    fn lifts(row: &Vec2, count: usize) -> Vec<Coeffs> {
        (0..count)
            .map(|i| {
                [
                    row.first.lift(i).coeffs().to_vec(),
                    row.second.lift(i).coeffs().to_vec(),
                ]
            })
            .collect()
    }

    /// Messages produced at level `j` with `a` ranging over q-degree
    /// at most `a_deg` (only `a = 0` when `a_deg < 0`).
    fn level(&self, a_deg: i64, j: usize, opts: &DecodeOptions) -> Result<Vec<LinPoly>> {
        let order = self.field.order() as u128;
        let a_len = (a_deg + 1).max(0) as u32;
        let a_count = order.checked_pow(a_len).unwrap_or(u128::MAX);
        let c_count = order.checked_pow(j as u32).unwrap_or(u128::MAX);
        let needed = a_count.saturating_mul(c_count);
        if needed > opts.budget as u128 {
            return Err(Error::BudgetExceeded {
                needed,
                budget: opts.budget,
            });
        }
        let a_count = a_count as u64;
        let lifts1 = Self::lifts(self.b1, a_len as usize);
        let lifts2 = Self::lifts(self.b2, j + 1);

        let mut found: BTreeMap<Vec<u32>, LinPoly> = BTreeMap::new();
        for c_index in 0..c_count as u64 {
            // monic c of degree j: lower digits from c_index, leading one
            let mut base: Coeffs = [Vec::new(), Vec::new()];
            self.accumulate(&mut base, &lifts2[j], self.field.one());
            let mut idx = c_index;
            for lift in &lifts2[..j] {
                let coeff = self.elements[(idx % order as u64) as usize];
                idx /= order as u64;
                self.accumulate(&mut base, lift, coeff);
            }

            let jobs = opts.jobs.max(1).min(a_count as usize);
            let chunk = a_count.div_ceil(jobs as u64);
            let hits: Vec<Vec<LinPoly>> = if jobs <= 1 {
                vec![self.scan(&base, &lifts1, 0..a_count)]
            } else {
                thread::scope(|scope| {
                    let handles: Vec<_> = (0..jobs as u64)
                        .map(|w| {
                            let range = (w * chunk)..((w + 1) * chunk).min(a_count);
                            let (base, lifts1) = (&base, &lifts1);
                            scope.spawn(move || self.scan(base, lifts1, range))
                        })
                        .collect();
                    handles
                        .into_iter()
                        .map(|h| h.join().expect("decoder worker panicked"))
                        .collect()
                })
            };
            for poly in hits.into_iter().flatten() {
                let mut key = poly.values();
                key.resize(self.k, 0);
                found.entry(key).or_insert(poly);
            }
        }
        Ok(found.into_values().collect())
    }

    fn accumulate(&self, acc: &mut Coeffs, lift: &Coeffs, c: FElem) {
        if c.is_zero() {
            return;
        }
        for (dst, src) in acc.iter_mut().zip(lift) {
            if dst.len() < src.len() {
                dst.resize(src.len(), self.field.zero());
            }
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = self.field.add(*d, self.field.mul(c, s));
            }
        }
    }

    fn scan(&self, base: &Coeffs, lifts1: &[Coeffs], range: std::ops::Range<u64>) -> Vec<LinPoly> {
        let order = self.field.order() as u64;
        let mut hits = Vec::new();
        for a_index in range {
            let mut cand = base.clone();
            let mut idx = a_index;
            for lift in lifts1 {
                let coeff = self.elements[(idx % order) as usize];
                idx /= order;
                self.accumulate(&mut cand, lift, coeff);
            }
            let [n, neg_d] = cand;
            let numerator = LinPoly::from_coeffs(self.field, n).expect("same field");
            let divisor = LinPoly::from_coeffs(self.field, neg_d)
                .expect("same field")
                .neg();
            if divisor.is_zero() {
                continue;
            }
            // quotient degree is qdeg N - qdeg D
            if numerator.qdeg() > divisor.qdeg() + (self.k as i64 - 1) {
                continue;
            }
            let (quot, rem) = numerator.right_divide(&divisor).expect("nonzero divisor");
            if rem.is_zero() {
                hits.push(quot);
            }
        }
        hits
    }
}
