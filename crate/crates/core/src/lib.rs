//! Gabidulin rank-metric codes with minimal-list decoding.
//!
//! The decoder interpolates the received word into a two-row Gröbner basis
//! over q-linearized polynomials, then parametrizes that basis to recover
//! every codeword at minimal rank distance, not just one.
//!
//! ```
//! use gabidulin::{FieldCtx, GabidulinCode};
//!
//! // F_8 with α³ = α + 1, points (1, α, α²), dimension 2
//! let f = FieldCtx::new(2, 1, 3, None, Some(vec![1, 1, 0, 1])).unwrap();
//! let code = GabidulinCode::new(&f, vec![f.one(), f.alpha(), f.alpha_pow(2)], 2).unwrap();
//! let received = [f.alpha_pow(3), f.zero(), f.alpha()];
//! let outcome = code.list_decode(&received).unwrap();
//! assert_eq!(outcome.distance, 1);
//! assert_eq!(outcome.entries.len(), 7);
//! ```

pub mod channel;
pub mod decoder;
pub mod error;
pub mod format;
pub mod galois;
pub mod linpoly;
pub mod lmodule;
pub mod oracle;

pub use decoder::{
    rank_distance, DecodeEntry, DecodeOptions, DecodeOutcome, GabidulinCode, Message, UniqueDecode,
};
pub use error::{Error, Result};
pub use galois::{FElem, Field, FieldCtx, FieldDescriptor, Op};
pub use linpoly::{annihilator, lagrange, moore, LinPoly, QDeg};
pub use lmodule::{
    gb_step, interpolation_basis, interpolation_trace, Mat2, Position, Vec2, Weights,
};
