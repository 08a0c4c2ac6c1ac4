//! Exact arithmetic for heights, Mahler measures, powerful values and
//! bounded-height point counting over the rationals and quadratic fields.
//!
//! The crate is organized around seven areas:
//!
//! - [`field`]: base fields Q and Q(sqrt d), exact elements, prime ideals,
//!   places, local values, class numbers and regulators;
//! - [`heights`]: Weil heights, algebraic numbers of degree at most two,
//!   certified Mahler measures, discriminants and their classical bounds;
//! - [`powerful`]: squarefree decomposition and s-powerful predicates;
//! - [`nevanlinna`]: proximity/counting decompositions, the height identity,
//!   Vojta-type inequality evaluators and the quantitative lemmas;
//! - [`bounds`]: the explicit constant pipeline down to the cardinality
//!   bounds, the key inequality and the counting band;
//! - [`sequences`]: derived sequences, period detection and the polynomial
//!   transforms attached to a periodic prefix;
//! - [`explorer`]: exhaustive bounded-height enumeration and the brute-force
//!   search for polynomials with s-powerful values.
//!
//! Everything is a pure function over immutable values; concurrent use is
//! safe throughout.

pub mod arith;
pub mod bounds;
pub mod dyadic;
pub mod error;
pub mod explorer;
pub mod field;
pub mod heights;
pub mod nevanlinna;
pub mod parse;
pub mod poly;
pub mod powerful;
pub mod sequences;
pub mod zeta;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldInvariants, NumberField, Place, PrimeIdeal};
pub use heights::AlgebraicNumber;
pub use nevanlinna::PlaceSet;
pub use poly::Polynomial;
pub use sequences::SequencePrefix;

// The book chapters double as documentation tests: every fenced Rust block
// in book/src runs under `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/heights.md")]
    mod heights {}
    #[doc = include_str!("../../../book/src/powerful.md")]
    mod powerful {}
    #[doc = include_str!("../../../book/src/nevanlinna.md")]
    mod nevanlinna {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/explorer.md")]
    mod explorer {}
}
