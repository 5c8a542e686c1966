//! Exact arithmetic invariants of quadratic fields at an odd prime ℓ.
//!
//! The crate computes, over a fixed quadratic field `K = Q(√Δ)` in which an
//! odd prime ℓ splits, the finite objects that control the field's ℓ-adic
//! arithmetic: ideal class groups via binary quadratic forms, ℓ-part ray
//! class groups, the logarithmic class group, rationality/torsion data of
//! the Galois group of the maximal abelian ℓ-ramified pro-ℓ extension, knot
//! groups of abelian extensions and the Chevalley ambiguous class number.
//! On top of those it decides, with an explicit justification chain, the
//! triviality of the Iwasawa modules attached to the cyclotomic tower and
//! to the compositum of Z_ℓ-extensions.
//!
//! Everything is exact: integer matrices are arbitrary precision, ℓ-adic
//! values carry their precision, and every "stabilized" flag means the
//! result was identical over a window of increasing precision levels.
//!
//! The crate is `no_std`-compatible (with `alloc`); the companion CLI crate
//! carries all IO.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod abelian;
pub mod error;
pub mod invariants;
pub mod logclass;
pub mod padic;
pub mod quadfield;
pub mod verdicts;

pub use abelian::{FinAbGroup, GroupHom, IntMatrix};
pub use error::{Error, Result};
pub use padic::PadicInt;
pub use quadfield::FieldDesc;
pub use verdicts::{Status, Verdict};
