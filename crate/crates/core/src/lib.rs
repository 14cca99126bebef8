//! Finite fields, MDS codes and absolutely maximally entangled (AME) states
//! of minimal support.
//!
//! An AME(n, d) state of `n` qudits of dimension `d` has every reduced
//! density matrix on `floor(n/2)` sites maximally mixed. States supported on
//! exactly `d^floor(n/2)` basis kets correspond to MDS codes of length `n`
//! with minimum distance `ceil(n/2) + 1`; this crate builds, verifies and
//! searches for such objects.

pub mod ame;
pub mod bounds;
pub mod certificate;
pub mod code;
pub mod error;
pub mod field;
pub mod linear;
pub mod search;
mod text;

pub use ame::{AmeState, BipartitionReport};
pub use bounds::{bounds_table, necessary_condition, Bounds, GateVerdict};
pub use certificate::{nonexistence_certificate, Certificate};
pub use code::{hamming_distance, Code, MdsVerdict, Word};
pub use error::{Error, Result};
pub use field::{FieldElement, FiniteField};
pub use linear::{extended_grs, extended_grs_truncated, grs_code, LinearCode, Matrix};
pub use search::{max_length_dim3, search_systematic_mds, SearchOptions, SearchReport, SearchStatus};
