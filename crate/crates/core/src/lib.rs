//! Exact symbolic engine for cuspidal-line combinatorics of classical
//! p-adic groups.
//!
//! Everything is computed on labels: cuspidal symbols with exact rational
//! twists, Zelevinsky segments, standard modules, and layered parameters
//! for classical irreducibles. Values live in Grothendieck-group formal
//! sums with positive integer multiplicities; no floating point anywhere.
//!
//! Module map:
//!
//! * [`lines`] — cuspidal symbols, twisted points, line sets, regular
//!   partitions;
//! * [`gl`] — segments, standard GL modules, the comultiplications `m*`
//!   and `M*`, support filters;
//! * [`params`] — layered classical parameters (discrete series, tempered,
//!   Langlands), glued families, classical Jacquet sums;
//! * [`jantzen`] — line-decomposition engine: projections, gluing, the
//!   filter identities, product distribution, associativity, and the
//!   Steinberg-support classifier;
//! * [`unitarity`] — the decision procedure for generic unitarizability
//!   and the per-line preservation check;
//! * [`transfer`] — parameter transport between lines sharing the same
//!   reducibility exponent;
//! * [`sample`] — seeded random instance generation for the fuzz suites.

pub mod error;
pub mod gl;
pub mod jantzen;
pub mod lines;
pub mod params;
pub mod rat;
pub mod sample;
pub mod transfer;
pub mod unitarity;

pub use error::{Error, Result};
pub use rat::Rat;
