//! Randomized triangle-free overlay constructions and their audits.
//!
//! The crate builds dense graphs of independence number at most 2 by
//! pulling two sparsified random base graphs back along random maps,
//! overlaying the blowups, and deleting the minority edge of every
//! two-colored triangle. Around that pipeline it provides:
//!
//! - an exact graph kernel (coloring, general matching, triangle listing),
//! - exact searches for odd connected pairings and odd clique minors,
//! - deterministic audits of the balance events and pair-graph quantities
//!   the construction's guarantees rest on,
//! - a seeded Monte Carlo harness for the probabilistic bounds,
//! - executable forms of the join-partition and chromatic-ratio checks,
//! - graph6 / DIMACS codecs and JSON trace schemas.
//!
//! Everything is deterministic given a seed: randomness enters only through
//! named child streams of a 64-bit master seed.

pub mod appendix;
pub mod codec;
pub mod construction;
pub mod error;
pub mod events;
pub mod graph;
pub mod montecarlo;
pub mod oddminor;
pub mod pairing;
pub mod stream;

pub use error::{Error, Result};
pub use graph::Graph;

/// Version string stamped into persisted reports.
pub const ARTIFACT_VERSION: &str = concat!("oddminor-forge ", env!("CARGO_PKG_VERSION"));

/// Schema tag for all JSON documents this crate writes.
pub const SCHEMA: &str = "oddminor-forge/1";
