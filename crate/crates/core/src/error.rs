//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide error enum. Most operations are total; the fallible ones
/// report which contract was violated and by what value.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An exact solver was asked to run above its configured size limit.
    #[error("exact solve limit exceeded: n = {n} > limit = {limit} ({what})")]
    LimitExceeded { what: &'static str, n: usize, limit: usize },

    /// Parameter formulas produced values outside their admissible range.
    #[error("degenerate parameters: {detail}")]
    DegenerateParams { detail: String },

    /// Edge-retention coupling requires p <= m^(-1/2).
    #[error("coupling violation: p = {p} exceeds m^(-1/2) = {threshold}")]
    CouplingViolation { p: f64, threshold: f64 },

    /// A color layer passed to the overlay contains a triangle.
    #[error("monochromatic triangle: {which} layer input is not triangle-free")]
    MonochromaticTriangle { which: &'static str },

    /// Minority-edge deletion left a triangle behind; unreachable on valid input.
    #[error("residual triangle after minority-edge deletion: {{{u}, {v}, {w}}}")]
    ResidualTriangle { u: usize, v: usize, w: usize },

    /// A pairing repeats a vertex or references one outside the host graph.
    #[error("invalid pairing: {detail}")]
    InvalidPairing { detail: String },

    /// An operation's stated precondition does not hold for the given input.
    #[error("precondition failed: {detail}")]
    PreconditionFailed { detail: String },

    /// A state the surrounding contracts make unreachable; indicates a logic bug.
    #[error("impossible state: {detail}")]
    ImpossibleState { detail: String },

    /// A probe was invoked outside the hypothesis of the bound it estimates.
    #[error("hypothesis violated: {detail}")]
    HypothesisViolated { detail: String },

    /// The trial plan names an experiment that is not registered.
    #[error("unknown experiment target: {name}")]
    UnknownTarget { name: String },

    /// Byte-level parse failure in a codec, with the offending offset.
    #[error("malformed input at byte {offset}: {detail}")]
    MalformedInput { offset: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
