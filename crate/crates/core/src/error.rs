//! Error type shared across the crate.

use crate::dynsys::ValidationReport;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("system is invalid: {0}")]
    InvalidSystem(ValidationReport),

    #[error("point space has {n} points, the maximum is {max}")]
    TooManyPoints { n: usize, max: usize },

    #[error("point index {point} out of range for a space of {n} points")]
    PointOutOfRange { point: usize, n: usize },

    #[error("map already defined on point {point}")]
    DuplicateMapEntry { point: usize },

    #[error("not a point of this extension: {reason}")]
    MalformedExtensionPoint { reason: String },

    #[error("pair ({v}, {vprime}) violates the pair conditions: {reason}")]
    InvalidPair {
        v: crate::PointSet,
        vprime: crate::PointSet,
        reason: String,
    },

    #[error("representation dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("gauge grading is not spatially implementable: periodic orbit {cycle:?} present")]
    PeriodicOrbitPresent { cycle: Vec<usize> },

    #[error("cycle {cycle:?} is not isolated: {reason}")]
    CycleNotIsolated { cycle: Vec<usize>, reason: String },

    #[error(
        "extension assignment ill-defined: generators {first:?} and {second:?} \
         carry the same function but matrices differ by {defect:.3e}"
    )]
    IllDefinedExtension {
        first: (usize, usize),
        second: (usize, usize),
        defect: f64,
    },

    /// An internal consistency check failed. This indicates a bug, never bad
    /// input; the CLI maps it to a distinct exit code.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
