//! Crate-wide error type.
//!
//! Every fallible operation in this crate reports through [`Error`]. The CLI
//! maps error classes to process exit codes; see [`crate::cli`].

use std::path::PathBuf;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("axis {axis} component {component} is outside 1..={extent}")]
    IndexOutOfRange {
        axis: usize,
        component: usize,
        extent: usize,
    },

    #[error("shape mismatch: expected {expected}, got {actual}")]
    ShapeMismatch { expected: String, actual: String },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("invalid permutation of 1..={degree}: {detail}")]
    InvalidPermutation { degree: usize, detail: String },

    #[error("operation requires a cubical hypermatrix, got shape {shape}")]
    NonCubical { shape: String },

    #[error("tuple {tuple:?} is not weakly decreasing over 1..={side}")]
    NotMonotone { tuple: Vec<usize>, side: usize },

    #[error("duplicate sparse index {index:?}")]
    DuplicateSparseIndex { index: Vec<usize> },

    #[error("tolerance must be nonnegative, got {tolerance}")]
    NegativeTolerance { tolerance: f64 },

    #[error("the exact backend compares entries exactly; tolerance must be 0, got {tolerance}")]
    ExactToleranceNonzero { tolerance: f64 },

    #[error(
        "not symmetric within tolerance {tolerance}: entry {index:?} = {value} \
         but swapped entry {swapped:?} = {swapped_value} (difference magnitude {difference:.3e})"
    )]
    NotSymmetric {
        index: Vec<usize>,
        swapped: Vec<usize>,
        value: String,
        swapped_value: String,
        difference: f64,
        tolerance: f64,
    },

    #[error("size overflow: {what} exceeds 64 bits")]
    SizeOverflow { what: String },

    #[error("budget exceeded: {what} requires {required} {unit}, budget is {budget}{hint}")]
    BudgetExceeded {
        what: String,
        required: u128,
        unit: &'static str,
        budget: u64,
        hint: String,
    },

    #[error(
        "contractor mismatch: contractor was built for side {contractor_side} order \
         {contractor_order}, input has side {input_side} order {input_order}"
    )]
    ContractorMismatch {
        contractor_side: usize,
        contractor_order: usize,
        input_side: usize,
        input_order: usize,
    },

    #[error("concurrence is undefined for odd particle count {count}: the underlying hyperdeterminant vanishes identically")]
    OddParticleCount { count: usize },

    #[error("state is not normalized: squared norm {norm_sq} differs from 1 by more than {tolerance}")]
    NotNormalized { norm_sq: f64, tolerance: f64 },

    #[error("non-finite entry at data position {position}")]
    NonFinite { position: usize },

    #[error("parse error: {detail}")]
    Parse { detail: String },

    #[error("storage error at {path}: {source}")]
    Storage {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cache entry {path} is corrupt: {detail}")]
    CorruptCache { path: PathBuf, detail: String },

    #[error("cache entry {path} has unsupported format version {found:?}")]
    UnsupportedVersion { path: PathBuf, found: String },
}

impl Error {
    /// Process exit code for the CLI: 2 for input problems, 3 for shape and
    /// domain violations, 4 for refused resource budgets, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::NotNormalized { .. } | Error::NonFinite { .. } => 2,
            Error::IndexOutOfRange { .. }
            | Error::ShapeMismatch { .. }
            | Error::OrderMismatch { .. }
            | Error::InvalidPermutation { .. }
            | Error::NonCubical { .. }
            | Error::NotMonotone { .. }
            | Error::DuplicateSparseIndex { .. }
            | Error::NegativeTolerance { .. }
            | Error::ExactToleranceNonzero { .. }
            | Error::NotSymmetric { .. }
            | Error::ContractorMismatch { .. }
            | Error::OddParticleCount { .. } => 3,
            Error::SizeOverflow { .. } | Error::BudgetExceeded { .. } => 4,
            Error::Storage { .. }
            | Error::CorruptCache { .. }
            | Error::UnsupportedVersion { .. } => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_class() {
        let parse = Error::Parse {
            detail: "x".into(),
        };
        assert_eq!(parse.exit_code(), 2);
        let shape = Error::NonCubical {
            shape: "2x3".into(),
        };
        assert_eq!(shape.exit_code(), 3);
        let budget = Error::BudgetExceeded {
            what: "test".into(),
            required: 10,
            unit: "entries",
            budget: 5,
            hint: String::new(),
        };
        assert_eq!(budget.exit_code(), 4);
        let storage = Error::Storage {
            path: PathBuf::from("/tmp/x"),
            source: std::io::Error::other("io"),
        };
        assert_eq!(storage.exit_code(), 1);
    }
}
