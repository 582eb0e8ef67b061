//! Hyperdeterminants of cubical hypermatrices, and the entanglement
//! measure built on them.
//!
//! The central object is Cayley's first hyperdeterminant of an order-N,
//! side-d hypermatrix: a signed sum over N-tuples of permutations that
//! collapses to the ordinary determinant at N = 2 and vanishes identically
//! at odd N. Three engines compute it:
//!
//! - a naive expansion over permutation tuples, always available;
//! - a sparse contraction against the Kronecker power of the Levi-Civita
//!   symbol, which trades memory for time;
//! - a symmetric fast path that contracts a precomputed table against the
//!   reduced vectorization of a symmetric input, cutting the work from
//!   d^N entries to one per multiset of indices.
//!
//! Around that core sit the vectorization algebra (elimination and
//! duplication matrices between full and reduced coordinates), a quantum
//! layer scoring pure n-qudit states by concurrence, a binary cache for
//! the precomputed tables, JSON documents for interchange, seeded
//! property checks, and a timing harness. The `cli` module exposes all of
//! it as a command line tool.
//!
//! Arithmetic is generic over three backends: exact [`Rational`], `f64`,
//! and `Complex64`.
//!
//! ```
//! use hyperdet::{hdet, HdetOptions, Hypermatrix, Rational, Scalar, Shape};
//!
//! // Order 2 is the ordinary determinant. Data is column-major, so this
//! // is the matrix [[1, 3], [2, 4]].
//! let shape = Shape::cubical(2, 2)?;
//! let a = Hypermatrix::new(shape, vec![
//!     Rational::from_int(1),
//!     Rational::from_int(2),
//!     Rational::from_int(3),
//!     Rational::from_int(4),
//! ])?;
//! let outcome = hdet(&a, &HdetOptions::default())?;
//! assert_eq!(outcome.value, Rational::from_int(-2));
//!
//! // The Bell state is maximally entangled.
//! let concurrence = hyperdet::quantum::bell().concurrence()?;
//! assert!((concurrence.value - 1.0).abs() < 1e-12);
//! # Ok::<(), hyperdet::Error>(())
//! ```

pub mod bench;
pub mod cache;
pub mod cli;
pub mod doc;
pub mod error;
pub mod hdet;
pub mod hypermatrix;
pub mod levicivita;
pub mod perm;
pub mod quantum;
pub mod sample;
pub mod scalar;
pub mod vectorize;
pub mod verify;

pub use error::{Error, Result};
pub use hdet::{
    build_contractor, complexity_ratio, hdet, hdet_levicivita, hdet_naive, hdet_symmetric,
    Budgets, Contractor, EngineChoice, EngineUsed, HdetOptions, HdetOutcome,
};
pub use hypermatrix::{Hypermatrix, Matrix, MultiIndex, Shape};
pub use perm::Permutation;
pub use quantum::{ConcurrenceOutcome, QuditState};
pub use scalar::{Backend, Rational, Scalar};
pub use vectorize::{
    duplication_matrix, elimination_matrix, hvec, hvec_1n, MonotoneIndex, SparseTensor,
};
