//! Pure states of n qudits and their hyperdeterminant concurrence.
//!
//! A pure state of n particles with d levels each is a unit vector of
//! d^n complex amplitudes. Reading the amplitudes as a cubical hypermatrix
//! of order n and side d, the concurrence is
//!
//! ```text
//! C(psi) = 2 |hdet(A)|
//! ```
//!
//! which is zero on product states and reaches 1 on maximally entangled
//! ones such as the Bell and even-n GHZ states. The hyperdeterminant
//! vanishes identically for odd n, so concurrence is only defined for even
//! particle counts; asking for it on an odd count is an error rather than
//! a silent zero.
//!
//! Bosonic states are exactly the ones whose amplitude hypermatrix is
//! symmetric, which lets the symmetric fast path apply.

use crate::error::{Error, Result};
use crate::hdet::{hdet, EngineUsed, HdetOptions};
use crate::hypermatrix::{Hypermatrix, Shape};
use crate::perm::Permutation;
use crate::scalar::Scalar;
use num_complex::Complex64;
use num_traits::Zero;

/// How far from exactly 1 the squared norm of a state may be.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// A pure n-qudit state. Amplitudes are stored in vectorization order:
/// the first particle's level varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditState {
    side: usize,
    particles: usize,
    amplitudes: Vec<Complex64>,
}

/// The result of a concurrence computation: the value, the engine that
/// produced the underlying hyperdeterminant, and whether the state was
/// recognized as bosonic.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceOutcome {
    pub value: f64,
    pub engine: EngineUsed,
    pub boson: bool,
}

impl QuditState {
    /// Builds a state from amplitudes that must already be normalized to
    /// within [`NORM_TOLERANCE`].
    pub fn new(side: usize, particles: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let shape = Shape::cubical(side, particles)?;
        if amplitudes.len() != shape.element_count() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} amplitudes", shape.element_count()),
                actual: format!("{}", amplitudes.len()),
            });
        }
        for (position, amplitude) in amplitudes.iter().enumerate() {
            if !amplitude.is_admissible() {
                return Err(Error::NonFinite { position });
            }
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized {
                norm_sq,
                tolerance: NORM_TOLERANCE,
            });
        }
        Ok(QuditState {
            side,
            particles,
            amplitudes,
        })
    }

    /// Builds a state from arbitrary finite amplitudes, scaling them to
    /// unit norm. The zero vector has no direction and is rejected.
    pub fn normalized(side: usize, particles: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq == 0.0 {
            return Err(Error::NotNormalized {
                norm_sq,
                tolerance: NORM_TOLERANCE,
            });
        }
        let scale = norm_sq.sqrt().recip();
        let scaled = amplitudes.into_iter().map(|a| a * scale).collect();
        QuditState::new(side, particles, scaled)
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// The amplitude of one basis ket, indexed by 1-based levels, one per
    /// particle.
    pub fn amplitude(&self, levels: &[usize]) -> Result<Complex64> {
        let shape = Shape::cubical(self.side, self.particles)?;
        let index = crate::hypermatrix::MultiIndex::new(levels.to_vec());
        Ok(self.amplitudes[shape.psi(&index)? - 1])
    }

    /// The amplitude hypermatrix: order n, side d, sharing this state's
    /// element order.
    pub fn to_hypermatrix(&self) -> Hypermatrix<Complex64> {
        let shape = Shape::cubical(self.side, self.particles).expect("state shape is valid");
        Hypermatrix::new(shape, self.amplitudes.clone()).expect("state amplitudes are admissible")
    }

    /// Reads a state back out of an amplitude hypermatrix. The matrix must
    /// be cubical and carry a normalized amplitude vector.
    pub fn from_hypermatrix(a: &Hypermatrix<Complex64>) -> Result<Self> {
        let side = a.cubical_side()?;
        QuditState::new(side, a.order(), a.data().to_vec())
    }

    /// Whether the state is bosonic, meaning invariant under every particle
    /// exchange, to the given elementwise tolerance.
    pub fn is_boson(&self, tolerance: f64) -> Result<bool> {
        self.to_hypermatrix().is_symmetric(tolerance)
    }

    /// Projects onto the bosonic subspace by averaging over all particle
    /// permutations, then renormalizes. Fails when the projection is zero,
    /// as for antisymmetric states.
    pub fn symmetrize(&self) -> Result<QuditState> {
        let a = self.to_hypermatrix();
        let mut sum = vec![Complex64::zero(); self.amplitudes.len()];
        let mut terms = 0usize;
        for pi in Permutation::all(self.particles) {
            let permuted = a.transpose(&pi)?;
            for (accumulator, value) in sum.iter_mut().zip(permuted.data()) {
                *accumulator += value;
            }
            terms += 1;
        }
        let scale = Complex64::new((terms as f64).recip(), 0.0);
        for value in sum.iter_mut() {
            *value *= scale;
        }
        QuditState::normalized(self.side, self.particles, sum)
    }

    /// The concurrence 2 |hdet| with default engine selection.
    pub fn concurrence(&self) -> Result<ConcurrenceOutcome> {
        self.concurrence_with(&HdetOptions::default())
    }

    /// The concurrence with explicit engine, budget, tolerance, and cache
    /// settings. Odd particle counts are rejected.
    pub fn concurrence_with(&self, options: &HdetOptions) -> Result<ConcurrenceOutcome> {
        if !self.particles.is_multiple_of(2) {
            return Err(Error::OddParticleCount {
                count: self.particles,
            });
        }
        let a = self.to_hypermatrix();
        let tolerance = options
            .tolerance
            .unwrap_or(crate::scalar::default_tolerance::<Complex64>());
        let boson = a.is_symmetric(tolerance)?;
        let outcome = hdet(&a, options)?;
        Ok(ConcurrenceOutcome {
            value: 2.0 * outcome.value.magnitude(),
            engine: outcome.engine,
            boson,
        })
    }
}

/// The two-qubit Bell state (|11> + |22>) / sqrt(2), written with 1-based
/// levels. Its concurrence is exactly 1.
pub fn bell() -> QuditState {
    ghz(2, 2).expect("bell state parameters are valid")
}

/// The n-particle, d-level GHZ state: an equal superposition of the d kets
/// where every particle sits in the same level.
pub fn ghz(side: usize, particles: usize) -> Result<QuditState> {
    let shape = Shape::cubical(side, particles)?;
    let mut amplitudes = vec![Complex64::zero(); shape.element_count()];
    let weight = Complex64::new((side as f64).sqrt().recip(), 0.0);
    for level in 1..=side {
        let index = crate::hypermatrix::MultiIndex::new(vec![level; particles]);
        amplitudes[shape.psi(&index)? - 1] = weight;
    }
    QuditState::new(side, particles, amplitudes)
}

/// The product state whose k-th particle carries the k-th single-particle
/// amplitude vector. All factors must share one length d, and each must be
/// normalized on its own.
pub fn product_state(factors: &[Vec<Complex64>]) -> Result<QuditState> {
    if factors.is_empty() {
        return Err(Error::Parse {
            detail: "a product state needs at least one factor".into(),
        });
    }
    let side = factors[0].len();
    for factor in factors {
        if factor.len() != side {
            return Err(Error::ShapeMismatch {
                expected: format!("{side} levels in every factor"),
                actual: format!("{}", factor.len()),
            });
        }
    }
    let particles = factors.len();
    let shape = Shape::cubical(side, particles)?;
    let mut amplitudes = Vec::with_capacity(shape.element_count());
    for index in shape.indices() {
        let mut amplitude = Complex64::new(1.0, 0.0);
        for (axis, &level) in index.components().iter().enumerate() {
            amplitude *= factors[axis][level - 1];
        }
        amplitudes.push(amplitude);
    }
    QuditState::new(side, particles, amplitudes)
}
