//! Seeded generators for hypermatrices, matrices, permutations, and states.
//!
//! Everything here is driven by a caller-supplied ChaCha stream, so a seed
//! pins down the exact data. The verification and bench commands lean on
//! that to make their runs reproducible.

use crate::error::Result;
use crate::hypermatrix::{Hypermatrix, Matrix, Shape};
use crate::perm::Permutation;
use crate::quantum::{product_state, QuditState};
use crate::scalar::Scalar;
use crate::vectorize::{count_monotone, placement, MonotoneIndex};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The stream used by every generator in this module.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A cubical hypermatrix with independent integer entries in `lo..=hi`.
pub fn integer_hypermatrix<T: Scalar>(
    side: usize,
    order: usize,
    lo: i64,
    hi: i64,
    rng: &mut ChaCha8Rng,
) -> Result<Hypermatrix<T>> {
    let shape = Shape::cubical(side, order)?;
    let data = (0..shape.element_count())
        .map(|_| T::from_int(rng.random_range(lo..=hi)))
        .collect();
    Hypermatrix::new(shape, data)
}

/// A symmetric cubical hypermatrix: one integer in `lo..=hi` per orbit of
/// index rearrangements, copied to every member of the orbit.
pub fn symmetric_integer_hypermatrix<T: Scalar>(
    side: usize,
    order: usize,
    lo: i64,
    hi: i64,
    rng: &mut ChaCha8Rng,
) -> Result<Hypermatrix<T>> {
    let class_values: Vec<i64> = (0..count_monotone(side, order)?)
        .map(|_| rng.random_range(lo..=hi))
        .collect();
    let shape = Shape::cubical(side, order)?;
    let mut data = Vec::with_capacity(shape.element_count());
    for index in shape.indices() {
        let class = MonotoneIndex::sorted_from(&index, side)?;
        data.push(T::from_int(class_values[placement(&class)? - 1]));
    }
    Hypermatrix::new(shape, data)
}

/// A matrix with independent integer entries in `lo..=hi`.
pub fn integer_matrix<T: Scalar>(
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
    rng: &mut ChaCha8Rng,
) -> Result<Matrix<T>> {
    let data = (0..rows * cols)
        .map(|_| T::from_int(rng.random_range(lo..=hi)))
        .collect();
    Matrix::new(rows, cols, data)
}

/// A uniformly random permutation of degree `n`, by Fisher-Yates.
pub fn random_permutation(degree: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<usize> = (1..=degree).collect();
    for i in (1..degree).rev() {
        let j = rng.random_range(0..=i);
        images.swap(i, j);
    }
    Permutation::new(images).expect("shuffled identity is a permutation")
}

fn random_amplitudes(count: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..count)
        .map(|_| {
            Complex64::new(
                rng.random_range(-1.0..=1.0),
                rng.random_range(-1.0..=1.0),
            )
        })
        .collect()
}

/// A Haar-ish random pure state: uniform box amplitudes, normalized.
pub fn random_state(side: usize, particles: usize, rng: &mut ChaCha8Rng) -> Result<QuditState> {
    let shape = Shape::cubical(side, particles)?;
    let amplitudes = random_amplitudes(shape.element_count(), rng);
    QuditState::normalized(side, particles, amplitudes)
}

/// A random product state: one normalized single-particle factor per slot.
pub fn random_product_state(
    side: usize,
    particles: usize,
    rng: &mut ChaCha8Rng,
) -> Result<QuditState> {
    let factors: Vec<Vec<Complex64>> = (0..particles)
        .map(|_| {
            let raw = random_amplitudes(side, rng);
            let norm: f64 = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            raw.into_iter().map(|z| z / norm).collect()
        })
        .collect();
    product_state(&factors)
}

/// A random bosonic state: a random state projected onto the symmetric
/// subspace.
pub fn random_boson(side: usize, particles: usize, rng: &mut ChaCha8Rng) -> Result<QuditState> {
    random_state(side, particles, rng)?.symmetrize()
}

/// A random 2x2 unitary: an SU(2) element times a global phase, so its
/// determinant always has modulus 1.
pub fn random_unitary2(rng: &mut ChaCha8Rng) -> Matrix<Complex64> {
    let theta = rng.random_range(0.0..std::f64::consts::TAU);
    let alpha = rng.random_range(0.0..std::f64::consts::TAU);
    let beta = rng.random_range(0.0..std::f64::consts::TAU);
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    let (sin, cos) = theta.sin_cos();
    let a = Complex64::from_polar(cos, alpha);
    let b = Complex64::from_polar(sin, beta);
    let data = vec![phase * a, phase * b, phase * -b.conj(), phase * a.conj()];
    Matrix::new(2, 2, data).expect("2x2 data has 4 entries")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn seeds_pin_down_the_data() {
        let a: Hypermatrix<Rational> =
            integer_hypermatrix(2, 3, -5, 5, &mut rng(42)).unwrap();
        let b: Hypermatrix<Rational> =
            integer_hypermatrix(2, 3, -5, 5, &mut rng(42)).unwrap();
        assert_eq!(a, b);
        let c: Hypermatrix<Rational> =
            integer_hypermatrix(2, 3, -5, 5, &mut rng(43)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn symmetric_generator_is_symmetric() {
        let a: Hypermatrix<Rational> =
            symmetric_integer_hypermatrix(3, 3, -9, 9, &mut rng(7)).unwrap();
        assert!(a.is_symmetric(0.0).unwrap());
    }

    #[test]
    fn entries_respect_the_range() {
        let a: Hypermatrix<Rational> =
            integer_hypermatrix(2, 4, -2, 2, &mut rng(1)).unwrap();
        for value in a.data() {
            let v = value.clone();
            assert!(v >= Rational::from_int(-2) && v <= Rational::from_int(2));
        }
    }

    #[test]
    fn random_permutations_are_valid_and_seeded() {
        let p = random_permutation(6, &mut rng(5));
        let q = random_permutation(6, &mut rng(5));
        assert_eq!(p, q);
        let mut seen = [false; 6];
        for k in 1..=6 {
            seen[p.image(k) - 1] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn random_states_are_normalized() {
        let state = random_state(2, 4, &mut rng(11)).unwrap();
        let norm_sq: f64 = state.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm_sq - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_states_have_no_concurrence() {
        let state = random_product_state(2, 4, &mut rng(3)).unwrap();
        let outcome = state.concurrence().unwrap();
        assert!(outcome.value < 1e-10, "got {}", outcome.value);
    }

    #[test]
    fn bosons_are_symmetric() {
        let state = random_boson(2, 4, &mut rng(9)).unwrap();
        assert!(state.is_boson(1e-9).unwrap());
    }

    #[test]
    fn unitaries_are_unitary() {
        let u = random_unitary2(&mut rng(13));
        for row in 1..=2 {
            for col in 1..=2 {
                let mut dot = Complex64::new(0.0, 0.0);
                for k in 1..=2 {
                    dot += u.get(row, k).conj() * u.get(col, k);
                }
                let expected = if row == col { 1.0 } else { 0.0 };
                assert!((dot - expected).norm() < 1e-12);
            }
        }
    }
}
