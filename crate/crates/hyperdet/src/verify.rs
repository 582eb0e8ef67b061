//! Named, seeded self-checks over randomized inputs.
//!
//! Each property draws its cases from a ChaCha stream derived from the run
//! seed and the property name, so a report is reproducible from the seed
//! alone. A failing property carries a counterexample, rendered as a JSON
//! tensor or state document that can be fed straight back to the command
//! line tools.
//!
//! `run_all` can also inject a deliberate data fault into one check. That
//! exercises the failure path end to end: the corrupted case must be
//! caught, reported, and serialized like a real bug would be.

use crate::cache;
use crate::doc::{StateDocument, TensorDocument};
use crate::error::Result;
use crate::hdet::{
    build_contractor, hdet_levicivita, hdet_naive, hdet_symmetric, Budgets, EngineChoice,
    HdetOptions,
};
use crate::hypermatrix::{Hypermatrix, Matrix, Shape};
use crate::levicivita::{epsilon_kron_power, levi_civita};
use crate::quantum::QuditState;
use crate::sample;
use crate::scalar::{Rational, Scalar};
use crate::vectorize::{
    count_monotone, duplication_matrix, elimination_matrix, hvec, hvec_1n, monotone_indices,
    placement, SparseTensor,
};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// The result of one property: its name, whether it held, a short note,
/// and a counterexample when it did not.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub counterexample: Option<String>,
}

/// Every property outcome from one verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub outcomes: Vec<PropertyOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

struct Failure {
    detail: String,
    counterexample: Option<String>,
}

type PropertyRun = fn(&mut ChaCha8Rng, bool) -> Result<Option<Failure>>;

struct Property {
    name: &'static str,
    cases: &'static str,
    run: PropertyRun,
}

const PROPERTIES: &[Property] = &[
    Property {
        name: "psi-bijection",
        cases: "30 random shapes",
        run: psi_bijection,
    },
    Property {
        name: "transpose-composition",
        cases: "20 random tensors and permutation pairs",
        run: transpose_composition,
    },
    Property {
        name: "transpose-hdet-invariance",
        cases: "12 random even-order tensors",
        run: transpose_hdet_invariance,
    },
    Property {
        name: "odd-order-vanishes",
        cases: "8 random odd-order tensors, naive engine",
        run: odd_order_vanishes,
    },
    Property {
        name: "engines-agree-general",
        cases: "24 random tensors, naive vs levi-civita",
        run: engines_agree_general,
    },
    Property {
        name: "engines-agree-symmetric",
        cases: "16 random symmetric tensors, all engines",
        run: engines_agree_symmetric,
    },
    Property {
        name: "determinant-specialization",
        cases: "15 random matrices vs gaussian elimination",
        run: determinant_specialization,
    },
    Property {
        name: "multiplicativity-order-two",
        cases: "10 random triples",
        run: multiplicativity_order_two,
    },
    Property {
        name: "degree-homogeneity",
        cases: "12 random tensors and scale factors",
        run: degree_homogeneity,
    },
    Property {
        name: "elimination-duplication-identity",
        cases: "product equals identity at 5 sizes",
        run: elimination_duplication_identity,
    },
    Property {
        name: "elimination-acts-on-hvec",
        cases: "12 random symmetric tensors",
        run: elimination_acts_on_hvec,
    },
    Property {
        name: "duplication-reconstructs",
        cases: "12 random symmetric tensors",
        run: duplication_reconstructs,
    },
    Property {
        name: "placement-enumeration",
        cases: "monotone order at 6 sizes",
        run: placement_enumeration,
    },
    Property {
        name: "epsilon-axis-swap-parity",
        cases: "random axis pairs at 5 sizes",
        run: epsilon_axis_swap_parity,
    },
    Property {
        name: "epsilon-kron-consistency",
        cases: "sparse power vs dense product, d = 2 and 3",
        run: epsilon_kron_consistency,
    },
    Property {
        name: "contractor-cache-round-trip",
        cases: "store, reload, recompute at 3 sizes",
        run: contractor_cache_round_trip,
    },
    Property {
        name: "document-round-trip",
        cases: "10 random tensors through JSON",
        run: document_round_trip,
    },
    Property {
        name: "concurrence-product-states",
        cases: "10 random product states",
        run: concurrence_product_states,
    },
    Property {
        name: "concurrence-two-qubit-range",
        cases: "30 random two-qubit states",
        run: concurrence_two_qubit_range,
    },
    Property {
        name: "concurrence-local-unitary-invariance",
        cases: "10 random states and local unitaries",
        run: concurrence_local_unitary_invariance,
    },
    Property {
        name: "boson-fast-path-agrees",
        cases: "8 random bosons, fast path vs levi-civita",
        run: boson_fast_path_agrees,
    },
];

/// Runs every property. `inject_fault` corrupts one tensor inside the
/// transpose invariance check, which must then fail with a counterexample.
pub fn run_all(seed: u64, inject_fault: bool) -> VerifyReport {
    let mut outcomes = Vec::with_capacity(PROPERTIES.len());
    for property in PROPERTIES {
        let fault = inject_fault && property.name == "transpose-hdet-invariance";
        let mut rng = property_rng(seed, property.name);
        let outcome = match (property.run)(&mut rng, fault) {
            Ok(None) => PropertyOutcome {
                name: property.name,
                passed: true,
                detail: property.cases.to_string(),
                counterexample: None,
            },
            Ok(Some(failure)) => PropertyOutcome {
                name: property.name,
                passed: false,
                detail: failure.detail,
                counterexample: failure.counterexample,
            },
            Err(e) => PropertyOutcome {
                name: property.name,
                passed: false,
                detail: format!("unexpected error: {e}"),
                counterexample: None,
            },
        };
        outcomes.push(outcome);
    }
    VerifyReport { seed, outcomes }
}

fn property_rng(seed: u64, name: &str) -> ChaCha8Rng {
    let mut tag: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in name.bytes() {
        tag ^= byte as u64;
        tag = tag.wrapping_mul(0x0000_0100_0000_01b3);
    }
    sample::rng(seed ^ tag)
}

fn tensor_counterexample(a: &Hypermatrix<Rational>) -> Option<String> {
    Some(TensorDocument::from_rational(a).to_json(false))
}

fn state_counterexample(state: &QuditState) -> Option<String> {
    Some(StateDocument::from_state(state).to_json(false))
}

fn psi_bijection(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for _ in 0..30 {
        let order = rng.random_range(1..=4);
        let extents: Vec<usize> = (0..order).map(|_| rng.random_range(1..=4)).collect();
        let shape = Shape::new(extents)?;
        let mut seen = vec![false; shape.element_count()];
        for index in shape.indices() {
            let psi = shape.psi(&index)?;
            if seen[psi - 1] || shape.index_at(psi)? != index {
                return Ok(Some(Failure {
                    detail: format!("psi broke at index {index} of shape {shape}"),
                    counterexample: None,
                }));
            }
            seen[psi - 1] = true;
        }
        if !seen.iter().all(|&s| s) {
            return Ok(Some(Failure {
                detail: format!("psi is not onto for shape {shape}"),
                counterexample: None,
            }));
        }
    }
    Ok(None)
}

fn transpose_composition(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for _ in 0..20 {
        let order = rng.random_range(2..=4);
        let side = rng.random_range(2..=3);
        let a: Hypermatrix<Rational> = sample::integer_hypermatrix(side, order, -9, 9, rng)?;
        let p = sample::random_permutation(order, rng);
        let q = sample::random_permutation(order, rng);
        let two_steps = a.transpose(&p)?.transpose(&q)?;
        let one_step = a.transpose(&q.compose(&p)?)?;
        if two_steps != one_step {
            return Ok(Some(Failure {
                detail: format!("composition failed for p = {p}, q = {q}"),
                counterexample: tensor_counterexample(&a),
            }));
        }
    }
    Ok(None)
}

fn transpose_hdet_invariance(rng: &mut ChaCha8Rng, fault: bool) -> Result<Option<Failure>> {
    for case in 0..12 {
        let (side, order) = *pick(rng, &[(2, 2), (2, 4), (3, 2)]);
        let a: Hypermatrix<Rational> = sample::integer_hypermatrix(side, order, -6, 6, rng)?;
        let pi = sample::random_permutation(order, rng);
        let mut b = a.transpose(&pi)?;
        if fault && case == 3 {
            let index = b.shape().index_at(1)?;
            let bumped = b.get(&index)?.clone() + Rational::one();
            b.set(&index, bumped)?;
        }
        let original = hdet_naive(&a)?;
        let transposed = hdet_naive(&b)?;
        if original != transposed {
            return Ok(Some(Failure {
                detail: format!(
                    "hdet changed under transpose {pi}: {original} became {transposed}"
                ),
                counterexample: tensor_counterexample(&b),
            }));
        }
    }
    Ok(None)
}

fn odd_order_vanishes(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for _ in 0..8 {
        let side = rng.random_range(2..=3);
        let a: Hypermatrix<Rational> = sample::integer_hypermatrix(side, 3, -9, 9, rng)?;
        let value = hdet_naive(&a)?;
        if !value.is_zero() {
            return Ok(Some(Failure {
                detail: format!("odd-order hdet was {value}"),
                counterexample: tensor_counterexample(&a),
            }));
        }
    }
    Ok(None)
}

fn engines_agree_general(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    let budgets = Budgets::default();
    for _ in 0..24 {
        let (side, order) = *pick(rng, &[(2, 2), (3, 2), (2, 4), (2, 6)]);
        let a: Hypermatrix<Rational> = sample::integer_hypermatrix(side, order, -9, 9, rng)?;
        let naive = hdet_naive(&a)?;
        let sparse = hdet_levicivita(&a, &budgets)?;
        if naive != sparse {
            return Ok(Some(Failure {
                detail: format!("naive gave {naive}, levi-civita gave {sparse}"),
                counterexample: tensor_counterexample(&a),
            }));
        }
    }
    Ok(None)
}

fn engines_agree_symmetric(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    let budgets = Budgets::default();
    for _ in 0..16 {
        let (side, order) = *pick(rng, &[(2, 2), (2, 4), (3, 2), (3, 4)]);
        let a: Hypermatrix<Rational> =
            sample::symmetric_integer_hypermatrix(side, order, -9, 9, rng)?;
        let contractor = build_contractor::<Rational>(side, order, &budgets)?;
        let naive = hdet_naive(&a)?;
        let sparse = hdet_levicivita(&a, &budgets)?;
        let fast = hdet_symmetric(&a, &contractor, 0.0)?;
        if naive != sparse || sparse != fast {
            return Ok(Some(Failure {
                detail: format!(
                    "engines disagree: naive {naive}, levi-civita {sparse}, symmetric {fast}"
                ),
                counterexample: tensor_counterexample(&a),
            }));
        }
    }
    Ok(None)
}

fn rational_determinant(m: &Matrix<Rational>) -> Result<Rational> {
    let n = m.rows();
    let mut grid: Vec<Vec<Rational>> = (1..=n)
        .map(|r| (1..=n).map(|c| m.get(r, c).clone()).collect())
        .collect();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !grid[r][col].is_zero()) {
            Some(r) => r,
            None => return Ok(Rational::zero()),
        };
        if pivot_row != col {
            grid.swap(pivot_row, col);
            det = -det;
        }
        let pivot = grid[col][col].clone();
        det *= pivot.clone();
        let pivot_row_values = grid[col].clone();
        for row_values in grid.iter_mut().skip(col + 1) {
            let factor = row_values[col].clone() / pivot.clone();
            for (value, pivot_value) in row_values[col..].iter_mut().zip(&pivot_row_values[col..]) {
                let delta = factor.clone() * pivot_value.clone();
                *value = value.clone() - delta;
            }
        }
    }
    Ok(det)
}

fn determinant_specialization(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for _ in 0..15 {
        let n = rng.random_range(1..=4);
        let m: Matrix<Rational> = sample::integer_matrix(n, n, -9, 9, rng)?;
        let shape = Shape::cubical(n, 2)?;
        let mut data = Vec::with_capacity(n * n);
        for index in shape.indices() {
            let c = index.components();
            data.push(m.get(c[0], c[1]).clone());
        }
        let a = Hypermatrix::new(shape, data)?;
        let from_hdet = hdet_naive(&a)?;
        let from_gauss = rational_determinant(&m)?;
        if from_hdet != from_gauss {
            return Ok(Some(Failure {
                detail: format!("hdet gave {from_hdet}, elimination gave {from_gauss}"),
                counterexample: tensor_counterexample(&a),
            }));
        }
    }
    Ok(None)
}

fn multiplicativity_order_two(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for _ in 0..10 {
        let n = rng.random_range(2..=3);
        let a: Hypermatrix<Rational> = sample::integer_hypermatrix(n, 2, -5, 5, rng)?;
        let x: Matrix<Rational> = sample::integer_matrix(n, n, -4, 4, rng)?;
        let y: Matrix<Rational> = sample::integer_matrix(n, n, -4, 4, rng)?;
        let transformed = a.multilinear_multiply(&[x.clone(), y.clone()])?;
        let expected =
            rational_determinant(&x)? * rational_determinant(&y)? * hdet_naive(&a)?;
        let actual = hdet_naive(&transformed)?;
        if expected != actual {
            return Ok(Some(Failure {
                detail: format!("expected {expected}, got {actual}"),
                counterexample: tensor_counterexample(&a),
            }));
        }
    }
    Ok(None)
}

fn degree_homogeneity(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for _ in 0..12 {
        let (side, order) = *pick(rng, &[(2, 2), (2, 4), (3, 2)]);
        let a: Hypermatrix<Rational> = sample::integer_hypermatrix(side, order, -6, 6, rng)?;
        let alpha = Rational::from_int(rng.random_range(-5..=5));
        let scaled = a.scaled(&alpha);
        let mut power = Rational::one();
        for _ in 0..side {
            power *= alpha.clone();
        }
        let expected = power * hdet_naive(&a)?;
        let actual = hdet_naive(&scaled)?;
        if expected != actual {
            return Ok(Some(Failure {
                detail: format!(
                    "scaling by {alpha} should multiply hdet by its degree-{side} power; \
                     expected {expected}, got {actual}"
                ),
                counterexample: tensor_counterexample(&a),
            }));
        }
    }
    Ok(None)
}

fn elimination_duplication_identity(
    _rng: &mut ChaCha8Rng,
    _fault: bool,
) -> Result<Option<Failure>> {
    for &(side, order) in &[(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
        let l: SparseTensor<Rational> = elimination_matrix(side, order)?;
        let d: SparseTensor<Rational> = duplication_matrix(side, order)?;
        let product = l.matmul(&d)?;
        let size = count_monotone(side, order)?;
        for (index, value) in product.entries() {
            let c = index.components();
            if c[0] != c[1] || !value.is_one() {
                return Ok(Some(Failure {
                    detail: format!(
                        "L D has entry {value} at {index} for side {side}, order {order}"
                    ),
                    counterexample: None,
                }));
            }
        }
        if product.nnz() != size {
            return Ok(Some(Failure {
                detail: format!(
                    "L D has {} diagonal entries, wanted {size}, side {side} order {order}",
                    product.nnz()
                ),
                counterexample: None,
            }));
        }
    }
    Ok(None)
}

fn elimination_acts_on_hvec(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for _ in 0..12 {
        let (side, order) = *pick(rng, &[(2, 2), (2, 3), (3, 2), (3, 3)]);
        let a: Hypermatrix<Rational> =
            sample::symmetric_integer_hypermatrix(side, order, -9, 9, rng)?;
        let l: SparseTensor<Rational> = elimination_matrix(side, order)?;
        let compressed = l.matvec(&hvec(&a))?;
        if compressed != hvec_1n(&a, 0.0)? {
            return Ok(Some(Failure {
                detail: "L hvec(A) differs from the reduced vectorization".into(),
                counterexample: tensor_counterexample(&a),
            }));
        }
    }
    Ok(None)
}

fn duplication_reconstructs(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for _ in 0..12 {
        let (side, order) = *pick(rng, &[(2, 2), (2, 3), (3, 2), (3, 3)]);
        let a: Hypermatrix<Rational> =
            sample::symmetric_integer_hypermatrix(side, order, -9, 9, rng)?;
        let d: SparseTensor<Rational> = duplication_matrix(side, order)?;
        let expanded = d.matvec(&hvec_1n(&a, 0.0)?)?;
        if expanded != hvec(&a) {
            return Ok(Some(Failure {
                detail: "D hvec_1n(A) differs from the full vectorization".into(),
                counterexample: tensor_counterexample(&a),
            }));
        }
    }
    Ok(None)
}

fn placement_enumeration(_rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for &(side, order) in &[(2, 2), (2, 5), (3, 3), (4, 2), (5, 3), (3, 6)] {
        let all = monotone_indices(side, order)?;
        if all.len() != count_monotone(side, order)? {
            return Ok(Some(Failure {
                detail: format!("wrong count for side {side}, order {order}"),
                counterexample: None,
            }));
        }
        for (slot, index) in all.iter().enumerate() {
            if placement(index)? != slot + 1 {
                return Ok(Some(Failure {
                    detail: format!(
                        "{index} enumerated at slot {} but placed at {}",
                        slot + 1,
                        placement(index)?
                    ),
                    counterexample: None,
                }));
            }
        }
    }
    Ok(None)
}

fn epsilon_axis_swap_parity(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for &(side, order) in &[(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
        let power: SparseTensor<Rational> = epsilon_kron_power(side, order, 1_000_000)?;
        let axes = power.shape().order();
        let a = rng.random_range(1..=axes);
        let mut b = rng.random_range(1..=axes - 1);
        if b >= a {
            b += 1;
        }
        let swapped = power.swap_axes(a, b)?;
        let expected = if order % 2 == 0 {
            power.clone()
        } else {
            power.scaled(&-Rational::one())
        };
        if swapped != expected {
            return Ok(Some(Failure {
                detail: format!(
                    "swapping axes {a} and {b} of the side-{side}, order-{order} power \
                     did not scale it by (-1)^{order}"
                ),
                counterexample: None,
            }));
        }
    }
    Ok(None)
}

fn epsilon_kron_consistency(_rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for &side in &[2usize, 3] {
        let single: SparseTensor<Rational> = levi_civita(side)?;
        let dense = single.densify()?;
        let square = dense.kron(&dense)?;
        let sparse: SparseTensor<Rational> = epsilon_kron_power(side, 2, 1_000_000)?;
        if sparse.densify()? != square {
            return Ok(Some(Failure {
                detail: format!("sparse square of the side-{side} symbol is wrong"),
                counterexample: None,
            }));
        }
    }
    Ok(None)
}

fn contractor_cache_round_trip(_rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    let budgets = Budgets::default();
    let dir = tempfile::TempDir::new().map_err(|source| crate::error::Error::Storage {
        path: std::env::temp_dir(),
        source,
    })?;
    for &(side, order) in &[(2, 2), (2, 4), (3, 2)] {
        let (built, first) =
            cache::ensure_contractor::<Rational>(side, order, dir.path(), &budgets)?;
        let (loaded, second) =
            cache::ensure_contractor::<Rational>(side, order, dir.path(), &budgets)?;
        if first != cache::Provenance::Built
            || second != cache::Provenance::CacheHit
            || built != loaded
        {
            return Ok(Some(Failure {
                detail: format!(
                    "cache round trip failed for side {side}, order {order}: \
                     {first:?} then {second:?}"
                ),
                counterexample: None,
            }));
        }
    }
    Ok(None)
}

fn document_round_trip(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for _ in 0..10 {
        let order = rng.random_range(1..=4);
        let side = rng.random_range(1..=3);
        let a: Hypermatrix<Rational> = sample::integer_hypermatrix(side, order, -99, 99, rng)?;
        let text = TensorDocument::from_rational(&a).to_json(false);
        let back = TensorDocument::from_json_str(&text)?.rational_hypermatrix()?;
        if back != a {
            return Ok(Some(Failure {
                detail: "JSON round trip changed the tensor".into(),
                counterexample: Some(text),
            }));
        }
    }
    Ok(None)
}

fn concurrence_product_states(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for _ in 0..10 {
        let (side, particles) = *pick(rng, &[(2, 2), (2, 4), (3, 2)]);
        let state = sample::random_product_state(side, particles, rng)?;
        let outcome = state.concurrence()?;
        if outcome.value > 1e-8 {
            return Ok(Some(Failure {
                detail: format!("product state has concurrence {}", outcome.value),
                counterexample: state_counterexample(&state),
            }));
        }
    }
    Ok(None)
}

fn concurrence_two_qubit_range(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for _ in 0..30 {
        let state = sample::random_state(2, 2, rng)?;
        let outcome = state.concurrence()?;
        if !(0.0..=1.0 + 1e-9).contains(&outcome.value) {
            return Ok(Some(Failure {
                detail: format!("two-qubit concurrence {} is out of range", outcome.value),
                counterexample: state_counterexample(&state),
            }));
        }
    }
    Ok(None)
}

fn apply_local_unitaries(
    state: &QuditState,
    unitaries: &[Matrix<Complex64>],
) -> Result<QuditState> {
    let factors: Vec<Matrix<Complex64>> = unitaries.iter().map(|u| u.transpose()).collect();
    let rotated = state.to_hypermatrix().multilinear_multiply(&factors)?;
    QuditState::new(state.side(), state.particles(), rotated.into_data())
}

fn concurrence_local_unitary_invariance(
    rng: &mut ChaCha8Rng,
    _fault: bool,
) -> Result<Option<Failure>> {
    for _ in 0..10 {
        let particles = *pick(rng, &[2usize, 4]);
        let state = sample::random_state(2, particles, rng)?;
        let unitaries: Vec<Matrix<Complex64>> =
            (0..particles).map(|_| sample::random_unitary2(rng)).collect();
        let rotated = apply_local_unitaries(&state, &unitaries)?;
        let before = state.concurrence()?.value;
        let after = rotated.concurrence()?.value;
        if (before - after).abs() > 1e-8 {
            return Ok(Some(Failure {
                detail: format!("concurrence moved from {before} to {after}"),
                counterexample: state_counterexample(&state),
            }));
        }
    }
    Ok(None)
}

fn boson_fast_path_agrees(rng: &mut ChaCha8Rng, _fault: bool) -> Result<Option<Failure>> {
    for _ in 0..8 {
        let (side, particles) = *pick(rng, &[(2, 2), (2, 4), (3, 2)]);
        let state = sample::random_boson(side, particles, rng)?;
        let auto = state.concurrence()?;
        let forced = state.concurrence_with(&HdetOptions {
            engine: EngineChoice::LeviCivita,
            ..HdetOptions::default()
        })?;
        if !auto.boson {
            return Ok(Some(Failure {
                detail: "a symmetrized state was not recognized as bosonic".into(),
                counterexample: state_counterexample(&state),
            }));
        }
        if (auto.value - forced.value).abs() > 1e-8 {
            return Ok(Some(Failure {
                detail: format!(
                    "fast path gave {}, levi-civita gave {}",
                    auto.value, forced.value
                ),
                counterexample: state_counterexample(&state),
            }));
        }
    }
    Ok(None)
}

fn pick<'a, T, R: Rng>(rng: &mut R, choices: &'a [T]) -> &'a T {
    &choices[rng.random_range(0..choices.len())]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_clean_run_passes_everything() {
        let report = run_all(20260819, false);
        for outcome in &report.outcomes {
            assert!(outcome.passed, "{} failed: {}", outcome.name, outcome.detail);
        }
        assert!(report.all_passed());
    }

    #[test]
    fn runs_are_deterministic() {
        let a = run_all(7, false);
        let b = run_all(7, false);
        assert_eq!(a, b);
    }

    #[test]
    fn an_injected_fault_is_caught_and_documented() {
        let report = run_all(11, true);
        assert!(!report.all_passed());
        let failures: Vec<_> = report.failures().collect();
        assert_eq!(failures.len(), 1);
        let failure = failures[0];
        assert_eq!(failure.name, "transpose-hdet-invariance");
        let counterexample = failure.counterexample.as_ref().expect("counterexample");
        let doc = TensorDocument::from_json_str(counterexample).unwrap();
        assert!(doc.rational_hypermatrix().is_ok());
    }

    #[test]
    fn different_seeds_draw_different_data() {
        // Weak check: the reports still pass, so this only proves the
        // harness does not crash on other streams.
        assert!(run_all(1, false).all_passed());
        assert!(run_all(2, false).all_passed());
    }
}
