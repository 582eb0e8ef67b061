//! Cayley's first hyperdeterminant and its three engines.
//!
//! For a cubical hypermatrix A of side d and order N,
//!
//! ```text
//! hdet(A) = (1/d!) sum over (s_1, ..., s_N) in S_d^N of
//!           sgn(s_1) ... sgn(s_N) prod_{i=1}^{d} a_{s_1(i), ..., s_N(i)}
//! ```
//!
//! which vanishes identically for odd N. The engines:
//!
//! * `naive` fixes s_1 = id and sums the remaining (d!)^(N-1) terms, exact
//!   in every backend.
//! * `levicivita` contracts the N-th Kronecker power of the Levi-Civita
//!   symbol against N copies of the vectorization: (d!)^N signed products.
//! * `symmetric-fast` contracts a precomputed order-d contractor of side
//!   C(d+N-1, N) against d copies of the reduced vectorization of a
//!   symmetric input: Theta(C(d+N-1, N)^d) multiply-adds, a polynomial in
//!   N of degree d(d-1) instead of the factorial growth above.

use crate::error::{Error, Result};
use crate::hypermatrix::{Hypermatrix, Shape};
use crate::levicivita::{for_each_power_nonzero, power_nnz, SignedPermutationTable};
use crate::perm::factorial;
use crate::scalar::{check_tolerance, default_tolerance, Scalar};
use crate::vectorize::{count_monotone, hvec_1n, placement, MonotoneIndex};
use std::path::PathBuf;

/// Default ceiling for both resource budgets.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Engine requested by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineChoice {
    /// Pick automatically: odd order short-circuits to zero, symmetric
    /// inputs use the fast path when the contractor fits the budget, then
    /// the Levi-Civita engine within budget, then naive.
    Auto,
    Naive,
    LeviCivita,
    SymmetricFast,
}

impl std::str::FromStr for EngineChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(EngineChoice::Auto),
            "naive" => Ok(EngineChoice::Naive),
            "levicivita" => Ok(EngineChoice::LeviCivita),
            "symmetric" => Ok(EngineChoice::SymmetricFast),
            other => Err(Error::Parse {
                detail: format!(
                    "unknown engine {other:?}, expected auto, naive, levicivita, or symmetric"
                ),
            }),
        }
    }
}

/// Engine that actually produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineUsed {
    OddOrderShortCircuit,
    Naive,
    LeviCivita,
    SymmetricFast,
}

impl EngineUsed {
    pub fn as_str(self) -> &'static str {
        match self {
            EngineUsed::OddOrderShortCircuit => "odd-order-short-circuit",
            EngineUsed::Naive => "naive",
            EngineUsed::LeviCivita => "levicivita",
            EngineUsed::SymmetricFast => "symmetric-fast",
        }
    }
}

impl std::fmt::Display for EngineUsed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Resource ceilings. An engine refuses to start work that would exceed
/// them rather than failing midway.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Greatest admissible nonzero count (d!)^N for the Levi-Civita engine
    /// and for the contractor build scatter.
    pub levicivita_nnz: u64,
    /// Greatest admissible dense entry count C(d+N-1, N)^d for a contractor.
    pub contractor_entries: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            levicivita_nnz: DEFAULT_BUDGET,
            contractor_entries: DEFAULT_BUDGET,
        }
    }
}

impl Budgets {
    pub fn uniform(budget: u64) -> Self {
        Budgets {
            levicivita_nnz: budget,
            contractor_entries: budget,
        }
    }
}

/// Options for the dispatching entry point [`hdet`].
#[derive(Debug, Clone)]
pub struct HdetOptions {
    pub engine: EngineChoice,
    pub budgets: Budgets,
    /// Symmetry comparison tolerance; `None` picks the backend default
    /// (0 for exact arithmetic, 1e-9 for floating point).
    pub tolerance: Option<f64>,
    /// Directory for persisted contractors; `None` builds in memory.
    pub cache_dir: Option<PathBuf>,
}

impl Default for HdetOptions {
    fn default() -> Self {
        HdetOptions {
            engine: EngineChoice::Auto,
            budgets: Budgets::default(),
            tolerance: None,
            cache_dir: None,
        }
    }
}

/// A computed hyperdeterminant and the engine that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct HdetOutcome<T> {
    pub value: T,
    pub engine: EngineUsed,
}

fn factorial_u64(n: usize) -> Result<u64> {
    u64::try_from(factorial(n)?).map_err(|_| Error::SizeOverflow {
        what: format!("factorial of {n}"),
    })
}

/// Direct permutation expansion with the first permutation fixed to the
/// identity: (d!)^(N-1) terms, each a product of d entries. Exact for the
/// rational backend and available at any size, but factorially slow.
pub fn hdet_naive<T: Scalar>(a: &Hypermatrix<T>) -> Result<T> {
    let side = a.cubical_side()?;
    let order = a.order();
    if order % 2 == 1 {
        return Ok(T::zero());
    }
    let table = SignedPermutationTable::new(side);
    let count = table.len();
    let data = a.data();
    let mut slots = vec![0usize; order - 1];
    let mut acc = T::zero();
    loop {
        let mut sign = 1i8;
        for &slot in &slots {
            sign *= table.sign(slot);
        }
        let mut term = T::one();
        for i in 1..=side {
            let mut flat = i - 1;
            let mut stride = side;
            for &slot in &slots {
                flat += (table.images(slot)[i - 1] - 1) * stride;
                stride *= side;
            }
            term = term * data[flat].clone();
        }
        acc = if sign < 0 { acc - term } else { acc + term };
        let mut k = 0;
        loop {
            if k == slots.len() {
                return Ok(acc);
            }
            slots[k] += 1;
            if slots[k] < count {
                break;
            }
            slots[k] = 0;
            k += 1;
        }
    }
}

/// Contraction of the N-th Kronecker power of the Levi-Civita symbol
/// against N copies of the vectorization, divided by d!. Builds the power
/// tensor first; see [`hdet_levicivita_with`] to reuse one.
pub fn hdet_levicivita<T: Scalar>(a: &Hypermatrix<T>, budgets: &Budgets) -> Result<T> {
    let side = a.cubical_side()?;
    let nnz = power_nnz(side, a.order())?;
    if nnz > budgets.levicivita_nnz as u128 {
        return Err(Error::BudgetExceeded {
            what: format!(
                "Levi-Civita contraction for side {side} order {}",
                a.order()
            ),
            required: nnz,
            unit: "nonzeros",
            budget: budgets.levicivita_nnz,
            hint: ", use the symmetric engine for symmetric inputs or the naive engine".into(),
        });
    }
    let data = a.data();
    let d_factorial = factorial_u64(side)?;
    let mut acc = T::zero();
    for_each_power_nonzero(side, a.order(), |components, sign| {
        let mut term = T::from_int(sign as i64);
        for &component in components {
            term = term * data[component - 1].clone();
        }
        let so_far = std::mem::replace(&mut acc, T::zero());
        acc = so_far + term;
    });
    Ok(acc.div_exact(d_factorial))
}

/// Same contraction against an already materialized power tensor, consumed
/// in its stored (psi-sorted) entry order.
pub fn hdet_levicivita_with<T: Scalar>(
    a: &Hypermatrix<T>,
    epsilon_power: &crate::vectorize::SparseTensor<T>,
) -> Result<T> {
    let side = a.cubical_side()?;
    let order = a.order();
    let power_side = Shape::cubical(side, order)?.element_count();
    let power_shape = epsilon_power.shape();
    if power_shape.order() != side || power_shape.cubical_side() != Some(power_side) {
        return Err(Error::ShapeMismatch {
            expected: format!("order-{side} tensor of side {power_side}"),
            actual: power_shape.to_string(),
        });
    }
    let data = a.data();
    let mut acc = T::zero();
    for (index, value) in epsilon_power.entries() {
        let mut term = value.clone();
        for &component in index.components() {
            term = term * data[component - 1].clone();
        }
        acc = acc + term;
    }
    Ok(acc.div_exact(factorial_u64(side)?))
}

/// The precomputed contractor for the symmetric fast path: an order-d
/// hypermatrix of side C(d+N-1, N) that contracts d copies of the reduced
/// vectorization straight to the hyperdeterminant.
#[derive(Debug, Clone, PartialEq)]
pub struct Contractor<T> {
    input_side: usize,
    input_order: usize,
    tensor: Hypermatrix<T>,
}

impl<T: Scalar> Contractor<T> {
    /// Wraps a tensor as a contractor after checking its dimensions: order
    /// equal to `input_side`, every extent equal to C(d+N-1, N).
    pub fn from_parts(
        input_side: usize,
        input_order: usize,
        tensor: Hypermatrix<T>,
    ) -> Result<Self> {
        let reduced = count_monotone(input_side, input_order)?;
        if tensor.order() != input_side || tensor.shape().cubical_side() != Some(reduced) {
            return Err(Error::ShapeMismatch {
                expected: format!("order-{input_side} tensor of side {reduced}"),
                actual: tensor.shape().to_string(),
            });
        }
        Ok(Contractor {
            input_side,
            input_order,
            tensor,
        })
    }

    /// Side d of the inputs this contractor serves.
    pub fn input_side(&self) -> usize {
        self.input_side
    }

    /// Order N of the inputs this contractor serves.
    pub fn input_order(&self) -> usize {
        self.input_order
    }

    /// Side C(d+N-1, N) of the contractor tensor itself.
    pub fn reduced_side(&self) -> usize {
        self.tensor.shape().extents()[0]
    }

    pub fn tensor(&self) -> &Hypermatrix<T> {
        &self.tensor
    }

    /// Contracts d copies of a reduced vectorization `w` through the
    /// contractor, scanning cells in psi order so summation order is fixed.
    pub fn contract(&self, w: &[T]) -> Result<T> {
        let reduced = self.reduced_side();
        if w.len() != reduced {
            return Err(Error::ShapeMismatch {
                expected: format!("reduced vectorization of length {reduced}"),
                actual: format!("length {}", w.len()),
            });
        }
        let mut digits = vec![0usize; self.input_side];
        let mut acc = T::zero();
        for value in self.tensor.data() {
            if !value.is_zero() {
                let mut term = value.clone();
                for &digit in &digits {
                    term = term * w[digit].clone();
                }
                acc = acc + term;
            }
            for digit in digits.iter_mut() {
                *digit += 1;
                if *digit < reduced {
                    break;
                }
                *digit = 0;
            }
        }
        Ok(acc)
    }
}

/// Builds the contractor for side d and order N by scattering the nonzeros
/// of the Levi-Civita Kronecker power through the duplication structure:
/// every power nonzero lands in the cell addressed by the placements of its
/// sorted components, accumulating signs as integer counts, and the counts
/// are divided by d! at the end. Odd N yields the zero contractor.
pub fn build_contractor<T: Scalar>(
    side: usize,
    order: usize,
    budgets: &Budgets,
) -> Result<Contractor<T>> {
    let reduced = count_monotone(side, order)?;
    let entry_count = (reduced as u128)
        .checked_pow(side as u32)
        .ok_or_else(|| Error::SizeOverflow {
            what: format!("contractor entry count {reduced}^{side}"),
        })?;
    if entry_count > budgets.contractor_entries as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("contractor for side {side} order {order}"),
            required: entry_count,
            unit: "entries",
            budget: budgets.contractor_entries,
            hint: ", raise the budget or use another engine".into(),
        });
    }
    let scatter = power_nnz(side, order)?;
    if scatter > budgets.levicivita_nnz as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("contractor build scatter for side {side} order {order}"),
            required: scatter,
            unit: "nonzeros",
            budget: budgets.levicivita_nnz,
            hint: ", raise the budget or use another engine".into(),
        });
    }

    let cube = Shape::cubical(side, order)?;
    let mut position_to_slot = Vec::with_capacity(cube.element_count());
    for position in 1..=cube.element_count() {
        let index = cube.index_at(position)?;
        let monotone = MonotoneIndex::sorted_from(&index, side)?;
        position_to_slot.push(placement(&monotone)? - 1);
    }

    let mut counts = vec![0i64; entry_count as usize];
    for_each_power_nonzero(side, order, |components, sign| {
        let mut cell = 0usize;
        let mut stride = 1usize;
        for &component in components {
            cell += position_to_slot[component - 1] * stride;
            stride *= reduced;
        }
        counts[cell] += sign as i64;
    });

    let d_factorial = factorial_u64(side)?;
    let data = counts
        .into_iter()
        .map(|count| T::from_int(count).div_exact(d_factorial))
        .collect();
    let tensor = Hypermatrix::new(Shape::cubical(reduced, side)?, data)?;
    Contractor::from_parts(side, order, tensor)
}

/// Symmetric fast path: validates that the contractor fits the input and
/// that the input is symmetric within `tolerance`, then contracts the
/// reduced vectorization.
pub fn hdet_symmetric<T: Scalar>(
    a: &Hypermatrix<T>,
    contractor: &Contractor<T>,
    tolerance: f64,
) -> Result<T> {
    let side = a.cubical_side()?;
    let order = a.order();
    if contractor.input_side() != side || contractor.input_order() != order {
        return Err(Error::ContractorMismatch {
            contractor_side: contractor.input_side(),
            contractor_order: contractor.input_order(),
            input_side: side,
            input_order: order,
        });
    }
    let w = hvec_1n(a, tolerance)?;
    contractor.contract(&w)
}

fn obtain_contractor<T: Scalar>(
    side: usize,
    order: usize,
    options: &HdetOptions,
) -> Result<Contractor<T>> {
    match &options.cache_dir {
        Some(dir) => {
            crate::cache::ensure_contractor(side, order, dir, &options.budgets)
                .map(|(contractor, _)| contractor)
        }
        None => build_contractor(side, order, &options.budgets),
    }
}

/// Computes the hyperdeterminant with the requested engine, or picks one
/// automatically: odd order returns zero immediately; symmetric inputs take
/// the fast path when the contractor fits its budgets; otherwise the
/// Levi-Civita engine runs within budget, and the naive engine is the
/// fallback of last resort.
pub fn hdet<T: Scalar>(a: &Hypermatrix<T>, options: &HdetOptions) -> Result<HdetOutcome<T>> {
    let side = a.cubical_side()?;
    let order = a.order();
    let tolerance = options.tolerance.unwrap_or_else(default_tolerance::<T>);
    check_tolerance::<T>(tolerance)?;
    match options.engine {
        EngineChoice::Naive => Ok(HdetOutcome {
            value: hdet_naive(a)?,
            engine: EngineUsed::Naive,
        }),
        EngineChoice::LeviCivita => Ok(HdetOutcome {
            value: hdet_levicivita(a, &options.budgets)?,
            engine: EngineUsed::LeviCivita,
        }),
        EngineChoice::SymmetricFast => {
            let contractor = obtain_contractor::<T>(side, order, options)?;
            Ok(HdetOutcome {
                value: hdet_symmetric(a, &contractor, tolerance)?,
                engine: EngineUsed::SymmetricFast,
            })
        }
        EngineChoice::Auto => {
            if order % 2 == 1 {
                return Ok(HdetOutcome {
                    value: T::zero(),
                    engine: EngineUsed::OddOrderShortCircuit,
                });
            }
            if a.symmetry_witness(tolerance)?.is_none() {
                match obtain_contractor::<T>(side, order, options) {
                    Ok(contractor) => {
                        return Ok(HdetOutcome {
                            value: hdet_symmetric(a, &contractor, tolerance)?,
                            engine: EngineUsed::SymmetricFast,
                        })
                    }
                    Err(Error::BudgetExceeded { .. }) | Err(Error::SizeOverflow { .. }) => {}
                    Err(other) => return Err(other),
                }
            }
            match hdet_levicivita(a, &options.budgets) {
                Ok(value) => Ok(HdetOutcome {
                    value,
                    engine: EngineUsed::LeviCivita,
                }),
                Err(Error::BudgetExceeded { .. }) | Err(Error::SizeOverflow { .. }) => {
                    Ok(HdetOutcome {
                        value: hdet_naive(a)?,
                        engine: EngineUsed::Naive,
                    })
                }
                Err(other) => Err(other),
            }
        }
    }
}

/// Log-scale cost advantage of the symmetric fast path over the reduced
/// permutation expansion:
///
/// ```text
/// ratio(d, N) = ((N d - (N - 1)) log2(d) - (N d - d)) ln(2)
/// ```
///
/// Positive values favor the fast path. The expansion wins only for d = 2
/// with N >= 3; the ratio is exactly zero at d = 2, N = 3 and negative for
/// d = 2, N >= 4.
pub fn complexity_ratio(side: usize, order: usize) -> f64 {
    let d = side as f64;
    let n = order as f64;
    ((n * d - (n - 1.0)) * d.log2() - (n * d - d)) * std::f64::consts::LN_2
}
