//! The Levi-Civita symbol and its Kronecker powers.
//!
//! The side-d Levi-Civita symbol is the order-d cubical tensor whose entry
//! at `(i_1, ..., i_d)` is the sign of the permutation when the components
//! form one, and 0 otherwise. Its N-th Kronecker power is an order-d tensor
//! of side d^N with exactly (d!)^N nonzeros, all +1 or -1: one per N-tuple
//! of permutations, at components
//!
//! ```text
//! r_l = 1 + sum_{t=1}^{N} (p_t(l) - 1) d^(N-t)
//! ```
//!
//! with the first factor most significant, matching the Kronecker product
//! convention of [`crate::hypermatrix::Hypermatrix::kron`].

use crate::error::{Error, Result};
use crate::hypermatrix::{psi_cmp, MultiIndex, Shape};
use crate::perm::{factorial, Permutation};
use crate::scalar::Scalar;
use crate::vectorize::SparseTensor;

/// All permutations of `1..=side` with their signs, sorted by psi order of
/// the image tuples. The engines iterate this table in its stored order,
/// which fixes their summation order and makes results reproducible.
#[derive(Debug, Clone)]
pub struct SignedPermutationTable {
    side: usize,
    entries: Vec<(Vec<usize>, i8)>,
}

impl SignedPermutationTable {
    pub fn new(side: usize) -> Self {
        let mut entries: Vec<(Vec<usize>, i8)> = Permutation::all(side)
            .into_iter()
            .map(|p| {
                let sign = p.sign();
                (p.into_images(), sign)
            })
            .collect();
        entries.sort_by(|(a, _), (b, _)| psi_cmp(a, b));
        SignedPermutationTable { side, entries }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn images(&self, k: usize) -> &[usize] {
        &self.entries[k].0
    }

    pub fn sign(&self, k: usize) -> i8 {
        self.entries[k].1
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], i8)> {
        self.entries.iter().map(|(images, sign)| (images.as_slice(), *sign))
    }
}

/// The Levi-Civita symbol of side `side` as a sparse tensor with `side!`
/// signed unit entries.
pub fn levi_civita<T: Scalar>(side: usize) -> Result<SparseTensor<T>> {
    let shape = Shape::cubical(side, side)?;
    let table = SignedPermutationTable::new(side);
    let entries = table
        .iter()
        .map(|(images, sign)| {
            (
                MultiIndex::new(images.to_vec()),
                T::from_int(sign as i64),
            )
        })
        .collect();
    SparseTensor::new(shape, entries)
}

/// Number of nonzeros in the `order`-th Kronecker power of the side-d
/// Levi-Civita symbol: `(d!)^order`.
pub fn power_nnz(side: usize, order: usize) -> Result<u128> {
    let base = factorial(side)?;
    let mut acc: u128 = 1;
    for _ in 0..order {
        acc = acc.checked_mul(base).ok_or_else(|| Error::SizeOverflow {
            what: format!("({side}!)^{order}"),
        })?;
    }
    Ok(acc)
}

/// Visits every nonzero of the Kronecker power: `components` is the 1-based
/// index of length `side`, `sign` the entry value. The caller is expected to
/// have checked `power_nnz` against a budget first; the visit order is the
/// odometer order over the permutation table, first slot slowest.
pub(crate) fn for_each_power_nonzero(
    side: usize,
    order: usize,
    mut visit: impl FnMut(&[usize], i8),
) {
    let table = SignedPermutationTable::new(side);
    let count = table.len();
    let mut slots = vec![0usize; order];
    let mut components = vec![0usize; side];
    loop {
        let mut sign = 1i8;
        for &slot in &slots {
            sign *= table.sign(slot);
        }
        for (l, component) in components.iter_mut().enumerate() {
            let mut r = 0usize;
            for &slot in &slots {
                r = r * side + (table.images(slot)[l] - 1);
            }
            *component = r + 1;
        }
        visit(&components, sign);
        let mut k = slots.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            slots[k] += 1;
            if slots[k] < count {
                break;
            }
            slots[k] = 0;
        }
    }
}

/// The `order`-th Kronecker power of the side-d Levi-Civita symbol as a
/// sparse tensor. Refuses to materialize more than `budget_nnz` nonzeros.
pub fn epsilon_kron_power<T: Scalar>(
    side: usize,
    order: usize,
    budget_nnz: u64,
) -> Result<SparseTensor<T>> {
    if order == 0 {
        return Err(Error::OrderMismatch { left: 1, right: 0 });
    }
    let nnz = power_nnz(side, order)?;
    if nnz > budget_nnz as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("Kronecker power of the side-{side} Levi-Civita symbol to order {order}"),
            required: nnz,
            unit: "nonzeros",
            budget: budget_nnz,
            hint: ", raise the budget or use the naive engine".into(),
        });
    }
    let power_side = Shape::cubical(side, order)?.element_count();
    let shape = Shape::cubical(power_side, side)?;
    let mut entries = Vec::with_capacity(nnz as usize);
    for_each_power_nonzero(side, order, |components, sign| {
        entries.push((
            MultiIndex::new(components.to_vec()),
            T::from_int(sign as i64),
        ));
    });
    SparseTensor::new(shape, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn rat(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn levi_civita_side_2() {
        let eps: SparseTensor<Rational> = levi_civita(2).unwrap();
        assert_eq!(eps.nnz(), 2);
        let cells: Vec<(Vec<usize>, Rational)> = eps
            .entries()
            .iter()
            .map(|(i, v)| (i.components().to_vec(), v.clone()))
            .collect();
        assert!(cells.contains(&(vec![1, 2], rat(1))));
        assert!(cells.contains(&(vec![2, 1], rat(-1))));
    }

    #[test]
    fn levi_civita_side_3_signs() {
        let eps: SparseTensor<Rational> = levi_civita(3).unwrap();
        assert_eq!(eps.nnz(), 6);
        let dense = eps.densify().unwrap();
        let get = |i: &[usize]| {
            dense
                .get(&MultiIndex::new(i.to_vec()))
                .unwrap()
                .clone()
        };
        assert_eq!(get(&[1, 2, 3]), rat(1));
        assert_eq!(get(&[2, 3, 1]), rat(1));
        assert_eq!(get(&[3, 1, 2]), rat(1));
        assert_eq!(get(&[1, 3, 2]), rat(-1));
        assert_eq!(get(&[2, 1, 3]), rat(-1));
        assert_eq!(get(&[3, 2, 1]), rat(-1));
        assert_eq!(get(&[1, 1, 2]), rat(0));
    }

    #[test]
    fn power_nnz_counts() {
        assert_eq!(power_nnz(2, 4).unwrap(), 16);
        assert_eq!(power_nnz(3, 2).unwrap(), 36);
        assert_eq!(power_nnz(3, 20).unwrap(), 6u128.pow(20));
    }

    #[test]
    fn square_power_of_side_2() {
        let power: SparseTensor<Rational> = epsilon_kron_power(2, 2, 1_000).unwrap();
        assert_eq!(power.shape().extents(), &[4, 4]);
        assert_eq!(power.nnz(), 4);
        let dense = power.densify().unwrap();
        let get = |r: usize, c: usize| {
            dense
                .get(&MultiIndex::new(vec![r, c]))
                .unwrap()
                .clone()
        };
        assert_eq!(get(1, 4), rat(1));
        assert_eq!(get(4, 1), rat(1));
        assert_eq!(get(2, 3), rat(-1));
        assert_eq!(get(3, 2), rat(-1));
        assert_eq!(get(1, 1), rat(0));
    }

    #[test]
    fn power_matches_dense_kron() {
        // The sparse power must agree with the dense Kronecker product of
        // the densified symbol with itself.
        let eps: SparseTensor<Rational> = levi_civita(2).unwrap();
        let dense = eps.densify().unwrap();
        let expected = dense.kron(&dense).unwrap();
        let power: SparseTensor<Rational> = epsilon_kron_power(2, 2, 1_000).unwrap();
        assert_eq!(power.densify().unwrap(), expected);

        let eps3: SparseTensor<Rational> = levi_civita(3).unwrap();
        let dense3 = eps3.densify().unwrap();
        let expected3 = dense3.kron(&dense3).unwrap();
        let power3: SparseTensor<Rational> = epsilon_kron_power(3, 2, 1_000).unwrap();
        assert_eq!(power3.densify().unwrap(), expected3);
    }

    #[test]
    fn axis_swaps_scale_the_power_by_parity_of_the_order() {
        // Swapping two axes swaps two arguments inside each of the N
        // symbol factors, so the power picks up (-1)^N.
        for (side, order) in [(3usize, 2usize), (2, 3), (3, 3), (2, 4)] {
            let power: SparseTensor<Rational> = epsilon_kron_power(side, order, 10_000).unwrap();
            let expected = if order % 2 == 0 {
                power.clone()
            } else {
                power.scaled(&rat(-1))
            };
            for a in 1..=side {
                for b in (a + 1)..=side {
                    assert_eq!(power.swap_axes(a, b).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn power_entries_sum_to_zero() {
        for (side, order) in [(2usize, 3usize), (3, 2)] {
            let power: SparseTensor<Rational> =
                epsilon_kron_power(side, order, 10_000).unwrap();
            let sum = power
                .entries()
                .iter()
                .fold(rat(0), |acc, (_, v)| acc + v.clone());
            assert_eq!(sum, rat(0));
        }
    }

    #[test]
    fn budget_refusal_names_requirement() {
        let err = epsilon_kron_power::<Rational>(2, 30, 100_000_000).unwrap_err();
        match err {
            Error::BudgetExceeded {
                required, unit, ..
            } => {
                assert_eq!(required, 1u128 << 30);
                assert_eq!(unit, "nonzeros");
            }
            other => panic!("expected budget error, got {other}"),
        }
    }

    #[test]
    fn table_is_sorted_and_complete() {
        let table = SignedPermutationTable::new(4);
        assert_eq!(table.len(), 24);
        for k in 1..table.len() {
            assert_eq!(
                psi_cmp(table.images(k - 1), table.images(k)),
                std::cmp::Ordering::Less
            );
        }
        let positive = (0..table.len()).filter(|&k| table.sign(k) == 1).count();
        assert_eq!(positive, 12);
    }
}
