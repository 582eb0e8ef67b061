//! Vectorization of hypermatrices and the generalized elimination and
//! duplication matrices.
//!
//! A cubical hypermatrix of side d and order N has d^N entries, but a
//! symmetric one carries only C(d+N-1, N) distinct values, one per weakly
//! decreasing index tuple. This module maps between the full vectorization
//! and the reduced one: `hvec` flattens in psi order, `hvec_1n` keeps one
//! entry per monotone tuple, and the elimination and duplication matrices
//! realize both maps as explicit sparse 0/1 matrices with `L D = I`.

use crate::error::{Error, Result};
use crate::hypermatrix::{psi_cmp, Hypermatrix, MultiIndex, Shape};
use crate::perm::next_permutation;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A weakly decreasing index tuple over `1..=side`, the canonical
/// representative of its permutation class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneIndex {
    components: Vec<usize>,
    side: usize,
}

impl MonotoneIndex {
    pub fn new(components: Vec<usize>, side: usize) -> Result<Self> {
        if components.is_empty()
            || components.iter().any(|&c| c == 0 || c > side)
            || components.windows(2).any(|w| w[0] < w[1])
        {
            return Err(Error::NotMonotone {
                tuple: components,
                side,
            });
        }
        Ok(MonotoneIndex { components, side })
    }

    /// Canonical representative of an arbitrary index: components sorted
    /// into weakly decreasing order.
    pub fn sorted_from(index: &MultiIndex, side: usize) -> Result<Self> {
        let mut components = index.components().to_vec();
        components.sort_unstable_by(|a, b| b.cmp(a));
        MonotoneIndex::new(components, side)
    }

    pub fn order(&self) -> usize {
        self.components.len()
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn to_multi_index(&self) -> MultiIndex {
        MultiIndex::new(self.components.clone())
    }
}

impl std::fmt::Display for MonotoneIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.to_multi_index().fmt(f)
    }
}

fn binom(a: u128, b: u128) -> Result<u128> {
    if b > a {
        return Ok(0);
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 1..=b {
        acc = acc
            .checked_mul(a - b + i)
            .ok_or_else(|| Error::SizeOverflow {
                what: format!("binomial coefficient C({a}, {b})"),
            })?
            / i;
    }
    Ok(acc)
}

/// Number of weakly decreasing tuples of length `order` over `1..=side`,
/// which is C(side + order - 1, order).
pub fn count_monotone(side: usize, order: usize) -> Result<usize> {
    if side == 0 || order == 0 {
        return Err(Error::NotMonotone {
            tuple: vec![],
            side,
        });
    }
    let count = binom((side + order - 1) as u128, order as u128)?;
    usize::try_from(count).map_err(|_| Error::SizeOverflow {
        what: format!("monotone index count C({}, {order})", side + order - 1),
    })
}

/// Position of a monotone tuple in the reduced vectorization, 1-based:
///
/// ```text
/// P(i) = C(d+N-1, N) - sum_{k=1}^{N} C(d + k - i_k - 1, k)
/// ```
///
/// Monotone tuples in increasing psi order receive positions 1, 2, ...,
/// C(d+N-1, N) in order.
pub fn placement(index: &MonotoneIndex) -> Result<usize> {
    let d = index.side();
    let total = count_monotone(d, index.order())? as u128;
    let mut sum: u128 = 0;
    for (k, &component) in index.components().iter().enumerate() {
        let k = (k + 1) as u128;
        sum += binom(d as u128 + k - component as u128 - 1, k)?;
    }
    Ok((total - sum) as usize)
}

/// All monotone tuples of the given side and order, in placement order
/// (which coincides with increasing psi order of the tuples).
pub fn monotone_indices(side: usize, order: usize) -> Result<Vec<MonotoneIndex>> {
    let count = count_monotone(side, order)?;
    let mut out = Vec::with_capacity(count);
    let mut components = vec![1usize; order];
    loop {
        out.push(MonotoneIndex {
            components: components.clone(),
            side,
        });
        // Advance in psi order: bump the leftmost component below the side,
        // then drop everything to its left down to the new value.
        match components.iter().position(|&c| c < side) {
            Some(k) => {
                let bumped = components[k] + 1;
                for c in components[..=k].iter_mut() {
                    *c = bumped;
                }
            }
            None => break,
        }
    }
    debug_assert_eq!(out.len(), count);
    Ok(out)
}

/// Full vectorization: the entries of `a` in psi order.
pub fn hvec<T: Scalar>(a: &Hypermatrix<T>) -> Vec<T> {
    a.data().to_vec()
}

/// Reduced vectorization of a symmetric hypermatrix: one entry per monotone
/// tuple, in placement order. Errors when `a` is not symmetric within
/// `tolerance`.
pub fn hvec_1n<T: Scalar>(a: &Hypermatrix<T>, tolerance: f64) -> Result<Vec<T>> {
    if let Some(witness) = a.symmetry_witness(tolerance)? {
        return Err(witness.into_error(tolerance));
    }
    let side = a.cubical_side()?;
    let mut out = Vec::with_capacity(count_monotone(side, a.order())?);
    for index in monotone_indices(side, a.order())? {
        out.push(a.get(&index.to_multi_index())?.clone());
    }
    Ok(out)
}

/// A sparse tensor: entries sorted by psi order of their indices, no
/// explicit zeros, no duplicate indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseTensor<T> {
    shape: Shape,
    entries: Vec<(MultiIndex, T)>,
}

impl<T: Scalar> SparseTensor<T> {
    pub fn new(shape: Shape, entries: Vec<(MultiIndex, T)>) -> Result<Self> {
        let mut entries: Vec<(MultiIndex, T)> = entries
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        for (index, value) in &entries {
            shape.validate_index(index)?;
            if !value.is_admissible() {
                return Err(Error::NonFinite { position: 0 });
            }
        }
        entries.sort_by(|(a, _), (b, _)| psi_cmp(a.components(), b.components()));
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateSparseIndex {
                    index: pair[0].0.components().to_vec(),
                });
            }
        }
        Ok(SparseTensor { shape, entries })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Entries in psi order of their indices.
    pub fn entries(&self) -> &[(MultiIndex, T)] {
        &self.entries
    }

    pub fn densify(&self) -> Result<Hypermatrix<T>> {
        let mut dense = Hypermatrix::zeros(self.shape.clone());
        for (index, value) in &self.entries {
            dense.set(index, value.clone())?;
        }
        Ok(dense)
    }

    pub fn scaled(&self, factor: &T) -> SparseTensor<T> {
        SparseTensor {
            shape: self.shape.clone(),
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (i.clone(), v.clone() * factor.clone()))
                .collect(),
        }
    }

    /// Swaps two axes (1-based); requires their extents to agree.
    pub fn swap_axes(&self, a: usize, b: usize) -> Result<SparseTensor<T>> {
        let order = self.shape.order();
        if a == 0 || a > order || b == 0 || b > order {
            return Err(Error::IndexOutOfRange {
                axis: a.max(b),
                component: 0,
                extent: order,
            });
        }
        if self.shape.extents()[a - 1] != self.shape.extents()[b - 1] {
            return Err(Error::ShapeMismatch {
                expected: format!("axis {a} and axis {b} with equal extents"),
                actual: self.shape.to_string(),
            });
        }
        let entries = self
            .entries
            .iter()
            .map(|(index, value)| {
                let mut components = index.components().to_vec();
                components.swap(a - 1, b - 1);
                (MultiIndex::new(components), value.clone())
            })
            .collect();
        SparseTensor::new(self.shape.clone(), entries)
    }

    /// Matrix-vector product for order-2 sparse tensors.
    pub fn matvec(&self, x: &[T]) -> Result<Vec<T>> {
        let (rows, cols) = self.matrix_extents()?;
        if x.len() != cols {
            return Err(Error::ShapeMismatch {
                expected: format!("vector of length {cols}"),
                actual: format!("length {}", x.len()),
            });
        }
        let mut out = vec![T::zero(); rows];
        for (index, value) in &self.entries {
            let row = index.components()[0];
            let col = index.components()[1];
            out[row - 1] = out[row - 1].clone() + value.clone() * x[col - 1].clone();
        }
        Ok(out)
    }

    /// Matrix product of two order-2 sparse tensors.
    pub fn matmul(&self, other: &SparseTensor<T>) -> Result<SparseTensor<T>> {
        let (rows, inner_left) = self.matrix_extents()?;
        let (inner_right, cols) = other.matrix_extents()?;
        if inner_left != inner_right {
            return Err(Error::ShapeMismatch {
                expected: format!("{inner_left} rows"),
                actual: format!("{inner_right} rows"),
            });
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &T)>> = BTreeMap::new();
        for (index, value) in &other.entries {
            by_row
                .entry(index.components()[0])
                .or_default()
                .push((index.components()[1], value));
        }
        let mut cells: BTreeMap<(usize, usize), T> = BTreeMap::new();
        for (index, left) in &self.entries {
            let i = index.components()[0];
            let k = index.components()[1];
            if let Some(row) = by_row.get(&k) {
                for &(j, right) in row {
                    let cell = cells.entry((j, i)).or_insert_with(T::zero);
                    *cell = cell.clone() + left.clone() * right.clone();
                }
            }
        }
        let entries = cells
            .into_iter()
            .map(|((j, i), v)| (MultiIndex::new(vec![i, j]), v))
            .collect();
        SparseTensor::new(Shape::new(vec![rows, cols])?, entries)
    }

    fn matrix_extents(&self) -> Result<(usize, usize)> {
        if self.shape.order() != 2 {
            return Err(Error::OrderMismatch {
                left: 2,
                right: self.shape.order(),
            });
        }
        Ok((self.shape.extents()[0], self.shape.extents()[1]))
    }
}

/// Standard basis column `u_i` of the reduced vectorization space: length
/// C(d+N-1, N) with a single 1 at the placement of `i`.
pub fn unit_u<T: Scalar>(index: &MonotoneIndex) -> Result<SparseTensor<T>> {
    let length = count_monotone(index.side(), index.order())?;
    let position = placement(index)?;
    SparseTensor::new(
        Shape::new(vec![length])?,
        vec![(MultiIndex::new(vec![position]), T::one())],
    )
}

/// Standard basis hypermatrix `E_i`: cubical of side d, a single 1 at `i`.
pub fn basis_e<T: Scalar>(side: usize, index: &MultiIndex) -> Result<SparseTensor<T>> {
    let shape = Shape::cubical(side, index.order())?;
    SparseTensor::new(shape, vec![(index.clone(), T::one())])
}

/// Symmetrized basis hypermatrix `T_i`: the sum of `E_j` over all distinct
/// rearrangements `j` of the monotone tuple `i`.
pub fn sym_t<T: Scalar>(index: &MonotoneIndex) -> Result<SparseTensor<T>> {
    let shape = Shape::cubical(index.side(), index.order())?;
    let entries = distinct_rearrangements(index.components())
        .into_iter()
        .map(|components| (MultiIndex::new(components), T::one()))
        .collect();
    SparseTensor::new(shape, entries)
}

/// All distinct rearrangements of a tuple, in lexicographic order.
pub fn distinct_rearrangements(components: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = components.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(sorted.clone());
        if !next_permutation(&mut sorted) {
            break;
        }
    }
    out
}

/// Elimination matrix of shape C(d+N-1, N) x d^N: row P(i) of `L` is
/// `hvec(E_i)` transposed, so `L hvec(A) = hvec_1n(A)` for symmetric `A`.
pub fn elimination_matrix<T: Scalar>(side: usize, order: usize) -> Result<SparseTensor<T>> {
    let rows = count_monotone(side, order)?;
    let cube = Shape::cubical(side, order)?;
    let mut entries = Vec::with_capacity(rows);
    for index in monotone_indices(side, order)? {
        let row = placement(&index)?;
        let col = cube.psi(&index.to_multi_index())?;
        entries.push((MultiIndex::new(vec![row, col]), T::one()));
    }
    SparseTensor::new(Shape::new(vec![rows, cube.element_count()])?, entries)
}

/// Duplication matrix of shape d^N x C(d+N-1, N): column P(i) of `D` is
/// `hvec(T_i)`, so `D hvec_1n(A) = hvec(A)` for symmetric `A` and `L D = I`.
pub fn duplication_matrix<T: Scalar>(side: usize, order: usize) -> Result<SparseTensor<T>> {
    let cols = count_monotone(side, order)?;
    let cube = Shape::cubical(side, order)?;
    let mut entries = Vec::with_capacity(cube.element_count());
    for index in monotone_indices(side, order)? {
        let col = placement(&index)?;
        for rearrangement in distinct_rearrangements(index.components()) {
            let row = cube.psi(&MultiIndex::new(rearrangement))?;
            entries.push((MultiIndex::new(vec![row, col]), T::one()));
        }
    }
    SparseTensor::new(Shape::new(vec![cube.element_count(), cols])?, entries)
}

/// Text dump of an order-2 sparse tensor: a header line
/// `kind d N rows cols nnz`, then one `row col value` line per nonzero in
/// row-major order.
pub fn triplet_dump<T: Scalar>(
    matrix: &SparseTensor<T>,
    kind: &str,
    side: usize,
    order: usize,
) -> Result<String> {
    let (rows, cols) = matrix.matrix_extents()?;
    let mut lines: Vec<(usize, usize, &T)> = matrix
        .entries()
        .iter()
        .map(|(index, value)| (index.components()[0], index.components()[1], value))
        .collect();
    lines.sort_by_key(|&(row, col, _)| (row, col));
    let mut out = String::new();
    writeln!(out, "{kind} {side} {order} {rows} {cols} {}", matrix.nnz()).unwrap();
    for (row, col, value) in lines {
        writeln!(out, "{row} {col} {value}").unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypermatrix::Hypermatrix;
    use crate::scalar::Rational;

    fn rat(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn mono(components: &[usize], side: usize) -> MonotoneIndex {
        MonotoneIndex::new(components.to_vec(), side).unwrap()
    }

    #[test]
    fn monotone_validation() {
        assert!(MonotoneIndex::new(vec![3, 2, 1], 3).is_ok());
        assert!(MonotoneIndex::new(vec![2, 2, 2], 3).is_ok());
        assert!(MonotoneIndex::new(vec![1, 2], 3).is_err());
        assert!(MonotoneIndex::new(vec![4, 1], 3).is_err());
        assert!(MonotoneIndex::new(vec![1, 0], 3).is_err());
        assert!(MonotoneIndex::new(vec![], 3).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(count_monotone(2, 2).unwrap(), 3);
        assert_eq!(count_monotone(2, 4).unwrap(), 5);
        assert_eq!(count_monotone(3, 3).unwrap(), 10);
        assert_eq!(count_monotone(3, 20).unwrap(), 231);
        assert_eq!(count_monotone(6, 2).unwrap(), 21);
    }

    #[test]
    fn placement_worked_examples() {
        assert_eq!(placement(&mono(&[1, 1, 1], 3)).unwrap(), 1);
        assert_eq!(placement(&mono(&[2, 2, 1], 3)).unwrap(), 4);
        assert_eq!(placement(&mono(&[3, 3, 3], 3)).unwrap(), 10);
        assert_eq!(placement(&mono(&[1, 1], 2)).unwrap(), 1);
        assert_eq!(placement(&mono(&[2, 1], 2)).unwrap(), 2);
        assert_eq!(placement(&mono(&[2, 2], 2)).unwrap(), 3);
    }

    #[test]
    fn enumeration_is_placement_order() {
        for (side, order) in [(2usize, 2usize), (3, 3), (4, 2), (2, 5), (5, 3)] {
            let indices = monotone_indices(side, order).unwrap();
            assert_eq!(indices.len(), count_monotone(side, order).unwrap());
            for (k, index) in indices.iter().enumerate() {
                assert_eq!(placement(index).unwrap(), k + 1, "at {index:?}");
            }
        }
    }

    #[test]
    fn enumeration_d3_n3_sequence() {
        let tuples: Vec<Vec<usize>> = monotone_indices(3, 3)
            .unwrap()
            .into_iter()
            .map(|m| m.components().to_vec())
            .collect();
        assert_eq!(
            tuples,
            vec![
                vec![1, 1, 1],
                vec![2, 1, 1],
                vec![3, 1, 1],
                vec![2, 2, 1],
                vec![3, 2, 1],
                vec![3, 3, 1],
                vec![2, 2, 2],
                vec![3, 2, 2],
                vec![3, 3, 2],
                vec![3, 3, 3],
            ]
        );
    }

    #[test]
    fn hvec_is_flat_data() {
        let shape = Shape::new(vec![2, 2]).unwrap();
        let a = Hypermatrix::new(shape, vec![rat(1), rat(2), rat(3), rat(4)]).unwrap();
        assert_eq!(hvec(&a), a.data().to_vec());
    }

    #[test]
    fn hvec_1n_reads_monotone_slots() {
        // Symmetric 2x2: a11 = 5, a21 = a12 = 7, a22 = 9.
        let shape = Shape::cubical(2, 2).unwrap();
        let a = Hypermatrix::new(shape, vec![rat(5), rat(7), rat(7), rat(9)]).unwrap();
        assert_eq!(hvec_1n(&a, 0.0).unwrap(), vec![rat(5), rat(7), rat(9)]);
    }

    #[test]
    fn hvec_1n_rejects_asymmetric() {
        let shape = Shape::cubical(2, 2).unwrap();
        let a = Hypermatrix::new(shape, vec![rat(5), rat(7), rat(8), rat(9)]).unwrap();
        assert!(matches!(
            hvec_1n(&a, 0.0),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn unit_u_position() {
        let u: SparseTensor<Rational> = unit_u(&mono(&[2, 2], 3)).unwrap();
        assert_eq!(u.shape().extents(), &[6]);
        assert_eq!(u.nnz(), 1);
        assert_eq!(u.entries()[0].0.components(), &[4]);
    }

    #[test]
    fn basis_e_is_psi_unit_vector() {
        let e: SparseTensor<Rational> =
            basis_e(3, &MultiIndex::new(vec![3, 2, 1])).unwrap();
        let dense = e.densify().unwrap();
        let flat = hvec(&dense);
        for (k, v) in flat.iter().enumerate() {
            let expected = if k + 1 == 6 { rat(1) } else { rat(0) };
            assert_eq!(v, &expected);
        }
    }

    #[test]
    fn sym_t_sums_distinct_rearrangements() {
        let t: SparseTensor<Rational> = sym_t(&mono(&[2, 1], 2)).unwrap();
        assert_eq!(t.nnz(), 2);
        let t3: SparseTensor<Rational> = sym_t(&mono(&[2, 2, 1], 3)).unwrap();
        assert_eq!(t3.nnz(), 3);
        let positions: Vec<Vec<usize>> = t3
            .entries()
            .iter()
            .map(|(i, _)| i.components().to_vec())
            .collect();
        assert!(positions.contains(&vec![2, 2, 1]));
        assert!(positions.contains(&vec![2, 1, 2]));
        assert!(positions.contains(&vec![1, 2, 2]));
        // Multiplicity count: 4! / (2! 1! 1!) rearrangements of (3,2,2,1).
        let t4: SparseTensor<Rational> = sym_t(&mono(&[3, 2, 2, 1], 3)).unwrap();
        assert_eq!(t4.nnz(), 12);
    }

    #[test]
    fn sym_t_partition_of_ones() {
        // Summing T_i over all monotone tuples gives the all-ones tensor.
        for (side, order) in [(2usize, 3usize), (3, 2), (2, 4)] {
            let shape = Shape::cubical(side, order).unwrap();
            let mut total = Hypermatrix::<Rational>::zeros(shape.clone());
            for index in monotone_indices(side, order).unwrap() {
                let t = sym_t::<Rational>(&index).unwrap().densify().unwrap();
                total = total.try_add(&t).unwrap();
            }
            assert!(total.data().iter().all(|v| v == &rat(1)));
        }
    }

    #[test]
    fn elimination_2_2_positions() {
        let l: SparseTensor<Rational> = elimination_matrix(2, 2).unwrap();
        assert_eq!(l.shape().extents(), &[3, 4]);
        let cells: Vec<(usize, usize)> = l
            .entries()
            .iter()
            .map(|(i, _)| (i.components()[0], i.components()[1]))
            .collect();
        let mut sorted = cells.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![(1, 1), (2, 2), (3, 4)]);
    }

    #[test]
    fn duplication_2_2_rows() {
        let d: SparseTensor<Rational> = duplication_matrix(2, 2).unwrap();
        assert_eq!(d.shape().extents(), &[4, 3]);
        let mut cells: Vec<(usize, usize)> = d
            .entries()
            .iter()
            .map(|(i, _)| (i.components()[0], i.components()[1]))
            .collect();
        cells.sort_unstable();
        assert_eq!(cells, vec![(1, 1), (2, 2), (3, 2), (4, 3)]);
    }

    #[test]
    fn elimination_times_duplication_is_identity() {
        for (side, order) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3), (2, 4)] {
            let l: SparseTensor<Rational> = elimination_matrix(side, order).unwrap();
            let d: SparseTensor<Rational> = duplication_matrix(side, order).unwrap();
            let product = l.matmul(&d).unwrap();
            let c = count_monotone(side, order).unwrap();
            let identity = SparseTensor::new(
                Shape::new(vec![c, c]).unwrap(),
                (1..=c)
                    .map(|k| (MultiIndex::new(vec![k, k]), rat(1)))
                    .collect(),
            )
            .unwrap();
            assert_eq!(product, identity);
        }
    }

    #[test]
    fn elimination_and_duplication_act_on_vectorizations() {
        // Symmetric 2x2x2 with distinct class values.
        let shape = Shape::cubical(2, 3).unwrap();
        let a = Hypermatrix::from_fn(shape, |i| {
            rat(i.components().iter().map(|&c| c as i64).product::<i64>() * 3 + 1)
        });
        assert!(a.is_symmetric(0.0).unwrap());
        let l: SparseTensor<Rational> = elimination_matrix(2, 3).unwrap();
        let d: SparseTensor<Rational> = duplication_matrix(2, 3).unwrap();
        let reduced = l.matvec(&hvec(&a)).unwrap();
        assert_eq!(reduced, hvec_1n(&a, 0.0).unwrap());
        let full = d.matvec(&reduced).unwrap();
        assert_eq!(full, hvec(&a));
    }

    #[test]
    fn one_nonzero_per_elimination_row_and_duplication_row() {
        let l: SparseTensor<Rational> = elimination_matrix(3, 3).unwrap();
        assert_eq!(l.nnz(), 10);
        let mut rows: Vec<usize> = l
            .entries()
            .iter()
            .map(|(i, _)| i.components()[0])
            .collect();
        rows.sort_unstable();
        rows.dedup();
        assert_eq!(rows.len(), 10);

        let d: SparseTensor<Rational> = duplication_matrix(3, 3).unwrap();
        assert_eq!(d.nnz(), 27);
        let mut drows: Vec<usize> = d
            .entries()
            .iter()
            .map(|(i, _)| i.components()[0])
            .collect();
        drows.sort_unstable();
        drows.dedup();
        assert_eq!(drows.len(), 27);
    }

    #[test]
    fn eq7_reconstruction_from_units() {
        // hvec_1n(A) equals the sum over monotone i of a_i u_i.
        let shape = Shape::cubical(3, 2).unwrap();
        let a = Hypermatrix::from_fn(shape, |i| {
            let c = i.components();
            rat((c[0] * c[1]) as i64)
        });
        let reduced = hvec_1n(&a, 0.0).unwrap();
        let mut reconstructed = vec![rat(0); reduced.len()];
        for index in monotone_indices(3, 2).unwrap() {
            let coefficient = a.get(&index.to_multi_index()).unwrap().clone();
            let u: SparseTensor<Rational> = unit_u(&index).unwrap();
            for (position, value) in u.entries() {
                let slot = position.components()[0] - 1;
                reconstructed[slot] =
                    reconstructed[slot].clone() + coefficient.clone() * value.clone();
            }
        }
        assert_eq!(reconstructed, reduced);
    }

    #[test]
    fn sparse_constructor_rules() {
        let shape = Shape::new(vec![2, 2]).unwrap();
        // Zeros are dropped.
        let t = SparseTensor::new(
            shape.clone(),
            vec![
                (MultiIndex::new(vec![1, 1]), rat(0)),
                (MultiIndex::new(vec![2, 1]), rat(5)),
            ],
        )
        .unwrap();
        assert_eq!(t.nnz(), 1);
        // Duplicates are rejected.
        let dup = SparseTensor::new(
            shape.clone(),
            vec![
                (MultiIndex::new(vec![1, 1]), rat(1)),
                (MultiIndex::new(vec![1, 1]), rat(2)),
            ],
        );
        assert!(matches!(dup, Err(Error::DuplicateSparseIndex { .. })));
        // Out-of-range indices are rejected.
        let bad = SparseTensor::new(
            shape,
            vec![(MultiIndex::new(vec![3, 1]), rat(1))],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn triplet_dump_format() {
        let l: SparseTensor<Rational> = elimination_matrix(2, 2).unwrap();
        let dump = triplet_dump(&l, "elimination", 2, 2).unwrap();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines[0], "elimination 2 2 3 4 3");
        assert_eq!(lines[1], "1 1 1");
        assert_eq!(lines[2], "2 2 1");
        assert_eq!(lines[3], "3 4 1");
    }

    #[test]
    fn swap_axes_on_sparse() {
        let shape = Shape::cubical(3, 2).unwrap();
        let t = SparseTensor::new(
            shape,
            vec![(MultiIndex::new(vec![1, 2]), rat(7))],
        )
        .unwrap();
        let swapped = t.swap_axes(1, 2).unwrap();
        assert_eq!(swapped.entries()[0].0.components(), &[2, 1]);
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(
            count_monotone(usize::MAX / 2, 80),
            Err(Error::SizeOverflow { .. })
        ));
    }
}
