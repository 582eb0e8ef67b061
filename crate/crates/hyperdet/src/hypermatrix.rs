//! Dense hypermatrices and the operations of multilinear algebra.
//!
//! A hypermatrix of order N with shape `n_1 x ... x n_N` is stored flat in
//! psi-linearized order: the multi-index `(i_1, ..., i_N)`, all components
//! 1-based, lives at position
//!
//! ```text
//! psi(i) = i_1 + n_1 (i_2 - 1) + n_1 n_2 (i_3 - 1) + ... + n_1 ... n_{N-1} (i_N - 1)
//! ```
//!
//! so the first axis varies fastest. Order-2 hypermatrices under this layout
//! are column-major matrices.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::{check_tolerance, Scalar};
use std::cmp::Ordering;
use std::fmt;

/// The extents of a hypermatrix, one per axis, each at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    extents: Vec<usize>,
    element_count: usize,
}

impl Shape {
    pub fn new(extents: Vec<usize>) -> Result<Self> {
        if extents.is_empty() {
            return Err(Error::ShapeMismatch {
                expected: "at least one axis".into(),
                actual: "no axes".into(),
            });
        }
        let mut element_count = 1usize;
        for (axis, &extent) in extents.iter().enumerate() {
            if extent == 0 {
                return Err(Error::IndexOutOfRange {
                    axis: axis + 1,
                    component: 0,
                    extent: 0,
                });
            }
            element_count = element_count.checked_mul(extent).ok_or_else(|| {
                Error::SizeOverflow {
                    what: format!("element count of shape {}", format_extents(&extents)),
                }
            })?;
        }
        Ok(Shape {
            extents,
            element_count,
        })
    }

    /// Shape with `order` axes of equal extent `side`.
    pub fn cubical(side: usize, order: usize) -> Result<Self> {
        Shape::new(vec![side; order])
    }

    pub fn order(&self) -> usize {
        self.extents.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    /// Total number of entries.
    pub fn element_count(&self) -> usize {
        self.element_count
    }

    /// The common extent when all axes agree, `None` otherwise.
    pub fn cubical_side(&self) -> Option<usize> {
        let side = self.extents[0];
        self.extents.iter().all(|&e| e == side).then_some(side)
    }

    pub fn validate_index(&self, index: &MultiIndex) -> Result<()> {
        if index.order() != self.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: index.order(),
            });
        }
        for (axis, (&component, &extent)) in index
            .components()
            .iter()
            .zip(self.extents.iter())
            .enumerate()
        {
            if component == 0 || component > extent {
                return Err(Error::IndexOutOfRange {
                    axis: axis + 1,
                    component,
                    extent,
                });
            }
        }
        Ok(())
    }

    /// Psi-linearized position of `index`, 1-based.
    pub fn psi(&self, index: &MultiIndex) -> Result<usize> {
        self.validate_index(index)?;
        Ok(self.psi_unchecked(index.components()))
    }

    fn psi_unchecked(&self, components: &[usize]) -> usize {
        let mut position = 0usize;
        let mut stride = 1usize;
        for (&component, &extent) in components.iter().zip(self.extents.iter()) {
            position += (component - 1) * stride;
            stride *= extent;
        }
        position + 1
    }

    /// Multi-index at 1-based psi-linearized position `position`.
    pub fn index_at(&self, position: usize) -> Result<MultiIndex> {
        if position == 0 || position > self.element_count {
            return Err(Error::IndexOutOfRange {
                axis: 0,
                component: position,
                extent: self.element_count,
            });
        }
        let mut rest = position - 1;
        let components = self
            .extents
            .iter()
            .map(|&extent| {
                let component = rest % extent + 1;
                rest /= extent;
                component
            })
            .collect();
        Ok(MultiIndex::new(components))
    }

    /// Iterates all multi-indices in psi order (first axis fastest).
    pub fn indices(&self) -> IndexIter<'_> {
        IndexIter {
            shape: self,
            next: Some(vec![1; self.order()]),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_extents(&self.extents))
    }
}

fn format_extents(extents: &[usize]) -> String {
    extents
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join("x")
}

/// A 1-based multi-index `(i_1, ..., i_N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    components: Vec<usize>,
}

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Self {
        MultiIndex { components }
    }

    pub fn order(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn into_components(self) -> Vec<usize> {
        self.components
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Compares index tuples by their psi order without computing psi itself:
/// the last component is most significant.
pub fn psi_cmp(a: &[usize], b: &[usize]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

pub struct IndexIter<'a> {
    shape: &'a Shape,
    next: Option<Vec<usize>>,
}

impl Iterator for IndexIter<'_> {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let current = self.next.take()?;
        let mut advanced = current.clone();
        let mut axis = 0;
        loop {
            if axis == advanced.len() {
                self.next = None;
                break;
            }
            if advanced[axis] < self.shape.extents[axis] {
                advanced[axis] += 1;
                self.next = Some(advanced);
                break;
            }
            advanced[axis] = 1;
            axis += 1;
        }
        Some(MultiIndex::new(current))
    }
}

/// A dense hypermatrix over scalar type `T`, stored in psi order.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypermatrix<T> {
    shape: Shape,
    data: Vec<T>,
}

impl<T: Scalar> Hypermatrix<T> {
    /// Wraps a flat data buffer already in psi order.
    pub fn new(shape: Shape, data: Vec<T>) -> Result<Self> {
        if data.len() != shape.element_count() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries for shape {shape}", shape.element_count()),
                actual: format!("{} entries", data.len()),
            });
        }
        for (position, value) in data.iter().enumerate() {
            if !value.is_admissible() {
                return Err(Error::NonFinite { position });
            }
        }
        Ok(Hypermatrix { shape, data })
    }

    pub fn zeros(shape: Shape) -> Self {
        let data = vec![T::zero(); shape.element_count()];
        Hypermatrix { shape, data }
    }

    pub fn from_fn(shape: Shape, mut f: impl FnMut(&MultiIndex) -> T) -> Self {
        let mut data = Vec::with_capacity(shape.element_count());
        for index in shape.indices() {
            data.push(f(&index));
        }
        Hypermatrix { shape, data }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    /// Flat entries in psi order. This buffer coincides with the
    /// vectorization of the hypermatrix.
    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn get(&self, index: &MultiIndex) -> Result<&T> {
        let position = self.shape.psi(index)?;
        Ok(&self.data[position - 1])
    }

    pub fn set(&mut self, index: &MultiIndex, value: T) -> Result<()> {
        let position = self.shape.psi(index)?;
        self.data[position - 1] = value;
        Ok(())
    }

    /// Extent shared by all axes; errors when the shape is not cubical.
    pub fn cubical_side(&self) -> Result<usize> {
        self.shape.cubical_side().ok_or_else(|| Error::NonCubical {
            shape: self.shape.to_string(),
        })
    }

    /// The entry of a 1 x ... x 1 hypermatrix.
    pub fn to_scalar(&self) -> Result<T> {
        if self.shape.element_count() != 1 {
            return Err(Error::ShapeMismatch {
                expected: "shape 1x...x1".into(),
                actual: self.shape.to_string(),
            });
        }
        Ok(self.data[0].clone())
    }

    /// Multilinear multiplication by one matrix per axis: for factor
    /// matrices `X_k` of shape `n_k x m_k`,
    ///
    /// ```text
    /// (A * (X_1, ..., X_N))_{j_1 ... j_N}
    ///     = sum_{i_1 ... i_N} a_{i_1 ... i_N} (X_1)_{i_1 j_1} ... (X_N)_{i_N j_N}
    /// ```
    ///
    /// and the result has shape `m_1 x ... x m_N`.
    pub fn multilinear_multiply(&self, factors: &[Matrix<T>]) -> Result<Hypermatrix<T>> {
        if factors.len() != self.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: factors.len(),
            });
        }
        for (axis, factor) in factors.iter().enumerate() {
            if factor.rows() != self.shape.extents()[axis] {
                return Err(Error::ShapeMismatch {
                    expected: format!(
                        "factor for axis {} with {} rows",
                        axis + 1,
                        self.shape.extents()[axis]
                    ),
                    actual: format!("{} rows", factor.rows()),
                });
            }
        }
        let out_shape = Shape::new(factors.iter().map(Matrix::cols).collect())?;
        let mut out_data = Vec::with_capacity(out_shape.element_count());
        for out_index in out_shape.indices() {
            let mut acc = T::zero();
            for (position, in_index) in self.shape.indices().enumerate() {
                let mut term = self.data[position].clone();
                for (axis, factor) in factors.iter().enumerate() {
                    term = term
                        * factor
                            .get(in_index.components()[axis], out_index.components()[axis])
                            .clone();
                }
                acc = acc + term;
            }
            out_data.push(acc);
        }
        Ok(Hypermatrix {
            shape: out_shape,
            data: out_data,
        })
    }

    /// Contraction against one column vector per axis, yielding a scalar.
    pub fn contract_vectors(&self, vectors: &[Vec<T>]) -> Result<T> {
        let factors: Vec<Matrix<T>> = vectors
            .iter()
            .map(|v| Matrix::column(v.clone()))
            .collect::<Result<_>>()?;
        self.multilinear_multiply(&factors)?.to_scalar()
    }

    /// Kronecker product of two hypermatrices of equal order. For shapes
    /// `m_1 x ... x m_N` and `n_1 x ... x n_N` the result has extents
    /// `m_k n_k` and entries `(A ⊗ B)_{r} = a_i b_j` where
    /// `r_k = (i_k - 1) n_k + j_k`.
    pub fn kron(&self, other: &Hypermatrix<T>) -> Result<Hypermatrix<T>> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        let out_extents = self
            .shape
            .extents()
            .iter()
            .zip(other.shape.extents())
            .map(|(&m, &n)| {
                m.checked_mul(n).ok_or_else(|| Error::SizeOverflow {
                    what: format!("Kronecker extent {m} * {n}"),
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        let out_shape = Shape::new(out_extents)?;
        let other_extents = other.shape.extents().to_vec();
        let mut left_components = vec![0usize; self.order()];
        let mut right_components = vec![0usize; self.order()];
        let result = Hypermatrix::from_fn(out_shape, |r| {
            for (axis, &component) in r.components().iter().enumerate() {
                let n = other_extents[axis];
                left_components[axis] = (component - 1) / n + 1;
                right_components[axis] = (component - 1) % n + 1;
            }
            let left = self.shape.psi_unchecked(&left_components);
            let right = other.shape.psi_unchecked(&right_components);
            self.data[left - 1].clone() * other.data[right - 1].clone()
        });
        Ok(result)
    }

    /// Axis permutation: the result `B` satisfies
    /// `b_{i_1 ... i_N} = a_{i_{pi(1)} ... i_{pi(N)}}`.
    pub fn transpose(&self, pi: &Permutation) -> Result<Hypermatrix<T>> {
        if pi.degree() != self.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: pi.degree(),
            });
        }
        let inverse = pi.inverse();
        let out_extents: Vec<usize> = (1..=self.order())
            .map(|k| self.shape.extents()[inverse.image(k) - 1])
            .collect();
        let out_shape = Shape::new(out_extents)?;
        let mut source = vec![0usize; self.order()];
        let result = Hypermatrix::from_fn(out_shape, |index| {
            for k in 1..=self.order() {
                source[k - 1] = index.components()[pi.image(k) - 1];
            }
            let position = self.shape.psi_unchecked(&source);
            self.data[position - 1].clone()
        });
        Ok(result)
    }

    /// Transpose under the order-reversing permutation, so axis k of the
    /// result is axis N+1-k of the input.
    pub fn generalized_transpose(&self) -> Hypermatrix<T> {
        self.transpose(&Permutation::reversal(self.order()))
            .expect("reversal degree always matches")
    }

    /// Whether every entry is invariant under all axis transpositions,
    /// compared within `tolerance`. Requires a cubical shape; the exact
    /// backend requires tolerance 0.
    pub fn is_symmetric(&self, tolerance: f64) -> Result<bool> {
        Ok(self.symmetry_witness(tolerance)?.is_none())
    }

    /// First violation of symmetry, if any, scanning adjacent-axis swaps in
    /// psi order. Swaps of adjacent axes generate all axis permutations, so
    /// a clean scan certifies full symmetry in (N-1) d^N comparisons.
    pub fn symmetry_witness(&self, tolerance: f64) -> Result<Option<SymmetryWitness<T>>> {
        check_tolerance::<T>(tolerance)?;
        self.cubical_side()?;
        let order = self.order();
        let mut swapped = vec![0usize; order];
        for axis in 0..order.saturating_sub(1) {
            for (position, index) in self.shape.indices().enumerate() {
                swapped.copy_from_slice(index.components());
                swapped.swap(axis, axis + 1);
                let swapped_position = self.shape.psi_unchecked(&swapped);
                let value = &self.data[position];
                let other = &self.data[swapped_position - 1];
                if !value.within(other, tolerance) {
                    return Ok(Some(SymmetryWitness {
                        index,
                        swapped: MultiIndex::new(swapped),
                        value: value.clone(),
                        swapped_value: other.clone(),
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Entrywise scaling by `factor`.
    pub fn scaled(&self, factor: &T) -> Hypermatrix<T> {
        Hypermatrix {
            shape: self.shape.clone(),
            data: self
                .data
                .iter()
                .map(|v| v.clone() * factor.clone())
                .collect(),
        }
    }

    /// Entrywise sum of two hypermatrices of equal shape.
    pub fn try_add(&self, other: &Hypermatrix<T>) -> Result<Hypermatrix<T>> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                expected: self.shape.to_string(),
                actual: other.shape.to_string(),
            });
        }
        Ok(Hypermatrix {
            shape: self.shape.clone(),
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }
}

/// A symmetry violation: two entries that should agree but do not.
#[derive(Debug, Clone)]
pub struct SymmetryWitness<T> {
    pub index: MultiIndex,
    pub swapped: MultiIndex,
    pub value: T,
    pub swapped_value: T,
}

impl<T: Scalar> SymmetryWitness<T> {
    pub fn into_error(self, tolerance: f64) -> Error {
        let difference = (self.value.clone() - self.swapped_value.clone()).magnitude();
        Error::NotSymmetric {
            index: self.index.components().to_vec(),
            swapped: self.swapped.components().to_vec(),
            value: self.value.display_full(),
            swapped_value: self.swapped_value.display_full(),
            difference,
            tolerance,
        }
    }
}

/// A dense row-major matrix used as a multilinear factor.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch {
                expected: "at least one row and one column".into(),
                actual: format!("{rows}x{cols}"),
            });
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries for {rows}x{cols}", rows * cols),
                actual: format!("{} entries", data.len()),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let row_count = rows.len();
        let col_count = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != col_count) {
            return Err(Error::ShapeMismatch {
                expected: format!("{col_count} entries per row"),
                actual: "ragged rows".into(),
            });
        }
        Matrix::new(row_count, col_count, rows.into_iter().flatten().collect())
    }

    pub fn column(entries: Vec<T>) -> Result<Self> {
        let rows = entries.len();
        Matrix::new(rows, 1, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for k in 0..n {
            data[k * n + k] = T::one();
        }
        Matrix {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 1-based row and column.
    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.data[(row - 1) * self.cols + (col - 1)]
    }

    pub fn matmul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                expected: format!("{} rows", self.cols),
                actual: format!("{} rows", other.rows),
            });
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 1..=self.rows {
            for j in 1..=other.cols {
                let mut acc = T::zero();
                for k in 1..=self.cols {
                    acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
                }
                data.push(acc);
            }
        }
        Matrix::new(self.rows, other.cols, data)
    }

    pub fn kron(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        let rows = self
            .rows
            .checked_mul(other.rows)
            .ok_or_else(|| Error::SizeOverflow {
                what: "Kronecker row count".into(),
            })?;
        let cols = self
            .cols
            .checked_mul(other.cols)
            .ok_or_else(|| Error::SizeOverflow {
                what: "Kronecker column count".into(),
            })?;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 1..=rows {
            let i = (r - 1) / other.rows + 1;
            let p = (r - 1) % other.rows + 1;
            for c in 1..=cols {
                let j = (c - 1) / other.cols + 1;
                let q = (c - 1) % other.cols + 1;
                data.push(self.get(i, j).clone() * other.get(p, q).clone());
            }
        }
        Matrix::new(rows, cols, data)
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 1..=self.cols {
            for r in 1..=self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }
}
