//! Permutations of `1..=n` with sign, composition, and enumeration.

use crate::error::{Error, Result};
use std::fmt;

/// A permutation of `1..=n`, stored as its sequence of images: entry `k-1`
/// holds the image of `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation {
                degree: 0,
                detail: "empty image list".into(),
            });
        }
        let mut seen = vec![false; n];
        for &image in &images {
            if image == 0 || image > n {
                return Err(Error::InvalidPermutation {
                    degree: n,
                    detail: format!("image {image} out of range"),
                });
            }
            if seen[image - 1] {
                return Err(Error::InvalidPermutation {
                    degree: n,
                    detail: format!("image {image} repeats"),
                });
            }
            seen[image - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The order-reversing permutation `k -> n + 1 - k`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || a > n || b == 0 || b > n {
            return Err(Error::InvalidPermutation {
                degree: n,
                detail: format!("transposition ({a} {b}) out of range"),
            });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `k`, with `k` in `1..=degree`.
    pub fn image(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v - 1] = k + 1;
        }
        Permutation { images }
    }

    /// Composition `(self ∘ inner)(k) = self(inner(k))`; `inner` acts first.
    pub fn compose(&self, inner: &Permutation) -> Result<Self> {
        if self.degree() != inner.degree() {
            return Err(Error::OrderMismatch {
                left: self.degree(),
                right: inner.degree(),
            });
        }
        let images = inner.images.iter().map(|&v| self.images[v - 1]).collect();
        Ok(Permutation { images })
    }

    /// Sign of the permutation: `+1` or `-1` by cycle parity.
    pub fn sign(&self) -> i8 {
        sign_of(&self.images)
    }

    /// All permutations of `1..=n` in lexicographic order of their images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut out = Vec::new();
        loop {
            out.push(Permutation {
                images: images.clone(),
            });
            if !next_permutation(&mut images) {
                break;
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, image) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{image}")?;
        }
        write!(f, ")")
    }
}

/// Sign of an arbitrary permutation given as images of `1..=n`, by cycle
/// decomposition: each cycle of length L contributes `(-1)^(L-1)`.
pub fn sign_of(images: &[usize]) -> i8 {
    let n = images.len();
    let mut visited = vec![false; n];
    let mut sign = 1i8;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut length = 0usize;
        let mut k = start;
        while !visited[k] {
            visited[k] = true;
            k = images[k] - 1;
            length += 1;
        }
        if length.is_multiple_of(2) {
            sign = -sign;
        }
    }
    sign
}

/// Checked factorial.
pub fn factorial(n: usize) -> Result<u128> {
    let mut acc: u128 = 1;
    for k in 2..=n as u128 {
        acc = acc.checked_mul(k).ok_or_else(|| Error::SizeOverflow {
            what: format!("factorial of {n}"),
        })?;
    }
    Ok(acc)
}

/// Advances `arr` to its next lexicographic rearrangement, returning `false`
/// once the greatest arrangement has been passed. Duplicate values are
/// visited once per distinct arrangement.
pub fn next_permutation(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}
