//! Permutations of `{0, .., n-1}`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("image {image} is out of range for a permutation of {n} points")]
    OutOfRange { image: usize, n: usize },
    #[error("image {0} occurs more than once")]
    Repeated(usize),
    #[error("cannot compose permutations of {0} and {1} points")]
    LengthMismatch(usize, usize),
}

/// A bijection on `{0, .., n-1}`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermutationError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &image in &images {
            if image >= n {
                return Err(PermutationError::OutOfRange { image, n });
            }
            if seen[image] {
                return Err(PermutationError::Repeated(image));
            }
            seen[image] = true;
        }
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Exchanges `a` and `b`, fixing everything else.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Self { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Number of points not fixed.
    pub fn moved_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i != v)
            .count()
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermutationError> {
        if self.len() != other.len() {
            return Err(PermutationError::LengthMismatch(self.len(), other.len()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// Disjoint cycles, each starting at its smallest point, ordered by that point.
    /// Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut cycles = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.images[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.images[next];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermutationError;

    fn try_from(images: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

/// Cycle notation without fixed points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
