//! Hermitian adjacency matrices and their exact characteristic polynomials.
//!
//! Convention: entry `(u, v)` is `1` for an edge `{u, v}`, `i` for an arc
//! `u → v`, `-i` for an arc `v → u` and `0` otherwise. Reversing every arc
//! swaps `i` and `-i`, so the matrix of the converse is the transpose of the
//! original (for a Hermitian matrix, the same as its entrywise conjugate). A
//! matrix and its transpose share a characteristic polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::MixedGraph;

/// Default bound on the matrix dimension.
pub const DIMENSION_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {n} exceeds the limit {limit}")]
    DimensionLimit { n: usize, limit: usize },
    #[error("expected {expected} entries for an {n}x{n} matrix, got {got}")]
    EntryCount {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("entry ({0}, {1}) is not the conjugate of entry ({1}, {0})")]
    NotHermitian(usize, usize),
    #[error("diagonal entry ({0}, {0}) is nonzero")]
    NonzeroDiagonal(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|^2`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Zero for GaussianInt {
    fn zero() -> Self {
        Self::new(0, 0)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianInt {
    fn one() -> Self {
        Self::new(1, 0)
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: GaussianInt) -> GaussianInt {
        &self + &rhs
    }
}

impl<'a> Add<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        &self * &rhs
    }
}

impl<'a> Mul<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => write!(f, "{}{:+}i", self.re, self.im),
        }
    }
}

/// Square matrix over the Gaussian integers equal to its conjugate
/// transpose, with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianMatrix {
    n: usize,
    entries: Vec<GaussianInt>,
}

impl HermitianMatrix {
    /// Row-major entries.
    pub fn new(n: usize, entries: Vec<GaussianInt>) -> Result<Self, SpectralError> {
        if entries.len() != n * n {
            return Err(SpectralError::EntryCount {
                n,
                expected: n * n,
                got: entries.len(),
            });
        }
        let m = Self { n, entries };
        for u in 0..n {
            if !m.entry(u, u).is_zero() {
                return Err(SpectralError::NonzeroDiagonal(u));
            }
            for v in u + 1..n {
                if *m.entry(u, v) != m.entry(v, u).conj() {
                    return Err(SpectralError::NotHermitian(u, v));
                }
            }
        }
        Ok(m)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> &GaussianInt {
        &self.entries[row * self.n + col]
    }

    pub fn transpose(&self) -> HermitianMatrix {
        let n = self.n;
        let entries = (0..n * n)
            .map(|k| self.entry(k % n, k / n).clone())
            .collect();
        HermitianMatrix { n, entries }
    }

    pub fn conjugate(&self) -> HermitianMatrix {
        HermitianMatrix {
            n: self.n,
            entries: self.entries.iter().map(GaussianInt::conj).collect(),
        }
    }

    /// Equal to `self` for every valid matrix.
    pub fn conjugate_transpose(&self) -> HermitianMatrix {
        self.transpose().conjugate()
    }
}

pub fn hermitian_adjacency(x: &MixedGraph) -> HermitianMatrix {
    let n = x.order();
    let mut entries = vec![GaussianInt::zero(); n * n];
    for (u, v) in x.edges() {
        entries[u * n + v] = GaussianInt::one();
        entries[v * n + u] = GaussianInt::one();
    }
    for (u, v) in x.arcs() {
        entries[u * n + v] = GaussianInt::new(0, 1);
        entries[v * n + u] = GaussianInt::new(0, -1);
    }
    HermitianMatrix { n, entries }
}

/// Integer coefficients `c_0, .., c_n` of `det(xI - H)`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

/// `[c_0, c_1, ..]`.
impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

pub fn char_poly(h: &HermitianMatrix) -> Result<CharPoly, SpectralError> {
    char_poly_with_limit(h, DIMENSION_LIMIT)
}

/// Berkowitz's division-free algorithm: exact over any commutative ring.
///
/// Peels the matrix as `[[a, R], [C, A']]` from the top-left corner. Each
/// peel contributes a lower-triangular Toeplitz matrix whose first column is
/// `1, -a, -R·C, -R·A'·C, -R·A'^2·C, ..`; their product applied to the
/// polynomial of the last 1x1 block yields `det(xI - H)`.
pub fn char_poly_with_limit(h: &HermitianMatrix, limit: usize) -> Result<CharPoly, SpectralError> {
    let n = h.n;
    if n > limit {
        return Err(SpectralError::DimensionLimit { n, limit });
    }
    if n == 0 {
        return Ok(CharPoly {
            coeffs: vec![BigInt::one()],
        });
    }

    // Coefficients highest degree first, starting from the bottom-right 1x1 block.
    let last = n - 1;
    let mut poly = vec![GaussianInt::one(), -h.entry(last, last)];
    for k in (0..last).rev() {
        // Current block is rows/cols k..n; size m = n - k.
        let m = n - k;
        let a = h.entry(k, k);
        let column: Vec<GaussianInt> = (k + 1..n).map(|r| h.entry(r, k).clone()).collect();
        let mut first = Vec::with_capacity(m + 1);
        first.push(GaussianInt::one());
        first.push(-a);
        let mut power = column;
        for step in 0..m - 1 {
            let rc = (k + 1..n)
                .zip(&power)
                .fold(GaussianInt::zero(), |acc, (c, p)| acc + h.entry(k, c) * p);
            first.push(-&rc);
            if step + 1 < m - 1 {
                power = (k + 1..n)
                    .map(|r| {
                        (k + 1..n)
                            .zip(&power)
                            .fold(GaussianInt::zero(), |acc, (c, p)| acc + h.entry(r, c) * p)
                    })
                    .collect();
            }
        }
        // (m + 1) x m Toeplitz times poly (length m).
        poly = (0..=m)
            .map(|row| {
                (0..m.min(row + 1)).fold(GaussianInt::zero(), |acc, col| {
                    acc + &first[row - col] * &poly[col]
                })
            })
            .collect();
    }

    let coeffs = poly
        .into_iter()
        .rev()
        .map(|c| {
            assert!(
                c.im.is_zero(),
                "characteristic polynomial of a Hermitian matrix has a non-real coefficient {c}"
            );
            c.re
        })
        .collect();
    Ok(CharPoly { coeffs })
}

pub fn mixed_char_poly(x: &MixedGraph) -> Result<CharPoly, SpectralError> {
    char_poly(&hermitian_adjacency(x))
}

/// Compares exact characteristic polynomials of the Hermitian adjacency matrices.
pub fn are_cospectral(x: &MixedGraph, y: &MixedGraph) -> Result<bool, SpectralError> {
    if x.order() != y.order() {
        return Err(SpectralError::DimensionMismatch(x.order(), y.order()));
    }
    Ok(mixed_char_poly(x)? == mixed_char_poly(y)?)
}
