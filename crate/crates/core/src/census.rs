//! Exact counts of unlabeled mixed graphs and of unlabeled self-converse
//! mixed graphs, by Burnside's lemma over the cycle types of `S_n`.
//!
//! A permutation `f` of the vertices permutes the `C(n, 2)` unordered pairs.
//! Each pair orbit either returns every pair to itself with its endpoints in
//! place ("non-swapping") or with its endpoints exchanged ("swapping"). A
//! labeled mixed graph is fixed by `f` iff its pair states are constant along
//! each orbit up to that closing twist, giving 4 choices per non-swapping
//! orbit and 2 per swapping orbit (only non-adjacent and edge survive an
//! endpoint exchange).
//!
//! Counting graphs with `f(X) = converse(X)` composes each step around an
//! orbit with arc reversal. An orbit of length `L` closes with `L` reversals
//! plus one more if it is swapping, so all 4 states survive when that total is
//! even and only the 2 undirected states when it is odd. Averaging over `S_n`
//! gives the number of isomorphism classes fixed by the converse.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::partition::{factorial, partitions, Partition};

/// Default upper bound on `n` for census computations.
pub const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("order {n} exceeds the configured limit {limit}")]
    OrderLimit { n: usize, limit: usize },
}

/// Orbits of the pair permutation induced by one cycle type, as
/// `(length, swapping) -> number of orbits`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairOrbitProfile {
    orbits: BTreeMap<(usize, bool), usize>,
}

impl PairOrbitProfile {
    fn add(&mut self, length: usize, swapping: bool, count: usize) {
        if count > 0 {
            *self.orbits.entry((length, swapping)).or_insert(0) += count;
        }
    }

    /// `((length, swapping), multiplicity)` in ascending key order.
    pub fn orbits(&self) -> impl Iterator<Item = ((usize, bool), usize)> + '_ {
        self.orbits.iter().map(|(&k, &m)| (k, m))
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.values().sum()
    }

    /// Number of pairs covered; `C(n, 2)` for a partition of `n`.
    pub fn total_length(&self) -> usize {
        self.orbits.iter().map(|(&(len, _), &m)| len * m).sum()
    }

    /// log2 of the number of labeled mixed graphs fixed by the class.
    pub fn fixed_exponent_mixed(&self) -> u64 {
        self.orbits
            .iter()
            .map(|(&(_, swapping), &m)| m as u64 * if swapping { 1 } else { 2 })
            .sum()
    }

    /// log2 of the number of labeled mixed graphs sent to their converse.
    pub fn fixed_exponent_selfconverse(&self) -> u64 {
        self.orbits
            .iter()
            .map(|(&(len, swapping), &m)| {
                let reversals = len + usize::from(swapping);
                m as u64 * if reversals % 2 == 0 { 2 } else { 1 }
            })
            .sum()
    }
}

pub fn pair_orbit_profile(cycle_type: &Partition) -> PairOrbitProfile {
    let mut profile = PairOrbitProfile::default();
    let groups = cycle_type.multiplicities();
    for (i, &(c, m)) in groups.iter().enumerate() {
        // pairs inside one c-cycle
        if c % 2 == 1 {
            profile.add(c, false, m * (c - 1) / 2);
        } else {
            profile.add(c, false, m * (c / 2 - 1));
            profile.add(c / 2, true, m);
        }
        // pairs between two distinct c-cycles
        profile.add(c, false, m * (m - 1) / 2 * c);
        // pairs between a c-cycle and a d-cycle, c > d
        for &(d, k) in &groups[i + 1..] {
            profile.add(c.lcm(&d), false, m * k * c.gcd(&d));
        }
    }
    profile
}

pub fn fixed_count_mixed(cycle_type: &Partition) -> BigUint {
    BigUint::one() << pair_orbit_profile(cycle_type).fixed_exponent_mixed()
}

pub fn fixed_count_selfconverse(cycle_type: &Partition) -> BigUint {
    BigUint::one() << pair_orbit_profile(cycle_type).fixed_exponent_selfconverse()
}

/// Census settings; only the order guard is configurable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    pub max_order: usize,
}

impl Default for Census {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl Census {
    pub fn new(max_order: usize) -> Self {
        Self { max_order }
    }

    fn check(&self, n: usize) -> Result<(), CensusError> {
        if n == 0 {
            Err(CensusError::ZeroOrder)
        } else if n > self.max_order {
            Err(CensusError::OrderLimit {
                n,
                limit: self.max_order,
            })
        } else {
            Ok(())
        }
    }

    fn orbit_average(&self, n: usize, exponent: impl Fn(&PairOrbitProfile) -> u64) -> BigUint {
        let total: BigUint = partitions(n)
            .map(|lambda| lambda.conjugacy_class_size() << exponent(&pair_orbit_profile(&lambda)))
            .sum();
        let (quotient, remainder) = total.div_rem(&factorial(n));
        assert!(remainder.is_zero(), "Burnside sum not divisible by n!");
        quotient
    }

    /// M(n): mixed graphs on `n` vertices up to isomorphism.
    pub fn count_mixed_graphs(&self, n: usize) -> Result<BigUint, CensusError> {
        self.check(n)?;
        Ok(self.orbit_average(n, PairOrbitProfile::fixed_exponent_mixed))
    }

    /// S(n): self-converse mixed graphs on `n` vertices up to isomorphism.
    pub fn count_selfconverse(&self, n: usize) -> Result<BigUint, CensusError> {
        self.check(n)?;
        Ok(self.orbit_average(n, PairOrbitProfile::fixed_exponent_selfconverse))
    }

    pub fn selfconverse_fraction(&self, n: usize) -> Result<CensusResult, CensusError> {
        let mixed_count = self.count_mixed_graphs(n)?;
        let selfconverse_count = self.count_selfconverse(n)?;
        Ok(CensusResult::new(n, mixed_count, selfconverse_count))
    }
}

pub fn count_mixed_graphs(n: usize) -> Result<BigUint, CensusError> {
    Census::default().count_mixed_graphs(n)
}

pub fn count_selfconverse(n: usize) -> Result<BigUint, CensusError> {
    Census::default().count_selfconverse(n)
}

pub fn selfconverse_fraction(n: usize) -> Result<CensusResult, CensusError> {
    Census::default().selfconverse_fraction(n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub n: usize,
    pub mixed_count: BigUint,
    pub selfconverse_count: BigUint,
    /// `S(n) / M(n)` in lowest terms.
    pub fraction: BigRational,
}

impl CensusResult {
    pub fn new(n: usize, mixed_count: BigUint, selfconverse_count: BigUint) -> Self {
        let fraction = BigRational::new(
            BigInt::from(selfconverse_count.clone()),
            BigInt::from(mixed_count.clone()),
        );
        Self {
            n,
            mixed_count,
            selfconverse_count,
            fraction,
        }
    }

    /// Unreduced `S/M`.
    pub fn fraction_string(&self) -> String {
        format!("{}/{}", self.selfconverse_count, self.mixed_count)
    }

    /// Three significant digits, truncated, e.g. `6.25e-1`.
    pub fn rendered(&self) -> String {
        render_scientific(&self.fraction, 3, Rounding::Truncate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rounding {
    /// Drop digits beyond the last kept one.
    #[default]
    Truncate,
    HalfEven,
}

/// `d.dd…e<exp>` with `digits` significant digits, e.g. `2.20e-5`.
///
/// Exact: the mantissa digits are taken from `q` itself, not from a float.
pub fn render_scientific(q: &BigRational, digits: usize, rounding: Rounding) -> String {
    assert!(digits >= 1);
    if q.is_zero() {
        return format!("{}e0", pad_mantissa(&BigUint::zero(), digits));
    }
    let sign = if q.is_negative() { "-" } else { "" };
    let num = q.numer().magnitude().clone();
    let den = q.denom().magnitude().clone();
    let ten = BigUint::from(10u32);

    // exponent e with 10^e <= q < 10^(e+1)
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let at_least_power = |e: i64| {
        if e >= 0 {
            num >= &den * ten.pow(e as u32)
        } else {
            &num * ten.pow((-e) as u32) >= den
        }
    };
    while !at_least_power(e) {
        e -= 1;
    }
    while at_least_power(e + 1) {
        e += 1;
    }

    // q * 10^(digits - 1 - e) = scaled_num / scaled_den
    let shift = digits as i64 - 1 - e;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (&num * ten.pow(shift as u32), den)
    } else {
        (num, &den * ten.pow((-shift) as u32))
    };
    let (mut mantissa, remainder) = scaled_num.div_rem(&scaled_den);
    if rounding == Rounding::HalfEven {
        let twice = &remainder << 1u32;
        if twice > scaled_den || (twice == scaled_den && mantissa.is_odd()) {
            mantissa += 1u32;
        }
    }
    if mantissa == ten.pow(digits as u32) {
        mantissa /= 10u32;
        e += 1;
    }
    format!("{sign}{}e{e}", pad_mantissa(&mantissa, digits))
}

fn pad_mantissa(mantissa: &BigUint, digits: usize) -> String {
    let s = format!("{mantissa:0>digits$}");
    if digits == 1 {
        s
    } else {
        format!("{}.{}", &s[..1], &s[1..])
    }
}

/// Published three-digit values of f(n) = S(n)/M(n), 3 <= n <= 20.
pub const REFERENCE_FRACTIONS: [(usize, &str); 18] = [
    (3, "6.25e-1"),
    (4, "3.21e-1"),
    (5, "7.36e-2"),
    (6, "9.87e-3"),
    (7, "6.16e-4"),
    (8, "2.20e-5"),
    (9, "3.89e-7"),
    (10, "3.79e-9"),
    (11, "1.85e-11"),
    (12, "4.89e-14"),
    (13, "6.50e-17"),
    (14, "4.58e-20"),
    (15, "1.63e-23"),
    (16, "3.06e-27"),
    (17, "2.90e-31"),
    (18, "1.43e-35"),
    (19, "3.59e-40"),
    (20, "4.64e-45"),
];

pub fn reference_fraction(n: usize) -> Option<&'static str> {
    REFERENCE_FRACTIONS
        .iter()
        .find(|&&(m, _)| m == n)
        .map(|&(_, s)| s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceMismatch {
    pub n: usize,
    pub expected: &'static str,
    pub computed: String,
}

impl fmt::Display for ReferenceMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "f({}) = {} but the reference value is {}",
            self.n, self.computed, self.expected
        )
    }
}

/// Compares every result whose order has a reference value.
pub fn check_reference(results: &[CensusResult]) -> Vec<ReferenceMismatch> {
    results
        .iter()
        .filter_map(|r| {
            let expected = reference_fraction(r.n)?;
            let computed = r.rendered();
            (computed != expected).then_some(ReferenceMismatch {
                n: r.n,
                expected,
                computed,
            })
        })
        .collect()
}
