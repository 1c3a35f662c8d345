//! Exhaustive ground truth for small orders.
//!
//! Labeled mixed graphs on `n` vertices are numbered `0 .. 4^C(n,2)`; digit
//! `k` in base 4 (least significant first) is the [`PairState`] of the `k`-th
//! pair in lexicographic order.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{pair_count, MixedGraph, PairState};
use crate::iso::{canonical_form, is_self_converse};

/// Largest order enumerated without opt-in.
pub const DEFAULT_LIMIT: usize = 4;
/// Largest order enumerated at all.
pub const OPT_IN_LIMIT: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exhaustive enumeration at n = {0} requires explicit opt-in")]
    NeedsOptIn(usize),
    #[error("exhaustive enumeration is limited to n <= {limit}, got n = {n}")]
    SizeLimit { n: usize, limit: usize },
}

fn check(n: usize, allow_n5: bool) -> Result<(), OracleError> {
    match n {
        _ if n <= DEFAULT_LIMIT => Ok(()),
        OPT_IN_LIMIT if allow_n5 => Ok(()),
        OPT_IN_LIMIT => Err(OracleError::NeedsOptIn(n)),
        _ => Err(OracleError::SizeLimit {
            n,
            limit: OPT_IN_LIMIT,
        }),
    }
}

pub fn labeled_count(n: usize) -> u64 {
    4u64.pow(pair_count(n) as u32)
}

/// The labeled mixed graph with the given base-4 code.
pub fn decode(n: usize, mut code: u64) -> MixedGraph {
    let states: Vec<PairState> = (0..pair_count(n))
        .map(|_| {
            let s = PairState::ALL[(code % 4) as usize];
            code /= 4;
            s
        })
        .collect();
    MixedGraph::from_pair_states(n, &states).expect("one state per pair")
}

/// Inverse of [`decode`].
pub fn encode(x: &MixedGraph) -> u64 {
    x.pair_states()
        .iter()
        .rev()
        .fold(0, |acc, s| acc * 4 + u64::from(s.digit()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleCensus {
    pub n: usize,
    pub labeled_total: u64,
    pub labeled_selfconverse: u64,
    pub unlabeled_total: u64,
    pub unlabeled_selfconverse: u64,
}

#[derive(Default)]
struct Tally {
    classes: BTreeSet<Vec<u8>>,
    selfconverse_classes: BTreeSet<Vec<u8>>,
    labeled_selfconverse: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.classes.extend(other.classes);
        self.selfconverse_classes.extend(other.selfconverse_classes);
        self.labeled_selfconverse += other.labeled_selfconverse;
        self
    }
}

fn tally(n: usize) -> Tally {
    (0..labeled_count(n))
        .into_par_iter()
        .fold(Tally::default, |mut t, code| {
            let x = decode(n, code);
            let key = canonical_form(&x).expect("oracle orders are below the canonical limit");
            if is_self_converse(&x).found() {
                t.labeled_selfconverse += 1;
                t.selfconverse_classes.insert(key.clone());
            }
            t.classes.insert(key);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// Enumerates every labeled mixed graph on `n` vertices.
pub fn brute_force_census(n: usize, allow_n5: bool) -> Result<OracleCensus, OracleError> {
    check(n, allow_n5)?;
    let t = tally(n);
    Ok(OracleCensus {
        n,
        labeled_total: labeled_count(n),
        labeled_selfconverse: t.labeled_selfconverse,
        unlabeled_total: t.classes.len() as u64,
        unlabeled_selfconverse: t.selfconverse_classes.len() as u64,
    })
}

/// One canonical representative per isomorphism class, sorted by canonical form.
pub fn class_representatives(n: usize, allow_n5: bool) -> Result<Vec<MixedGraph>, OracleError> {
    check(n, allow_n5)?;
    Ok(tally(n)
        .classes
        .into_iter()
        .map(|key| {
            crate::format::parse(std::str::from_utf8(&key).expect("ascii"))
                .expect("canonical forms parse")
        })
        .collect())
}

/// `L(n) / 4^C(n,2)` in lowest terms.
pub fn labeled_selfconverse_fraction(n: usize, allow_n5: bool) -> Result<BigRational, OracleError> {
    let c = brute_force_census(n, allow_n5)?;
    Ok(BigRational::new(
        BigInt::from(c.labeled_selfconverse),
        BigInt::from(c.labeled_total),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::{automorphism_count, find_isomorphism};
    use num_traits::One;

    #[test]
    fn codes_round_trip() {
        for code in 0..labeled_count(3) {
            assert_eq!(encode(&decode(3, code)), code);
        }
        assert_eq!(decode(2, 2), MixedGraph::new(2, [], [(0, 1)]).unwrap());
        assert_eq!(decode(2, 3), MixedGraph::new(2, [], [(1, 0)]).unwrap());
    }

    #[test]
    fn small_censuses() {
        let c = |n| {
            let c = brute_force_census(n, false).unwrap();
            (
                c.labeled_total,
                c.labeled_selfconverse,
                c.unlabeled_total,
                c.unlabeled_selfconverse,
            )
        };
        assert_eq!(c(1), (1, 1, 1, 1));
        assert_eq!(c(2), (4, 4, 3, 3));
        let three = brute_force_census(3, false).unwrap();
        assert_eq!(
            (
                three.labeled_total,
                three.unlabeled_total,
                three.unlabeled_selfconverse
            ),
            (64, 16, 10)
        );
    }

    #[test]
    fn guards() {
        assert_eq!(
            brute_force_census(5, false),
            Err(OracleError::NeedsOptIn(5))
        );
        assert_eq!(
            brute_force_census(6, true),
            Err(OracleError::SizeLimit { n: 6, limit: 5 })
        );
    }

    #[test]
    fn labeled_fractions() {
        assert!(labeled_selfconverse_fraction(1, false).unwrap().is_one());
        assert!(labeled_selfconverse_fraction(2, false).unwrap().is_one());
    }

    #[test]
    fn canonical_form_agrees_with_search_on_all_three_vertex_pairs() {
        let all: Vec<_> = (0..labeled_count(3)).map(|c| decode(3, c)).collect();
        let keys: Vec<_> = all.iter().map(|x| canonical_form(x).unwrap()).collect();
        for (x, kx) in all.iter().zip(&keys) {
            for (y, ky) in all.iter().zip(&keys) {
                assert_eq!(kx == ky, find_isomorphism(x, y).found());
            }
        }
    }

    #[test]
    fn orbit_stabilizer_identity() {
        for n in 1..=4usize {
            let factorial: u64 = (1..=n as u64).product();
            let total: u64 = class_representatives(n, false)
                .unwrap()
                .iter()
                .map(|x| factorial / automorphism_count(x).unwrap())
                .sum();
            assert_eq!(total, labeled_count(n), "n = {n}");
        }
    }
}
