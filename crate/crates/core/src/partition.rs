//! Integer partitions as cycle types of the symmetric group.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

/// Cycle type of a permutation: parts in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Returns `None` if some part is zero.
    pub fn new(mut parts: Vec<usize>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Number of permutations of `total()` points with this cycle type:
    /// `n! / Π c^m_c · m_c!`.
    pub fn conjugacy_class_size(&self) -> BigUint {
        let mut centralizer = BigUint::one();
        for (c, m) in self.multiplicities() {
            centralizer *= BigUint::from(c).pow(m as u32) * factorial(m);
        }
        factorial(self.total()) / centralizer
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Every partition of `n` once, in descending lexicographic order:
/// `[n]` first, `[1, .., 1]` last. `n = 0` yields the empty partition.
pub fn partitions(n: usize) -> Partitions {
    Partitions {
        next: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        if let Some(i) = current.iter().rposition(|&p| p > 1) {
            let v = current[i] - 1;
            // parts from i on sum to (v + 1) + trailing ones
            let mut rem = current.len() - i;
            let mut succ = current[..i].to_vec();
            succ.push(v);
            while rem > 0 {
                let part = rem.min(v);
                succ.push(part);
                rem -= part;
            }
            self.next = Some(succ);
        }
        Some(Partition { parts: current })
    }
}
