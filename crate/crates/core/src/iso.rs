//! Isomorphism and automorphism search for small graphs.
//!
//! Every decision procedure here runs the same backtracking search: the
//! vertices of the source are assigned in ascending order, candidates in the
//! target are tried in ascending order, and a candidate is admissible only if
//! its degree triple (undirected degree, out-degree, in-degree) matches and
//! its adjacency to every already-assigned vertex agrees. The ordering makes
//! returned witnesses deterministic.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::format::to_text;
use crate::graph::{Graph, MixedGraph};
use crate::perm::Permutation;

/// Default bound on `n` for [`automorphism_count`].
pub const AUTOMORPHISM_COUNT_LIMIT: usize = 10;
/// Default bound on `n` for [`canonical_form`].
pub const CANONICAL_FORM_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("{operation} is limited to n <= {limit}, got n = {n}")]
    SizeLimit {
        operation: &'static str,
        n: usize,
        limit: usize,
    },
}

/// Outcome of an isomorphism search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub map: Option<Permutation>,
}

impl IsoWitness {
    pub fn found(&self) -> bool {
        self.map.is_some()
    }
}

/// Dense pair codes of a graph, as seen by the search.
///
/// `code(u, v)` is 0 for non-adjacent, 1 for an undirected edge, 2 for an
/// arc `u → v` and 3 for an arc `v → u`.
#[derive(Debug, Clone)]
pub struct PairCodes {
    n: usize,
    codes: Vec<u8>,
    keys: Vec<[u32; 3]>,
}

impl PairCodes {
    fn new(n: usize) -> Self {
        Self {
            n,
            codes: vec![0; n * n],
            keys: vec![[0; 3]; n],
        }
    }

    fn set(&mut self, u: usize, v: usize, code: u8) {
        self.codes[u * self.n + v] = code;
        if code != 0 {
            self.keys[u][code as usize - 1] += 1;
        }
    }

    fn code(&self, u: usize, v: usize) -> u8 {
        self.codes[u * self.n + v]
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

/// Structures the search can run on.
pub trait SearchStructure {
    fn pair_codes(&self) -> PairCodes;
}

impl SearchStructure for Graph {
    fn pair_codes(&self) -> PairCodes {
        let mut c = PairCodes::new(self.order());
        for (u, v) in self.edges() {
            c.set(u, v, 1);
            c.set(v, u, 1);
        }
        c
    }
}

impl SearchStructure for MixedGraph {
    fn pair_codes(&self) -> PairCodes {
        let mut c = PairCodes::new(self.order());
        for (u, v) in self.edges() {
            c.set(u, v, 1);
            c.set(v, u, 1);
        }
        for (u, v) in self.arcs() {
            c.set(u, v, 2);
            c.set(v, u, 3);
        }
        c
    }
}

struct Search<'a> {
    source: &'a PairCodes,
    target: &'a PairCodes,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(source: &'a PairCodes, target: &'a PairCodes) -> Self {
        Self {
            source,
            target,
            map: vec![usize::MAX; source.n],
            used: vec![false; source.n],
        }
    }

    fn run<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        self.extend(0, visit)
    }

    fn extend<F>(&mut self, depth: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let n = self.source.n;
        if depth == n {
            return visit(&self.map);
        }
        for w in 0..n {
            if self.used[w] || self.target.keys[w] != self.source.keys[depth] {
                continue;
            }
            // code(v, u) is determined by code(u, v), so one direction suffices.
            let consistent =
                (0..depth).all(|u| self.source.code(u, depth) == self.target.code(self.map[u], w));
            if !consistent {
                continue;
            }
            self.map[depth] = w;
            self.used[w] = true;
            let flow = self.extend(depth + 1, visit);
            self.used[w] = false;
            flow?;
        }
        self.map[depth] = usize::MAX;
        ControlFlow::Continue(())
    }
}

fn same_key_multiset(a: &PairCodes, b: &PairCodes) -> bool {
    let mut ka = a.keys.clone();
    let mut kb = b.keys.clone();
    ka.sort_unstable();
    kb.sort_unstable();
    ka == kb
}

fn first_match<S: SearchStructure>(x: &S, y: &S) -> Option<Permutation> {
    let (a, b) = (x.pair_codes(), y.pair_codes());
    if a.n != b.n || !same_key_multiset(&a, &b) {
        return None;
    }
    let mut found = None;
    let _ = Search::new(&a, &b).run(&mut |map| {
        found = Some(map.to_vec());
        ControlFlow::Break(())
    });
    found.map(Permutation::from_images_unchecked)
}

/// Finds `f` with `apply_permutation(x, f) == y`, if one exists.
pub fn find_isomorphism(x: &MixedGraph, y: &MixedGraph) -> IsoWitness {
    IsoWitness {
        map: first_match(x, y),
    }
}

/// Undirected counterpart of [`find_isomorphism`].
pub fn find_graph_isomorphism(x: &Graph, y: &Graph) -> IsoWitness {
    IsoWitness {
        map: first_match(x, y),
    }
}

/// Searches for an isomorphism from `x` to its converse.
pub fn is_self_converse(x: &MixedGraph) -> IsoWitness {
    find_isomorphism(x, &x.converse())
}

/// First non-identity automorphism in search order, if any.
pub fn find_nontrivial_automorphism<S: SearchStructure>(g: &S) -> Option<Permutation> {
    let codes = g.pair_codes();
    let mut found = None;
    let _ = Search::new(&codes, &codes).run(&mut |map| {
        if map.iter().enumerate().any(|(i, &v)| i != v) {
            found = Some(map.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found.map(Permutation::from_images_unchecked)
}

/// True iff the identity is the only automorphism. Stops at the first
/// non-identity automorphism, so rigid graphs with hundreds of vertices are
/// cheap while highly symmetric ones are not.
pub fn is_asymmetric<S: SearchStructure>(g: &S) -> bool {
    find_nontrivial_automorphism(g).is_none()
}

pub fn automorphism_count<S: SearchStructure>(g: &S) -> Result<u64, IsoError> {
    automorphism_count_with_limit(g, AUTOMORPHISM_COUNT_LIMIT)
}

pub fn automorphism_count_with_limit<S: SearchStructure>(
    g: &S,
    limit: usize,
) -> Result<u64, IsoError> {
    let codes = g.pair_codes();
    if codes.n > limit {
        return Err(IsoError::SizeLimit {
            operation: "automorphism_count",
            n: codes.n,
            limit,
        });
    }
    let mut count = 0u64;
    let _ = Search::new(&codes, &codes).run(&mut |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    Ok(count)
}

/// Serialization of the relabeling of `x` that is smallest in byte order.
/// Two graphs have the same canonical form iff they are isomorphic.
pub fn canonical_form(x: &MixedGraph) -> Result<Vec<u8>, IsoError> {
    canonical_form_with_limit(x, CANONICAL_FORM_LIMIT)
}

pub fn canonical_form_with_limit(x: &MixedGraph, limit: usize) -> Result<Vec<u8>, IsoError> {
    Ok(to_text(&canonical_graph_with_limit(x, limit)?).into_bytes())
}

/// The relabeling of `x` whose serialization is [`canonical_form`].
pub fn canonical_graph(x: &MixedGraph) -> Result<MixedGraph, IsoError> {
    canonical_graph_with_limit(x, CANONICAL_FORM_LIMIT)
}

pub fn canonical_graph_with_limit(x: &MixedGraph, limit: usize) -> Result<MixedGraph, IsoError> {
    let n = x.order();
    if n > limit {
        return Err(IsoError::SizeLimit {
            operation: "canonical_form",
            n,
            limit,
        });
    }
    let edges: Vec<(usize, usize)> = x.edges().collect();
    let arcs: Vec<(usize, usize)> = x.arcs().collect();
    let ranks = label_ranks(n);

    let mut images: Vec<usize> = (0..n).collect();
    let mut best = RelabelKey::default();
    best.fill(&edges, &arcs, &images, &ranks);
    let mut best_images = images.clone();
    let mut scratch = best.clone();
    while next_permutation(&mut images) {
        scratch.fill(&edges, &arcs, &images, &ranks);
        if scratch < best {
            std::mem::swap(&mut scratch, &mut best);
            best_images.clone_from(&images);
        }
    }
    Ok(
        x.apply_permutation(&Permutation::from_images_unchecked(best_images))
            .expect("permutation length matches"),
    )
}

/// Position of each label's decimal string in byte order (`"10" < "2"`).
fn label_ranks(n: usize) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.sort_by_key(|v| v.to_string());
    let mut ranks = vec![0; n];
    for (rank, &v) in labels.iter().enumerate() {
        ranks[v] = rank;
    }
    ranks
}

/// Body of a relabeled serialization, as rank pairs: sorted arcs, then
/// sorted edges.
///
/// Every line ends in `\n` and separates fields with a space, both of which
/// sort below the digits. Two lines therefore compare like their
/// `(tail, head)` label strings, and two serializations with the same line
/// counts compare like their line sequences. Arc lines (`A ...`) all precede
/// edge lines (`E ...`). The derived ordering on this key is thus exactly the
/// byte order of the serializations.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
struct RelabelKey {
    arcs: Vec<(usize, usize)>,
    edges: Vec<(usize, usize)>,
}

impl RelabelKey {
    fn fill(
        &mut self,
        edges: &[(usize, usize)],
        arcs: &[(usize, usize)],
        images: &[usize],
        ranks: &[usize],
    ) {
        self.arcs.clear();
        self.arcs.extend(
            arcs.iter()
                .map(|&(u, v)| (ranks[images[u]], ranks[images[v]])),
        );
        self.arcs.sort_unstable();
        self.edges.clear();
        self.edges.extend(edges.iter().map(|&(u, v)| {
            let (a, b) = (images[u], images[v]);
            (ranks[a.min(b)], ranks[a.max(b)])
        }));
        self.edges.sort_unstable();
    }
}

/// Advances to the next permutation in lexicographic order; false after the last.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut current: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            current = Some(next);
        }
        Some(Permutation::from_images_unchecked(out))
    })
}
