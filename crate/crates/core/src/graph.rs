//! Undirected graphs and mixed graphs as immutable values.
//!
//! A [`MixedGraph`] on `n` vertices assigns every unordered pair `{u, v}`
//! exactly one [`PairState`]: non-adjacent, an undirected edge, or a single
//! arc in one of the two directions. A pair carrying both orientations is an
//! edge, so the constructor rejects bidirected arc pairs and every labeled
//! mixed graph has exactly one representation.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {{{0}, {1}}} listed more than once")]
    DuplicateEdge(usize, usize),
    #[error("arc ({0}, {1}) listed more than once")]
    DuplicateArc(usize, usize),
    #[error("pair {{{0}, {1}}} is both an edge and an arc")]
    EdgeArcOverlap(usize, usize),
    #[error("arcs ({0}, {1}) and ({1}, {0}) both given; declare an edge instead")]
    BidirectedArcPair(usize, usize),
    #[error("permutation has {perm} points but the graph has {n} vertices")]
    PermutationLength { perm: usize, n: usize },
    #[error("expected {expected} pair states, got {got}")]
    PairStateCount { expected: usize, got: usize },
}

/// State of one unordered pair `{u, v}` with `u < v`.
///
/// The discriminants are the base-4 digits used by the exhaustive enumerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum PairState {
    None = 0,
    Edge = 1,
    /// Arc from the lower to the higher vertex.
    Forward = 2,
    /// Arc from the higher to the lower vertex.
    Backward = 3,
}

impl PairState {
    pub const ALL: [PairState; 4] = [
        PairState::None,
        PairState::Edge,
        PairState::Forward,
        PairState::Backward,
    ];

    pub fn from_digit(digit: u8) -> Option<PairState> {
        Self::ALL.get(digit as usize).copied()
    }

    pub fn digit(self) -> u8 {
        self as u8
    }

    /// Effect of reversing every arc.
    pub fn reversed(self) -> PairState {
        match self {
            PairState::Forward => PairState::Backward,
            PairState::Backward => PairState::Forward,
            other => other,
        }
    }
}

/// Number of unordered pairs on `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Unordered pairs `(u, v)`, `u < v`, in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

fn check_vertex(v: usize, n: usize) -> Result<(), GraphError> {
    if v >= n {
        Err(GraphError::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}

fn normalized_edge(u: usize, v: usize, n: usize) -> Result<(usize, usize), GraphError> {
    check_vertex(u, n)?;
    check_vertex(v, n)?;
    if u == v {
        return Err(GraphError::SelfLoop(u));
    }
    Ok((u.min(v), u.max(v)))
}

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            let e = normalized_edge(u, v, n)?;
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Self { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        Self {
            n,
            edges: pairs(n).collect(),
        }
    }

    /// Builds a graph from already-normalized edges `u < v < n`.
    pub(crate) fn from_normalized(n: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        debug_assert!(edges.iter().all(|&(u, v)| u < v && v < n));
        Self { n, edges }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn apply_permutation(&self, f: &Permutation) -> Result<Graph, GraphError> {
        if f.len() != self.n {
            return Err(GraphError::PermutationLength {
                perm: f.len(),
                n: self.n,
            });
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (f.apply(u), f.apply(v));
                (a.min(b), a.max(b))
            })
            .collect();
        Ok(Graph { n: self.n, edges })
    }

    pub fn is_automorphism(&self, f: &Permutation) -> bool {
        self.apply_permutation(f).is_ok_and(|g| &g == self)
    }
}

/// Minimum vertex degree and maximum number of common neighbours over
/// all vertex pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeighborhoodStats {
    pub min_degree: usize,
    pub max_codegree: usize,
}

/// Computes [`NeighborhoodStats`] with one bitset row per vertex.
///
/// An empty graph on zero vertices reports `(0, 0)`; `max_codegree` is 0
/// whenever `n < 2`.
pub fn neighborhood_stats(g: &Graph) -> NeighborhoodStats {
    let n = g.order();
    let words = n.div_ceil(64);
    let mut rows = vec![0u64; n * words];
    for (u, v) in g.edges() {
        rows[u * words + v / 64] |= 1 << (v % 64);
        rows[v * words + u / 64] |= 1 << (u % 64);
    }
    let row = |u: usize| &rows[u * words..(u + 1) * words];

    let min_degree = (0..n)
        .map(|u| row(u).iter().map(|w| w.count_ones() as usize).sum())
        .min()
        .unwrap_or(0);
    let mut max_codegree = 0;
    for u in 0..n {
        for v in u + 1..n {
            let common: usize = row(u)
                .iter()
                .zip(row(v))
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum();
            max_codegree = max_codegree.max(common);
        }
    }
    NeighborhoodStats {
        min_degree,
        max_codegree,
    }
}

/// A mixed graph: undirected edges `E(X)` plus arcs `A(X)` on disjoint pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    arcs: BTreeSet<(usize, usize)>,
}

impl MixedGraph {
    /// Validates and builds a mixed graph. Edges may be given in either
    /// orientation; arcs are ordered `(tail, head)`.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut edge_set = BTreeSet::new();
        for (u, v) in edges {
            let e = normalized_edge(u, v, n)?;
            if !edge_set.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        let mut arc_set = BTreeSet::new();
        for (u, v) in arcs {
            normalized_edge(u, v, n)?;
            if !arc_set.insert((u, v)) {
                return Err(GraphError::DuplicateArc(u, v));
            }
        }
        for &(u, v) in &arc_set {
            if u < v && arc_set.contains(&(v, u)) {
                return Err(GraphError::BidirectedArcPair(u, v));
            }
            if edge_set.contains(&(u.min(v), u.max(v))) {
                return Err(GraphError::EdgeArcOverlap(u.min(v), u.max(v)));
            }
        }
        Ok(Self {
            n,
            edges: edge_set,
            arcs: arc_set,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
            arcs: BTreeSet::new(),
        }
    }

    /// Builds a mixed graph from one state per pair, pairs in lexicographic order.
    pub fn from_pair_states(n: usize, states: &[PairState]) -> Result<Self, GraphError> {
        let expected = pair_count(n);
        if states.len() != expected {
            return Err(GraphError::PairStateCount {
                expected,
                got: states.len(),
            });
        }
        let mut g = Self::empty(n);
        for ((u, v), &s) in pairs(n).zip(states) {
            match s {
                PairState::None => {}
                PairState::Edge => {
                    g.edges.insert((u, v));
                }
                PairState::Forward => {
                    g.arcs.insert((u, v));
                }
                PairState::Backward => {
                    g.arcs.insert((v, u));
                }
            }
        }
        Ok(g)
    }

    /// The state of every pair, pairs in lexicographic order.
    pub fn pair_states(&self) -> Vec<PairState> {
        pairs(self.n).map(|(u, v)| self.pair_state(u, v)).collect()
    }

    /// State of `{u, v}` seen from `u`: `Forward` means an arc `u → v`.
    pub fn pair_state(&self, u: usize, v: usize) -> PairState {
        if self.edges.contains(&(u.min(v), u.max(v))) {
            PairState::Edge
        } else if self.arcs.contains(&(u, v)) {
            PairState::Forward
        } else if self.arcs.contains(&(v, u)) {
            PairState::Backward
        } else {
            PairState::None
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Arcs `(tail, head)`, sorted.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    /// Reverses every arc; edges are kept.
    pub fn converse(&self) -> MixedGraph {
        MixedGraph {
            n: self.n,
            edges: self.edges.clone(),
            arcs: self.arcs.iter().map(|&(u, v)| (v, u)).collect(),
        }
    }

    /// The undirected part `G(X)`: all arcs removed.
    pub fn symmetric_subgraph(&self) -> Graph {
        Graph::from_normalized(self.n, self.edges.clone())
    }

    /// Forgets arc orientations.
    pub fn underlying_graph(&self) -> Graph {
        let mut edges = self.edges.clone();
        edges.extend(self.arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))));
        Graph::from_normalized(self.n, edges)
    }

    /// Relabels vertex `v` as `f(v)`.
    pub fn apply_permutation(&self, f: &Permutation) -> Result<MixedGraph, GraphError> {
        if f.len() != self.n {
            return Err(GraphError::PermutationLength {
                perm: f.len(),
                n: self.n,
            });
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (f.apply(u), f.apply(v));
                (a.min(b), a.max(b))
            })
            .collect();
        let arcs = self
            .arcs
            .iter()
            .map(|&(u, v)| (f.apply(u), f.apply(v)))
            .collect();
        Ok(MixedGraph {
            n: self.n,
            edges,
            arcs,
        })
    }

    pub fn is_automorphism(&self, f: &Permutation) -> bool {
        self.apply_permutation(f).is_ok_and(|g| &g == self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn make_mixed_graph_accepts_well_formed_input() {
        let x = MixedGraph::new(3, [(1, 2)], [(0, 1)]).unwrap();
        assert_eq!(x.edge_count(), 1);
        assert_eq!(x.arc_count(), 1);
        assert_eq!(x.pair_state(1, 0), PairState::Backward);
        assert_eq!(x.pair_state(2, 1), PairState::Edge);
    }

    #[test]
    fn make_mixed_graph_validation_errors_are_distinct() {
        assert_eq!(
            MixedGraph::new(2, [(0, 1)], [(0, 1)]),
            Err(GraphError::EdgeArcOverlap(0, 1))
        );
        assert_eq!(
            MixedGraph::new(2, [], [(0, 1), (1, 0)]),
            Err(GraphError::BidirectedArcPair(0, 1))
        );
        assert_eq!(
            MixedGraph::new(2, [(1, 1)], []),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            MixedGraph::new(2, [], [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            MixedGraph::new(3, [(0, 1), (1, 0)], []),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            MixedGraph::new(3, [], [(2, 1), (2, 1)]),
            Err(GraphError::DuplicateArc(2, 1))
        );
    }

    #[test]
    fn converse_reverses_arcs_only() {
        let x = MixedGraph::new(2, [], [(0, 1)]).unwrap();
        let c = x.converse();
        assert!(c.has_arc(1, 0));
        assert_eq!(c.arc_count(), 1);
        assert_eq!(c.converse(), x);

        let undirected = MixedGraph::new(3, [(0, 2)], []).unwrap();
        assert_eq!(undirected.converse(), undirected);
    }

    #[test]
    fn symmetric_and_underlying_graphs() {
        let x = MixedGraph::new(3, [(0, 1)], [(1, 2)]).unwrap();
        assert_eq!(x.symmetric_subgraph(), Graph::new(3, [(0, 1)]).unwrap());
        assert_eq!(x.underlying_graph(), path3());

        let tournament = MixedGraph::new(3, [], [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(tournament.symmetric_subgraph(), Graph::empty(3));
        assert_eq!(tournament.underlying_graph(), Graph::complete(3));

        let no_arcs = MixedGraph::new(4, [(0, 3), (1, 2)], []).unwrap();
        assert_eq!(no_arcs.underlying_graph(), no_arcs.symmetric_subgraph());
    }

    #[test]
    fn permutation_action() {
        let x = MixedGraph::new(2, [], [(0, 1)]).unwrap();
        let swap = Permutation::transposition(2, 0, 1);
        assert_eq!(x.apply_permutation(&Permutation::identity(2)).unwrap(), x);
        assert_eq!(
            x.apply_permutation(&swap).unwrap(),
            MixedGraph::new(2, [], [(1, 0)]).unwrap()
        );
        assert_eq!(
            x.apply_permutation(&Permutation::identity(3)),
            Err(GraphError::PermutationLength { perm: 3, n: 2 })
        );
    }

    #[test]
    fn pair_states_round_trip() {
        let x = MixedGraph::new(4, [(0, 3)], [(2, 1), (0, 2)]).unwrap();
        let states = x.pair_states();
        assert_eq!(
            states,
            vec![
                PairState::None,
                PairState::Forward,
                PairState::Edge,
                PairState::Backward,
                PairState::None,
                PairState::None
            ]
        );
        assert_eq!(MixedGraph::from_pair_states(4, &states).unwrap(), x);
    }

    #[test]
    fn neighborhood_stats_hand_counts() {
        let s = neighborhood_stats(&path3());
        assert_eq!((s.min_degree, s.max_codegree), (1, 1));
        let s = neighborhood_stats(&Graph::complete(3));
        assert_eq!((s.min_degree, s.max_codegree), (2, 1));
        let s = neighborhood_stats(&Graph::empty(5));
        assert_eq!((s.min_degree, s.max_codegree), (0, 0));
        let s = neighborhood_stats(&Graph::empty(1));
        assert_eq!((s.min_degree, s.max_codegree), (0, 0));
    }

    #[test]
    fn neighborhood_stats_wide_bitsets() {
        // Star on 130 vertices: the leaves share only the centre.
        let g = Graph::new(130, (1..130).map(|v| (0, v))).unwrap();
        let s = neighborhood_stats(&g);
        assert_eq!(s.min_degree, 1);
        assert_eq!(s.max_codegree, 1);
        let k = Graph::complete(70);
        assert_eq!(
            neighborhood_stats(&k),
            NeighborhoodStats {
                min_degree: 69,
                max_codegree: 68
            }
        );
    }
}
