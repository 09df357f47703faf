//! Dense graph, digraph, bipartite-graph and k-partite hypergraph types.
//!
//! Vertices are 0-indexed everywhere inside the crate. The edge-list reader and
//! writer in [`crate::io`] are the only places that shift to the 1-indexed
//! labels used in files and reports.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {size} vertices")]
    VertexOutOfRange { vertex: usize, size: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("codegree order d={d} must satisfy 0 < d < k={k}")]
    InvalidCodegreeOrder { d: usize, k: usize },
    #[error("hyperedge {0:?} is not a crossing k-tuple")]
    NotCrossing(Vec<usize>),
    #[error("image sequence is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("partition of {n} vertices is not balanced: {reason}")]
    UnbalancedPartition { n: usize, reason: String },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn check_vertex(v: usize, size: usize) -> Result<(), GraphError> {
    if v < size {
        Ok(())
    } else {
        Err(GraphError::VertexOutOfRange { vertex: v, size })
    }
}

/// Simple undirected graph stored as one adjacency bit-row per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for (v, row) in g.rows.iter_mut().enumerate() {
            row.insert_range(..);
            row.set(v, false);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.rows[u].contains(v)
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        check_vertex(u, self.n())?;
        check_vertex(v, self.n())?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(self.add_edge(u, v))
    }

    /// Inserts `uv`; returns whether the edge was new. Panics on loops.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "self-loop");
        let fresh = !self.rows[u].put(v);
        self.rows[v].insert(u);
        fresh
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let had = self.rows[u].contains(v);
        self.rows[u].set(v, false);
        self.rows[v].set(u, false);
        had
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &FixedBitSet) -> usize {
        self.rows[v].intersection_count(set)
    }

    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn min_degree(&self) -> usize {
        min_degree(self)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_subgraph_of(&self, host: &Graph) -> bool {
        self.n() == host.n() && self.rows.iter().zip(&host.rows).all(|(a, b)| a.is_subset(b))
    }
}

/// Minimum degree `δ(G)`; 0 for the empty vertex set.
pub fn min_degree(g: &Graph) -> usize {
    (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0)
}

/// Digraph without loops. Out- and in-rows are both kept so either
/// neighbourhood is a single bit-row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    out_rows: Vec<FixedBitSet>,
    in_rows: Vec<FixedBitSet>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            out_rows: vec![FixedBitSet::with_capacity(n); n],
            in_rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let g = Graph::complete(n);
        Digraph::bidirected(&g)
    }

    /// Every edge of `g` in both directions.
    pub fn bidirected(g: &Graph) -> Self {
        Digraph {
            out_rows: g.rows.clone(),
            in_rows: g.rows.clone(),
        }
    }

    /// Builds a digraph from its out-rows. Diagonal bits must be clear.
    pub fn from_out_rows(out_rows: Vec<FixedBitSet>) -> Self {
        let n = out_rows.len();
        let mut in_rows = vec![FixedBitSet::with_capacity(n); n];
        for (u, row) in out_rows.iter().enumerate() {
            debug_assert!(!row.contains(u));
            for v in row.ones() {
                in_rows[v].insert(u);
            }
        }
        Digraph { out_rows, in_rows }
    }

    pub fn n(&self) -> usize {
        self.out_rows.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.out_rows[u].contains(v)
    }

    pub fn try_add_arc(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        check_vertex(u, self.n())?;
        check_vertex(v, self.n())?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(self.add_arc(u, v))
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "self-loop");
        self.in_rows[v].insert(u);
        !self.out_rows[u].put(v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_rows[v].count_ones(..)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_rows[v].count_ones(..)
    }

    pub fn out_row(&self, v: usize) -> &FixedBitSet {
        &self.out_rows[v]
    }

    pub fn in_row(&self, v: usize) -> &FixedBitSet {
        &self.in_rows[v]
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_rows[v].ones()
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.in_rows[v].ones()
    }

    /// Arcs in lexicographic order of `(tail, head)`.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().map(move |v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.out_rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn min_out_degree(&self) -> usize {
        (0..self.n()).map(|v| self.out_degree(v)).min().unwrap_or(0)
    }

    pub fn min_in_degree(&self) -> usize {
        (0..self.n()).map(|v| self.in_degree(v)).min().unwrap_or(0)
    }

    pub fn min_semidegree(&self) -> usize {
        min_semidegree(self)
    }

    pub fn is_subgraph_of(&self, host: &Digraph) -> bool {
        self.n() == host.n()
            && self
                .out_rows
                .iter()
                .zip(&host.out_rows)
                .all(|(a, b)| a.is_subset(b))
    }
}

/// `δ⁰(D) = min(δ⁺(D), δ⁻(D))`.
pub fn min_semidegree(d: &Digraph) -> usize {
    d.min_out_degree().min(d.min_in_degree())
}

/// Bipartite graph with parts `0..left` and `0..right` (local indices).
/// Each left vertex owns a bit-row over the right part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    right: usize,
    rows: Vec<FixedBitSet>,
}

impl BipartiteGraph {
    pub fn empty(left: usize, right: usize) -> Self {
        BipartiteGraph {
            right,
            rows: vec![FixedBitSet::with_capacity(right); left],
        }
    }

    pub fn complete(left: usize, right: usize) -> Self {
        let mut b = BipartiteGraph::empty(left, right);
        for row in &mut b.rows {
            row.insert_range(..);
        }
        b
    }

    pub fn from_rows(right: usize, rows: Vec<FixedBitSet>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == right));
        BipartiteGraph { right, rows }
    }

    pub fn left(&self) -> usize {
        self.rows.len()
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.left() && self.rows[i].contains(j)
    }

    pub fn try_add_edge(&mut self, i: usize, j: usize) -> Result<bool, GraphError> {
        check_vertex(i, self.left())?;
        check_vertex(j, self.right)?;
        Ok(self.add_edge(i, j))
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> bool {
        !self.rows[i].put(j)
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> bool {
        let had = self.rows[i].contains(j);
        self.rows[i].set(j, false);
        had
    }

    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    pub fn left_degree(&self, i: usize) -> usize {
        self.rows[i].count_ones(..)
    }

    pub fn right_degree(&self, j: usize) -> usize {
        self.rows.iter().filter(|r| r.contains(j)).count()
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.right];
        for row in &self.rows {
            for j in row.ones() {
                deg[j] += 1;
            }
        }
        deg
    }

    pub fn left_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[i].ones()
    }

    /// Right-to-left adjacency rows.
    pub fn transpose_rows(&self) -> Vec<FixedBitSet> {
        let mut cols = vec![FixedBitSet::with_capacity(self.left()); self.right];
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                cols[j].insert(i);
            }
        }
        cols
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.ones().map(move |j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    /// Minimum degree over both parts.
    pub fn min_degree(&self) -> usize {
        let left = (0..self.left()).map(|i| self.left_degree(i)).min();
        let right = self.right_degrees().into_iter().min();
        match (left, right) {
            (Some(a), Some(b)) => a.min(b),
            (a, b) => a.or(b).unwrap_or(0),
        }
    }

    pub fn is_subgraph_of(&self, host: &BipartiteGraph) -> bool {
        self.left() == host.left()
            && self.right == host.right
            && self.rows.iter().zip(&host.rows).all(|(a, b)| a.is_subset(b))
    }
}

/// k-partite k-uniform hypergraph. An edge is a crossing tuple `(a_1, ..., a_k)`
/// with `a_i` a local index into part `i`; the tuple itself is the canonical
/// form, so set membership is exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KPartiteHypergraph {
    part_sizes: Vec<usize>,
    edges: BTreeSet<Vec<usize>>,
}

impl KPartiteHypergraph {
    pub fn empty(k: usize, n: usize) -> Self {
        Self::with_part_sizes(vec![n; k])
    }

    pub fn with_part_sizes(part_sizes: Vec<usize>) -> Self {
        KPartiteHypergraph {
            part_sizes,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(k: usize, n: usize) -> Self {
        let mut h = Self::empty(k, n);
        h.edges = all_crossing_tuples(&h.part_sizes).collect();
        h
    }

    pub fn k(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    /// Common part size, if all parts agree.
    pub fn uniform_part_size(&self) -> Option<usize> {
        let first = *self.part_sizes.first()?;
        self.part_sizes.iter().all(|&s| s == first).then_some(first)
    }

    pub fn is_crossing(&self, edge: &[usize]) -> bool {
        edge.len() == self.k() && edge.iter().zip(&self.part_sizes).all(|(&a, &s)| a < s)
    }

    pub fn add_edge(&mut self, edge: Vec<usize>) -> Result<bool, GraphError> {
        if !self.is_crossing(&edge) {
            return Err(GraphError::NotCrossing(edge));
        }
        Ok(self.edges.insert(edge))
    }

    pub fn remove_edge(&mut self, edge: &[usize]) -> bool {
        self.edges.remove(edge)
    }

    pub fn contains(&self, edge: &[usize]) -> bool {
        self.edges.contains(edge)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Vec<usize>> + '_ {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges whose first-part vertex is `a1`, in canonical order.
    pub fn edges_from(&self, a1: usize) -> impl Iterator<Item = &Vec<usize>> + '_ {
        let k = self.k();
        let mut lo = vec![0; k];
        lo[0] = a1;
        self.edges.range(lo..).take_while(move |e| e[0] == a1)
    }

    pub fn is_subgraph_of(&self, host: &KPartiteHypergraph) -> bool {
        self.part_sizes == host.part_sizes && self.edges.is_subset(&host.edges)
    }

    /// Degree of every crossing d-set that lies in at least one edge, keyed by
    /// (sorted part indices, vertices in those parts).
    pub fn crossing_dset_degrees(&self, d: usize) -> HashMap<CrossingSet, usize> {
        let mut counts = HashMap::new();
        for edge in &self.edges {
            for parts in (0..self.k()).combinations(d) {
                let verts = parts.iter().map(|&p| edge[p]).collect();
                *counts.entry(CrossingSet { parts, verts }).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn crossing_codegree(&self, d: usize) -> Result<usize, GraphError> {
        crossing_codegree(self, d)
    }
}

/// A crossing d-set: one vertex in each of the listed parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingSet {
    pub parts: Vec<usize>,
    pub verts: Vec<usize>,
}

/// Every crossing d-set of a k-partition with the given part sizes, in
/// lexicographic (parts, vertices) order.
pub fn all_crossing_dsets(part_sizes: &[usize], d: usize) -> impl Iterator<Item = CrossingSet> + '_ {
    (0..part_sizes.len()).combinations(d).flat_map(move |parts| {
        let sizes: Vec<usize> = parts.iter().map(|&p| part_sizes[p]).collect();
        all_crossing_tuples(&sizes)
            .map(move |verts| CrossingSet {
                parts: parts.clone(),
                verts,
            })
            .collect::<Vec<_>>()
    })
}

/// All tuples in `[0, s_0) × ... × [0, s_{k-1})`, lexicographic.
pub fn all_crossing_tuples(part_sizes: &[usize]) -> impl Iterator<Item = Vec<usize>> {
    part_sizes
        .iter()
        .map(|&s| 0..s)
        .multi_cartesian_product()
}

/// `δ*_d(H)`: minimum number of edges containing a crossing d-set.
pub fn crossing_codegree(h: &KPartiteHypergraph, d: usize) -> Result<usize, GraphError> {
    let k = h.k();
    if d == 0 || d >= k {
        return Err(GraphError::InvalidCodegreeOrder { d, k });
    }
    let counts = h.crossing_dset_degrees(d);
    let total: usize = (0..k)
        .combinations(d)
        .map(|parts| parts.iter().map(|&p| h.part_sizes[p]).product::<usize>())
        .sum();
    if counts.len() < total {
        return Ok(0);
    }
    Ok(counts.values().copied().min().unwrap_or(0))
}

/// Bijection of `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GraphError> {
        let m = images.len();
        let mut seen = FixedBitSet::with_capacity(m);
        for &x in &images {
            if x >= m || seen.put(x) {
                return Err(GraphError::NotAPermutation(m));
            }
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// 64-bit FNV-1a over the image sequence (each image as u64 little-endian).
    pub fn digest(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        for &x in &self.images {
            for b in (x as u64).to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(PRIME);
            }
        }
        h
    }

    /// All `m!` permutations in lexicographic order of their image sequence.
    pub fn all(m: usize) -> impl Iterator<Item = Permutation> {
        (0..m)
            .permutations(m)
            .map(|images| Permutation { images })
    }
}

/// Ordered balanced bipartition `(V1, V2)` of `0..n`; both parts sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BalancedPartition {
    first: Vec<usize>,
    second: Vec<usize>,
    // (side, position within side) per vertex
    place: Vec<(u8, usize)>,
}

impl BalancedPartition {
    pub fn new(n: usize, first: Vec<usize>) -> Result<Self, GraphError> {
        if !n.is_multiple_of(2) {
            return Err(GraphError::UnbalancedPartition {
                n,
                reason: "odd vertex count".into(),
            });
        }
        let mut in_first = FixedBitSet::with_capacity(n);
        for &v in &first {
            check_vertex(v, n)?;
            if in_first.put(v) {
                return Err(GraphError::UnbalancedPartition {
                    n,
                    reason: format!("vertex {v} listed twice"),
                });
            }
        }
        if first.len() != n / 2 {
            return Err(GraphError::UnbalancedPartition {
                n,
                reason: format!("first part has {} vertices", first.len()),
            });
        }
        let first: Vec<usize> = in_first.ones().collect();
        let second: Vec<usize> = (0..n).filter(|&v| !in_first.contains(v)).collect();
        let mut place = vec![(0, 0); n];
        for (pos, &v) in first.iter().enumerate() {
            place[v] = (0, pos);
        }
        for (pos, &v) in second.iter().enumerate() {
            place[v] = (1, pos);
        }
        Ok(BalancedPartition { first, second, place })
    }

    /// `V1 = {0, ..., n/2 - 1}`.
    pub fn canonical(n: usize) -> Result<Self, GraphError> {
        Self::new(n, (0..n / 2).collect())
    }

    pub fn n(&self) -> usize {
        self.place.len()
    }

    pub fn half(&self) -> usize {
        self.first.len()
    }

    pub fn first(&self) -> &[usize] {
        &self.first
    }

    pub fn second(&self) -> &[usize] {
        &self.second
    }

    /// 0 for V1, 1 for V2.
    pub fn side_of(&self, v: usize) -> usize {
        self.place[v].0 as usize
    }

    pub fn position(&self, v: usize) -> usize {
        self.place[v].1
    }

    pub fn side_set(&self, side: usize) -> FixedBitSet {
        let part = if side == 0 { &self.first } else { &self.second };
        let mut set = FixedBitSet::with_capacity(self.n());
        for &v in part {
            set.insert(v);
        }
        set
    }

    /// Original label of local index `pos` on `side`.
    pub fn label(&self, side: usize, pos: usize) -> usize {
        if side == 0 {
            self.first[pos]
        } else {
            self.second[pos]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(min_degree(&Graph::complete(4)), 3);
        assert_eq!(min_degree(&Graph::empty(5)), 0);
        // hand-checked degrees of the path 1-2-3: (1, 2, 1)
        assert_eq!(path3().degrees(), vec![1, 2, 1]);
        assert_eq!(min_degree(&path3()), 1);
    }

    #[test]
    fn min_semidegree_examples() {
        let mut cyc = Digraph::empty(3);
        cyc.add_arc(0, 1);
        cyc.add_arc(1, 2);
        cyc.add_arc(2, 0);
        assert_eq!(min_semidegree(&cyc), 1);

        let mut single = Digraph::empty(2);
        single.add_arc(0, 1);
        assert_eq!(min_semidegree(&single), 0);

        assert_eq!(min_semidegree(&Digraph::complete(4)), 3);
    }

    #[test]
    fn codegree_examples() {
        let full = KPartiteHypergraph::complete(3, 2);
        assert_eq!(crossing_codegree(&full, 1).unwrap(), 4);
        assert_eq!(crossing_codegree(&KPartiteHypergraph::empty(3, 2), 1).unwrap(), 0);
        assert_eq!(crossing_codegree(&KPartiteHypergraph::empty(3, 2), 2).unwrap(), 0);

        let mut minus_one = full.clone();
        assert!(minus_one.remove_edge(&[0, 0, 0]));
        // exhaustive scan over every crossing 2-set
        let mut expected = usize::MAX;
        for set in all_crossing_dsets(minus_one.part_sizes(), 2) {
            let deg = minus_one
                .edges()
                .filter(|e| set.parts.iter().zip(&set.verts).all(|(&p, &v)| e[p] == v))
                .count();
            expected = expected.min(deg);
        }
        assert_eq!(expected, 1);
        assert_eq!(crossing_codegree(&minus_one, 2).unwrap(), 1);
    }

    #[test]
    fn codegree_rejects_bad_order() {
        let h = KPartiteHypergraph::complete(3, 2);
        assert!(matches!(
            crossing_codegree(&h, 0),
            Err(GraphError::InvalidCodegreeOrder { .. })
        ));
        assert!(crossing_codegree(&h, 3).is_err());
    }

    #[test]
    fn edges_from_selects_first_part() {
        let h = KPartiteHypergraph::complete(3, 3);
        let from1: Vec<_> = h.edges_from(1).cloned().collect();
        assert_eq!(from1.len(), 9);
        assert!(from1.iter().all(|e| e[0] == 1));
    }

    #[test]
    fn loops_are_rejected() {
        let mut g = Graph::empty(3);
        assert_eq!(g.try_add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert!(g.try_add_edge(0, 3).is_err());
        let mut d = Digraph::empty(2);
        assert!(d.try_add_arc(0, 0).is_err());
    }

    #[test]
    fn digraph_arcs_are_independent() {
        let mut d = Digraph::empty(3);
        d.add_arc(0, 1);
        assert!(d.has_arc(0, 1));
        assert!(!d.has_arc(1, 0));
        assert_eq!(d.in_degree(1), 1);
        assert_eq!(d.out_degree(1), 0);
    }

    #[test]
    fn bipartite_degrees() {
        let mut b = BipartiteGraph::empty(2, 3);
        b.add_edge(0, 0);
        b.add_edge(0, 2);
        b.add_edge(1, 2);
        assert_eq!(b.right_degrees(), vec![1, 0, 2]);
        assert_eq!(b.min_degree(), 0);
        assert_eq!(BipartiteGraph::complete(3, 3).min_degree(), 3);
    }

    #[test]
    fn permutation_validation_and_digest() {
        assert!(Permutation::from_images(vec![1, 0, 2]).is_ok());
        assert!(Permutation::from_images(vec![1, 1, 2]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        let p = Permutation::from_images(vec![2, 0, 1]).unwrap();
        assert_eq!(p.inverse().images(), &[1, 2, 0]);
        assert_ne!(p.digest(), Permutation::identity(3).digest());
        assert_eq!(Permutation::all(4).count(), 24);
    }

    #[test]
    fn partition_bookkeeping() {
        let part = BalancedPartition::new(6, vec![4, 0, 2]).unwrap();
        assert_eq!(part.first(), &[0, 2, 4]);
        assert_eq!(part.second(), &[1, 3, 5]);
        assert_eq!(part.side_of(3), 1);
        assert_eq!(part.position(4), 2);
        assert!(BalancedPartition::new(5, vec![0, 1]).is_err());
        assert!(BalancedPartition::new(4, vec![0]).is_err());
        assert!(BalancedPartition::new(4, vec![0, 0]).is_err());
    }
}
