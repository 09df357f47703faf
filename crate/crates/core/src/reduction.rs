//! Permutation-indexed auxiliary graphs and the lifts back to rainbow
//! structures.
//!
//! For a family of colors and a permutation `π`, a vertex `i` of the first
//! part (or of `[n]` for digraphs) borrows its whole neighbourhood from color
//! `π(i)`. A perfect matching / Hamilton cycle of the auxiliary graph then uses
//! each color exactly once.
//!
//! The lift is sound for every `π` but not complete: a rainbow structure of the
//! family need not appear in the auxiliary graph of a fixed `π`.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::family::{BipartiteFamily, GraphFamily, HyperFamily};
use crate::graph::{BalancedPartition, BipartiteGraph, Digraph, Graph, KPartiteHypergraph, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("not a perfect matching: {0}")]
    NotPerfect(String),
    #[error("not a Hamilton cycle: {0}")]
    NotHamiltonian(String),
}

/// `H'_i = H_i[V1, V2]` for every color, in the partition's local indices.
pub fn induce_bipartite(family: &GraphFamily, part: &BalancedPartition) -> BipartiteFamily {
    assert_eq!(family.n(), part.n(), "partition must cover the family's vertex set");
    let h = part.half();
    let second = part.side_set(1);
    let colors = family
        .colors()
        .iter()
        .map(|g| {
            let rows = part
                .first()
                .iter()
                .map(|&u| {
                    let mut row = FixedBitSet::with_capacity(h);
                    for v in g.row(u).intersection(&second) {
                        row.insert(part.position(v));
                    }
                    row
                })
                .collect();
            BipartiteGraph::from_rows(h, rows)
        })
        .collect();
    BipartiteFamily::new(part.clone(), colors)
}

/// `B_π`: `(i, j)` is an edge iff `ij ∈ E(H'_{π(i)})`.
pub fn build_aux_bipartite(family: &BipartiteFamily, pi: &Permutation) -> Result<BipartiteGraph, ReductionError> {
    let h = family.half();
    if family.m() != h || pi.len() != h {
        return Err(ReductionError::SizeMismatch(format!(
            "{} colors, |V1| = {h}, |π| = {}",
            family.m(),
            pi.len()
        )));
    }
    let rows = (0..h).map(|i| family.color(pi.apply(i)).row(i).clone()).collect();
    Ok(BipartiteGraph::from_rows(h, rows))
}

/// `D_π`: arc `(i, j)` iff `ij ∈ E(H'_{π(i)})`. Arcs `(i, j)` and `(j, i)`
/// come from different colors and may disagree.
pub fn build_aux_digraph(family: &GraphFamily, pi: &Permutation) -> Result<Digraph, ReductionError> {
    let n = family.n();
    if family.m() != n || pi.len() != n {
        return Err(ReductionError::SizeMismatch(format!(
            "{} colors, n = {n}, |π| = {}",
            family.m(),
            pi.len()
        )));
    }
    let rows = (0..n).map(|i| family.color(pi.apply(i)).row(i).clone()).collect();
    Ok(Digraph::from_out_rows(rows))
}

/// `H_π`: a crossing tuple `(a_1, ..., a_k)` is an edge iff it is an edge of
/// `H_{π(a_1)}`.
pub fn build_aux_kpartite(family: &HyperFamily, pi: &Permutation) -> Result<KPartiteHypergraph, ReductionError> {
    let n = family.n();
    if family.m() != n || pi.len() != n {
        return Err(ReductionError::SizeMismatch(format!(
            "{} colors, |V1| = {n}, |π| = {}",
            family.m(),
            pi.len()
        )));
    }
    let mut aux = KPartiteHypergraph::empty(family.k(), n);
    for a1 in 0..n {
        for e in family.color(pi.apply(a1)).edges_from(a1) {
            aux.add_edge(e.clone()).expect("color edges are crossing");
        }
    }
    Ok(aux)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RainbowKind {
    Matching,
    HamiltonCycle,
    HyperMatching,
}

impl fmt::Display for RainbowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RainbowKind::Matching => "matching",
            RainbowKind::HamiltonCycle => "hamilton-cycle",
            RainbowKind::HyperMatching => "hyper-matching",
        })
    }
}

/// One edge with its color. Vertices carry the family's original labels; for
/// hypergraphs vertex `a` of part `t` is labeled `t * n + a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowEdge {
    pub vertices: Vec<usize>,
    pub color: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowStructure {
    pub kind: RainbowKind,
    pub elements: Vec<RainbowEdge>,
}

/// Lifts a perfect matching `(i, j)` of `B_π` (local indices) to a rainbow
/// perfect matching: edge `{V1[i], V2[j]}` gets color `π(i)`.
pub fn lift_matching(
    pm: &[(usize, usize)],
    pi: &Permutation,
    family: &BipartiteFamily,
) -> Result<RainbowStructure, ReductionError> {
    let h = family.half();
    let lefts: BTreeSet<usize> = pm.iter().map(|&(i, _)| i).collect();
    let rights: BTreeSet<usize> = pm.iter().map(|&(_, j)| j).collect();
    if pm.len() != h || lefts.len() != h || rights.len() != h || pm.iter().any(|&(i, j)| i >= h || j >= h) {
        return Err(ReductionError::NotPerfect(format!(
            "{} pairs covering {} left and {} right vertices of {h}",
            pm.len(),
            lefts.len(),
            rights.len()
        )));
    }
    let part = family.partition();
    let elements = pm
        .iter()
        .map(|&(i, j)| RainbowEdge {
            vertices: vec![part.label(0, i), part.label(1, j)],
            color: pi.apply(i),
        })
        .collect();
    Ok(RainbowStructure {
        kind: RainbowKind::Matching,
        elements,
    })
}

/// Lifts a directed Hamilton cycle `v_0 → v_1 → ... → v_0` of `D_π`: arc
/// `(i, j)` becomes edge `ij` with color `π(i)`.
pub fn lift_cycle(cycle: &[usize], pi: &Permutation, family: &GraphFamily) -> Result<RainbowStructure, ReductionError> {
    let n = family.n();
    if n < 3 {
        return Err(ReductionError::NotHamiltonian(format!(
            "{n} vertices cannot carry a simple Hamilton cycle"
        )));
    }
    let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
    if cycle.len() != n || distinct.len() != n || cycle.iter().any(|&v| v >= n) {
        return Err(ReductionError::NotHamiltonian(format!(
            "sequence of {} vertices does not visit all {n} once",
            cycle.len()
        )));
    }
    let elements = (0..n)
        .map(|t| {
            let (i, j) = (cycle[t], cycle[(t + 1) % n]);
            RainbowEdge {
                vertices: vec![i, j],
                color: pi.apply(i),
            }
        })
        .collect();
    Ok(RainbowStructure {
        kind: RainbowKind::HamiltonCycle,
        elements,
    })
}

/// Lifts a perfect matching of `H_π`; edge `S` gets color `π(a_1)`.
pub fn lift_hyper_matching(
    pm: &[Vec<usize>],
    pi: &Permutation,
    family: &HyperFamily,
) -> Result<RainbowStructure, ReductionError> {
    let (k, n) = (family.k(), family.n());
    if pm.len() != n || pm.iter().any(|e| e.len() != k || e.iter().any(|&a| a >= n)) {
        return Err(ReductionError::NotPerfect(format!("{} edges for parts of size {n}", pm.len())));
    }
    for t in 0..k {
        let covered: BTreeSet<usize> = pm.iter().map(|e| e[t]).collect();
        if covered.len() != n {
            return Err(ReductionError::NotPerfect(format!("part {t} covered {} of {n}", covered.len())));
        }
    }
    let elements = pm
        .iter()
        .map(|e| RainbowEdge {
            vertices: e.iter().enumerate().map(|(t, &a)| t * n + a).collect(),
            color: pi.apply(e[0]),
        })
        .collect();
    Ok(RainbowStructure {
        kind: RainbowKind::HyperMatching,
        elements,
    })
}

/// A family that can answer "is this edge in color c".
pub trait ColorSystem {
    fn color_count(&self) -> usize;
    /// Total number of vertex labels.
    fn vertex_count(&self) -> usize;
    fn contains(&self, color: usize, edge: &[usize]) -> bool;
}

impl ColorSystem for GraphFamily {
    fn color_count(&self) -> usize {
        self.m()
    }

    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn contains(&self, color: usize, edge: &[usize]) -> bool {
        matches!(edge, &[u, v] if u < self.n() && v < self.n() && self.color(color).has_edge(u, v))
    }
}

impl ColorSystem for BipartiteFamily {
    fn color_count(&self) -> usize {
        self.m()
    }

    fn vertex_count(&self) -> usize {
        self.partition().n()
    }

    fn contains(&self, color: usize, edge: &[usize]) -> bool {
        let part = self.partition();
        let &[u, v] = edge else { return false };
        if u >= part.n() || v >= part.n() || part.side_of(u) == part.side_of(v) {
            return false;
        }
        let (a, b) = if part.side_of(u) == 0 { (u, v) } else { (v, u) };
        self.color(color).has_edge(part.position(a), part.position(b))
    }
}

impl ColorSystem for HyperFamily {
    fn color_count(&self) -> usize {
        self.m()
    }

    fn vertex_count(&self) -> usize {
        self.k() * self.n()
    }

    fn contains(&self, color: usize, edge: &[usize]) -> bool {
        let n = self.n();
        if edge.len() != self.k() || edge.iter().enumerate().any(|(t, &x)| x / n != t) {
            return false;
        }
        let local: Vec<usize> = edge.iter().map(|&x| x % n).collect();
        self.color(color).contains(&local)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RainbowViolation {
    ColorOutOfRange(usize),
    ColorUsedTwice(usize),
    ColorMissing(usize),
    EdgeNotInColor { edge: Vec<usize>, color: usize },
    VertexReused(usize),
    VertexUncovered(usize),
    WrongEdgeCount { expected: usize, found: usize },
    NotASingleCycle,
    DuplicateEdge(Vec<usize>),
}

impl fmt::Display for RainbowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RainbowViolation::ColorOutOfRange(c) => write!(f, "color {c} out of range"),
            RainbowViolation::ColorUsedTwice(c) => write!(f, "color {c} used twice"),
            RainbowViolation::ColorMissing(c) => write!(f, "color {c} unused"),
            RainbowViolation::EdgeNotInColor { edge, color } => write!(f, "edge {edge:?} not in color {color}"),
            RainbowViolation::VertexReused(v) => write!(f, "vertex {v} covered twice"),
            RainbowViolation::VertexUncovered(v) => write!(f, "vertex {v} uncovered"),
            RainbowViolation::WrongEdgeCount { expected, found } => {
                write!(f, "{found} edges, expected {expected}")
            }
            RainbowViolation::NotASingleCycle => f.write_str("edges do not form a single spanning cycle"),
            RainbowViolation::DuplicateEdge(e) => write!(f, "edge {e:?} repeated"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RainbowReport {
    pub violations: Vec<RainbowViolation>,
}

impl RainbowReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a rainbow structure against the family it claims to live in. Never
/// fails; every problem is listed in the report.
pub fn verify_rainbow<S: ColorSystem>(rs: &RainbowStructure, family: &S) -> RainbowReport {
    let m = family.color_count();
    let nv = family.vertex_count();
    let mut out = Vec::new();

    let mut used = vec![0usize; m];
    for e in &rs.elements {
        if e.color >= m {
            out.push(RainbowViolation::ColorOutOfRange(e.color));
            continue;
        }
        used[e.color] += 1;
        if !family.contains(e.color, &e.vertices) {
            out.push(RainbowViolation::EdgeNotInColor {
                edge: e.vertices.clone(),
                color: e.color,
            });
        }
    }
    for (c, &u) in used.iter().enumerate() {
        match u {
            0 => out.push(RainbowViolation::ColorMissing(c)),
            1 => {}
            _ => out.push(RainbowViolation::ColorUsedTwice(c)),
        }
    }
    if rs.elements.len() != m {
        out.push(RainbowViolation::WrongEdgeCount {
            expected: m,
            found: rs.elements.len(),
        });
    }

    let mut cover = vec![0usize; nv];
    let mut seen_edges = BTreeSet::new();
    for e in &rs.elements {
        let mut key = e.vertices.clone();
        key.sort_unstable();
        if !seen_edges.insert(key.clone()) {
            out.push(RainbowViolation::DuplicateEdge(key));
        }
        for &v in &e.vertices {
            if v < nv {
                cover[v] += 1;
            }
        }
    }
    match rs.kind {
        RainbowKind::Matching | RainbowKind::HyperMatching => {
            for (v, &c) in cover.iter().enumerate() {
                match c {
                    0 => out.push(RainbowViolation::VertexUncovered(v)),
                    1 => {}
                    _ => out.push(RainbowViolation::VertexReused(v)),
                }
            }
        }
        RainbowKind::HamiltonCycle => {
            let cycle_ok = nv >= 3
                && cover.iter().all(|&c| c == 2)
                && rs.elements.iter().all(|e| e.vertices.len() == 2)
                && is_single_cycle(nv, &rs.elements);
            if !cycle_ok {
                out.push(RainbowViolation::NotASingleCycle);
            }
        }
    }
    RainbowReport { violations: out }
}

/// All degrees are already known to be 2; checks connectivity.
fn is_single_cycle(n: usize, edges: &[RainbowEdge]) -> bool {
    let mut g = Graph::empty(n);
    for e in edges {
        let (u, v) = (e.vertices[0], e.vertices[1]);
        if u == v || u >= n || v >= n {
            return false;
        }
        g.add_edge(u, v);
    }
    let mut seen = FixedBitSet::with_capacity(n);
    let mut stack = vec![0];
    seen.insert(0);
    while let Some(u) = stack.pop() {
        for w in g.neighbors(u) {
            if !seen.put(w) {
                stack.push(w);
            }
        }
    }
    seen.count_ones(..) == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{sample_balanced_partition, sample_family, sample_permutation, RandomSeed};
    use proptest::prelude::*;

    fn two_color_bipartite() -> BipartiteFamily {
        // m = 2, V1 = {1, 2}, V2 = {1', 2'}; H'_1 = {(1,1')}, H'_2 = {(2,2')}
        let part = BalancedPartition::canonical(4).unwrap();
        let mut c1 = BipartiteGraph::empty(2, 2);
        c1.add_edge(0, 0);
        let mut c2 = BipartiteGraph::empty(2, 2);
        c2.add_edge(1, 1);
        BipartiteFamily::new(part, vec![c1, c2])
    }

    /// Independent per-pair membership scan of the B_π definition.
    fn scan_bipartite(family: &BipartiteFamily, pi: &Permutation) -> BTreeSet<(usize, usize)> {
        let h = family.half();
        let mut edges = BTreeSet::new();
        for i in 0..h {
            for j in 0..h {
                if family.color(pi.apply(i)).has_edge(i, j) {
                    edges.insert((i, j));
                }
            }
        }
        edges
    }

    fn scan_digraph(family: &GraphFamily, pi: &Permutation) -> BTreeSet<(usize, usize)> {
        let n = family.n();
        let mut arcs = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && family.color(pi.apply(i)).has_edge(i, j) {
                    arcs.insert((i, j));
                }
            }
        }
        arcs
    }

    #[test]
    fn induce_complete_and_one_sided() {
        let f = GraphFamily::new(6, vec![Graph::complete(6); 3]);
        let part = BalancedPartition::new(6, vec![1, 3, 4]).unwrap();
        let b = induce_bipartite(&f, &part);
        assert!(b.colors().iter().all(|c| *c == BipartiteGraph::complete(3, 3)));

        let inside = Graph::from_edges(6, &[(1, 3), (3, 4), (1, 4)]).unwrap();
        let f = GraphFamily::new(6, vec![inside; 3]);
        assert!(induce_bipartite(&f, &part).colors().iter().all(|c| c.edge_count() == 0));
    }

    #[test]
    fn induced_edges_cross_the_parts() {
        let f = sample_family(20, 10, 0.4, RandomSeed::new(3)).unwrap();
        let part = sample_balanced_partition(20, RandomSeed::new(4)).unwrap();
        let b = induce_bipartite(&f, &part);
        for (c, color) in b.colors().iter().enumerate() {
            // edge scan: every induced edge is a crossing edge of the original color, and vice versa
            let mut expected = 0;
            for (u, v) in f.color(c).edges() {
                if part.side_of(u) != part.side_of(v) {
                    expected += 1;
                    let (a, z) = if part.side_of(u) == 0 { (u, v) } else { (v, u) };
                    assert!(color.has_edge(part.position(a), part.position(z)));
                }
            }
            assert_eq!(color.edge_count(), expected);
        }
    }

    #[test]
    fn aux_bipartite_examples() {
        let all = BipartiteFamily::new(
            BalancedPartition::canonical(6).unwrap(),
            vec![BipartiteGraph::complete(3, 3); 3],
        );
        let pi = Permutation::from_images(vec![2, 0, 1]).unwrap();
        assert_eq!(build_aux_bipartite(&all, &pi).unwrap(), BipartiteGraph::complete(3, 3));

        let f = two_color_bipartite();
        let id = build_aux_bipartite(&f, &Permutation::identity(2)).unwrap();
        assert_eq!(id.edges().collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);
        assert_eq!(
            id.edges().collect::<BTreeSet<_>>(),
            scan_bipartite(&f, &Permutation::identity(2))
        );
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        let b = build_aux_bipartite(&f, &swap).unwrap();
        assert_eq!(b.edge_count(), 0);
        assert!(scan_bipartite(&f, &swap).is_empty());

        assert!(matches!(
            build_aux_bipartite(&f, &Permutation::identity(3)),
            Err(ReductionError::SizeMismatch(_))
        ));
    }

    #[test]
    fn aux_digraph_examples() {
        let f = GraphFamily::new(4, vec![Graph::complete(4); 4]);
        assert_eq!(
            build_aux_digraph(&f, &Permutation::from_images(vec![3, 1, 0, 2]).unwrap()).unwrap(),
            Digraph::complete(4)
        );

        let c1 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let f = GraphFamily::new(2, vec![c1, Graph::empty(2)]);
        let d = build_aux_digraph(&f, &Permutation::identity(2)).unwrap();
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(0, 1)]);

        let h = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4), (0, 4)]).unwrap();
        let f = GraphFamily::new(5, vec![h.clone(); 5]);
        for pi in Permutation::all(5) {
            assert_eq!(build_aux_digraph(&f, &pi).unwrap(), Digraph::bidirected(&h));
        }
        assert!(build_aux_digraph(&f, &Permutation::identity(4)).is_err());
    }

    fn hand_hyper_family() -> HyperFamily {
        let mut a = KPartiteHypergraph::empty(3, 2);
        a.add_edge(vec![0, 0, 0]).unwrap();
        a.add_edge(vec![1, 1, 0]).unwrap();
        a.add_edge(vec![1, 0, 1]).unwrap();
        let mut b = KPartiteHypergraph::empty(3, 2);
        b.add_edge(vec![0, 1, 1]).unwrap();
        b.add_edge(vec![1, 1, 1]).unwrap();
        b.add_edge(vec![0, 0, 1]).unwrap();
        HyperFamily::new(3, 2, vec![a, b])
    }

    #[test]
    fn aux_kpartite_examples() {
        let full = HyperFamily::new(3, 3, vec![KPartiteHypergraph::complete(3, 3); 3]);
        let pi = Permutation::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(build_aux_kpartite(&full, &pi).unwrap(), KPartiteHypergraph::complete(3, 3));

        let f = hand_hyper_family();
        for pi in Permutation::all(2) {
            let aux = build_aux_kpartite(&f, &pi).unwrap();
            // definition scan over all crossing tuples
            for t in crate::graph::all_crossing_tuples(&[2, 2, 2]) {
                assert_eq!(aux.contains(&t), f.color(pi.apply(t[0])).contains(&t), "{t:?}");
            }
        }
        let same = HyperFamily::new(3, 2, vec![f.color(0).clone(); 2]);
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        assert_eq!(build_aux_kpartite(&same, &swap).unwrap(), *f.color(0));
    }

    #[test]
    fn lift_matching_examples() {
        let f = two_color_bipartite();
        let rs = lift_matching(&[(0, 0), (1, 1)], &Permutation::identity(2), &f).unwrap();
        let colors: BTreeSet<usize> = rs.elements.iter().map(|e| e.color).collect();
        assert_eq!(colors, BTreeSet::from([0, 1]));
        assert!(verify_rainbow(&rs, &f).passed());

        let single = BipartiteFamily::new(
            BalancedPartition::canonical(2).unwrap(),
            vec![BipartiteGraph::complete(1, 1)],
        );
        let rs = lift_matching(&[(0, 0)], &Permutation::identity(1), &single).unwrap();
        assert_eq!(rs.elements, vec![RainbowEdge { vertices: vec![0, 1], color: 0 }]);

        assert!(matches!(
            lift_matching(&[(0, 0)], &Permutation::identity(2), &f),
            Err(ReductionError::NotPerfect(_))
        ));
        assert!(lift_matching(&[(0, 0), (1, 0)], &Permutation::identity(2), &f).is_err());
    }

    #[test]
    fn lift_cycle_examples() {
        let f = GraphFamily::new(3, vec![Graph::complete(3); 3]);
        let pi = Permutation::from_images(vec![2, 0, 1]).unwrap();
        let rs = lift_cycle(&[0, 1, 2], &pi, &f).unwrap();
        let colors: Vec<usize> = rs.elements.iter().map(|e| e.color).collect();
        assert_eq!(colors, vec![2, 0, 1]);
        assert!(verify_rainbow(&rs, &f).passed());

        let f2 = GraphFamily::new(2, vec![Graph::complete(2); 2]);
        assert!(matches!(
            lift_cycle(&[0, 1], &Permutation::identity(2), &f2),
            Err(ReductionError::NotHamiltonian(_))
        ));
        assert!(lift_cycle(&[0, 1, 1], &pi, &f).is_err());
        assert!(lift_cycle(&[0, 1], &pi, &f).is_err());
    }

    #[test]
    fn lift_hyper_examples() {
        let one = HyperFamily::new(3, 1, vec![KPartiteHypergraph::complete(3, 1)]);
        let rs = lift_hyper_matching(&[vec![0, 0, 0]], &Permutation::identity(1), &one).unwrap();
        assert_eq!(rs.elements[0].color, 0);
        assert!(verify_rainbow(&rs, &one).passed());

        // hand-built instance: π = id gives H_π with edges {000, 110, 101} ∪ {} from color 0
        // (a1 = 0 takes color 0) and {111} from color 1 (a1 = 1); {000, 111} is a PM.
        let f = hand_hyper_family();
        let pm = vec![vec![0, 0, 0], vec![1, 1, 1]];
        let rs = lift_hyper_matching(&pm, &Permutation::identity(2), &f).unwrap();
        assert!(verify_rainbow(&rs, &f).passed());
        // exhaustive: among all pairs of disjoint crossing triples, those that pass
        // verification are exactly the rainbow PMs of the family
        let swapped = lift_hyper_matching(&pm, &Permutation::from_images(vec![1, 0]).unwrap(), &f).unwrap();
        assert!(!verify_rainbow(&swapped, &f).passed());

        assert!(lift_hyper_matching(&[vec![0, 0, 0], vec![1, 0, 1]], &Permutation::identity(2), &f).is_err());
    }

    #[test]
    fn verify_flags_violations() {
        let f = GraphFamily::new(4, vec![Graph::complete(4), Graph::from_edges(4, &[(0, 1)]).unwrap()]);
        let good = RainbowStructure {
            kind: RainbowKind::Matching,
            elements: vec![
                RainbowEdge { vertices: vec![2, 3], color: 0 },
                RainbowEdge { vertices: vec![0, 1], color: 1 },
            ],
        };
        assert!(verify_rainbow(&good, &f).passed());

        let mut dup = good.clone();
        dup.elements[1].color = 0;
        let r = verify_rainbow(&dup, &f);
        assert!(r.violations.contains(&RainbowViolation::ColorUsedTwice(0)));
        assert!(r.violations.contains(&RainbowViolation::ColorMissing(1)));

        let mut moved = good.clone();
        moved.elements.swap(0, 1);
        moved.elements[0].color = 1;
        moved.elements[1].color = 0;
        moved.elements[0].vertices = vec![2, 3];
        moved.elements[1].vertices = vec![0, 1];
        let r = verify_rainbow(&moved, &f);
        assert_eq!(
            r.violations,
            vec![RainbowViolation::EdgeNotInColor { edge: vec![2, 3], color: 1 }]
        );
    }

    #[test]
    fn verify_rejects_two_triangles_as_cycle() {
        let f = GraphFamily::new(6, vec![Graph::complete(6); 6]);
        let tri = |a: usize, b: usize, c: usize, col: usize| {
            vec![
                RainbowEdge { vertices: vec![a, b], color: col },
                RainbowEdge { vertices: vec![b, c], color: col + 1 },
                RainbowEdge { vertices: vec![c, a], color: col + 2 },
            ]
        };
        let mut elements = tri(0, 1, 2, 0);
        elements.extend(tri(3, 4, 5, 3));
        let rs = RainbowStructure { kind: RainbowKind::HamiltonCycle, elements };
        assert_eq!(verify_rainbow(&rs, &f).violations, vec![RainbowViolation::NotASingleCycle]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn aux_graphs_match_definition_scan(n in 2usize..9, p in 0.0f64..1.0, s in any::<u64>()) {
            let seed = RandomSeed::new(s);
            let f = sample_family(n, n, p, seed).unwrap();
            let pi = sample_permutation(n, seed.with_object(99));
            let d = build_aux_digraph(&f, &pi).unwrap();
            prop_assert_eq!(d.arcs().collect::<BTreeSet<_>>(), scan_digraph(&f, &pi));

            let even = 2 * n;
            let g = sample_family(even, n, p, seed.with_trial(1)).unwrap();
            let part = sample_balanced_partition(even, seed.with_trial(2)).unwrap();
            let b = induce_bipartite(&g, &part);
            let aux = build_aux_bipartite(&b, &pi).unwrap();
            prop_assert_eq!(aux.edges().collect::<BTreeSet<_>>(), scan_bipartite(&b, &pi));
        }

        #[test]
        fn aux_graphs_are_monotone(n in 2usize..9, s in any::<u64>()) {
            let seed = RandomSeed::new(s);
            let big = sample_family(n, n, 0.7, seed).unwrap();
            let small = GraphFamily::new(n, big.colors().iter().map(|g| {
                let mut h = g.clone();
                for (u, v) in g.edges().step_by(2) { h.remove_edge(u, v); }
                h
            }).collect());
            let pi = sample_permutation(n, seed.with_object(5));
            prop_assert!(build_aux_digraph(&small, &pi).unwrap()
                .is_subgraph_of(&build_aux_digraph(&big, &pi).unwrap()));
        }
    }
}
