//! Graph systems: ordered sequences of colors on a shared vertex set.

use crate::graph::{BalancedPartition, BipartiteGraph, Graph, KPartiteHypergraph};

/// Colors `G_1, ..., G_m` on the vertex set `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFamily {
    n: usize,
    colors: Vec<Graph>,
}

impl GraphFamily {
    /// Panics if a color has a different vertex count.
    pub fn new(n: usize, colors: Vec<Graph>) -> Self {
        assert!(colors.iter().all(|g| g.n() == n), "colors must share the vertex set");
        GraphFamily { n, colors }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[Graph] {
        &self.colors
    }

    pub fn color(&self, c: usize) -> &Graph {
        &self.colors[c]
    }

    pub fn min_degree(&self) -> usize {
        self.colors.iter().map(Graph::min_degree).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.colors.iter().map(Graph::max_degree).max().unwrap_or(0)
    }
}

/// Bipartite colors on a common balanced bipartition. Color graphs use local
/// indices (`i` is `partition.first()[i]`, `j` is `partition.second()[j]`),
/// which realizes the relabeling `V1 = [m]` while keeping original labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteFamily {
    partition: BalancedPartition,
    colors: Vec<BipartiteGraph>,
}

impl BipartiteFamily {
    pub fn new(partition: BalancedPartition, colors: Vec<BipartiteGraph>) -> Self {
        let h = partition.half();
        assert!(
            colors.iter().all(|b| b.left() == h && b.right() == h),
            "colors must live on the shared bipartition"
        );
        BipartiteFamily { partition, colors }
    }

    pub fn partition(&self) -> &BalancedPartition {
        &self.partition
    }

    /// Part size.
    pub fn half(&self) -> usize {
        self.partition.half()
    }

    pub fn m(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[BipartiteGraph] {
        &self.colors
    }

    pub fn color(&self, c: usize) -> &BipartiteGraph {
        &self.colors[c]
    }

    pub fn min_degree(&self) -> usize {
        self.colors.iter().map(BipartiteGraph::min_degree).min().unwrap_or(0)
    }
}

/// k-partite k-graph colors on a shared k-partition with parts of size `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperFamily {
    k: usize,
    n: usize,
    colors: Vec<KPartiteHypergraph>,
}

impl HyperFamily {
    pub fn new(k: usize, n: usize, colors: Vec<KPartiteHypergraph>) -> Self {
        assert!(
            colors.iter().all(|h| h.k() == k && h.uniform_part_size() == Some(n)),
            "colors must share the k-partition"
        );
        HyperFamily { k, n, colors }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[KPartiteHypergraph] {
        &self.colors
    }

    pub fn color(&self, c: usize) -> &KPartiteHypergraph {
        &self.colors[c]
    }
}

/// Uniform access to families whose colors can be thinned by an adversary.
pub trait ColorFamily: Sized {
    type Color: Clone + Send + Sync;

    fn colors(&self) -> &[Self::Color];
    fn with_colors(&self, colors: Vec<Self::Color>) -> Self;
}

impl ColorFamily for GraphFamily {
    type Color = Graph;

    fn colors(&self) -> &[Graph] {
        &self.colors
    }

    fn with_colors(&self, colors: Vec<Graph>) -> Self {
        GraphFamily::new(self.n, colors)
    }
}

impl ColorFamily for BipartiteFamily {
    type Color = BipartiteGraph;

    fn colors(&self) -> &[BipartiteGraph] {
        &self.colors
    }

    fn with_colors(&self, colors: Vec<BipartiteGraph>) -> Self {
        BipartiteFamily::new(self.partition.clone(), colors)
    }
}
