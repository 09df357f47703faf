//! Spanning subgraphs `H_i ⊆ G_i` with a minimum-degree floor.
//!
//! A finite portfolio of deletion strategies stands in for "every spanning
//! subgraph": each strategy only deletes edges, and never takes a vertex below
//! its target degree.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::distr::{Bernoulli, Distribution};
use rand::seq::SliceRandom;
use thiserror::Error;

use crate::family::ColorFamily;
use crate::graph::{BipartiteGraph, Graph};
use crate::sampling::{stream, RandomSeed};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdversaryError {
    #[error("floor {floor} unreachable: color {color} vertex {vertex} has host degree {degree}")]
    UnsatisfiableFloor {
        color: usize,
        vertex: usize,
        degree: usize,
        floor: usize,
    },
    #[error("focus vertex {focus} out of range for {n} vertices")]
    FocusOutOfRange { focus: usize, n: usize },
    #[error("families differ in shape: {0}")]
    DimensionMismatch(String),
    #[error("unknown adversary strategy `{0}`")]
    UnknownStrategy(String),
    #[error("unknown floor policy `{0}`")]
    UnknownPolicy(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdversaryStrategy {
    None,
    RandomThinning,
    GreedyGlobal,
    BipartiteBias,
    StarCut { focus: usize },
}

impl AdversaryStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            AdversaryStrategy::None => "none",
            AdversaryStrategy::RandomThinning => "random-thinning",
            AdversaryStrategy::GreedyGlobal => "greedy-global",
            AdversaryStrategy::BipartiteBias => "bipartite-bias",
            AdversaryStrategy::StarCut { .. } => "star-cut",
        }
    }
}

impl fmt::Display for AdversaryStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AdversaryStrategy {
    type Err = AdversaryError;

    /// `star-cut` parses with focus 0; set the focus separately.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "none" => AdversaryStrategy::None,
            "random-thinning" => AdversaryStrategy::RandomThinning,
            "greedy-global" => AdversaryStrategy::GreedyGlobal,
            "bipartite-bias" => AdversaryStrategy::BipartiteBias,
            "star-cut" => AdversaryStrategy::StarCut { focus: 0 },
            other => return Err(AdversaryError::UnknownStrategy(other.to_string())),
        })
    }
}

/// Rounding slack so that products like `0.6 * 60` round to 36, not 37.
const CEIL_SLACK: f64 = 1e-9;

fn ceil_guarded(x: f64) -> usize {
    (x - CEIL_SLACK).ceil().max(0.0) as usize
}

/// `ceil((1/2 + ε) n p)`: the floor for colors on `n` vertices.
pub fn full_floor(n: usize, p: f64, eps: f64) -> usize {
    ceil_guarded((0.5 + eps) * n as f64 * p)
}

/// `ceil((1/2 + ε) n p / 2)`: the floor for bipartite colors with parts of
/// size `n / 2`.
pub fn bipartite_floor(n: usize, p: f64, eps: f64) -> usize {
    ceil_guarded((0.5 + eps) * n as f64 * p / 2.0)
}

/// `ceil((1/2 + ε) n^{k-d})`: the crossing d-set codegree floor for k-partite
/// colors with parts of size `n`.
pub fn kpartite_floor(n: usize, k: usize, d: usize, eps: f64) -> usize {
    assert!(d < k, "codegree order must be below the uniformity");
    ceil_guarded((0.5 + eps) * (n as f64).powi((k - d) as i32))
}

/// What to do with a vertex whose host degree is already below the floor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FloorPolicy {
    /// Refuse: the floor is unsatisfiable for this host.
    #[default]
    Strict,
    /// The vertex keeps every host edge; its target is its host degree.
    CapAtHost,
}

impl FromStr for FloorPolicy {
    type Err = AdversaryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(FloorPolicy::Strict),
            "cap-at-host" => Ok(FloorPolicy::CapAtHost),
            other => Err(AdversaryError::UnknownPolicy(other.to_string())),
        }
    }
}

impl fmt::Display for FloorPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FloorPolicy::Strict => "strict",
            FloorPolicy::CapAtHost => "cap-at-host",
        })
    }
}

/// Graphs the adversary can thin. Vertices are indexed `0..vertex_count()`;
/// for bipartite colors the right part follows the left part.
pub trait Thinnable: Clone {
    fn vertex_count(&self) -> usize;
    fn degree(&self, v: usize) -> usize;
    fn contains_edge(&self, u: usize, v: usize) -> bool;
    fn insert_edge(&mut self, u: usize, v: usize);
    fn delete_edge(&mut self, u: usize, v: usize);
    /// Incident vertices of `v`, ascending.
    fn incident(&self, v: usize) -> Vec<usize>;
    /// Edges `(u, v)`, `u < v`, lexicographic.
    fn edge_list(&self) -> Vec<(usize, usize)>;
    /// The side whose internal edges the `bipartite-bias` strategy removes.
    fn bias_side(&self) -> Vec<bool>;
    fn is_spanning_subgraph_of(&self, host: &Self) -> bool;

    fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).collect()
    }
}

impl Thinnable for Graph {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn degree(&self, v: usize) -> usize {
        Graph::degree(self, v)
    }

    fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v)
    }

    fn insert_edge(&mut self, u: usize, v: usize) {
        self.add_edge(u, v);
    }

    fn delete_edge(&mut self, u: usize, v: usize) {
        self.remove_edge(u, v);
    }

    fn incident(&self, v: usize) -> Vec<usize> {
        self.neighbors(v).collect()
    }

    fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    fn bias_side(&self) -> Vec<bool> {
        let n = self.n();
        (0..n).map(|v| v < n / 2).collect()
    }

    fn is_spanning_subgraph_of(&self, host: &Self) -> bool {
        self.is_subgraph_of(host)
    }
}

impl Thinnable for BipartiteGraph {
    fn vertex_count(&self) -> usize {
        self.left() + self.right()
    }

    fn degree(&self, v: usize) -> usize {
        if v < self.left() {
            self.left_degree(v)
        } else {
            self.right_degree(v - self.left())
        }
    }

    fn contains_edge(&self, u: usize, v: usize) -> bool {
        let (i, j) = self.split(u, v);
        self.has_edge(i, j)
    }

    fn insert_edge(&mut self, u: usize, v: usize) {
        let (i, j) = self.split(u, v);
        self.add_edge(i, j);
    }

    fn delete_edge(&mut self, u: usize, v: usize) {
        let (i, j) = self.split(u, v);
        self.remove_edge(i, j);
    }

    fn incident(&self, v: usize) -> Vec<usize> {
        let l = self.left();
        if v < l {
            self.left_neighbors(v).map(|j| j + l).collect()
        } else {
            (0..l).filter(|&i| self.has_edge(i, v - l)).collect()
        }
    }

    fn edge_list(&self) -> Vec<(usize, usize)> {
        let l = self.left();
        self.edges().map(|(i, j)| (i, j + l)).collect()
    }

    /// First half of each part: edges inside this block are the ones removed.
    fn bias_side(&self) -> Vec<bool> {
        let (l, r) = (self.left(), self.right());
        (0..l).map(|i| i < l / 2).chain((0..r).map(|j| j < r / 2)).collect()
    }

    fn is_spanning_subgraph_of(&self, host: &Self) -> bool {
        self.is_subgraph_of(host)
    }
}

trait SplitGlobal {
    fn split(&self, u: usize, v: usize) -> (usize, usize);
}

impl SplitGlobal for BipartiteGraph {
    fn split(&self, u: usize, v: usize) -> (usize, usize) {
        let l = self.left();
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        assert!(a < l && b >= l, "edge ({u}, {v}) does not cross the parts");
        (a, b - l)
    }
}

/// Per-vertex target degrees for one color.
fn targets<G: Thinnable>(
    host: &G,
    color: usize,
    floor: usize,
    policy: FloorPolicy,
) -> Result<Vec<usize>, AdversaryError> {
    host.degrees()
        .into_iter()
        .enumerate()
        .map(|(vertex, degree)| match policy {
            _ if degree >= floor => Ok(floor),
            FloorPolicy::CapAtHost => Ok(degree),
            FloorPolicy::Strict => Err(AdversaryError::UnsatisfiableFloor {
                color,
                vertex,
                degree,
                floor,
            }),
        })
        .collect()
}

/// Applies `strategy` to every color. The result satisfies `H_i ⊆ G_i` and
/// `d_{H_i}(v) >= target(v)` for all colors and vertices, where the target is
/// `floor` (or the host degree, under [`FloorPolicy::CapAtHost`]).
pub fn apply_adversary<F>(
    family: &F,
    strategy: AdversaryStrategy,
    floor: usize,
    policy: FloorPolicy,
    seed: RandomSeed,
) -> Result<F, AdversaryError>
where
    F: ColorFamily,
    F::Color: Thinnable,
{
    let mut colors = Vec::with_capacity(family.colors().len());
    for (c, host) in family.colors().iter().enumerate() {
        let target = targets(host, c, floor, policy)?;
        let cseed = seed.with_object(stream::ADVERSARY + c as u64);
        let thinned = match strategy {
            AdversaryStrategy::None => host.clone(),
            AdversaryStrategy::RandomThinning => random_thinning(host, floor, &target, cseed),
            AdversaryStrategy::GreedyGlobal => greedy_global(host, &target),
            AdversaryStrategy::BipartiteBias => bipartite_bias(host, &target),
            AdversaryStrategy::StarCut { focus } => {
                let n = host.vertex_count();
                if focus >= n {
                    return Err(AdversaryError::FocusOutOfRange { focus, n });
                }
                star_cut(host, &target, focus)
            }
        };
        assert!(thinned.is_spanning_subgraph_of(host));
        assert!(thinned.degrees().iter().zip(&target).all(|(d, t)| d >= t));
        colors.push(thinned);
    }
    Ok(family.with_colors(colors))
}

/// Deletes every edge independently with the largest probability `q` for
/// which each vertex still meets the floor in expectation,
/// `q = 1 - floor / min{d(v) : d(v) >= floor}`, then re-adds deleted edges at
/// deficient vertices.
fn random_thinning<G: Thinnable>(host: &G, floor: usize, target: &[usize], seed: RandomSeed) -> G {
    let mut rng = seed.rng();
    let degrees = host.degrees();
    let q = if floor == 0 {
        1.0
    } else {
        degrees
            .iter()
            .copied()
            .filter(|&d| d >= floor)
            .min()
            .map_or(0.0, |d| 1.0 - floor as f64 / d as f64)
    };
    let coin = Bernoulli::new(q.clamp(0.0, 1.0)).expect("q in [0, 1]");
    let mut h = host.clone();
    for (u, v) in host.edge_list() {
        if coin.sample(&mut rng) {
            h.delete_edge(u, v);
        }
    }
    for (v, &want) in target.iter().enumerate() {
        let mut deficit = want.saturating_sub(h.degree(v));
        if deficit == 0 {
            continue;
        }
        let mut deleted: Vec<usize> = host
            .incident(v)
            .into_iter()
            .filter(|&u| !h.contains_edge(u, v))
            .collect();
        deleted.shuffle(&mut rng);
        for u in deleted {
            if deficit == 0 {
                break;
            }
            h.insert_edge(u, v);
            deficit -= 1;
        }
    }
    h
}

/// Repeatedly removes the edge with the largest total slack
/// `(d(u) - t(u)) + (d(v) - t(v))` among edges whose endpoints both have
/// positive slack. Ties go to the lexicographically smallest pair.
fn greedy_global<G: Thinnable>(host: &G, target: &[usize]) -> G {
    let mut h = host.clone();
    let mut slack: Vec<isize> = h
        .degrees()
        .iter()
        .zip(target)
        .map(|(&d, &t)| d as isize - t as isize)
        .collect();
    let key = |slack: &[isize], u: usize, v: usize| (Reverse(slack[u] + slack[v]), u, v);
    let mut queue: BTreeSet<(Reverse<isize>, usize, usize)> = h
        .edge_list()
        .into_iter()
        .filter(|&(u, v)| slack[u] > 0 && slack[v] > 0)
        .map(|(u, v)| key(&slack, u, v))
        .collect();

    while let Some((_, u, v)) = queue.pop_first() {
        h.delete_edge(u, v);
        // every remaining edge at u or v changes key
        let mut touched = Vec::new();
        for x in [u, v] {
            for w in h.incident(x) {
                let (a, b) = if x < w { (x, w) } else { (w, x) };
                if queue.remove(&key(&slack, a, b)) {
                    touched.push((a, b));
                }
            }
        }
        slack[u] -= 1;
        slack[v] -= 1;
        touched.sort_unstable();
        touched.dedup();
        for (a, b) in touched {
            if slack[a] > 0 && slack[b] > 0 {
                queue.insert(key(&slack, a, b));
            }
        }
    }
    h
}

/// Removes edges inside the bias side, lexicographically, while both
/// endpoints stay at or above target.
fn bipartite_bias<G: Thinnable>(host: &G, target: &[usize]) -> G {
    let side = host.bias_side();
    let mut h = host.clone();
    let mut deg = h.degrees();
    for (u, v) in host.edge_list() {
        if side[u] && side[v] && deg[u] > target[u] && deg[v] > target[v] {
            h.delete_edge(u, v);
            deg[u] -= 1;
            deg[v] -= 1;
        }
    }
    h
}

/// Strips edges at `focus` (lowest neighbour first) down to its target,
/// skipping neighbours that have no slack.
fn star_cut<G: Thinnable>(host: &G, target: &[usize], focus: usize) -> G {
    let mut h = host.clone();
    let mut deg = h.degrees();
    for u in host.incident(focus) {
        if deg[focus] <= target[focus] {
            break;
        }
        if deg[u] > target[u] {
            h.delete_edge(focus, u);
            deg[focus] -= 1;
            deg[u] -= 1;
        }
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubfamilyViolation {
    /// `sub` color has an edge the host color lacks.
    NotContained { color: usize, u: usize, v: usize },
    BelowFloor { color: usize, vertex: usize, degree: usize, target: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubfamilyReport {
    pub violations: Vec<SubfamilyViolation>,
}

impl SubfamilyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Re-checks containment and the strict floor for every color.
pub fn verify_subfamily<F>(host: &F, sub: &F, floor: usize) -> Result<SubfamilyReport, AdversaryError>
where
    F: ColorFamily,
    F::Color: Thinnable,
{
    verify_subfamily_with(host, sub, floor, FloorPolicy::Strict)
}

/// As [`verify_subfamily`]; under [`FloorPolicy::CapAtHost`] a vertex's target
/// is `min(floor, host degree)`.
pub fn verify_subfamily_with<F>(
    host: &F,
    sub: &F,
    floor: usize,
    policy: FloorPolicy,
) -> Result<SubfamilyReport, AdversaryError>
where
    F: ColorFamily,
    F::Color: Thinnable,
{
    let (hc, sc) = (host.colors(), sub.colors());
    if hc.len() != sc.len() {
        return Err(AdversaryError::DimensionMismatch(format!(
            "{} vs {} colors",
            hc.len(),
            sc.len()
        )));
    }
    let mut report = SubfamilyReport::default();
    for (color, (h, s)) in hc.iter().zip(sc).enumerate() {
        if h.vertex_count() != s.vertex_count() {
            return Err(AdversaryError::DimensionMismatch(format!(
                "color {color}: {} vs {} vertices",
                h.vertex_count(),
                s.vertex_count()
            )));
        }
        for (u, v) in s.edge_list() {
            if !h.contains_edge(u, v) {
                report.violations.push(SubfamilyViolation::NotContained { color, u, v });
            }
        }
        for vertex in 0..s.vertex_count() {
            let degree = s.degree(vertex);
            let target = match policy {
                FloorPolicy::Strict => floor,
                FloorPolicy::CapAtHost => floor.min(h.degree(vertex)),
            };
            if degree < target {
                report.violations.push(SubfamilyViolation::BelowFloor {
                    color,
                    vertex,
                    degree,
                    target,
                });
            }
        }
    }
    Ok(report)
}

/// Every spanning subgraph of `K_n` with minimum degree at least `floor`.
/// Exhaustive, so only meant for `n <= 6`.
pub fn floor_subgraphs(n: usize, floor: usize) -> Vec<Graph> {
    assert!(n <= 6, "exhaustive subgraph enumeration is limited to n <= 6");
    let pairs: Vec<(usize, usize)> = Graph::complete(n).edges().collect();
    (0u32..1 << pairs.len())
        .filter_map(|mask| {
            let mut g = Graph::empty(n);
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            (g.min_degree() >= floor).then_some(g)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floors_round_up_without_float_noise() {
        assert_eq!(full_floor(400, 0.15, 0.1), 36);
        assert_eq!(full_floor(150, 0.4, 0.1), 36);
        assert_eq!(full_floor(10, 0.35, 0.1), 3);
        assert_eq!(bipartite_floor(400, 0.2, 0.1), 24);
        assert_eq!(bipartite_floor(400, 0.15, 0.1), 18);
        assert_eq!(kpartite_floor(6, 3, 2, 0.1), 4);
        assert_eq!(full_floor(10, 1.0, 0.0), 5);
        assert_eq!(full_floor(10, 0.0, 0.3), 0);
    }
    use crate::family::{BipartiteFamily, GraphFamily};
    use crate::graph::BalancedPartition;
    use crate::sampling::{sample_bipartite_family, sample_family};
    use proptest::prelude::*;

    fn seed() -> RandomSeed {
        RandomSeed::new(11)
    }

    fn complete_family(n: usize, m: usize) -> GraphFamily {
        GraphFamily::new(n, vec![Graph::complete(n); m])
    }

    const ALL: [AdversaryStrategy; 5] = [
        AdversaryStrategy::None,
        AdversaryStrategy::RandomThinning,
        AdversaryStrategy::GreedyGlobal,
        AdversaryStrategy::BipartiteBias,
        AdversaryStrategy::StarCut { focus: 0 },
    ];

    #[test]
    fn none_is_identity() {
        let f = sample_family(12, 3, 0.5, seed()).unwrap();
        let out = apply_adversary(&f, AdversaryStrategy::None, 0, FloorPolicy::Strict, seed()).unwrap();
        assert_eq!(out, f);
    }

    #[test]
    fn greedy_zero_floor_empties_k4() {
        let f = complete_family(4, 1);
        let out = apply_adversary(&f, AdversaryStrategy::GreedyGlobal, 0, FloorPolicy::Strict, seed()).unwrap();
        assert_eq!(out.color(0).edge_count(), 0);
    }

    #[test]
    fn greedy_leaves_no_removable_edge() {
        let f = sample_family(30, 2, 0.6, seed()).unwrap();
        let floor = f.min_degree() / 2;
        let out = apply_adversary(&f, AdversaryStrategy::GreedyGlobal, floor, FloorPolicy::Strict, seed()).unwrap();
        for g in out.colors() {
            assert!(g.edges().all(|(u, v)| g.degree(u) == floor || g.degree(v) == floor));
        }
    }

    #[test]
    fn star_cut_on_k6() {
        let f = complete_family(6, 2);
        for focus in 0..6 {
            let out = apply_adversary(
                &f,
                AdversaryStrategy::StarCut { focus },
                3,
                FloorPolicy::Strict,
                seed(),
            )
            .unwrap();
            for g in out.colors() {
                // exhaustive degree check
                for v in 0..6 {
                    let d = g.degree(v);
                    if v == focus {
                        assert_eq!(d, 3);
                    } else {
                        assert!(d >= 3);
                    }
                }
            }
        }
    }

    #[test]
    fn star_cut_focus_is_checked() {
        let f = complete_family(4, 1);
        let err = apply_adversary(
            &f,
            AdversaryStrategy::StarCut { focus: 4 },
            1,
            FloorPolicy::Strict,
            seed(),
        );
        assert_eq!(err, Err(AdversaryError::FocusOutOfRange { focus: 4, n: 4 }));
    }

    #[test]
    fn strict_floor_reports_first_violation() {
        let mut g = Graph::complete(5);
        g.remove_edge(2, 3);
        let f = GraphFamily::new(5, vec![Graph::complete(5), g]);
        let err = apply_adversary(&f, AdversaryStrategy::None, 4, FloorPolicy::Strict, seed());
        assert_eq!(
            err,
            Err(AdversaryError::UnsatisfiableFloor { color: 1, vertex: 2, degree: 3, floor: 4 })
        );
        let capped = apply_adversary(&f, AdversaryStrategy::GreedyGlobal, 4, FloorPolicy::CapAtHost, seed()).unwrap();
        assert_eq!(capped.color(1).degree(2), 3);
    }

    #[test]
    fn bias_removes_edges_inside_the_side() {
        let f = complete_family(8, 1);
        let out = apply_adversary(&f, AdversaryStrategy::BipartiteBias, 4, FloorPolicy::Strict, seed()).unwrap();
        let g = out.color(0);
        // side {0,1,2,3}: degree 7 each, slack 3, and the side has exactly 3 internal edges per vertex
        for u in 0..4 {
            for v in u + 1..4 {
                assert!(!g.has_edge(u, v));
            }
        }
        assert_eq!(g.min_degree(), 4);
    }

    #[test]
    fn bipartite_colors_are_thinned() {
        let part = BalancedPartition::canonical(40).unwrap();
        let f: BipartiteFamily = sample_bipartite_family(&part, 20, 0.5, seed()).unwrap();
        let floor = 6;
        for strategy in ALL {
            let out = apply_adversary(&f, strategy, floor, FloorPolicy::CapAtHost, seed()).unwrap();
            let report = verify_subfamily_with(&f, &out, floor, FloorPolicy::CapAtHost).unwrap();
            assert!(report.passed(), "{strategy}: {:?}", report.violations);
        }
    }

    #[test]
    fn verify_detects_extra_edge_and_mismatch() {
        let mut sub = Graph::complete(4);
        sub.remove_edge(0, 1);
        let host = GraphFamily::new(4, vec![sub.clone()]);
        let same = verify_subfamily(&host, &host, host.min_degree()).unwrap();
        assert!(same.passed());

        let bigger = GraphFamily::new(4, vec![Graph::complete(4)]);
        let report = verify_subfamily(&host, &bigger, 0).unwrap();
        assert_eq!(
            report.violations,
            vec![SubfamilyViolation::NotContained { color: 0, u: 0, v: 1 }]
        );

        let two = GraphFamily::new(4, vec![sub.clone(), sub]);
        assert!(matches!(
            verify_subfamily(&host, &two, 0),
            Err(AdversaryError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn random_thinning_passes_direct_recheck() {
        let f = sample_family(60, 4, 0.5, seed()).unwrap();
        let floor = f.min_degree() * 3 / 4;
        let out = apply_adversary(&f, AdversaryStrategy::RandomThinning, floor, FloorPolicy::Strict, seed()).unwrap();
        // direct re-check, independent of verify_subfamily
        for (h, g) in out.colors().iter().zip(f.colors()) {
            for (u, v) in h.edges() {
                assert!(g.has_edge(u, v));
            }
            assert!((0..60).all(|v| h.degree(v) >= floor));
            assert!(h.edge_count() < g.edge_count());
        }
        assert!(verify_subfamily(&f, &out, floor).unwrap().passed());
    }

    #[test]
    fn exhaustive_floor_subgraphs() {
        // K_3: every subgraph has δ >= 0; only K_3 itself has δ >= 2
        assert_eq!(floor_subgraphs(3, 0).len(), 8);
        assert_eq!(floor_subgraphs(3, 2), vec![Graph::complete(3)]);
        assert!(floor_subgraphs(4, 2).iter().all(|g| g.min_degree() >= 2));
    }

    #[test]
    fn names_round_trip() {
        for s in ALL {
            assert_eq!(s.name().parse::<AdversaryStrategy>().unwrap().name(), s.name());
        }
        assert!("worst".parse::<AdversaryStrategy>().is_err());
        assert_eq!("cap-at-host".parse::<FloorPolicy>().unwrap(), FloorPolicy::CapAtHost);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn every_strategy_respects_floor_and_containment(
            n in 4usize..24, p in 0.2f64..1.0, s in any::<u64>(), which in 0usize..5, frac in 0.0f64..1.0
        ) {
            let f = sample_family(n, 3, p, RandomSeed::new(s)).unwrap();
            let floor = (f.min_degree() as f64 * frac) as usize;
            let strategy = match ALL[which] {
                AdversaryStrategy::StarCut { .. } => AdversaryStrategy::StarCut { focus: s as usize % n },
                other => other,
            };
            let a = apply_adversary(&f, strategy, floor, FloorPolicy::Strict, RandomSeed::new(s)).unwrap();
            let b = apply_adversary(&f, strategy, floor, FloorPolicy::Strict, RandomSeed::new(s)).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert!(verify_subfamily(&f, &a, floor).unwrap().passed());
        }

        #[test]
        fn star_cut_hits_floor_when_neighbours_have_slack(n in 5usize..16, floor in 1usize..4, focus in 0usize..5) {
            let f = GraphFamily::new(n, vec![Graph::complete(n); 2]);
            let out = apply_adversary(&f, AdversaryStrategy::StarCut { focus }, floor, FloorPolicy::Strict, seed()).unwrap();
            for g in out.colors() {
                prop_assert_eq!(g.degree(focus), floor);
            }
        }
    }
}
