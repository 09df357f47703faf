//! Witness finders: bipartite perfect matching (exact), directed Hamilton
//! cycle (exact for tiny `n`, rotation-extension otherwise), and k-partite
//! hypergraph perfect matching (exact backtracking).

use std::collections::{HashSet, VecDeque};
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BipartiteGraph, Digraph, KPartiteHypergraph};
use crate::sampling::{stream, RandomSeed};

/// Largest `n` handled by exact Hamilton search.
pub const EXACT_HAMILTON_LIMIT: usize = 12;
/// Per-part size limit of the k-partite matcher.
pub const KPARTITE_PART_LIMIT: usize = 16;
/// Arity limit of the k-partite matcher.
pub const KPARTITE_ARITY_LIMIT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("bipartite parts differ: {left} vs {right}")]
    UnbalancedParts { left: usize, right: usize },
    #[error("Hamilton cycle needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("part sizes differ: {0:?}")]
    PartSizeMismatch(Vec<usize>),
    #[error("instance too large for exact search: {0}")]
    TooLarge(String),
    #[error("solver budget limits must be positive")]
    InvalidBudget,
}

/// Search limits. The node limit is deterministic; the wall-clock limit is a
/// safety net and makes results timing-dependent only when it fires.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveBudget {
    node_limit: u64,
    time_limit: Duration,
    restarts: u32,
}

impl SolveBudget {
    pub fn new(node_limit: u64, time_limit: Duration, restarts: u32) -> Result<Self, SolverError> {
        if node_limit == 0 || time_limit.is_zero() || restarts == 0 {
            return Err(SolverError::InvalidBudget);
        }
        Ok(SolveBudget {
            node_limit,
            time_limit,
            restarts,
        })
    }

    pub fn node_limit(&self) -> u64 {
        self.node_limit
    }

    pub fn time_limit(&self) -> Duration {
        self.time_limit
    }

    pub fn restarts(&self) -> u32 {
        self.restarts
    }
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            node_limit: 5_000_000,
            time_limit: Duration::from_secs(2),
            restarts: 20,
        }
    }
}

/// Result of a search that may run out of budget. `Exhausted` means
/// existence is unknown and is never reported as `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    None,
    Exhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::None => "none",
            SearchOutcome::Exhausted => "exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingOutcome {
    /// Pairs `(i, j)` sorted by left vertex.
    Perfect(Vec<(usize, usize)>),
    /// Left vertices `S` with `|N(S)| < |S|`, sorted.
    HallViolator(Vec<usize>),
}

struct Budgeted {
    nodes: u64,
    limit: u64,
    deadline: Instant,
}

impl Budgeted {
    fn new(budget: &SolveBudget) -> Self {
        Budgeted {
            nodes: 0,
            limit: budget.node_limit,
            deadline: Instant::now() + budget.time_limit,
        }
    }

    /// False once either limit is hit.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.limit {
            return false;
        }
        !self.nodes.is_multiple_of(1024) || Instant::now() < self.deadline
    }
}

const FREE: usize = usize::MAX;

/// Hopcroft–Karp maximum matching. Returns a perfect matching or a Hall
/// violator grown by alternating search from the first unmatched left vertex.
pub fn find_bipartite_pm(b: &BipartiteGraph) -> Result<MatchingOutcome, SolverError> {
    let (m, r) = (b.left(), b.right());
    if m != r {
        return Err(SolverError::UnbalancedParts { left: m, right: r });
    }
    let adj: Vec<Vec<usize>> = (0..m).map(|i| b.row(i).ones().collect()).collect();
    let mut mate_l = vec![FREE; m];
    let mut mate_r = vec![FREE; m];
    let mut dist = vec![0usize; m];

    loop {
        // layer the free left vertices
        let mut queue = VecDeque::new();
        for i in 0..m {
            if mate_l[i] == FREE {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = usize::MAX;
            }
        }
        let mut found_free = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                let k = mate_r[j];
                if k == FREE {
                    found_free = true;
                } else if dist[k] == usize::MAX {
                    dist[k] = dist[i] + 1;
                    queue.push_back(k);
                }
            }
        }
        if !found_free {
            break;
        }
        let mut augmented = false;
        let mut next_edge = vec![0usize; m];
        for i in 0..m {
            if mate_l[i] == FREE && augment(i, &adj, &mut mate_l, &mut mate_r, &mut dist, &mut next_edge) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }

    match mate_l.iter().position(|&j| j == FREE) {
        None => Ok(MatchingOutcome::Perfect(mate_l.into_iter().enumerate().collect())),
        Some(root) => {
            let mut in_s = vec![false; m];
            let mut seen_r = vec![false; m];
            in_s[root] = true;
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                for &j in &adj[i] {
                    if !seen_r[j] {
                        seen_r[j] = true;
                        let k = mate_r[j];
                        // maximum matching: every neighbour reached this way is matched
                        debug_assert_ne!(k, FREE);
                        if !in_s[k] {
                            in_s[k] = true;
                            stack.push(k);
                        }
                    }
                }
            }
            Ok(MatchingOutcome::HallViolator(
                (0..m).filter(|&i| in_s[i]).collect(),
            ))
        }
    }
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    next_edge: &mut [usize],
) -> bool {
    while next_edge[i] < adj[i].len() {
        let j = adj[i][next_edge[i]];
        next_edge[i] += 1;
        let k = mate_r[j];
        let ok = k == FREE
            || (dist[k] == dist[i] + 1 && augment(k, adj, mate_l, mate_r, dist, next_edge));
        if ok {
            mate_l[i] = j;
            mate_r[j] = i;
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}

/// Which Hamilton search to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HamiltonMode {
    /// Exact when `n <= EXACT_HAMILTON_LIMIT`, heuristic otherwise.
    #[default]
    Auto,
    Exact,
    Heuristic,
}

/// Directed Hamilton cycle as a vertex order `v_0 → v_1 → ... → v_0`.
pub fn find_directed_hamilton(
    d: &Digraph,
    budget: &SolveBudget,
    seed: RandomSeed,
) -> Result<SearchOutcome<Vec<usize>>, SolverError> {
    find_directed_hamilton_with(d, budget, seed, HamiltonMode::Auto)
}

pub fn find_directed_hamilton_with(
    d: &Digraph,
    budget: &SolveBudget,
    seed: RandomSeed,
    mode: HamiltonMode,
) -> Result<SearchOutcome<Vec<usize>>, SolverError> {
    let n = d.n();
    if n < 3 {
        return Err(SolverError::TooSmall(n));
    }
    if d.min_semidegree() == 0 {
        return Ok(SearchOutcome::None);
    }
    let exact = match mode {
        HamiltonMode::Auto => n <= EXACT_HAMILTON_LIMIT,
        HamiltonMode::Exact => true,
        HamiltonMode::Heuristic => false,
    };
    if exact {
        if n > EXACT_HAMILTON_LIMIT {
            return Err(SolverError::TooLarge(format!("{n} vertices for exact Hamilton search")));
        }
        Ok(exact_hamilton(d, budget))
    } else {
        Ok(rotation_extension(d, budget, seed))
    }
}

/// Backtracking from vertex 0 over bitmask states with memoized dead ends.
/// A state is pruned when some unvisited vertex has lost all usable in- or
/// out-arcs, or cannot be reached from the current end.
fn exact_hamilton(d: &Digraph, budget: &SolveBudget) -> SearchOutcome<Vec<usize>> {
    let n = d.n();
    let out: Vec<u32> = (0..n).map(|v| d.out_neighbors(v).fold(0, |a, w| a | 1 << w)).collect();
    let inn: Vec<u32> = (0..n).map(|v| d.in_neighbors(v).fold(0, |a, w| a | 1 << w)).collect();
    let full: u32 = (1 << n) - 1;
    let mut search = ExactSearch {
        out: &out,
        inn: &inn,
        full,
        dead: HashSet::new(),
        meter: Budgeted::new(budget),
        path: vec![0],
    };
    match search.extend(1, 0) {
        Some(true) => SearchOutcome::Found(search.path),
        Some(false) => SearchOutcome::None,
        None => SearchOutcome::Exhausted,
    }
}

struct ExactSearch<'a> {
    out: &'a [u32],
    inn: &'a [u32],
    full: u32,
    dead: HashSet<(u32, u8)>,
    meter: Budgeted,
    path: Vec<usize>,
}

impl ExactSearch<'_> {
    /// `None` when the budget runs out.
    fn extend(&mut self, visited: u32, end: usize) -> Option<bool> {
        if !self.meter.tick() {
            return None;
        }
        if visited == self.full {
            return Some(self.out[end] & 1 != 0);
        }
        if self.dead.contains(&(visited, end as u8)) {
            return Some(false);
        }
        let rest = self.full & !visited;
        if !self.viable(rest, end) {
            self.dead.insert((visited, end as u8));
            return Some(false);
        }
        let mut cand = self.out[end] & rest;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.path.push(w);
            match self.extend(visited | 1 << w, w) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            self.path.pop();
        }
        self.dead.insert((visited, end as u8));
        Some(false)
    }

    fn viable(&self, rest: u32, end: usize) -> bool {
        let mut bits = rest;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.inn[v] & (rest | 1 << end) == 0 || self.out[v] & (rest | 1) == 0 {
                return false;
            }
        }
        // every unvisited vertex reachable from the end through unvisited ones
        let mut reach = 0u32;
        let mut frontier = self.out[end] & rest;
        while frontier != 0 {
            reach |= frontier;
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.out[v];
            }
            frontier = next & rest & !reach;
        }
        reach == rest
    }
}

/// Path state for rotation-extension with `O(1)` membership lookup.
struct RotationPath {
    path: Vec<usize>,
    pos: Vec<usize>,
}

impl RotationPath {
    fn new(n: usize, start: usize) -> Self {
        let mut pos = vec![FREE; n];
        pos[start] = 0;
        RotationPath { path: vec![start], pos }
    }

    fn contains(&self, v: usize) -> bool {
        self.pos[v] != FREE
    }

    fn reindex(&mut self) {
        for (t, &v) in self.path.iter().enumerate() {
            self.pos[v] = t;
        }
    }

    fn push(&mut self, v: usize) {
        self.pos[v] = self.path.len();
        self.path.push(v);
    }

    fn prepend(&mut self, v: usize) {
        self.path.insert(0, v);
        self.reindex();
    }

    fn replace(&mut self, path: Vec<usize>) {
        self.path = path;
        self.reindex();
    }
}

/// Picks, among `candidates`, a vertex with fewest free neighbours in
/// `rows`; ties broken by the seeded generator.
fn fewest_free(
    candidates: &[usize],
    rows: impl Fn(usize) -> usize,
    rng: &mut ChaCha8Rng,
) -> usize {
    let best = candidates.iter().map(|&w| rows(w)).min().expect("nonempty");
    let ties: Vec<usize> = candidates.iter().copied().filter(|&w| rows(w) == best).collect();
    *ties.choose(rng).expect("nonempty")
}

fn rotation_extension(d: &Digraph, budget: &SolveBudget, seed: RandomSeed) -> SearchOutcome<Vec<usize>> {
    let n = d.n();
    let mut meter = Budgeted::new(budget);
    let stall_limit = (10 * n).max(100);
    for restart in 0..budget.restarts {
        let mut rng = seed.with_object(stream::SOLVER + u64::from(restart)).rng();
        let mut p = RotationPath::new(n, rng.random_range(0..n));
        let mut best_len = 1;
        let mut stall = 0;
        loop {
            if !meter.tick() {
                return SearchOutcome::Exhausted;
            }
            let end = *p.path.last().expect("nonempty");
            let front = p.path[0];

            let ext: Vec<usize> = d.out_neighbors(end).filter(|&w| !p.contains(w)).collect();
            if !ext.is_empty() {
                let w = fewest_free(&ext, |w| d.out_neighbors(w).filter(|&x| !p.contains(x)).count(), &mut rng);
                p.push(w);
            } else {
                let pre: Vec<usize> = d.in_neighbors(front).filter(|&w| !p.contains(w)).collect();
                if !pre.is_empty() {
                    let w = fewest_free(&pre, |w| d.in_neighbors(w).filter(|&x| !p.contains(x)).count(), &mut rng);
                    p.prepend(w);
                } else if d.has_arc(end, front) {
                    if p.path.len() == n {
                        return SearchOutcome::Found(p.path);
                    }
                    // open the cycle toward an outside vertex
                    let exits: Vec<(usize, usize)> = p
                        .path
                        .iter()
                        .enumerate()
                        .flat_map(|(t, &v)| d.out_neighbors(v).filter(|&w| !p.contains(w)).map(move |w| (t, w)))
                        .collect();
                    let Some(&(t, w)) = exits.choose(&mut rng) else {
                        // no arc leaves the cycle's vertex set: not strongly connected
                        return SearchOutcome::None;
                    };
                    let mut next = Vec::with_capacity(p.path.len() + 1);
                    next.extend_from_slice(&p.path[t + 1..]);
                    next.extend_from_slice(&p.path[..=t]);
                    next.push(w);
                    p.replace(next);
                } else if !rotate(d, &mut p, &mut rng) {
                    break;
                }
            }

            if p.path.len() > best_len {
                best_len = p.path.len();
                stall = 0;
            } else {
                stall += 1;
                if stall > stall_limit {
                    break;
                }
            }
        }
    }
    SearchOutcome::Exhausted
}

/// Directed rotation on `v_0 .. v_k`: with arcs `v_k → v_i` and
/// `v_{i-1} → v_j` (`i < j <= k`) the path becomes
/// `v_0 .. v_{i-1}, v_j .. v_k, v_i .. v_{j-1}`.
fn rotate(d: &Digraph, p: &mut RotationPath, rng: &mut ChaCha8Rng) -> bool {
    let k = p.path.len() - 1;
    let end = p.path[k];
    let mut pivots: Vec<usize> = d
        .out_neighbors(end)
        .filter_map(|w| match p.pos[w] {
            FREE => None,
            t if t >= 1 && t < k => Some(t),
            _ => None,
        })
        .collect();
    pivots.shuffle(rng);
    for i in pivots {
        let before = p.path[i - 1];
        let targets: Vec<usize> = d
            .out_neighbors(before)
            .filter_map(|w| match p.pos[w] {
                t if t != FREE && t > i && t <= k => Some(t),
                _ => None,
            })
            .collect();
        if let Some(&j) = targets.choose(rng) {
            let mut next = Vec::with_capacity(k + 1);
            next.extend_from_slice(&p.path[..i]);
            next.extend_from_slice(&p.path[j..]);
            next.extend_from_slice(&p.path[i..j]);
            p.replace(next);
            return true;
        }
    }
    false
}

/// Perfect matching of a k-partite k-graph with parts of equal size `n`.
/// Edges are returned in order of their first-part vertex.
pub fn find_kpartite_pm(
    h: &KPartiteHypergraph,
    budget: &SolveBudget,
) -> Result<SearchOutcome<Vec<Vec<usize>>>, SolverError> {
    let Some(n) = h.uniform_part_size() else {
        return Err(SolverError::PartSizeMismatch(h.part_sizes().to_vec()));
    };
    let k = h.k();
    if n > KPARTITE_PART_LIMIT || !(1..=KPARTITE_ARITY_LIMIT).contains(&k) {
        return Err(SolverError::TooLarge(format!("k = {k}, part size {n}")));
    }
    if n == 0 {
        return Ok(SearchOutcome::Found(Vec::new()));
    }
    // each edge as a mask over parts 2..k, 16 bits per part
    let encode = |e: &[usize]| -> u128 {
        e[1..]
            .iter()
            .enumerate()
            .fold(0u128, |acc, (t, &a)| acc | 1u128 << (16 * t + a))
    };
    let options: Vec<Vec<(u128, &Vec<usize>)>> = (0..n)
        .map(|a| h.edges_from(a).map(|e| (encode(e), e)).collect())
        .collect();
    if options.iter().any(Vec::is_empty) {
        return Ok(SearchOutcome::None);
    }
    let mut search = HyperSearch {
        options: &options,
        dead: HashSet::new(),
        meter: Budgeted::new(budget),
        chosen: Vec::with_capacity(n),
    };
    Ok(match search.extend(0, 0) {
        Some(true) => SearchOutcome::Found(search.chosen.into_iter().cloned().collect()),
        Some(false) => SearchOutcome::None,
        None => SearchOutcome::Exhausted,
    })
}

struct HyperSearch<'a> {
    options: &'a [Vec<(u128, &'a Vec<usize>)>],
    dead: HashSet<u128>,
    meter: Budgeted,
    chosen: Vec<&'a Vec<usize>>,
}

impl HyperSearch<'_> {
    fn extend(&mut self, a: usize, used: u128) -> Option<bool> {
        if !self.meter.tick() {
            return None;
        }
        if a == self.options.len() {
            return Some(true);
        }
        if self.dead.contains(&used) {
            return Some(false);
        }
        for &(mask, e) in &self.options[a] {
            if mask & used != 0 {
                continue;
            }
            let next = used | mask;
            // forward check: every later first-part vertex keeps an option
            let alive = self.options[a + 1..]
                .iter()
                .all(|opts| opts.iter().any(|&(m2, _)| m2 & next == 0));
            if !alive {
                continue;
            }
            self.chosen.push(e);
            match self.extend(a + 1, next)? {
                true => return Some(true),
                false => {
                    self.chosen.pop();
                }
            }
        }
        self.dead.insert(used);
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_crossing_tuples, Graph, Permutation};
    use proptest::prelude::*;

    fn budget() -> SolveBudget {
        SolveBudget::default()
    }

    fn is_pm(b: &BipartiteGraph, pm: &[(usize, usize)]) -> bool {
        let m = b.left();
        let mut seen_l = vec![false; m];
        let mut seen_r = vec![false; m];
        pm.len() == m
            && pm.iter().all(|&(i, j)| {
                let fresh = !seen_l[i] && !seen_r[j];
                seen_l[i] = true;
                seen_r[j] = true;
                fresh && b.has_edge(i, j)
            })
    }

    fn is_hall_violator(b: &BipartiteGraph, s: &[usize]) -> bool {
        let mut nbrs = fixedbitset::FixedBitSet::with_capacity(b.right());
        for &i in s {
            nbrs.union_with(b.row(i));
        }
        nbrs.count_ones(..) < s.len()
    }

    fn is_hamilton_cycle(d: &Digraph, c: &[usize]) -> bool {
        let n = d.n();
        let distinct: HashSet<usize> = c.iter().copied().collect();
        c.len() == n && distinct.len() == n && (0..n).all(|t| d.has_arc(c[t], c[(t + 1) % n]))
    }

    /// Enumerates cyclic orders starting at vertex 0.
    fn hamilton_oracle(d: &Digraph) -> bool {
        let n = d.n();
        Permutation::all(n - 1).any(|p| {
            let mut c = vec![0];
            c.extend(p.images().iter().map(|&x| x + 1));
            is_hamilton_cycle(d, &c)
        })
    }

    #[test]
    fn budget_rejects_zero_limits() {
        assert_eq!(SolveBudget::new(0, Duration::from_secs(1), 1), Err(SolverError::InvalidBudget));
        assert!(SolveBudget::new(1, Duration::ZERO, 1).is_err());
        assert!(SolveBudget::new(1, Duration::from_secs(1), 0).is_err());
    }

    #[test]
    fn complete_bipartite_has_pm() {
        let b = BipartiteGraph::complete(7, 7);
        let MatchingOutcome::Perfect(pm) = find_bipartite_pm(&b).unwrap() else { panic!() };
        assert!(is_pm(&b, &pm));
    }

    #[test]
    fn isolated_vertex_is_hall_violator() {
        let mut b = BipartiteGraph::complete(4, 4);
        for j in 0..4 {
            b.remove_edge(2, j);
        }
        assert_eq!(find_bipartite_pm(&b).unwrap(), MatchingOutcome::HallViolator(vec![2]));
        assert_eq!(
            find_bipartite_pm(&BipartiteGraph::empty(2, 3)),
            Err(SolverError::UnbalancedParts { left: 2, right: 3 })
        );
    }

    #[test]
    fn pm_matches_assignment_enumeration_for_all_3x3() {
        for bits in 0u32..512 {
            let mut b = BipartiteGraph::empty(3, 3);
            for t in 0..9 {
                if bits >> t & 1 == 1 {
                    b.add_edge(t / 3, t % 3);
                }
            }
            let oracle = Permutation::all(3).any(|s| (0..3).all(|i| b.has_edge(i, s.apply(i))));
            match find_bipartite_pm(&b).unwrap() {
                MatchingOutcome::Perfect(pm) => {
                    assert!(oracle, "{bits}");
                    assert!(is_pm(&b, &pm));
                }
                MatchingOutcome::HallViolator(s) => {
                    assert!(!oracle, "{bits}");
                    assert!(is_hall_violator(&b, &s));
                }
            }
        }
    }

    #[test]
    fn complete_digraphs_are_hamiltonian() {
        for n in [3, 10, 40] {
            let d = Digraph::complete(n);
            let out = find_directed_hamilton(&d, &budget(), RandomSeed::new(1)).unwrap();
            assert!(is_hamilton_cycle(&d, out.found().expect("cycle")));
        }
        assert_eq!(
            find_directed_hamilton(&Digraph::complete(2), &budget(), RandomSeed::new(1)),
            Err(SolverError::TooSmall(2))
        );
    }

    #[test]
    fn zero_out_degree_is_pruned() {
        let mut d = Digraph::complete(30);
        let mut rows: Vec<_> = (0..30).map(|v| d.out_row(v).clone()).collect();
        rows[7].clear();
        d = Digraph::from_out_rows(rows);
        let tiny = SolveBudget::new(1, Duration::from_secs(1), 1).unwrap();
        assert_eq!(
            find_directed_hamilton(&d, &tiny, RandomSeed::new(0)).unwrap(),
            SearchOutcome::None
        );
    }

    #[test]
    fn exact_mode_matches_all_tournaments_on_five() {
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let mut hamiltonian = 0;
        for bits in 0u32..1 << pairs.len() {
            let mut d = Digraph::empty(5);
            for (t, &(u, v)) in pairs.iter().enumerate() {
                if bits >> t & 1 == 1 {
                    d.add_arc(u, v);
                } else {
                    d.add_arc(v, u);
                }
            }
            let oracle = hamilton_oracle(&d);
            let out = find_directed_hamilton(&d, &budget(), RandomSeed::new(0)).unwrap();
            match &out {
                SearchOutcome::Found(c) => {
                    assert!(oracle);
                    assert!(is_hamilton_cycle(&d, c));
                    hamiltonian += 1;
                }
                SearchOutcome::None => assert!(!oracle),
                SearchOutcome::Exhausted => panic!("exact search exhausted on n = 5"),
            }
        }
        // strongly connected tournaments are exactly the Hamiltonian ones
        assert!(hamiltonian > 0 && hamiltonian < 1024);
    }

    #[test]
    fn heuristic_finds_cycles_in_dense_random_digraphs() {
        let f = crate::sampling::sample_family(120, 120, 0.3, RandomSeed::new(11)).unwrap();
        let pi = crate::sampling::sample_permutation(120, RandomSeed::new(12));
        let d = crate::reduction::build_aux_digraph(&f, &pi).unwrap();
        let out = find_directed_hamilton(&d, &budget(), RandomSeed::new(13)).unwrap();
        assert!(is_hamilton_cycle(&d, out.found().expect("cycle")));
    }

    #[test]
    fn two_disjoint_cycles_are_not_hamiltonian() {
        let mut d = Digraph::empty(20);
        for v in 0..10 {
            d.add_arc(v, (v + 1) % 10);
            d.add_arc(10 + v, 10 + (v + 1) % 10);
        }
        let out = find_directed_hamilton_with(&d, &budget(), RandomSeed::new(2), HamiltonMode::Heuristic).unwrap();
        assert_eq!(out, SearchOutcome::None);
    }

    #[test]
    fn node_limit_yields_exhausted() {
        let d = Digraph::bidirected(&Graph::complete(30));
        let tiny = SolveBudget::new(3, Duration::from_secs(5), 1).unwrap();
        assert_eq!(
            find_directed_hamilton(&d, &tiny, RandomSeed::new(0)).unwrap(),
            SearchOutcome::Exhausted
        );
    }

    fn hyper_oracle(h: &KPartiteHypergraph, n: usize) -> bool {
        Permutation::all(n).any(|s| {
            Permutation::all(n).any(|t| (0..n).all(|a| h.contains(&[a, s.apply(a), t.apply(a)])))
        })
    }

    #[test]
    fn kpartite_examples() {
        for k in 2..=4 {
            let h = KPartiteHypergraph::complete(k, 4);
            let out = find_kpartite_pm(&h, &budget()).unwrap();
            let pm = out.found().expect("matching");
            assert_eq!(pm.len(), 4);
            assert!(pm.iter().all(|e| h.contains(e)));
        }
        let mut h = KPartiteHypergraph::complete(3, 3);
        for e in h.edges_from(1).cloned().collect::<Vec<_>>() {
            h.remove_edge(&e);
        }
        assert_eq!(find_kpartite_pm(&h, &budget()).unwrap(), SearchOutcome::None);
        let lopsided = KPartiteHypergraph::with_part_sizes(vec![2, 3, 2]);
        assert!(matches!(
            find_kpartite_pm(&lopsided, &budget()),
            Err(SolverError::PartSizeMismatch(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn kpartite_matches_assignment_enumeration(bits in proptest::collection::vec(any::<bool>(), 27)) {
            let mut h = KPartiteHypergraph::empty(3, 3);
            for (t, e) in all_crossing_tuples(&[3, 3, 3]).enumerate() {
                if bits[t] {
                    h.add_edge(e).unwrap();
                }
            }
            let out = find_kpartite_pm(&h, &budget()).unwrap();
            prop_assert_eq!(out.found().is_some(), hyper_oracle(&h, 3));
            prop_assert_ne!(&out, &SearchOutcome::Exhausted);
            if let SearchOutcome::Found(pm) = out {
                let mut cover = [[false; 3]; 3];
                for e in &pm {
                    prop_assert!(h.contains(e));
                    for (t, &a) in e.iter().enumerate() {
                        prop_assert!(!cover[t][a]);
                        cover[t][a] = true;
                    }
                }
            }
        }

        #[test]
        fn bipartite_outcome_is_certified(m in 1usize..12, p in 0.0f64..1.0, s in any::<u64>()) {
            let b = crate::sampling::sample_bipartite(m, m, p, RandomSeed::new(s)).unwrap();
            match find_bipartite_pm(&b).unwrap() {
                MatchingOutcome::Perfect(pm) => prop_assert!(is_pm(&b, &pm)),
                MatchingOutcome::HallViolator(v) => prop_assert!(is_hall_violator(&b, &v)),
            }
        }

        #[test]
        fn hamilton_modes_agree_with_oracle(n in 3usize..8, p in 0.2f64..0.9, s in any::<u64>()) {
            let seed = RandomSeed::new(s);
            let g = crate::sampling::sample_family(n, n, p, seed).unwrap();
            let d = crate::reduction::build_aux_digraph(&g, &crate::sampling::sample_permutation(n, seed)).unwrap();
            let oracle = hamilton_oracle(&d);
            let exact = find_directed_hamilton_with(&d, &budget(), seed, HamiltonMode::Exact).unwrap();
            prop_assert_eq!(exact.found().is_some(), oracle);
            prop_assert_ne!(&exact, &SearchOutcome::Exhausted);
            if let Some(c) = exact.found() {
                prop_assert!(is_hamilton_cycle(&d, c));
            }
            // heuristic is one-sided: found implies a cycle; none only when none exists
            match find_directed_hamilton_with(&d, &budget(), seed, HamiltonMode::Heuristic).unwrap() {
                SearchOutcome::Found(c) => prop_assert!(is_hamilton_cycle(&d, &c)),
                SearchOutcome::None => prop_assert!(!oracle),
                SearchOutcome::Exhausted => {}
            }
        }
    }
}
