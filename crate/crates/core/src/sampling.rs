//! Seeded generators for G(n,p), B(n,p), families, permutations and balanced
//! partitions.
//!
//! Every random object is drawn from its own ChaCha8 stream keyed by
//! `(root, experiment, trial, object)`. Trials therefore do not depend on the
//! order in which workers pick them up.

use std::fmt;
use std::str::FromStr;

use rand::distr::{Bernoulli, Distribution};
use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use itertools::Itertools;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{BipartiteFamily, GraphFamily};
use crate::graph::{
    all_crossing_dsets, all_crossing_tuples, BalancedPartition, CrossingSet, BipartiteGraph, Graph, GraphError, KPartiteHypergraph,
    Permutation,
};
use crate::parallel::{map_indexed, Execution};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplingError {
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("balanced partition needs an even vertex count, got {0}")]
    OddVertexCount(usize),
    #[error("codegree floor {floor} exceeds the {max} possible completions")]
    CodegreeFloorTooHigh { floor: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Object labels for the independent streams used inside one trial.
pub mod stream {
    /// Color `c` uses `COLOR + c`.
    pub const COLOR: u64 = 0;
    pub const PARTITION: u64 = 1 << 40;
    pub const PERMUTATION: u64 = (1 << 40) + 1;
    /// Adversary randomness for color `c` uses `ADVERSARY + c`.
    pub const ADVERSARY: u64 = 1 << 41;
    pub const SOLVER: u64 = 1 << 42;
    /// Sampled permutation `t` of an enumeration uses `ENUMERATION + t`.
    pub const ENUMERATION: u64 = 1 << 43;
    /// Partition `q` of a partition sweep uses `PARTITION_SWEEP + q`.
    pub const PARTITION_SWEEP: u64 = 1 << 44;
    /// Monte Carlo draws of the bound checks.
    pub const MONTE_CARLO: u64 = 1 << 45;
    /// Codegree repair of k-partite color `c` uses `REPAIR + c`.
    pub const REPAIR: u64 = 1 << 46;
}

/// Stream key. Equal keys reproduce identical output bit for bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RandomSeed {
    pub root: u64,
    pub experiment: u64,
    pub trial: u64,
    pub object: u64,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RandomSeed {
    pub fn new(root: u64) -> Self {
        RandomSeed {
            root,
            experiment: 0,
            trial: 0,
            object: 0,
        }
    }

    pub fn with_experiment(self, experiment: u64) -> Self {
        RandomSeed { experiment, ..self }
    }

    pub fn with_trial(self, trial: u64) -> Self {
        RandomSeed { trial, ..self }
    }

    pub fn with_object(self, object: u64) -> Self {
        RandomSeed { object, ..self }
    }

    /// 64-bit key mixing all four labels.
    pub fn fingerprint(&self) -> u64 {
        let mut state = self.root;
        let mut h = splitmix64(&mut state);
        for label in [self.experiment, self.trial, self.object] {
            state ^= label.wrapping_mul(0xd6e8_feb8_6659_fd93) ^ h;
            h = splitmix64(&mut state);
        }
        h
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut state = self.fingerprint();
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        ChaCha8Rng::from_seed(key)
    }
}

impl fmt::Display for RandomSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.root, self.experiment, self.trial, self.object)
    }
}

impl FromStr for RandomSeed {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<u64> = s
            .split(':')
            .map(|x| x.parse::<u64>().map_err(|e| format!("bad seed `{s}`: {e}")))
            .collect::<Result<_, _>>()?;
        match parts.as_slice() {
            [root] => Ok(RandomSeed::new(*root)),
            [root, experiment, trial, object] => Ok(RandomSeed {
                root: *root,
                experiment: *experiment,
                trial: *trial,
                object: *object,
            }),
            _ => Err(format!("bad seed `{s}`: expected root or root:experiment:trial:object")),
        }
    }
}

/// Stable experiment label derived from a name (FNV-1a).
pub fn experiment_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

fn bernoulli(p: f64) -> Result<Bernoulli, SamplingError> {
    Bernoulli::new(p).map_err(|_| SamplingError::InvalidProbability(p))
}

/// G(n, p). Pairs are visited in lexicographic order `(0,1), (0,2), ...`, one
/// Bernoulli draw each, so the seed-to-graph map is fixed.
pub fn sample_gnp(n: usize, p: f64, seed: RandomSeed) -> Result<Graph, SamplingError> {
    let coin = bernoulli(p)?;
    let mut rng = seed.rng();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if coin.sample(&mut rng) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// B(n, p) on parts of the given sizes; pairs `(i, j)` in lexicographic order.
pub fn sample_bipartite(
    left: usize,
    right: usize,
    p: f64,
    seed: RandomSeed,
) -> Result<BipartiteGraph, SamplingError> {
    let coin = bernoulli(p)?;
    let mut rng = seed.rng();
    let mut b = BipartiteGraph::empty(left, right);
    for i in 0..left {
        for j in 0..right {
            if coin.sample(&mut rng) {
                b.add_edge(i, j);
            }
        }
    }
    Ok(b)
}

/// `m` independent samples of G(n, p); color `c` reads stream
/// `seed.with_object(stream::COLOR + c)`.
pub fn sample_family(n: usize, m: usize, p: f64, seed: RandomSeed) -> Result<GraphFamily, SamplingError> {
    sample_family_with(n, m, p, seed, Execution::default())
}

/// [`sample_family`] with explicit execution; the result does not depend on it.
pub fn sample_family_with(
    n: usize,
    m: usize,
    p: f64,
    seed: RandomSeed,
    exec: Execution,
) -> Result<GraphFamily, SamplingError> {
    bernoulli(p)?;
    let colors = map_indexed(m, exec, |c| {
        sample_gnp(n, p, seed.with_object(stream::COLOR + c as u64))
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    Ok(GraphFamily::new(n, colors))
}

/// `m` independent samples of B(n, p) on a shared bipartition.
pub fn sample_bipartite_family(
    partition: &BalancedPartition,
    m: usize,
    p: f64,
    seed: RandomSeed,
) -> Result<BipartiteFamily, SamplingError> {
    sample_bipartite_family_with(partition, m, p, seed, Execution::default())
}

/// [`sample_bipartite_family`] with explicit execution.
pub fn sample_bipartite_family_with(
    partition: &BalancedPartition,
    m: usize,
    p: f64,
    seed: RandomSeed,
    exec: Execution,
) -> Result<BipartiteFamily, SamplingError> {
    bernoulli(p)?;
    let h = partition.half();
    let colors = map_indexed(m, exec, |c| {
        sample_bipartite(h, h, p, seed.with_object(stream::COLOR + c as u64))
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    Ok(BipartiteFamily::new(partition.clone(), colors))
}

/// Uniform permutation of `0..m` (Fisher-Yates).
pub fn sample_permutation(m: usize, seed: RandomSeed) -> Permutation {
    let mut images: Vec<usize> = (0..m).collect();
    images.shuffle(&mut seed.rng());
    Permutation::from_images(images).expect("shuffle of 0..m is a bijection")
}

/// Uniform ordered balanced bipartition of `0..n`.
pub fn sample_balanced_partition(n: usize, seed: RandomSeed) -> Result<BalancedPartition, SamplingError> {
    if !n.is_multiple_of(2) {
        return Err(SamplingError::OddVertexCount(n));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut seed.rng());
    order.truncate(n / 2);
    Ok(BalancedPartition::new(n, order)?)
}

/// k-partite k-graph with parts of size `n`; each crossing tuple is an edge
/// with probability `p`, tuples visited in lexicographic order.
pub fn sample_kpartite(k: usize, n: usize, p: f64, seed: RandomSeed) -> Result<KPartiteHypergraph, SamplingError> {
    let coin = bernoulli(p)?;
    let mut rng = seed.rng();
    let mut h = KPartiteHypergraph::empty(k, n);
    for e in all_crossing_tuples(&vec![n; k]) {
        if coin.sample(&mut rng) {
            h.add_edge(e)?;
        }
    }
    Ok(h)
}

/// Adds uniformly chosen missing edges until every crossing d-set lies in at
/// least `floor` edges. d-sets are visited in canonical order; additions only
/// raise other codegrees, so one pass suffices. Returns the number added.
pub fn repair_codegree(
    h: &mut KPartiteHypergraph,
    d: usize,
    floor: usize,
    seed: RandomSeed,
) -> Result<usize, SamplingError> {
    let k = h.k();
    if d == 0 || d >= k {
        return Err(GraphError::InvalidCodegreeOrder { d, k }.into());
    }
    let sizes = h.part_sizes().to_vec();
    let mut rng = seed.rng();
    let mut degrees = h.crossing_dset_degrees(d);
    let mut added = 0;
    for set in all_crossing_dsets(&sizes, d) {
        let have = degrees.get(&set).copied().unwrap_or(0);
        if have >= floor {
            continue;
        }
        let rest: Vec<usize> = (0..k).filter(|t| !set.parts.contains(t)).collect();
        let rest_sizes: Vec<usize> = rest.iter().map(|&t| sizes[t]).collect();
        let max = rest_sizes.iter().product();
        if floor > max {
            return Err(SamplingError::CodegreeFloorTooHigh { floor, max });
        }
        let mut missing: Vec<Vec<usize>> = all_crossing_tuples(&rest_sizes)
            .map(|tail| {
                let mut e = vec![0; k];
                for (&t, &a) in set.parts.iter().zip(&set.verts) {
                    e[t] = a;
                }
                for (&t, &a) in rest.iter().zip(&tail) {
                    e[t] = a;
                }
                e
            })
            .filter(|e| !h.contains(e))
            .collect();
        missing.shuffle(&mut rng);
        for e in missing.into_iter().take(floor - have) {
            for parts in (0..k).combinations(d) {
                let verts = parts.iter().map(|&t| e[t]).collect();
                *degrees.entry(CrossingSet { parts, verts }).or_insert(0) += 1;
            }
            h.add_edge(e)?;
            added += 1;
        }
    }
    Ok(added)
}
