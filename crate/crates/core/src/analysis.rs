//! Exact moments of auxiliary-graph degrees, closed-form tail bounds, and
//! empirical window checks.
//!
//! Moments over permutations are exact rationals. Floating point appears only
//! in exponentials and Monte Carlo summaries.

use std::collections::BTreeMap;
use std::f64::consts::E;

use num_rational::Ratio;
use thiserror::Error;

use crate::family::{BipartiteFamily, GraphFamily};
use crate::graph::{BalancedPartition, Graph, Permutation};
use crate::parallel::{map_indexed, Execution};
use crate::reduction::{build_aux_bipartite, build_aux_digraph};
use crate::sampling::{sample_permutation, stream, RandomSeed};

pub type Rational = Ratio<i128>;

/// Largest permutation length enumerated exhaustively (`8! = 40320`).
pub const EXHAUSTIVE_LIMIT: usize = 8;

/// Numerator of the median-lemma gate `δ* >= 200 / α²`.
pub const MEDIAN_GATE_CONSTANT: f64 = 200.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("vertex {vertex} is not in V2 (part size {size})")]
    VertexNotInV2 { vertex: usize, size: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{0}! permutations exceed the exhaustive limit of {EXHAUSTIVE_LIMIT}!")]
    TooLargeForExhaustive(usize),
    #[error("{colors} colors for part size {size}; they must agree")]
    SizeMismatch { colors: usize, size: usize },
    #[error("need at least two colors, got {0}")]
    TooFewColors(usize),
    #[error("argument outside the bound's domain: {0}")]
    Domain(String),
}

fn ratio(num: usize, den: usize) -> Rational {
    Rational::new(num as i128, den as i128)
}

/// Lossy conversion for reporting.
pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `μ_j = Σ_c d_{H'_c}(j) / m`: the expected degree of `j ∈ V2` in `B_π`
/// for uniform `π`.
pub fn expected_aux_degree(family: &BipartiteFamily, j: usize) -> Result<Rational, AnalysisError> {
    let m = square_bipartite(family)?;
    if j >= m {
        return Err(AnalysisError::VertexNotInV2 { vertex: j, size: m });
    }
    let total: usize = family.colors().iter().map(|c| c.right_degree(j)).sum();
    Ok(ratio(total, m))
}

/// `μ_i = Σ_c d_{H_c}(i) / n`: the expected in-degree of `i` in `D_π`.
pub fn expected_aux_in_degree(family: &GraphFamily, i: usize) -> Result<Rational, AnalysisError> {
    let n = square_graph(family)?;
    if i >= n {
        return Err(AnalysisError::VertexOutOfRange { vertex: i, n });
    }
    let total: usize = family.colors().iter().map(|c| c.degree(i)).sum();
    Ok(ratio(total, n))
}

/// `μ + μ² / (m − 1)`, the variance bound for a degree of `B_π` or `D_π`.
pub fn aux_degree_variance_bound(mu: Rational, m: usize) -> Result<Rational, AnalysisError> {
    if m < 2 {
        return Err(AnalysisError::TooFewColors(m));
    }
    Ok(mu + mu * mu / Rational::from_integer(m as i128 - 1))
}

fn square_bipartite(family: &BipartiteFamily) -> Result<usize, AnalysisError> {
    if family.m() != family.half() {
        return Err(AnalysisError::SizeMismatch {
            colors: family.m(),
            size: family.half(),
        });
    }
    Ok(family.m())
}

fn square_graph(family: &GraphFamily) -> Result<usize, AnalysisError> {
    if family.m() != family.n() {
        return Err(AnalysisError::SizeMismatch {
            colors: family.m(),
            size: family.n(),
        });
    }
    Ok(family.n())
}

/// How permutations are drawn for a distribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    /// All `m!` permutations; requires `m <= EXHAUSTIVE_LIMIT`.
    Exhaustive,
    /// `trials` uniform permutations; trial `t` reads stream
    /// `seed.with_object(stream::ENUMERATION + t)`.
    Sampled { trials: usize, seed: RandomSeed },
}

/// Distribution of an integer statistic over permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeDistribution {
    pub histogram: BTreeMap<usize, u64>,
    pub samples: u64,
    pub exhaustive: bool,
    pub mean: Rational,
    /// Population variance (exact over all permutations when exhaustive).
    pub variance: Rational,
    /// Lower middle order statistic.
    pub median: usize,
}

impl DegreeDistribution {
    pub fn from_histogram(histogram: BTreeMap<usize, u64>, exhaustive: bool) -> Self {
        let samples: u64 = histogram.values().sum();
        assert!(samples > 0, "empty distribution");
        let n = samples as i128;
        let (s1, s2) = histogram.iter().fold((0i128, 0i128), |(a, b), (&v, &c)| {
            let (v, c) = (v as i128, c as i128);
            (a + v * c, b + v * v * c)
        });
        let mean = Rational::new(s1, n);
        let variance = Rational::new(s2, n) - mean * mean;
        let rank = (samples - 1) / 2;
        let mut seen = 0;
        let median = histogram
            .iter()
            .find_map(|(&v, &c)| {
                seen += c;
                (seen > rank).then_some(v)
            })
            .expect("rank below sample count");
        DegreeDistribution {
            histogram,
            samples,
            exhaustive,
            mean,
            variance,
            median,
        }
    }

    pub fn mean_f64(&self) -> f64 {
        to_f64(&self.mean)
    }

    pub fn variance_f64(&self) -> f64 {
        to_f64(&self.variance)
    }

    /// Fraction of samples whose value is at least `bound`.
    pub fn fraction_at_least(&self, bound: f64) -> f64 {
        let hits: u64 = self
            .histogram
            .iter()
            .filter(|(&v, _)| v as f64 >= bound)
            .map(|(_, &c)| c)
            .sum();
        hits as f64 / self.samples as f64
    }
}

/// Histogram of `stat(π)` over the permutations selected by `mode`.
/// Exhaustive enumeration splits by the image of 0 into `m` blocks.
pub fn permutation_histogram<F>(
    m: usize,
    mode: EnumerationMode,
    exec: Execution,
    stat: F,
) -> Result<DegreeDistribution, AnalysisError>
where
    F: Fn(&Permutation) -> usize + Sync + Send,
{
    let blocks: Vec<BTreeMap<usize, u64>> = match mode {
        EnumerationMode::Exhaustive => {
            if m > EXHAUSTIVE_LIMIT {
                return Err(AnalysisError::TooLargeForExhaustive(m));
            }
            if m == 0 {
                vec![BTreeMap::from([(stat(&Permutation::identity(0)), 1)])]
            } else {
                map_indexed(m, exec, |first| {
                    let mut hist = BTreeMap::new();
                    let others: Vec<usize> = (0..m).filter(|&x| x != first).collect();
                    for rest in Permutation::all(m - 1) {
                        let mut images = Vec::with_capacity(m);
                        images.push(first);
                        images.extend(rest.images().iter().map(|&r| others[r]));
                        let pi = Permutation::from_images(images).expect("bijection");
                        *hist.entry(stat(&pi)).or_insert(0) += 1;
                    }
                    hist
                })
            }
        }
        EnumerationMode::Sampled { trials, seed } => {
            if trials == 0 {
                return Err(AnalysisError::Domain("sampled mode needs at least one trial".into()));
            }
            let values = map_indexed(trials, exec, |t| {
                stat(&sample_permutation(m, seed.with_object(stream::ENUMERATION + t as u64)))
            });
            let mut hist = BTreeMap::new();
            for v in values {
                *hist.entry(v).or_insert(0) += 1;
            }
            vec![hist]
        }
    };
    let mut merged = BTreeMap::new();
    for block in blocks {
        for (v, c) in block {
            *merged.entry(v).or_insert(0) += c;
        }
    }
    Ok(DegreeDistribution::from_histogram(
        merged,
        mode == EnumerationMode::Exhaustive,
    ))
}

/// Distribution of `d_{B_π}(j)` for `j ∈ V2`.
pub fn exact_aux_degree_distribution(
    family: &BipartiteFamily,
    j: usize,
    mode: EnumerationMode,
    exec: Execution,
) -> Result<DegreeDistribution, AnalysisError> {
    let m = square_bipartite(family)?;
    if j >= m {
        return Err(AnalysisError::VertexNotInV2 { vertex: j, size: m });
    }
    permutation_histogram(m, mode, exec, |pi| {
        build_aux_bipartite(family, pi).expect("square family").right_degree(j)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    In,
    Out,
}

/// Distribution of the in- or out-degree of `i` in `D_π`.
pub fn exact_aux_semidegree_distribution(
    family: &GraphFamily,
    i: usize,
    direction: Direction,
    mode: EnumerationMode,
    exec: Execution,
) -> Result<DegreeDistribution, AnalysisError> {
    let n = square_graph(family)?;
    if i >= n {
        return Err(AnalysisError::VertexOutOfRange { vertex: i, n });
    }
    permutation_histogram(n, mode, exec, |pi| {
        let d = build_aux_digraph(family, pi).expect("square family");
        match direction {
            Direction::In => d.in_degree(i),
            Direction::Out => d.out_degree(i),
        }
    })
}

/// Moment and median checks for one auxiliary-graph degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcentrationReport {
    pub vertex: usize,
    pub mu: Rational,
    pub variance_bound: Rational,
    pub distribution: DegreeDistribution,
    pub alpha: f64,
    /// Smallest color minimum degree, compared against `200 / α²`.
    pub min_color_degree: usize,
    /// Exhaustive only: distribution mean equals `μ` exactly.
    pub mean_exact: Option<bool>,
    /// Exhaustive only: distribution variance is at most the bound.
    pub variance_dominated: Option<bool>,
    /// `None` when the `200 / α²` gate is unmet (skipped, not failed).
    pub median_in_window: Option<bool>,
}

impl ConcentrationReport {
    fn assemble(
        vertex: usize,
        mu: Rational,
        m: usize,
        distribution: DegreeDistribution,
        alpha: f64,
        min_color_degree: usize,
    ) -> Result<Self, AnalysisError> {
        let variance_bound = aux_degree_variance_bound(mu, m)?;
        let (mean_exact, variance_dominated) = if distribution.exhaustive {
            (
                Some(distribution.mean == mu),
                Some(distribution.variance <= variance_bound),
            )
        } else {
            (None, None)
        };
        let median_in_window = median_gate_met(min_color_degree, alpha).then(|| {
            let (mu, med) = (to_f64(&mu), distribution.median as f64);
            (1.0 - alpha) * mu <= med && med <= (1.0 + alpha) * mu
        });
        Ok(ConcentrationReport {
            vertex,
            mu,
            variance_bound,
            distribution,
            alpha,
            min_color_degree,
            mean_exact,
            variance_dominated,
            median_in_window,
        })
    }

    /// True unless some evaluated flag is false.
    pub fn passed(&self) -> bool {
        [self.mean_exact, self.variance_dominated, self.median_in_window]
            .iter()
            .all(|f| f.unwrap_or(true))
    }
}

pub fn median_gate_met(min_color_degree: usize, alpha: f64) -> bool {
    alpha > 0.0 && min_color_degree as f64 >= MEDIAN_GATE_CONSTANT / (alpha * alpha)
}

/// Median lemma checks for `d_{B_π}(j)`.
pub fn median_lemma_report(
    family: &BipartiteFamily,
    j: usize,
    alpha: f64,
    mode: EnumerationMode,
    exec: Execution,
) -> Result<ConcentrationReport, AnalysisError> {
    let mu = expected_aux_degree(family, j)?;
    let dist = exact_aux_degree_distribution(family, j, mode, exec)?;
    ConcentrationReport::assemble(j, mu, family.m(), dist, alpha, family.min_degree())
}

/// Median lemma checks for the in-degree of `i` in `D_π`.
pub fn median_lemma_report_digraph(
    family: &GraphFamily,
    i: usize,
    alpha: f64,
    mode: EnumerationMode,
    exec: Execution,
) -> Result<ConcentrationReport, AnalysisError> {
    let mu = expected_aux_in_degree(family, i)?;
    let dist = exact_aux_semidegree_distribution(family, i, Direction::In, mode, exec)?;
    ConcentrationReport::assemble(i, mu, family.m(), dist, alpha, family.min_degree())
}

/// `Pr[X < (1 − a)μ] < e^{−a²μ/2}` for `a > 0`.
pub fn chernoff_lower(mu: f64, a: f64) -> Result<f64, AnalysisError> {
    if !(mu >= 0.0) || !(a > 0.0) {
        return Err(AnalysisError::Domain(format!("lower tail needs μ >= 0, a > 0; got μ = {mu}, a = {a}")));
    }
    Ok((-a * a * mu / 2.0).exp())
}

/// `Pr[X > (1 + a)μ] < e^{−a²μ/3}` for `0 < a < 3/2`.
pub fn chernoff_upper(mu: f64, a: f64) -> Result<f64, AnalysisError> {
    if !(mu >= 0.0) || !(a > 0.0 && a < 1.5) {
        return Err(AnalysisError::Domain(format!(
            "upper tail needs μ >= 0, 0 < a < 3/2; got μ = {mu}, a = {a}"
        )));
    }
    Ok((-a * a * mu / 3.0).exp())
}

/// `(lower, upper)` Chernoff tails; `a` must suit both.
pub fn chernoff_tails(mu: f64, a: f64) -> Result<(f64, f64), AnalysisError> {
    Ok((chernoff_lower(mu, a)?, chernoff_upper(mu, a)?))
}

/// `Pr[Bin(m, q) >= k] <= (e m q / k)^k` for `k >= 1`.
pub fn binomial_tail_bound(m: u64, q: f64, k: u64) -> Result<f64, AnalysisError> {
    if k == 0 {
        return Err(AnalysisError::Domain("binomial tail needs k >= 1".into()));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(AnalysisError::Domain(format!("probability {q} outside [0, 1]")));
    }
    Ok((E * m as f64 * q / k as f64).powf(k as f64))
}

/// `2 exp(−t² / (16 r c² M))` for a `c`-Lipschitz, `r`-certifiable statistic
/// with median `M`.
pub fn talagrand_tail(median: f64, t: f64, c: f64, r: f64) -> Result<f64, AnalysisError> {
    if !(median > 0.0) {
        return Err(AnalysisError::Domain(format!("median must be positive, got {median}")));
    }
    if !(t >= 0.0) || !(c > 0.0) || !(r > 0.0) {
        return Err(AnalysisError::Domain(format!("need t >= 0, c > 0, r > 0; got t = {t}, c = {c}, r = {r}")));
    }
    Ok(2.0 * (-t * t / (16.0 * r * c * c * median)).exp())
}

/// Inputs of the three tail bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TailBoundInput {
    ChernoffLower { mu: f64, a: f64 },
    ChernoffUpper { mu: f64, a: f64 },
    Binomial { m: u64, q: f64, k: u64 },
    Talagrand { median: f64, t: f64, c: f64, r: f64 },
}

impl TailBoundInput {
    pub fn evaluate(&self) -> Result<f64, AnalysisError> {
        match *self {
            TailBoundInput::ChernoffLower { mu, a } => chernoff_lower(mu, a),
            TailBoundInput::ChernoffUpper { mu, a } => chernoff_upper(mu, a),
            TailBoundInput::Binomial { m, q, k } => binomial_tail_bound(m, q, k),
            TailBoundInput::Talagrand { median, t, c, r } => talagrand_tail(median, t, c, r),
        }
    }
}

/// `n p / ln n`, reported in place of an explicit constant `C(ε)`.
pub fn density_ratio(n: usize, p: f64) -> f64 {
    n as f64 * p / (n as f64).ln()
}

/// `(1/2 + ε/2) x p`: the auxiliary min-degree window for part size (or
/// vertex count) `x`.
pub fn aux_window(x: usize, p: f64, eps: f64) -> f64 {
    (0.5 + eps / 2.0) * x as f64 * p
}

/// Counts of checks and in-window checks.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct WindowReport {
    pub checked: u64,
    pub in_window: u64,
    pub threshold: f64,
}

impl WindowReport {
    pub fn fraction(&self) -> f64 {
        if self.checked == 0 {
            0.0
        } else {
            self.in_window as f64 / self.checked as f64
        }
    }

    pub fn passed(&self) -> bool {
        self.checked > 0 && self.fraction() >= self.threshold
    }

    pub fn merge(&self, other: &WindowReport) -> WindowReport {
        WindowReport {
            checked: self.checked + other.checked,
            in_window: self.in_window + other.in_window,
            threshold: self.threshold,
        }
    }
}

/// Degree concentration over sampled colors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeConcentration {
    pub low: f64,
    pub high: f64,
    /// Colors with `low <= δ` and `Δ <= high`; this fraction is the criterion.
    pub colors: WindowReport,
    /// Individual (color, vertex) degrees in the window; diagnostic only.
    pub vertices: WindowReport,
}

/// Checks `(1 − ε) n p <= δ(G_c) <= Δ(G_c) <= (1 + ε) n p` for each color.
pub fn check_degree_concentration(colors: &[Graph], p: f64, eps: f64, threshold: f64) -> DegreeConcentration {
    let n = colors.first().map_or(0, Graph::n);
    let (low, high) = ((1.0 - eps) * n as f64 * p, (1.0 + eps) * n as f64 * p);
    let inside = |d: usize| low <= d as f64 && d as f64 <= high;
    let mut report = DegreeConcentration {
        low,
        high,
        colors: WindowReport {
            threshold,
            ..Default::default()
        },
        vertices: WindowReport {
            threshold,
            ..Default::default()
        },
    };
    for g in colors {
        assert_eq!(g.n(), n, "colors must share the vertex set");
        let degrees = g.degrees();
        let ok = degrees.iter().filter(|&&d| inside(d)).count();
        report.vertices.checked += degrees.len() as u64;
        report.vertices.in_window += ok as u64;
        report.colors.checked += 1;
        report.colors.in_window += u64::from(ok == degrees.len());
    }
    report
}

/// Checks `d_{H_c}(u, V_s) ∈ (1 ± ε) d_{H_c}(u) / 2` for every color, vertex
/// and side.
pub fn check_partition_degrees(
    family: &GraphFamily,
    part: &BalancedPartition,
    eps: f64,
    threshold: f64,
) -> WindowReport {
    let sides = [part.side_set(0), part.side_set(1)];
    let mut report = WindowReport {
        threshold,
        ..Default::default()
    };
    for g in family.colors() {
        for u in 0..family.n() {
            let half = g.degree(u) as f64 / 2.0;
            for side in &sides {
                let x = g.degree_into(u, side) as f64;
                report.checked += 1;
                if (1.0 - eps) * half <= x && x <= (1.0 + eps) * half {
                    report.in_window += 1;
                }
            }
        }
    }
    report
}

/// A thinned family whose auxiliary graph is checked.
#[derive(Clone, Copy, Debug)]
pub enum AuxTarget<'a> {
    /// `δ(B_π)` over both parts.
    Bipartite(&'a BipartiteFamily),
    /// `δ⁰(D_π)`.
    Digraph(&'a GraphFamily),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuxMinDegreeReport {
    pub window: f64,
    /// Distribution of the auxiliary minimum (semi)degree.
    pub distribution: DegreeDistribution,
    pub permutations: WindowReport,
}

/// Fraction of permutations whose auxiliary graph has minimum (semi)degree at
/// least `window`.
pub fn check_aux_min_degree(
    target: AuxTarget<'_>,
    window: f64,
    mode: EnumerationMode,
    threshold: f64,
    exec: Execution,
) -> Result<AuxMinDegreeReport, AnalysisError> {
    let distribution = match target {
        AuxTarget::Bipartite(f) => {
            let m = square_bipartite(f)?;
            permutation_histogram(m, mode, exec, |pi| {
                build_aux_bipartite(f, pi).expect("square family").min_degree()
            })?
        }
        AuxTarget::Digraph(f) => {
            let n = square_graph(f)?;
            permutation_histogram(n, mode, exec, |pi| {
                build_aux_digraph(f, pi).expect("square family").min_semidegree()
            })?
        }
    };
    let hits = distribution
        .histogram
        .iter()
        .filter(|(&v, _)| v as f64 >= window)
        .map(|(_, &c)| c)
        .sum();
    let permutations = WindowReport {
        checked: distribution.samples,
        in_window: hits,
        threshold,
    };
    Ok(AuxMinDegreeReport {
        window,
        distribution,
        permutations,
    })
}
