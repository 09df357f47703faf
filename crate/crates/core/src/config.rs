//! Flat `key=value` experiment configuration with dotted keys.
//!
//! Blank lines and lines starting with `#` are ignored. Unknown and repeated
//! keys are errors.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

use crate::adversary::{AdversaryStrategy, FloorPolicy};
use crate::analysis::EXHAUSTIVE_LIMIT;
use crate::solvers::{SolveBudget, KPARTITE_ARITY_LIMIT};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key=value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{0}` given twice")]
    DuplicateKey(String),
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("invalid value for `{key}`: {message}")]
    InvalidValue { key: String, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("no known codegree threshold for d = {d} < k/2 (k = {k})")]
    UnknownThreshold { k: usize, d: usize },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExperimentKind {
    Pm,
    PmBipartite,
    Hc,
    Kpm,
    Concentration,
    AuxStats,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Pm => "pm",
            ExperimentKind::PmBipartite => "pm-bipartite",
            ExperimentKind::Hc => "hc",
            ExperimentKind::Kpm => "kpm",
            ExperimentKind::Concentration => "concentration",
            ExperimentKind::AuxStats => "aux-stats",
        }
    }

    /// Whether the experiment produces per-trial pipeline records.
    pub fn is_pipeline(&self) -> bool {
        matches!(
            self,
            ExperimentKind::Pm | ExperimentKind::PmBipartite | ExperimentKind::Hc | ExperimentKind::Kpm
        )
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "pm" => ExperimentKind::Pm,
            "pm-bipartite" | "pm-bip" => ExperimentKind::PmBipartite,
            "hc" => ExperimentKind::Hc,
            "kpm" => ExperimentKind::Kpm,
            "concentration" | "conc" => ExperimentKind::Concentration,
            "aux-stats" => ExperimentKind::AuxStats,
            other => {
                return Err(ConfigError::InvalidValue {
                    key: "kind".into(),
                    message: format!("unknown experiment `{other}`"),
                })
            }
        })
    }
}

/// Checks run by the concentration suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConcCheck {
    Degree,
    Partition,
    AuxBipartite,
    AuxDigraph,
    Bounds,
}

impl ConcCheck {
    pub fn name(&self) -> &'static str {
        match self {
            ConcCheck::Degree => "degree",
            ConcCheck::Partition => "partition",
            ConcCheck::AuxBipartite => "aux-bipartite",
            ConcCheck::AuxDigraph => "aux-digraph",
            ConcCheck::Bounds => "bounds",
        }
    }
}

impl FromStr for ConcCheck {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "degree" => ConcCheck::Degree,
            "partition" => ConcCheck::Partition,
            "aux-bipartite" => ConcCheck::AuxBipartite,
            "aux-digraph" => ConcCheck::AuxDigraph,
            "bounds" => ConcCheck::Bounds,
            other => return Err(format!("unknown check `{other}`")),
        })
    }
}

/// What the `aux-stats` experiment measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxCheck {
    /// Exhaustive moments of `d_{B_π}(j)` against the exact formulas.
    Moments,
    /// Every solver success on star-cut thinned complete families lifts to a
    /// verified rainbow structure, over all permutations.
    Lifts,
}

impl FromStr for AuxCheck {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "moments" => Ok(AuxCheck::Moments),
            "lifts" => Ok(AuxCheck::Lifts),
            other => Err(format!("unknown aux check `{other}`")),
        }
    }
}

impl AuxCheck {
    pub fn name(&self) -> &'static str {
        match self {
            AuxCheck::Moments => "moments",
            AuxCheck::Lifts => "lifts",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub n: usize,
    pub p: f64,
    pub eps: f64,
    pub k: usize,
    pub d: usize,
    /// Overrides the kind's color count (`n/2` or `n`); concentration only.
    pub colors: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    /// 0 = all cores, 1 = sequential.
    pub jobs: usize,
    pub adversary: AdversaryStrategy,
    pub floor_policy: FloorPolicy,
    pub budget: SolveBudget,
    /// Required fraction of verified successes (pipelines).
    pub success_threshold: f64,
    /// Required in-window fraction (concentration checks).
    pub window_threshold: f64,
    /// Edge probability of k-partite colors before codegree repair.
    pub kpm_density: f64,
    pub checks: Vec<ConcCheck>,
    pub partitions: usize,
    pub permutations: usize,
    /// Monte Carlo draws per bound check.
    pub samples: usize,
    pub alpha: f64,
    pub aux_check: AuxCheck,
    pub aux_sizes: Vec<usize>,
    pub output_dir: Option<PathBuf>,
    /// Dump full permutations into the JSON-lines mirror.
    pub verbose: bool,
}

const KEYS: &[&str] = &[
    "kind",
    "n",
    "p",
    "eps",
    "k",
    "d",
    "colors",
    "trials",
    "seed",
    "jobs",
    "adversary.strategy",
    "adversary.focus",
    "adversary.floor_policy",
    "solver.node_limit",
    "solver.time_ms",
    "solver.restarts",
    "threshold.success",
    "threshold.window",
    "kpm.density",
    "conc.checks",
    "conc.partitions",
    "conc.permutations",
    "conc.samples",
    "conc.alpha",
    "aux.check",
    "aux.sizes",
    "output.dir",
    "output.verbose",
];

struct Entries(BTreeMap<String, String>);

impl Entries {
    fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        self.raw(key)
            .map(|v| {
                v.parse::<T>().map_err(|e| ConfigError::InvalidValue {
                    key: key.to_string(),
                    message: e.to_string(),
                })
            })
            .transpose()
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        self.raw(key)
            .map(|v| {
                v.split(',')
                    .map(|x| {
                        x.trim().parse::<T>().map_err(|e| ConfigError::InvalidValue {
                            key: key.to_string(),
                            message: e.to_string(),
                        })
                    })
                    .collect()
            })
            .transpose()
    }
}

impl ExperimentConfig {
    /// Defaults for `kind` with the given size and density; other fields take
    /// their documented defaults.
    pub fn new(kind: ExperimentKind, n: usize, p: f64) -> Self {
        ExperimentConfig {
            kind,
            n,
            p,
            eps: 0.1,
            k: 3,
            d: 2,
            colors: None,
            trials: 1,
            seed: 0,
            jobs: 0,
            adversary: AdversaryStrategy::None,
            floor_policy: FloorPolicy::Strict,
            budget: SolveBudget::default(),
            success_threshold: 0.95,
            window_threshold: 0.99,
            kpm_density: 0.5,
            checks: vec![ConcCheck::Degree, ConcCheck::Partition],
            partitions: 10,
            permutations: 100,
            samples: 100_000,
            alpha: 0.5,
            aux_check: AuxCheck::Moments,
            aux_sizes: vec![3, 4, 5],
            output_dir: None,
            verbose: false,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line: idx + 1,
                    text: line.to_string(),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(ConfigError::UnknownKey(key.to_string()));
            }
            if entries.insert(key.to_string(), value.to_string()).is_some() {
                return Err(ConfigError::DuplicateKey(key.to_string()));
            }
        }
        let e = Entries(entries);

        let kind: ExperimentKind = e.get("kind")?.ok_or(ConfigError::Missing("kind"))?;
        let n = e.get("n")?.ok_or(ConfigError::Missing("n"))?;
        let p = match (e.get("p")?, kind) {
            (Some(p), _) => p,
            (None, ExperimentKind::Kpm | ExperimentKind::AuxStats) => 1.0,
            (None, _) => return Err(ConfigError::Missing("p")),
        };
        let mut cfg = ExperimentConfig::new(kind, n, p);
        macro_rules! set {
            ($field:expr, $key:literal) => {
                if let Some(v) = e.get($key)? {
                    $field = v;
                }
            };
        }
        set!(cfg.eps, "eps");
        set!(cfg.k, "k");
        set!(cfg.d, "d");
        cfg.colors = e.get("colors")?;
        set!(cfg.trials, "trials");
        set!(cfg.seed, "seed");
        set!(cfg.jobs, "jobs");
        set!(cfg.floor_policy, "adversary.floor_policy");
        set!(cfg.success_threshold, "threshold.success");
        set!(cfg.window_threshold, "threshold.window");
        set!(cfg.kpm_density, "kpm.density");
        set!(cfg.partitions, "conc.partitions");
        set!(cfg.permutations, "conc.permutations");
        set!(cfg.samples, "conc.samples");
        set!(cfg.alpha, "conc.alpha");
        set!(cfg.aux_check, "aux.check");
        set!(cfg.verbose, "output.verbose");
        if let Some(checks) = e.list("conc.checks")? {
            cfg.checks = checks;
        }
        if let Some(sizes) = e.list("aux.sizes")? {
            cfg.aux_sizes = sizes;
        }
        cfg.output_dir = e.raw("output.dir").map(PathBuf::from);

        let strategy: Option<AdversaryStrategy> = e.get("adversary.strategy")?;
        let focus: Option<usize> = e.get("adversary.focus")?;
        cfg.adversary = match (strategy, focus) {
            (Some(AdversaryStrategy::StarCut { .. }), f) => AdversaryStrategy::StarCut { focus: f.unwrap_or(0) },
            (Some(_), Some(_)) => {
                return Err(ConfigError::Invalid(
                    "adversary.focus only applies to star-cut".into(),
                ))
            }
            (Some(s), None) => s,
            (None, Some(_)) => return Err(ConfigError::Missing("adversary.strategy")),
            (None, None) => AdversaryStrategy::None,
        };

        let defaults = SolveBudget::default();
        let node_limit = e.get("solver.node_limit")?.unwrap_or(defaults.node_limit());
        let time_ms = e
            .get("solver.time_ms")?
            .unwrap_or(defaults.time_limit().as_millis() as u64);
        let restarts = e.get("solver.restarts")?.unwrap_or(defaults.restarts());
        cfg.budget = SolveBudget::new(node_limit, Duration::from_millis(time_ms), restarts).map_err(|err| {
            ConfigError::InvalidValue {
                key: "solver".into(),
                message: err.to_string(),
            }
        })?;

        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|err| ConfigError::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |m: String| Err(ConfigError::Invalid(m));
        let needs_p = !matches!(self.kind, ExperimentKind::Kpm);
        if needs_p && !(self.p > 0.0 && self.p <= 1.0) {
            return invalid(format!("p = {} must lie in (0, 1]", self.p));
        }
        if !(self.eps > 0.0) {
            return invalid(format!("eps = {} must be positive", self.eps));
        }
        if self.trials == 0 {
            return invalid("trials must be at least 1".into());
        }
        for (name, t) in [
            ("threshold.success", self.success_threshold),
            ("threshold.window", self.window_threshold),
        ] {
            if !(0.0..=1.0).contains(&t) {
                return invalid(format!("{name} = {t} must lie in [0, 1]"));
            }
        }
        match self.kind {
            ExperimentKind::Pm | ExperimentKind::PmBipartite => {
                if self.n < 2 || !self.n.is_multiple_of(2) {
                    return invalid(format!("{} needs an even n >= 2, got {}", self.kind, self.n));
                }
            }
            ExperimentKind::Hc => {
                if self.n < 3 {
                    return invalid(format!("hc needs n >= 3, got {}", self.n));
                }
            }
            ExperimentKind::Kpm => {
                if self.d == 0 || self.d >= self.k || self.k > KPARTITE_ARITY_LIMIT {
                    return invalid(format!(
                        "kpm needs 0 < d < k <= {KPARTITE_ARITY_LIMIT}, got k = {}, d = {}",
                        self.k, self.d
                    ));
                }
                if 2 * self.d < self.k {
                    return Err(ConfigError::UnknownThreshold { k: self.k, d: self.d });
                }
                if self.n == 0 || self.n > 10 {
                    return invalid(format!("kpm needs 1 <= n <= 10, got {}", self.n));
                }
                if self.adversary != AdversaryStrategy::None {
                    return invalid("kpm colors are built to the codegree floor; adversary must be none".into());
                }
                if !(0.0..=1.0).contains(&self.kpm_density) {
                    return invalid(format!("kpm.density = {} must lie in [0, 1]", self.kpm_density));
                }
            }
            ExperimentKind::Concentration => {
                if self.checks.is_empty() {
                    return invalid("conc.checks is empty".into());
                }
                let aux = self.checks.contains(&ConcCheck::AuxBipartite) || self.checks.contains(&ConcCheck::Partition);
                if aux && !self.n.is_multiple_of(2) {
                    return invalid(format!("partition and bipartite checks need even n, got {}", self.n));
                }
                if self.n < 2 || self.partitions == 0 || self.permutations == 0 || self.samples == 0 {
                    return invalid("n >= 2 and positive conc.partitions, conc.permutations, conc.samples required".into());
                }
                if !(self.alpha > 0.0) {
                    return invalid(format!("conc.alpha = {} must be positive", self.alpha));
                }
            }
            ExperimentKind::AuxStats => {
                let limit = match self.aux_check {
                    AuxCheck::Moments => EXHAUSTIVE_LIMIT,
                    AuxCheck::Lifts => 6,
                };
                if self.aux_sizes.is_empty() || self.aux_sizes.iter().any(|&s| s < 2 || s > limit) {
                    return invalid(format!("aux.sizes must lie in 2..={limit}, got {:?}", self.aux_sizes));
                }
            }
        }
        if let AdversaryStrategy::StarCut { focus } = self.adversary {
            if focus >= self.n {
                return invalid(format!("adversary.focus = {focus} is not a vertex of [0, {})", self.n));
            }
        }
        Ok(())
    }

    /// Canonical text form; parsing it yields an equal config.
    pub fn to_text(&self) -> String {
        let mut lines = vec![
            format!("kind={}", self.kind),
            format!("n={}", self.n),
            format!("p={}", self.p),
            format!("eps={}", self.eps),
            format!("k={}", self.k),
            format!("d={}", self.d),
        ];
        if let Some(c) = self.colors {
            lines.push(format!("colors={c}"));
        }
        lines.extend([
            format!("trials={}", self.trials),
            format!("seed={}", self.seed),
            format!("jobs={}", self.jobs),
            format!("adversary.strategy={}", self.adversary.name()),
        ]);
        if let AdversaryStrategy::StarCut { focus } = self.adversary {
            lines.push(format!("adversary.focus={focus}"));
        }
        let join = |xs: Vec<String>| xs.join(",");
        lines.extend([
            format!("adversary.floor_policy={}", self.floor_policy),
            format!("solver.node_limit={}", self.budget.node_limit()),
            format!("solver.time_ms={}", self.budget.time_limit().as_millis()),
            format!("solver.restarts={}", self.budget.restarts()),
            format!("threshold.success={}", self.success_threshold),
            format!("threshold.window={}", self.window_threshold),
            format!("kpm.density={}", self.kpm_density),
            format!("conc.checks={}", join(self.checks.iter().map(|c| c.name().to_string()).collect())),
            format!("conc.partitions={}", self.partitions),
            format!("conc.permutations={}", self.permutations),
            format!("conc.samples={}", self.samples),
            format!("conc.alpha={}", self.alpha),
            format!("aux.check={}", self.aux_check.name()),
            format!("aux.sizes={}", join(self.aux_sizes.iter().map(usize::to_string).collect())),
        ]);
        if let Some(dir) = &self.output_dir {
            lines.push(format!("output.dir={}", dir.display()));
        }
        lines.push(format!("output.verbose={}", self.verbose));
        lines.join("\n") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_dotted_keys_and_comments() {
        let cfg = ExperimentConfig::parse(
            "# rainbow PM\nkind=pm\nn=40\np = 0.3\n\nadversary.strategy=random-thinning\nadversary.floor_policy=cap-at-host\nsolver.time_ms=500\ntrials=7\n",
        )
        .unwrap();
        assert_eq!(cfg.kind, ExperimentKind::Pm);
        assert_eq!((cfg.n, cfg.p, cfg.trials), (40, 0.3, 7));
        assert_eq!(cfg.adversary, AdversaryStrategy::RandomThinning);
        assert_eq!(cfg.floor_policy, FloorPolicy::CapAtHost);
        assert_eq!(cfg.budget.time_limit(), Duration::from_millis(500));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(ExperimentConfig::parse("kind=pm\nn=4\np=0.5\nbogus=1"), Err(ConfigError::UnknownKey(_))));
        assert!(matches!(ExperimentConfig::parse("kind=pm\nn=4\nn=6\np=0.5"), Err(ConfigError::DuplicateKey(_))));
        assert!(matches!(ExperimentConfig::parse("kind=pm\nn 4"), Err(ConfigError::Syntax { line: 2, .. })));
        assert!(matches!(ExperimentConfig::parse("kind=pm\nn=5\np=0.5"), Err(ConfigError::Invalid(_))));
        assert!(matches!(ExperimentConfig::parse("kind=pm\nn=4\np=0"), Err(ConfigError::Invalid(_))));
        assert!(matches!(ExperimentConfig::parse("kind=pm\nn=4\np=1.5"), Err(ConfigError::Invalid(_))));
        assert!(matches!(ExperimentConfig::parse("kind=pm\nn=4\np=0.5\neps=0"), Err(ConfigError::Invalid(_))));
        assert!(matches!(ExperimentConfig::parse("kind=pm\nn=4\np=0.5\ntrials=0"), Err(ConfigError::Invalid(_))));
        assert!(matches!(ExperimentConfig::parse("kind=pm\nn=4"), Err(ConfigError::Missing("p"))));
        assert!(matches!(
            ExperimentConfig::parse("kind=pm\nn=4\np=0.5\nsolver.restarts=0"),
            Err(ConfigError::InvalidValue { .. })
        ));
        assert_eq!(
            ExperimentConfig::parse("kind=kpm\nn=6\nk=5\nd=2"),
            Err(ConfigError::UnknownThreshold { k: 5, d: 2 })
        );
        assert!(ExperimentConfig::parse("kind=kpm\nn=6\nk=4\nd=2").is_ok());
    }

    #[test]
    fn text_form_round_trips() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::Concentration, 100, 0.05);
        cfg.checks = vec![ConcCheck::AuxDigraph, ConcCheck::Bounds];
        cfg.adversary = AdversaryStrategy::StarCut { focus: 3 };
        cfg.colors = Some(12);
        cfg.output_dir = Some(PathBuf::from("out/x"));
        assert_eq!(ExperimentConfig::parse(&cfg.to_text()).unwrap(), cfg);
    }
}
