//! Experiment records and their CSV / JSON-lines rendering.
//!
//! CSV columns follow struct field order. Wall-clock times appear only in the
//! JSON-lines mirror so that CSV output is byte-identical across reruns.

use std::io::Write;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RecordError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrialStatus {
    /// The pipeline ran to the end; see `outcome`.
    Ok,
    /// The adversary could not meet the floor under the strict policy.
    UnsatisfiableFloor,
    /// Any other per-trial failure, including a caught panic.
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Found,
    None,
    Exhausted,
}

/// One pipeline trial. `verified` is present iff `outcome` is `found`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: String,
    pub status: TrialStatus,
    pub error: String,
    pub n: usize,
    pub colors: usize,
    pub p: f64,
    pub eps: f64,
    pub floor: usize,
    pub strategy: String,
    /// Smallest and largest color minimum degree of the sampled family
    /// (minimum d-set codegree for k-partite colors).
    pub host_min_degree: Option<usize>,
    pub host_max_degree: Option<usize>,
    /// (color, vertex) pairs (d-sets for k-partite colors) below the floor in
    /// the sampled family.
    pub floor_shortfall: Option<usize>,
    /// Minimum degree over all colors after thinning (codegree after repair).
    pub sub_min_degree: Option<usize>,
    pub sub_max_degree: Option<usize>,
    pub sub_edges: Option<usize>,
    pub pi_digest: Option<String>,
    pub aux_min_degree: Option<usize>,
    pub aux_max_degree: Option<usize>,
    pub aux_edges: Option<usize>,
    pub outcome: Option<Outcome>,
    /// Size of the Hall violator when a bipartite matching does not exist.
    pub certificate: Option<usize>,
    pub verified: Option<bool>,
    pub verify_detail: String,
}

impl TrialRecord {
    pub fn success(&self) -> bool {
        self.verified == Some(true)
    }
}

/// One row of a check suite (`concentration`, `aux-stats`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub index: u64,
    pub size: usize,
    pub checked: u64,
    pub hits: u64,
    pub fraction: f64,
    pub threshold: f64,
    pub pass: bool,
    /// Precondition unmet; reported, not failed.
    pub skipped: bool,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(check: &str, index: u64, size: usize, checked: u64, hits: u64, threshold: f64) -> Self {
        let fraction = if checked == 0 { 0.0 } else { hits as f64 / checked as f64 };
        CheckRecord {
            check: check.to_string(),
            index,
            size,
            checked,
            hits,
            fraction,
            threshold,
            pass: checked > 0 && fraction >= threshold,
            skipped: false,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        self.detail = detail;
        self
    }
}

#[derive(Serialize)]
struct Timed<'a, R: Serialize> {
    #[serde(flatten)]
    record: &'a R,
    wall_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pi: Option<&'a [usize]>,
}

/// Records of one pipeline batch with their timings.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialBatch {
    pub records: Vec<TrialRecord>,
    pub wall_ms: Vec<f64>,
    /// Full permutations, kept only in verbose mode.
    pub permutations: Vec<Option<Vec<usize>>>,
    pub required: f64,
}

impl TrialBatch {
    pub fn successes(&self) -> usize {
        self.records.iter().filter(|r| r.success()).count()
    }

    pub fn fraction(&self) -> f64 {
        self.successes() as f64 / self.records.len().max(1) as f64
    }

    pub fn passed(&self) -> bool {
        !self.records.is_empty() && self.fraction() >= self.required
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckBatch {
    pub records: Vec<CheckRecord>,
    pub wall_ms: Vec<f64>,
}

impl CheckBatch {
    pub fn passed(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(|r| r.pass)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExperimentOutput {
    Trials(TrialBatch),
    Checks(CheckBatch),
}

impl ExperimentOutput {
    pub fn passed(&self) -> bool {
        match self {
            ExperimentOutput::Trials(b) => b.passed(),
            ExperimentOutput::Checks(b) => b.passed(),
        }
    }

    pub fn summary(&self) -> String {
        match self {
            ExperimentOutput::Trials(b) => format!(
                "{}/{} verified successes ({:.3}, required {})",
                b.successes(),
                b.records.len(),
                b.fraction(),
                b.required
            ),
            ExperimentOutput::Checks(b) => {
                let passed = b.records.iter().filter(|r| r.pass).count();
                let skipped = b.records.iter().filter(|r| r.skipped).count();
                format!("{passed}/{} checks passed, {skipped} skipped", b.records.len())
            }
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), RecordError> {
        let mut w = csv::Writer::from_writer(out);
        match self {
            ExperimentOutput::Trials(b) => b.records.iter().try_for_each(|r| w.serialize(r))?,
            ExperimentOutput::Checks(b) => b.records.iter().try_for_each(|r| w.serialize(r))?,
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<(), RecordError> {
        match self {
            ExperimentOutput::Trials(b) => {
                for ((r, &wall_ms), pi) in b.records.iter().zip(&b.wall_ms).zip(&b.permutations) {
                    let line = Timed {
                        record: r,
                        wall_ms,
                        pi: pi.as_deref(),
                    };
                    serde_json::to_writer(&mut out, &line)?;
                    out.write_all(b"\n")?;
                }
            }
            ExperimentOutput::Checks(b) => {
                for (r, &wall_ms) in b.records.iter().zip(&b.wall_ms) {
                    let line = Timed { record: r, wall_ms, pi: None };
                    serde_json::to_writer(&mut out, &line)?;
                    out.write_all(b"\n")?;
                }
            }
        }
        Ok(())
    }

    pub fn csv_bytes(&self) -> Result<Vec<u8>, RecordError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(buf)
    }
}
