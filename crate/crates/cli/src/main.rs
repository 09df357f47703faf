//! `rainbow`: batch runner for the rainbow pipelines and diagnostic suites.
//!
//! Exit codes: 0 batch completed, 1 configuration or I/O error, 2 the batch
//! missed its threshold and `--assert` was given.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rainbow_core::{run_experiment, ConfigError, ExperimentConfig, ExperimentKind, ExperimentOutput};

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Rainbow perfect matchings and Hamilton cycles in random graph systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rainbow perfect matching in n/2 colors of G(n,p).
    Pm(RunArgs),
    /// Rainbow perfect matching in n/2 colors of B(n,p).
    #[command(name = "pm-bip")]
    PmBip(RunArgs),
    /// Rainbow Hamilton cycle in n colors of G(n,p).
    Hc(RunArgs),
    /// Rainbow perfect matching in n k-partite k-graphs.
    Kpm(RunArgs),
    /// Degree, partition, auxiliary-degree and tail-bound checks.
    Conc(RunArgs),
    /// Exact permutation moments and lift soundness on small families.
    #[command(name = "aux-stats")]
    AuxStats(RunArgs),
}

impl Command {
    fn parts(&self) -> (ExperimentKind, &RunArgs) {
        match self {
            Command::Pm(a) => (ExperimentKind::Pm, a),
            Command::PmBip(a) => (ExperimentKind::PmBipartite, a),
            Command::Hc(a) => (ExperimentKind::Hc, a),
            Command::Kpm(a) => (ExperimentKind::Kpm, a),
            Command::Conc(a) => (ExperimentKind::Concentration, a),
            Command::AuxStats(a) => (ExperimentKind::AuxStats, a),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Config file of `key=value` lines; `kind` may be omitted.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output directory; CSV goes to stdout when neither this nor
    /// `output.dir` is set.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
    #[arg(long, value_name = "N")]
    trials: Option<usize>,
    /// Worker threads; 0 uses every core, 1 runs sequentially.
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
    /// Exit with status 2 when the batch misses its threshold.
    #[arg(long = "assert")]
    assert_threshold: bool,
    /// Also write a JSON-lines mirror with wall times.
    #[arg(long)]
    jsonl: bool,
    /// Keep full permutations in the JSON-lines mirror.
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug)]
enum CliError {
    Config(ConfigError),
    Io(String),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "config error: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

fn load_config(kind: ExperimentKind, args: &RunArgs) -> Result<ExperimentConfig, CliError> {
    let text = fs::read_to_string(&args.config).map_err(|e| ConfigError::Io {
        path: args.config.display().to_string(),
        message: e.to_string(),
    })?;
    let has_kind = text
        .lines()
        .any(|l| l.split_once('=').is_some_and(|(k, _)| k.trim() == "kind"));
    let text = if has_kind { text } else { format!("kind={kind}\n{text}") };
    let mut cfg = ExperimentConfig::parse(&text)?;
    if cfg.kind != kind {
        return Err(ConfigError::Invalid(format!("config is for `{}` but the subcommand runs `{kind}`", cfg.kind)).into());
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    if let Some(jobs) = args.jobs {
        cfg.jobs = jobs;
    }
    if let Some(out) = &args.out {
        cfg.output_dir = Some(out.clone());
    }
    cfg.verbose |= args.verbose;
    cfg.validate()?;
    Ok(cfg)
}

fn write_file(path: &Path, write: impl FnOnce(BufWriter<File>) -> Result<(), String>) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    write(BufWriter::new(file)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(cfg: &ExperimentConfig, out: &ExperimentOutput, jsonl: bool) -> Result<(), CliError> {
    let stem = cfg.kind.name();
    match &cfg.output_dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            write_file(&dir.join(format!("{stem}.csv")), |w| out.write_csv(w).map_err(|e| e.to_string()))?;
            if jsonl {
                write_file(&dir.join(format!("{stem}.jsonl")), |mut w| {
                    out.write_jsonl(&mut w).map_err(|e| e.to_string())?;
                    w.flush().map_err(|e| e.to_string())
                })?;
            }
        }
        None => {
            let stdout = io::stdout();
            out.write_csv(stdout.lock()).map_err(|e| CliError::Io(e.to_string()))?;
            if jsonl {
                let mut lock = stdout.lock();
                out.write_jsonl(&mut lock).map_err(|e| CliError::Io(e.to_string()))?;
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let (kind, args) = cli.command.parts();
    let cfg = load_config(kind, args)?;
    let out = run_experiment(&cfg)?;
    emit(&cfg, &out, args.jsonl)?;
    eprintln!("{kind}: {}", out.summary());
    Ok(out.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (_, args) = cli.command.parts();
    match run(&cli) {
        Ok(passed) if !passed && args.assert_threshold => {
            eprintln!("threshold not met");
            ExitCode::from(2)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
