use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mclearn::{Budget, HypothesisClass};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "mclearn", version, about = "Exact dimensions, ERM gap experiments and online/bandit protocols for finite multiclass classes")]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Threads for Monte-Carlo trials; reports do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// All four dimensions with witnesses and the graph/Natarajan chain check.
    Dims {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Sample complexity of the good and bad ERM learners on the Cantor class.
    Gap {
        #[arg(long, default_value_t = 8)]
        d: usize,
        #[arg(long, default_value_t = 0.2)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4096)]
        m_max: u64,
    },
    /// Full-information online learning against a tree adversary or a recorded sequence.
    Online {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, default_value_t = OnlineLearnerKind::Soa)]
        learner: OnlineLearnerKind,
        #[arg(long, value_enum, default_value_t = AdversaryKind::Tree)]
        adversary: AdversaryKind,
        /// Transcript (JSONL) whose instance/label sequence is replayed.
        #[arg(long)]
        replay: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the transcript as JSONL.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Bandit-feedback learning against a tree adversary, a hidden member or a recorded transcript.
    Bandit {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, default_value_t = BanditLearnerKind::Bsoa)]
        learner: BanditLearnerKind,
        #[arg(long, value_enum, default_value_t = BanditAdversaryKind::Tree)]
        adversary: BanditAdversaryKind,
        /// Index of the hidden class member for `--adversary hidden`.
        #[arg(long)]
        hidden: Option<usize>,
        /// Comma-separated instance sequence for `--adversary hidden`.
        #[arg(long, value_delimiter = ',')]
        instances: Option<Vec<usize>>,
        /// Bandit transcript (JSONL) replayed by `--adversary replay`.
        #[arg(long)]
        replay: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the transcript as JSONL.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Random label bijections against a balanced distribution, with the Chernoff-style bound.
    Bijection {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Distribution JSON; uniform over all instance/label pairs by default.
        #[arg(long)]
        dist: Option<PathBuf>,
    },
    /// Re-runs the configuration embedded in a report.
    Rerun {
        report: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ClassArgs {
    #[arg(long, value_enum, conflicts_with = "file")]
    pub generator: Option<Generator>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Class in HCLASS v1 format.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    Full,
    Cantor,
    Constants,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OnlineLearnerKind {
    Soa,
    Constant,
    Majority,
    FirstConsistent,
    /// Exponential weights over SOA imitators; needs a replayed sequence.
    Lea,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdversaryKind {
    Tree,
    Replay,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BanditLearnerKind {
    Bsoa,
    BsoaUnfiltered,
    Constant,
    Majority,
    FirstConsistent,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BanditAdversaryKind {
    Tree,
    Hidden,
    Replay,
}

/// Where a class comes from, fully resolved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum ClassSource {
    Generator { name: Generator, d: usize, k: usize },
    File { path: PathBuf },
}

impl ClassSource {
    pub fn load(&self, budget: &Budget) -> Result<HypothesisClass, CliError> {
        Ok(match self {
            ClassSource::Generator { name: Generator::Full, d, k } => HypothesisClass::full(*d, *k, budget)?,
            ClassSource::Generator { name: Generator::Cantor, d, .. } => HypothesisClass::cantor(*d)?,
            ClassSource::Generator { name: Generator::Constants, d, k } => HypothesisClass::constants(*d, *k)?,
            ClassSource::File { path } => {
                let text = read(path)?;
                HypothesisClass::from_hclass(&text)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
            }
        })
    }
}

/// The resolved experiment: everything needed to reproduce a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub command: CommandConfig,
    pub seed: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub budget: Budget,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum CommandConfig {
    Dims {
        class: ClassSource,
    },
    Gap {
        d: usize,
        epsilon: f64,
        delta: f64,
        trials: u64,
        m_max: u64,
        policies: Vec<String>,
    },
    Online {
        class: ClassSource,
        learner: OnlineLearnerKind,
        adversary: AdversaryKind,
        replay: Option<PathBuf>,
        transcript: Option<PathBuf>,
    },
    Bandit {
        class: ClassSource,
        learner: BanditLearnerKind,
        adversary: BanditAdversaryKind,
        hidden: Option<usize>,
        instances: Option<Vec<usize>>,
        replay: Option<PathBuf>,
        transcript: Option<PathBuf>,
    },
    Bijection {
        class: ClassSource,
        alpha: f64,
        trials: u64,
        dist: Option<PathBuf>,
    },
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn resolve_class(args: &ClassArgs) -> Result<ClassSource, CliError> {
    if let Some(path) = &args.file {
        if args.d.is_some() || args.k.is_some() {
            return Err(CliError::Usage("--d/--k do not apply to --file".into()));
        }
        return Ok(ClassSource::File { path: path.clone() });
    }
    let name = args
        .generator
        .ok_or_else(|| CliError::Usage("give a class with --generator or --file".into()))?;
    let (d, k) = match name {
        Generator::Full => (
            args.d.ok_or_else(|| CliError::Usage("--generator full needs --d".into()))?,
            args.k.ok_or_else(|| CliError::Usage("--generator full needs --k".into()))?,
        ),
        Generator::Cantor => {
            let d = args.d.ok_or_else(|| CliError::Usage("--generator cantor needs --d".into()))?;
            if d > 16 {
                return Err(CliError::Usage(format!("cantor classes need d <= 16, got {d}")));
            }
            if args.k.is_some_and(|k| k != (1 << d) + 1) {
                return Err(CliError::Usage(format!("the cantor class over d={d} has k = {}", (1 << d) + 1)));
            }
            (d, (1 << d) + 1)
        }
        Generator::Constants => (
            args.d.unwrap_or(1),
            args.k.ok_or_else(|| CliError::Usage("--generator constants needs --k".into()))?,
        ),
    };
    Ok(ClassSource::Generator { name, d, k })
}

impl Config {
    /// Resolves defaults; `None` for `rerun`, which carries its own config.
    pub fn from_cli(cli: &Cli, budget: Budget) -> Result<Option<Config>, CliError> {
        let (command, seed) = match &cli.command {
            Command::Dims { class } => (CommandConfig::Dims { class: resolve_class(class)? }, 0),
            Command::Gap {
                d,
                epsilon,
                delta,
                trials,
                seed,
                m_max,
            } => (
                CommandConfig::Gap {
                    d: *d,
                    epsilon: *epsilon,
                    delta: *delta,
                    trials: *trials,
                    m_max: *m_max,
                    policies: vec!["good_observed_labels".into(), "bad".into()],
                },
                *seed,
            ),
            Command::Online {
                class,
                learner,
                adversary,
                replay,
                seed,
                transcript,
            } => (
                CommandConfig::Online {
                    class: resolve_class(class)?,
                    learner: *learner,
                    adversary: *adversary,
                    replay: replay.clone(),
                    transcript: transcript.clone(),
                },
                *seed,
            ),
            Command::Bandit {
                class,
                learner,
                adversary,
                hidden,
                instances,
                replay,
                seed,
                transcript,
            } => (
                CommandConfig::Bandit {
                    class: resolve_class(class)?,
                    learner: *learner,
                    adversary: *adversary,
                    hidden: *hidden,
                    instances: instances.clone(),
                    replay: replay.clone(),
                    transcript: transcript.clone(),
                },
                *seed,
            ),
            Command::Bijection {
                class,
                alpha,
                trials,
                seed,
                dist,
            } => (
                CommandConfig::Bijection {
                    class: resolve_class(class)?,
                    alpha: *alpha,
                    trials: *trials,
                    dist: dist.clone(),
                },
                *seed,
            ),
            Command::Rerun { .. } => return Ok(None),
        };
        Ok(Some(Config {
            command,
            seed,
            format: cli.format,
            output: cli.output.clone(),
            budget,
        }))
    }

    /// Checks every path before any computation starts.
    pub fn validate_paths(&self) -> Result<(), CliError> {
        let mut inputs: Vec<&PathBuf> = Vec::new();
        let mut outputs: Vec<&PathBuf> = self.output.iter().collect();
        match &self.command {
            CommandConfig::Dims { class } => inputs.extend(class_path(class)),
            CommandConfig::Gap { .. } => {}
            CommandConfig::Online {
                class,
                replay,
                transcript,
                ..
            }
            | CommandConfig::Bandit {
                class,
                replay,
                transcript,
                ..
            } => {
                inputs.extend(class_path(class));
                inputs.extend(replay);
                outputs.extend(transcript);
            }
            CommandConfig::Bijection { class, dist, .. } => {
                inputs.extend(class_path(class));
                inputs.extend(dist);
            }
        }
        for p in inputs {
            if !p.is_file() {
                return Err(CliError::Usage(format!("input file {} does not exist", p.display())));
            }
        }
        for p in outputs {
            let parent = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            if !parent.is_dir() {
                return Err(CliError::Usage(format!("output directory {} does not exist", parent.display())));
            }
        }
        Ok(())
    }
}

fn class_path(class: &ClassSource) -> Option<&PathBuf> {
    match class {
        ClassSource::File { path } => Some(path),
        ClassSource::Generator { .. } => None,
    }
}
