mod config;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mclearn::Budget;
use serde::{Deserialize, Serialize};

use config::{Cli, Command, CommandConfig, Config, Format};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(mclearn::Error),
}

impl From<mclearn::Error> for CliError {
    fn from(e: mclearn::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(mclearn::Error::Budget { .. }) => 2,
            CliError::Core(mclearn::Error::Invariant(_)) => 3,
            CliError::Core(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Report {
    schema: String,
    config: Config,
    result: serde_json::Value,
}

const SCHEMA: &str = "report_v1";

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(n) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?;
    }
    let config = match Config::from_cli(cli, Budget::from_env()?)? {
        Some(config) => config,
        None => {
            let Command::Rerun { report } = &cli.command else {
                unreachable!("only rerun carries no config")
            };
            let text = config::read(report)?;
            let parsed: Report = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: not a report: {e}", report.display())))?;
            if parsed.schema != SCHEMA {
                return Err(CliError::Usage(format!("unsupported report schema {:?}", parsed.schema)));
            }
            parsed.config
        }
    };
    config.validate_paths()?;
    let outcome = run::execute(&config)?;
    if let Some(jsonl) = &outcome.transcript {
        if let CommandConfig::Online { transcript: Some(path), .. } | CommandConfig::Bandit { transcript: Some(path), .. } =
            &config.command
        {
            std::fs::write(path, jsonl).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    let text = match config.format {
        Format::Json => {
            let report = Report {
                schema: SCHEMA.into(),
                config: config.clone(),
                result: outcome.result,
            };
            let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Usage(format!("csv output failed: {e}"));
            w.write_record(&outcome.table.header).map_err(io)?;
            for row in &outcome.table.rows {
                w.write_record(row).map_err(io)?;
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
        }
    };
    // a rerun writes where the command line says, never over the original
    let destination = match &cli.command {
        Command::Rerun { .. } => cli.output.clone(),
        _ => config.output.clone(),
    };
    match destination {
        Some(path) => std::fs::write(&path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}")))?,
    }
    Ok(())
}
