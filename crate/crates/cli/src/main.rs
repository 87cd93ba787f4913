use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod commands;

use commands::{CliError, Outcome, Status};

#[derive(Parser, Debug)]
#[command(name = "turan34", version, about = "Extremal K4-free triple systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for parallel stages.
    #[arg(long, env = "TURAN34_JOBS", global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every construction on n vertices with its compiled system.
    Enumerate { n: usize },
    /// Check bound attainment, K4-freeness, maximality and pairwise non-isomorphism.
    Verify { n: usize },
    /// Report the invariant tower of a system or layout file.
    Invariants { file: PathBuf },
    /// Decide whether two systems are isomorphic.
    Iso { a: PathBuf, b: PathBuf },
    /// Exhaustive search for the maximum K4-free systems on n vertices.
    Search {
        n: usize,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Print a named system or compile a layout file.
    Show {
        #[command(subcommand)]
        what: ShowTarget,
    },
}

#[derive(Subcommand, Debug)]
enum ShowTarget {
    /// The all-red construction on n vertices.
    Turan { n: usize },
    /// The seven-vertex extremal system outside the layout family.
    Exceptional7,
    /// Compile a layout file into its system.
    Layout { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Enumerate { .. } => "enumerate",
            Command::Verify { .. } => "verify",
            Command::Invariants { .. } => "invariants",
            Command::Iso { .. } => "iso",
            Command::Search { .. } => "search",
            Command::Show { .. } => "show",
        }
    }

    fn params(&self) -> Value {
        match self {
            Command::Enumerate { n } | Command::Verify { n } => json!({ "n": n }),
            Command::Invariants { file } => json!({ "file": file }),
            Command::Iso { a, b } => json!({ "a": a, "b": b }),
            Command::Search { n, budget } => json!({ "n": n, "budget": budget }),
            Command::Show { what } => match what {
                ShowTarget::Turan { n } => json!({ "target": "turan", "n": n }),
                ShowTarget::Exceptional7 => json!({ "target": "exceptional7" }),
                ShowTarget::Layout { file } => json!({ "target": "layout", "file": file }),
            },
        }
    }

    fn run(&self, jobs: Option<usize>) -> Result<Outcome, CliError> {
        match self {
            Command::Enumerate { n } => commands::enumerate(*n),
            Command::Verify { n } => commands::verify(*n),
            Command::Invariants { file } => commands::invariants(file),
            Command::Iso { a, b } => commands::iso(a, b),
            Command::Search { n, budget } => commands::search(*n, *budget, jobs),
            Command::Show { what } => match what {
                ShowTarget::Turan { n } => commands::show_turan(*n),
                ShowTarget::Exceptional7 => Ok(commands::show_exceptional7()),
                ShowTarget::Layout { file } => commands::show_layout(file),
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        // Fails only if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global();
    }
    let start = Instant::now();
    let result = cli.command.run(cli.jobs);
    let elapsed_ms = start.elapsed().as_millis();

    let (outcome, code) = match result {
        Ok(o) => {
            let code = o.exit_code();
            (o, code)
        }
        Err(e) => {
            eprintln!("turan34: {e}");
            (Outcome::error(&e), e.exit_code())
        }
    };

    let rendered = match cli.format {
        Format::Text => {
            let mut s = outcome.text.clone();
            if !s.is_empty() && !s.ends_with('\n') {
                s.push('\n');
            }
            if outcome.status != Status::Error {
                s.push_str(&format!("# elapsed_ms {elapsed_ms}\n"));
            }
            s
        }
        Format::Json => {
            let report = json!({
                "command": cli.command.name(),
                "params": cli.command.params(),
                "status": outcome.status.as_str(),
                "result": outcome.result,
                "timing": { "elapsed_ms": elapsed_ms as u64 },
            });
            let mut s = serde_json::to_string_pretty(&report).expect("plain json");
            s.push('\n');
            s
        }
    };

    let written = match &cli.out {
        Some(path) => std::fs::write(path, &rendered).map_err(|e| CliError::Io {
            path: path.clone(),
            source: e,
        }),
        None => {
            print!("{rendered}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("turan34: {e}");
        return ExitCode::from(e.exit_code());
    }
    ExitCode::from(code)
}
