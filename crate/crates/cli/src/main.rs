//! `extgraph`: Ext groups of graph C*-algebras and 1-sink extensions from
//! the command line.

mod commands;
mod report;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use report::{CliError, Input, Output, EXIT_PARSE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "extgraph",
    version,
    about = "Ext groups of graph C*-algebras via exact integer cokernels"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for commands taking several files (0 = all cores).
    #[arg(long, short, default_value_t = 1, global = true)]
    jobs: usize,

    /// More diagnostics on stderr; twice prints Smith normal form steps.
    #[arg(long, short, action = ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ext group of each graph, from both coker(A - I) and coker(B - I).
    Ext {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
    },
    /// Wojciech vector, its class and essentiality of each extension.
    Wojciech {
        #[arg(required = true)]
        extensions: Vec<PathBuf>,
    },
    /// Sum of two extensions of the same graph, written as a simple extension.
    Sum {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Essential extension whose class is that of the given vector.
    Essentialize {
        graph: PathBuf,
        /// Comma-separated integers in vertex declaration order.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Obstruction report for the ladder graph truncated at m vertices.
    Counterexample {
        #[arg(value_parser = clap::value_parser!(u64).range(1..=10_000))]
        m: u64,
    },
    /// Smith normal form U·M·V = S of a matrix file.
    Snf {
        matrix: PathBuf,
        /// Write U.txt, S.txt and V.txt here instead of stdout.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check the 1-sink extension conditions.
    Validate {
        #[arg(required = true)]
        extensions: Vec<PathBuf>,
    },
    /// Sinks, Condition (L) and transitivity of each graph.
    Check {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Ext { .. } => "ext",
            Command::Wojciech { .. } => "wojciech",
            Command::Sum { .. } => "sum",
            Command::Essentialize { .. } => "essentialize",
            Command::Counterexample { .. } => "counterexample",
            Command::Snf { .. } => "snf",
            Command::Validate { .. } => "validate",
            Command::Check { .. } => "check",
        }
    }
}

/// One unit of work: the inputs it read and what came of them.
struct Job {
    inputs: Vec<Input>,
    result: Result<Output, CliError>,
}

fn per_file(
    paths: &[PathBuf],
    jobs: usize,
    run: impl Fn(&Input) -> Result<Output, CliError> + Sync,
) -> Vec<Job> {
    let work = || {
        paths
            .par_iter()
            .map(|p| {
                let input = Input::read(p);
                let result = run(&input);
                Job {
                    inputs: vec![input],
                    result,
                }
            })
            .collect()
    };
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

fn single(inputs: Vec<Input>, run: impl FnOnce(&[Input]) -> Result<Output, CliError>) -> Vec<Job> {
    let result = run(&inputs);
    vec![Job { inputs, result }]
}

fn run_command(cli: &Cli) -> Vec<Job> {
    let verbose = cli.verbose;
    match &cli.command {
        Command::Ext { graphs } => per_file(graphs, cli.jobs, |i| commands::ext(i, verbose)),
        Command::Wojciech { extensions } => per_file(extensions, cli.jobs, commands::wojciech),
        Command::Validate { extensions } => per_file(extensions, cli.jobs, commands::validate),
        Command::Check { graphs } => per_file(graphs, cli.jobs, commands::check),
        Command::Sum {
            first,
            second,
            output,
        } => single(vec![Input::read(first), Input::read(second)], |i| {
            commands::sum(&i[0], &i[1], output.as_deref())
        }),
        Command::Essentialize {
            graph,
            vector,
            output,
        } => single(vec![Input::read(graph)], |i| {
            commands::essentialize(&i[0], vector, output.as_deref())
        }),
        Command::Counterexample { m } => single(vec![], |_| commands::counterexample(*m as usize)),
        Command::Snf { matrix, out_dir } => single(vec![Input::read(matrix)], |i| {
            commands::snf(&i[0], out_dir.as_deref(), verbose)
        }),
    }
}

fn parameters(command: &Command) -> Value {
    match command {
        Command::Essentialize { vector, .. } => json!({ "vector": vector }),
        Command::Counterexample { m } => json!({ "m": m }),
        _ => json!({}),
    }
}

fn render_json(cli: &Cli, jobs: &[Job]) -> String {
    let inputs: Vec<Value> = jobs
        .iter()
        .flat_map(|j| j.inputs.iter().map(Input::describe))
        .collect();
    let results: Vec<Value> = jobs
        .iter()
        .map(|job| {
            let paths: Vec<&str> = job.inputs.iter().map(|i| i.path.as_str()).collect();
            match &job.result {
                Ok(out) => json!({
                    "inputs": paths,
                    "ok": true,
                    "result": out.json,
                    "warnings": out.warnings,
                }),
                Err(e) => json!({
                    "inputs": paths,
                    "ok": false,
                    "error": { "exit_code": e.code, "message": e.message },
                }),
            }
        })
        .collect();
    let doc = json!({
        "tool": "extgraph",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cli.command.name(),
        "parameters": parameters(&cli.command),
        "inputs": inputs,
        "results": results,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.format == Format::Dot && matches!(cli.command, Command::Snf { .. }) {
        eprintln!("error: snf has no DOT rendering");
        return ExitCode::from(EXIT_PARSE);
    }
    let jobs = run_command(&cli);
    let multiple = jobs.len() > 1;

    let mut stdout = std::io::stdout().lock();
    let mut code = 0u8;
    for job in &jobs {
        let label = job.inputs.first().map(|i| i.path.as_str()).unwrap_or("");
        match &job.result {
            Ok(out) => {
                for line in &out.log {
                    eprintln!("{line}");
                }
                for w in &out.warnings {
                    eprintln!("warning: {w}");
                }
                match cli.format {
                    Format::Text => {
                        if multiple {
                            let _ = writeln!(stdout, "== {label} ==");
                        }
                        let _ = stdout.write_all(out.text.as_bytes());
                    }
                    Format::Dot => {
                        if let Some(dot) = &out.dot {
                            let _ = stdout.write_all(dot.as_bytes());
                        }
                    }
                    Format::Json => {}
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                if code == 0 {
                    code = e.code;
                }
            }
        }
    }
    if cli.format == Format::Json {
        let _ = stdout.write_all(render_json(&cli, &jobs).as_bytes());
    }
    ExitCode::from(code)
}
