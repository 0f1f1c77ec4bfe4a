use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

mod commands;
mod input;
mod output;

use commands::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(name = "diwidth", version, about = "Directed path-width and tree-width of directed co-graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Largest component handed to the exact ordering search.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=64))]
    pub oracle_cap: u64,
    /// Largest component handed to the co-graph recognizer.
    #[arg(long, global = true, default_value_t = 512, value_parser = clap::value_parser!(u64).range(1..))]
    pub recognizer_cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the combined report here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
    Dot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Path,
    Tree,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Directed path-width and tree-width of expressions (.dce) or edge lists.
    Width {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Also write one report per input into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Build a certifying decomposition.
    Decompose {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Path)]
        kind: Kind,
    },
    /// Check a decomposition against a digraph.
    Verify { graph: PathBuf, decomposition: PathBuf },
    /// Exact directed path-width by ordering search.
    Oracle {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Decide whether a digraph is a directed co-graph.
    Recognize {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Strong components in topological order, as a directed-union expression.
    Condense {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Random expression corpus.
    Generate {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        min_size: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        max_size: u64,
        /// `cograph`, `extended`, or weights `U:S:O:D` for union, series, order, directed union.
        #[arg(long, default_value = "cograph")]
        mix: String,
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
        #[arg(long, default_value_t = 0.3)]
        arc_density: f64,
        /// Write one `.dce` file per expression here instead of printing them.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// DOT rendering of a digraph, expression or decomposition file.
    ExportDot { input: PathBuf },
}

type Report = (PathBuf, Result<Outcome, CliError>);

fn run(cli: Cli) -> u8 {
    let opts = &cli.opts;
    let result: Result<Vec<Report>, CliError> = match &cli.command {
        Command::Width { inputs, out_dir } => {
            let results = batch(inputs, |p| commands::width(p, opts));
            if let Some(dir) = out_dir {
                if let Err(e) = output::write_reports(dir, &results) {
                    return report_error(None, &e);
                }
            }
            Ok(results)
        }
        Command::Oracle { inputs } => Ok(batch(inputs, |p| commands::oracle(p, opts))),
        Command::Recognize { inputs } => Ok(batch(inputs, |p| commands::recognize(p, opts))),
        Command::Condense { inputs } => Ok(batch(inputs, |p| commands::condense(p, opts))),
        Command::Decompose { input, kind } => {
            Ok(vec![(input.clone(), commands::decompose(input, *kind, opts))])
        }
        Command::Verify { graph, decomposition } => Ok(vec![(
            decomposition.clone(),
            commands::verify(graph, decomposition, opts),
        )]),
        Command::ExportDot { input } => Ok(vec![(input.clone(), commands::export_dot(input))]),
        Command::Generate {
            seed,
            count,
            min_size,
            max_size,
            mix,
            max_arity,
            arc_density,
            out_dir,
        } => commands::generate(&commands::GenerateArgs {
            seed: *seed,
            count: *count,
            min_size: *min_size as usize,
            max_size: *max_size as usize,
            mix,
            max_arity: *max_arity,
            arc_density: *arc_density,
            out_dir: out_dir.as_deref(),
        })
        .map(|o| vec![(PathBuf::new(), Ok(o))]),
    };
    let results = match result {
        Ok(r) => r,
        Err(e) => return report_error(None, &e),
    };

    let prefix = results.len() > 1;
    let mut combined = String::new();
    let mut code = 0;
    for (path, res) in &results {
        match res {
            Ok(out) => {
                if prefix && opts.format == Format::Text {
                    for line in out.text.lines() {
                        combined.push_str(&format!("{}: {line}\n", path.display()));
                    }
                } else {
                    if prefix {
                        combined.push_str(&format!("input={}\n", path.display()));
                    }
                    combined.push_str(&out.text);
                    if prefix {
                        combined.push('\n');
                    }
                }
                code = code.max(out.code);
            }
            Err(e) => code = code.max(report_error(Some(path), e)),
        }
    }
    match &opts.output {
        Some(path) => {
            if let Err(e) = output::write_atomic(path, &combined) {
                return report_error(None, &e);
            }
        }
        None => print!("{combined}"),
    }
    code
}

/// Runs `f` on every input in parallel; results come back sorted by path.
fn batch<F>(inputs: &[PathBuf], f: F) -> Vec<Report>
where
    F: Fn(&Path) -> Result<Outcome, CliError> + Sync,
{
    let mut sorted = inputs.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted.par_iter().map(|p| (p.clone(), f(p))).collect()
}

fn report_error(path: Option<&PathBuf>, e: &CliError) -> u8 {
    match path {
        Some(p) if !p.as_os_str().is_empty() => eprintln!("{}: error: {}", p.display(), e.message),
        _ => eprintln!("error: {}", e.message),
    }
    e.code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Expression handling recurses on the tree depth.
    rayon::ThreadPoolBuilder::new()
        .stack_size(64 << 20)
        .build_global()
        .expect("thread pool");
    let worker = std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(move || run(cli))
        .expect("worker thread");
    ExitCode::from(worker.join().unwrap_or(1))
}
