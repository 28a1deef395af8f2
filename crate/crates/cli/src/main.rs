use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

mod report;

use report::{Outcome, Sink};

/// Exact star complement search and verification.
#[derive(Parser, Debug)]
#[command(name = "starcomp", version)]
struct Cli {
    /// Worker threads for the search (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Graph6,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex types, parametric types and ρ tables for H = K_{t,s}.
    Analyze {
        t: usize,
        s: usize,
        /// Integer, `p/q`, or `root(c0,c1):pos|neg`.
        #[arg(allow_hyphen_values = true)]
        mu: String,
    },
    /// Enumerate graphs with K_{t,s} as a star complement for μ.
    Search(SearchArgs),
    /// Check that a vertex set is a star set for μ.
    Verify {
        /// A graph6 line; `--input` reads one graph per line instead.
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        graph6: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Comma-separated vertex indices.
        #[arg(long, value_delimiter = ',')]
        star_set: Vec<usize>,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Emit a named graph with its expected spectrum and star complement.
    Catalog {
        /// `G1`..`G5`, `C3`, `C5`, `Petersen`, `Clebsch`, `Knn(n)`,
        /// `Kts(t,s)`, `Gr(t,s,r)`.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Multiplicity bounds: ½(q+1)(q−2), and s(r−s) for K_{s,s}.
    Bound {
        #[arg(long)]
        q: usize,
        #[arg(long, requires = "r")]
        s: Option<usize>,
        #[arg(long, requires = "s")]
        r: Option<usize>,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["r", "sweep", "maximal"])))]
struct SearchArgs {
    t: usize,
    s: usize,
    #[arg(allow_hyphen_values = true)]
    mu: String,
    /// Only r-regular graphs.
    #[arg(long)]
    r: Option<usize>,
    /// Regular graphs of every feasible degree.
    #[arg(long)]
    sweep: bool,
    /// Maximal compatible star sets, regular or not.
    #[arg(long)]
    maximal: bool,
    /// Drop candidates failing the non-main condition (maximal mode).
    #[arg(long)]
    non_main: bool,
    #[arg(long)]
    max_x: Option<usize>,
    #[arg(long)]
    max_solutions: Option<usize>,
    /// Disable orbit pruning of the first star vertex.
    #[arg(long)]
    no_symmetry: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    if let Some(n) = cli.jobs {
        if n == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring worker threads")?;
    }
    let out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = Sink::new(BufWriter::new(out));
    let outcome = match cli.command {
        Command::Analyze { t, s, mu } => report::analyze(&mut sink, t, s, &mu)?,
        Command::Search(a) => report::search(&mut sink, &a)?,
        Command::Verify {
            graph6,
            input,
            star_set,
            mu,
        } => {
            let lines = match (graph6, input) {
                (Some(g), _) => vec![g],
                (None, Some(path)) => std::fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .map(String::from)
                    .collect(),
                (None, None) => unreachable!("clap requires one"),
            };
            report::verify(&mut sink, &lines, &star_set, &mu)?
        }
        Command::Catalog { name, list, format } => {
            if list {
                report::catalog_list(&mut sink)?
            } else {
                report::catalog(&mut sink, name.as_deref().unwrap_or_default(), format == Format::Graph6)?
            }
        }
        Command::Bound { q, s, r } => report::bound(&mut sink, q, s.zip(r))?,
    };
    sink.finish()?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Outcome::Found) => ExitCode::SUCCESS,
        Ok(Outcome::Empty) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
