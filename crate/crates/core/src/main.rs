//! `urfs` command-line interface.
//!
//! Every subcommand reads JSON documents from file paths (`-` for standard
//! input), prints the machine-readable report on standard output and a human
//! summary (with timing) on standard error.
//!
//! Exit status: 0 definitive, 3 unknown within budget, 4 a checked invariant
//! fails, 2 input or usage error, 1 internal failure.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use urfs::commands::{self, error_exit_code, CommandOutput, EXIT_INPUT, EXIT_INTERNAL};
use urfs::config::{Config, ConventionName};
use urfs::error::{Error, Result};
use urfs::io::parse_document;

#[derive(Parser, Debug)]
#[command(
    name = "urfs",
    version,
    about = "Weil–Deligne pairs: validation, conjugacy, monodromy and (φ, N)-modules"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// JSON configuration file; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Seed for randomized searches.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Degree bound of the representation family.
    #[arg(long, global = true, value_name = "D")]
    degree: Option<usize>,
    /// Truncation order for log modules.
    #[arg(long, global = true, value_name = "T")]
    order: Option<usize>,
    /// Frobenius normalisation of `s` in input and output pairs.
    #[arg(long, global = true, value_enum)]
    convention: Option<ConventionArg>,
    /// Trial points for intertwiner searches.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Also write the bare result document (without the report envelope) here.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Suppress the human summary.
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Arithmetic,
    Geometric,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every invariant of a pair, presentation, module or finite image.
    Validate { input: PathBuf },
    /// Decide conjugacy of two pairs in their group.
    CheckEquiv { a: PathBuf, b: PathBuf },
    /// Print the complete GL-conjugacy invariant (q-chains and multiplicities).
    CanonicalForm { input: PathBuf },
    /// Replace s by its semisimple part.
    Semisimplify { input: PathBuf },
    /// Push a pair forward along a tensor construction, e.g. `Sym^2(V)`.
    Pushforward {
        input: PathBuf,
        #[arg(long)]
        rep: String,
    },
    /// Compare two pairs in every representation up to the degree bound.
    ElementConj { a: PathBuf, b: PathBuf },
    /// Whether the class is fixed by field automorphisms.
    Rationality {
        input: PathBuf,
        /// Image of the field generator, as a JSON coordinate array; repeatable.
        /// Defaults to every automorphism of the field.
        #[arg(long = "auto", value_name = "JSON")]
        automorphisms: Vec<String>,
    },
    /// Tame-quotient presentations.
    #[command(subcommand)]
    Monodromy(MonodromyCommand),
    /// Restrict to a totally ramified extension of degree e.
    RestrictRam {
        input: PathBuf,
        #[arg(long)]
        e: u64,
        /// Renormalize the inertia parameter (the pair is then unchanged).
        #[arg(long)]
        renormalize: bool,
    },
    /// Log connections with Frobenius and their special fibers.
    #[command(subcommand)]
    Isoc(IsocCommand),
    /// Built-in fixtures.
    #[command(subcommand)]
    Fixture(FixtureCommand),
}

#[derive(Subcommand, Debug)]
enum MonodromyCommand {
    /// (σ, γ) ↦ (σ, log γ).
    Extract { input: PathBuf },
}

#[derive(Subcommand, Debug)]
enum IsocCommand {
    /// Check the module and the fiber comparison.
    Validate { input: PathBuf },
    /// The special fiber (Φ(0), −A(0)).
    Fiber { input: PathBuf },
    /// A gauge to the constant form, and the module in that form.
    Gauge { input: PathBuf },
    /// The WD pair (φ₀^−d, N, p^d).
    ToWd {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        s_deg: u32,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureCommand {
    /// The Tate-curve pair for residue size q.
    Tate {
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
    /// Search for an element-conjugate, non-conjugate pair into SO(6).
    So6,
}

fn load_config(g: &GlobalOpts) -> Result<Config> {
    let mut c = match &g.config {
        Some(path) => Config::from_json(&read_text(path)?)?,
        None => Config::default(),
    };
    if let Some(s) = g.seed {
        c.seed = s;
    }
    if let Some(d) = g.degree {
        c.degree = d;
    }
    if let Some(t) = g.order {
        c.order = t;
    }
    if let Some(t) = g.trials {
        c.trials = t;
    }
    if let Some(conv) = g.convention {
        c.convention = match conv {
            ConventionArg::Arithmetic => ConventionName::Arithmetic,
            ConventionArg::Geometric => ConventionName::Geometric,
        };
    }
    c.validate()?;
    Ok(c)
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidInput(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
    }
}

/// Reads a document; a report produced by this tool is accepted in place of
/// its result.
fn read_doc(path: &Path) -> Result<Value> {
    let origin = if path == Path::new("-") {
        "<stdin>".to_string()
    } else {
        path.display().to_string()
    };
    let mut v = parse_document(&read_text(path)?, &origin)?;
    if v.get("command").is_some() && v.get("outcome").is_some() {
        if let Some(r) = v.get_mut("result") {
            return Ok(r.take());
        }
    }
    Ok(v)
}

/// Prefixes decoding errors with the file they came from.
fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) if !m.starts_with(&path.display().to_string()) => {
            Error::Parse(format!("{}: {m}", path.display()))
        }
        other => other,
    })
}

fn run(cli: &Cli, cfg: &Config) -> Result<CommandOutput> {
    let one = |p: &Path, f: &dyn Fn(&Value) -> Result<CommandOutput>| -> Result<CommandOutput> {
        in_file(p, f(&read_doc(p)?))
    };
    let order = cli.global.order;
    match &cli.command {
        Command::Validate { input } => one(input, &|d| commands::validate(d, cfg)),
        Command::CheckEquiv { a, b } => {
            let (da, db) = (read_doc(a)?, read_doc(b)?);
            commands::check_equiv(&da, &db, cfg)
        }
        Command::CanonicalForm { input } => one(input, &|d| commands::canonical_form(d, cfg)),
        Command::Semisimplify { input } => one(input, &|d| commands::semisimplify_cmd(d, cfg)),
        Command::Pushforward { input, rep } => {
            one(input, &|d| commands::pushforward_cmd(d, rep, cfg))
        }
        Command::ElementConj { a, b } => {
            let (da, db) = (read_doc(a)?, read_doc(b)?);
            commands::element_conj(&da, &db, cfg)
        }
        Command::Rationality {
            input,
            automorphisms,
        } => {
            let autos = automorphisms
                .iter()
                .map(|s| parse_document(s, "--auto"))
                .collect::<Result<Vec<Value>>>()?;
            one(input, &|d| {
                commands::rationality(d, (!autos.is_empty()).then_some(&autos[..]), cfg)
            })
        }
        Command::Monodromy(MonodromyCommand::Extract { input }) => {
            one(input, &|d| commands::monodromy_extract(d, cfg))
        }
        Command::RestrictRam {
            input,
            e,
            renormalize,
        } => one(input, &|d| commands::restrict_ram(d, *e, *renormalize, cfg)),
        Command::Isoc(IsocCommand::Validate { input }) => {
            one(input, &|d| commands::isoc_validate(d, cfg))
        }
        Command::Isoc(IsocCommand::Fiber { input }) => {
            one(input, &|d| commands::isoc_fiber(d, order))
        }
        Command::Isoc(IsocCommand::Gauge { input }) => {
            one(input, &|d| commands::isoc_gauge(d, order))
        }
        Command::Isoc(IsocCommand::ToWd { input, s_deg }) => {
            one(input, &|d| commands::isoc_to_wd(d, *s_deg, cfg))
        }
        Command::Fixture(FixtureCommand::Tate { q }) => commands::fixture_tate(*q, cfg),
        Command::Fixture(FixtureCommand::So6) => commands::fixture_so6(cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load_config(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(|| run(&cli, &cfg));
    let elapsed = start.elapsed();
    match outcome {
        Ok(Ok(out)) => {
            match serde_json::to_string_pretty(&out.report()) {
                Ok(s) => println!("{s}"),
                Err(e) => {
                    eprintln!("error: cannot encode report: {e}");
                    return ExitCode::from(EXIT_INTERNAL as u8);
                }
            }
            if let Some(path) = &cli.global.out {
                let text = serde_json::to_string_pretty(&out.result).unwrap_or_default() + "\n";
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(EXIT_INTERNAL as u8);
                }
            }
            if !cli.global.quiet {
                eprintln!(
                    "{}: {} [{:.3}s]",
                    out.command,
                    out.summary,
                    elapsed.as_secs_f64()
                );
            }
            ExitCode::from(out.outcome.exit_code() as u8)
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
        Err(_) => ExitCode::from(EXIT_INTERNAL as u8),
    }
}
