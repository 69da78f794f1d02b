//! Command-line front end: word syntax, checks, diagrams and resonance queries.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or parse error.

pub mod checks;
pub mod parse;
pub mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::braid::{expand_to_sigma, BraidWord, PureBraidWord};
use crate::hom::f_subset;
use crate::linalg::{Rat, RatVector, Subspace};
use crate::os::OsAlgebra2;
use crate::word::Alphabet;

use checks::{RunOptions, DEFAULT_N_MAX, DEFAULT_SEED};
use parse::{parse_alphabet, parse_word, ParseError};

#[derive(Debug, Parser)]
#[command(name = "purebraid", version, about = "Pure braid group computations")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the verification checks.
    Verify {
        /// Glob over check ids, e.g. `tables.*`.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Print the id and statement of every check and exit.
        #[arg(long)]
        list: bool,
        /// Record wall-clock time per check (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Freely reduce a word.
    Eval {
        /// free:K, sigma:N or pure:N.
        #[arg(long)]
        alphabet: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply a homomorphism P_n -> F_2 to an A-word.
    Apply {
        #[arg(long, default_value = "fI")]
        hom: String,
        /// The index set, e.g. 1,2,3.
        #[arg(long = "I", value_delimiter = ',', required = true)]
        subset: Vec<usize>,
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Braid diagrams.
    Braid {
        #[command(subcommand)]
        command: BraidCommand,
    },
    /// Queries about the Orlik-Solomon algebra of P_n.
    Resonance {
        #[command(subcommand)]
        command: ResonanceCommand,
    },
}

#[derive(Debug, Subcommand)]
enum BraidCommand {
    /// Draw a σ-word or an A-word (expanded into σ-letters).
    Render {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
enum ResonanceCommand {
    /// Is the degree-one element with these coordinates in R^1?
    Member {
        #[arg(long)]
        n: usize,
        /// Comma-separated rationals in the order a_12, a_13, ..., a_(n-1)n.
        #[arg(allow_hyphen_values = true)]
        coefficients: String,
    },
    /// Is the span of these vectors isotropic?
    Isotropic {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true, required = true)]
        vectors: Vec<String>,
    },
    /// The pullback of H^1(F_2) along f_I.
    Pullback {
        #[arg(long)]
        n: usize,
        #[arg(long = "I", value_delimiter = ',', required = true)]
        subset: Vec<usize>,
    },
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(format!("error: {e}"))
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Usage(message)) => {
            let _ = writeln!(err, "{message}");
            2
        }
    }
}

fn word_or_diagnostic(text: &str, alphabet: Alphabet) -> Result<crate::word::ReducedWord, Usage> {
    parse_word(text, alphabet).map_err(|e| Usage(e.diagnostic(text)))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Usage> {
    match command {
        Command::Verify {
            filter,
            n_max,
            format,
            seed,
            list,
            timings,
        } => {
            if list {
                write!(out, "{}", checks::list())?;
                return Ok(0);
            }
            let report = checks::run_checks(filter.as_deref(), RunOptions { n_max, seed, timings })?;
            match format {
                Format::Text => write!(out, "{}", report.to_text(timings))?,
                Format::Json => writeln!(out, "{}", report.to_json())?,
            }
            Ok(report.exit_code())
        }
        Command::Eval { alphabet, expr } => {
            let alphabet = parse_alphabet(&alphabet)?;
            writeln!(out, "{}", word_or_diagnostic(&expr, alphabet)?)?;
            Ok(0)
        }
        Command::Apply { hom, subset, n, expr } => {
            if hom != "fI" {
                return Err(Usage(format!("error: unknown homomorphism {hom:?}; only fI is available")));
            }
            let mut f = f_subset(n, &subset)?;
            if !f.verify_hom()? {
                return Err(Usage(format!("error: f_I for I = {subset:?} is not a homomorphism")));
            }
            let w = word_or_diagnostic(&expr, Alphabet::Pure(n))?;
            writeln!(out, "{}", f.apply(&w)?)?;
            Ok(0)
        }
        Command::Braid {
            command: BraidCommand::Render { expr, n },
        } => {
            let braid = match parse_word(&expr, Alphabet::Sigma(n)) {
                Ok(w) => BraidWord::new(n, w)?,
                // fall back to A-words when the text names no σ-generators
                Err(ParseError::UnknownGenerator { .. }) => {
                    let w = word_or_diagnostic(&expr, Alphabet::Pure(n))?;
                    expand_to_sigma(&PureBraidWord::new(n, w)?)?
                }
                Err(e) => return Err(Usage(e.diagnostic(&expr))),
            };
            write!(out, "{}", render::render_braid(&braid))?;
            Ok(0)
        }
        Command::Resonance { command } => resonance(command, out),
    }
}

fn parse_vector(text: &str, dim: usize) -> Result<RatVector, Usage> {
    let v: RatVector = text
        .split(',')
        .map(|s| s.trim().parse::<Rat>())
        .collect::<Result<_, _>>()
        .map_err(|e| Usage(format!("error: bad coefficient list {text:?}: {e}")))?;
    if v.len() != dim {
        return Err(Usage(format!("error: expected {dim} coefficients, got {}", v.len())));
    }
    Ok(v)
}

fn format_vector(v: &[Rat]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

const MAX_OS_STRANDS: usize = 10;

fn algebra(n: usize) -> Result<OsAlgebra2, Usage> {
    if !(2..=MAX_OS_STRANDS).contains(&n) {
        return Err(Usage(format!("error: n must be between 2 and {MAX_OS_STRANDS}, got {n}")));
    }
    Ok(OsAlgebra2::build(n))
}

fn resonance(command: ResonanceCommand, out: &mut dyn Write) -> Result<i32, Usage> {
    match command {
        ResonanceCommand::Member { n, coefficients } => {
            let os = algebra(n)?;
            let a = parse_vector(&coefficients, os.dim1())?;
            let member = os.in_r1(&a)?;
            writeln!(out, "in R1: {member} (dim ker = {})", os.kernel_dim(&a)?)?;
        }
        ResonanceCommand::Isotropic { n, vectors } => {
            let os = algebra(n)?;
            let vs = vectors
                .iter()
                .map(|t| parse_vector(t, os.dim1()))
                .collect::<Result<Vec<_>, _>>()?;
            let s = Subspace::span(os.dim1(), vs);
            writeln!(out, "isotropic: {} (dim {})", os.is_isotropic(&s)?, s.dim())?;
        }
        ResonanceCommand::Pullback { n, subset } => {
            let os = algebra(n)?;
            let mut f = f_subset(n, &subset)?;
            f.verify_hom()?;
            let image = os.pullback_image(&f)?;
            writeln!(out, "dim {}", image.dim())?;
            for b in image.basis() {
                writeln!(out, "{}", format_vector(b))?;
            }
            writeln!(out, "equals V_I: {}", image == os.v_subspace(&subset)?)?;
        }
    }
    Ok(0)
}
