//! The `grasspack` command line.
//!
//! Exit codes: 0 success, 2 usage or validation failure, 3 I/O failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{all_pair_spectra, certify, CertificationReport};
use crate::construct::{complement, tensor_packings, tensor_with_unitaries, UnitaryList};
use crate::error::{Error, Result};
use crate::format::{
    packing_to_string, read_packing, read_unitaries, to_json, BoundsJson, ReportJson,
};
use crate::generators::{
    hadamard_complement_paper_bases, hadamard_etf, mub_c2, onb_lines, random_packing, Seed,
};
use crate::model::{FieldTag, Packing};
use crate::tolerance::Tolerance;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "grasspack",
    version,
    about = "Construct, transform and certify subspace packings"
)]
pub struct Cli {
    /// Absolute tolerance for every numerical check.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT.absolute())]
    pub tol: f64,

    /// Print a human-readable summary to stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a named packing.
    Gen(GenArgs),
    /// Certify a packing file and print the report as JSON.
    Check {
        input: PathBuf,
        /// Include the spectrum of every pair i < j.
        #[arg(long)]
        pairs: bool,
    },
    /// Print the bounds and regime for the given parameters.
    Bounds {
        #[arg(long)]
        field: FieldTag,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Tensor each subspace with its own unitary.
    Tensor(TensorArgs),
    /// Tensor two packings index by index.
    Tensor2 {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replace each subspace by its orthogonal complement.
    Complement {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenName {
    HadamardEtf,
    HadamardComplement,
    OnbLines,
    MubC2,
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub name: GenName,
    /// R or C.
    #[arg(long, default_value = "R")]
    pub field: FieldTag,
    /// Ambient dimension (onb-lines, random).
    #[arg(long)]
    pub k: Option<usize>,
    /// Subspace dimension (random).
    #[arg(long)]
    pub m: Option<usize>,
    /// Number of subspaces (random).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["random_seed", "unitaries"])))]
pub struct TensorArgs {
    pub input: PathBuf,
    /// Size of the random unitaries.
    #[arg(long, requires = "random_seed")]
    pub r: Option<usize>,
    /// Seed for the random unitaries.
    #[arg(long, requires = "r")]
    pub random_seed: Option<u64>,
    /// File holding one unitary per subspace.
    #[arg(long)]
    pub unitaries: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// What a successful command produced.
struct Outcome {
    stdout: Option<String>,
    summary: String,
}

fn required(value: Option<usize>, flag: &str, name: &str) -> Result<usize> {
    value.ok_or_else(|| Error::Domain(format!("gen {name} needs --{flag}")))
}

fn generate(args: &GenArgs) -> Result<Packing> {
    match args.name {
        GenName::HadamardEtf => Ok(hadamard_etf()),
        GenName::HadamardComplement => Ok(hadamard_complement_paper_bases()),
        GenName::MubC2 => Ok(mub_c2()),
        GenName::OnbLines => onb_lines(args.field, required(args.k, "k", "onb-lines")?),
        GenName::Random => random_packing(
            args.field,
            required(args.k, "k", "random")?,
            required(args.m, "m", "random")?,
            required(args.n, "n", "random")?,
            Seed(args.seed),
        ),
    }
}

fn describe(p: &Packing) -> String {
    format!(
        "{} subspaces of dimension {} in {}^{}",
        p.len(),
        p.dim(),
        p.field(),
        p.ambient_dim()
    )
}

fn emit_packing(p: &Packing, output: Option<&Path>) -> Result<Outcome> {
    let text = packing_to_string(p);
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(Outcome {
                stdout: None,
                summary: format!("wrote {} to {}", describe(p), path.display()),
            })
        }
        None => Ok(Outcome {
            stdout: Some(text),
            summary: format!("wrote {}", describe(p)),
        }),
    }
}

fn verdict_line(name: &str, holds: bool, value: Option<String>) -> String {
    match (holds, value) {
        (true, Some(v)) => format!("  {name}: yes ({v})\n"),
        (true, None) => format!("  {name}: yes (vacuous)\n"),
        (false, _) => format!("  {name}: no\n"),
    }
}

fn summarize(r: &CertificationReport) -> String {
    let mut s = format!(
        "{} subspaces of dimension {} in {}^{}\n",
        r.count, r.dim, r.field, r.ambient_dim
    );
    s += &verdict_line("tight", r.is_tight(), r.tight.map(|a| format!("A = {a}")));
    s += &verdict_line(
        "equichordal",
        r.is_equichordal(),
        r.equichordal.value().map(|c| format!("chordal^2 = {c}")),
    );
    s += &verdict_line(
        "strongly simplicial",
        r.is_strongly_simplicial(),
        r.strongly_simplicial
            .value()
            .map(|v| format!("spectrum {v:?}")),
    );
    s += &verdict_line(
        "equiisoclinic",
        r.is_equiisoclinic(),
        r.equiisoclinic.value().map(|a| format!("alpha = {a}")),
    );
    s += &format!(
        "  min chordal^2 = {}, simplex bound = {:?}, orthoplex bound = {}\n",
        r.min_chordal_sq, r.simplex_bound, r.orthoplex_bound
    );
    s += &format!(
        "  regime {} (Z = {}), simplex saturated: {}, orthoplex saturated: {}",
        r.regime.as_str(),
        r.gerzon,
        r.simplex_saturated,
        r.orthoplex_saturated
    );
    s
}

fn execute(command: &Command, tol: Tolerance) -> Result<Outcome> {
    match command {
        Command::Gen(args) => emit_packing(&generate(args)?, args.output.as_deref()),
        Command::Check { input, pairs } => {
            let p = read_packing(input, tol)?;
            let report = certify(&p, tol);
            let spectra = if *pairs {
                Some(all_pair_spectra(&p, tol, Default::default())?)
            } else {
                None
            };
            Ok(Outcome {
                stdout: Some(to_json(&ReportJson::new(&report, tol, spectra.as_deref()))),
                summary: summarize(&report),
            })
        }
        Command::Bounds { field, k, m, n } => {
            let b = BoundsJson::new(*field, *k, *m, *n, tol)?;
            let summary = format!(
                "Z = {}, simplex = {:?}, orthoplex = {}, regime {}",
                b.gerzon,
                b.simplex,
                b.orthoplex,
                b.regime.as_str()
            );
            Ok(Outcome {
                stdout: Some(to_json(&b)),
                summary,
            })
        }
        Command::Tensor(args) => {
            let p = read_packing(&args.input, tol)?;
            let us = match (&args.unitaries, args.random_seed, args.r) {
                (Some(path), _, _) => read_unitaries(path, tol)?,
                (None, Some(seed), Some(r)) => {
                    UnitaryList::random(p.field(), r, p.len(), Seed(seed))?
                }
                _ => {
                    return Err(Error::Domain(
                        "tensor needs --unitaries or --r with --random-seed".into(),
                    ))
                }
            };
            emit_packing(
                &tensor_with_unitaries(&p, &us, tol)?,
                args.output.as_deref(),
            )
        }
        Command::Tensor2 {
            first,
            second,
            output,
        } => {
            let p = read_packing(first, tol)?;
            let q = read_packing(second, tol)?;
            emit_packing(&tensor_packings(&p, &q, tol)?, output.as_deref())
        }
        Command::Complement { input, output } => {
            let p = read_packing(input, tol)?;
            emit_packing(&complement(&p, tol)?, output.as_deref())
        }
    }
}

/// Runs one already-parsed invocation, writing to the given streams, and
/// returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = Tolerance::new(cli.tol).and_then(|tol| execute(&cli.command, tol));
    match outcome {
        Ok(out) => {
            if cli.verbose {
                let _ = writeln!(stderr, "{}", out.summary);
            }
            if let Some(text) = out.stdout {
                if let Err(e) = stdout
                    .write_all(text.as_bytes())
                    .and_then(|_| stdout.flush())
                {
                    let _ = writeln!(stderr, "error: writing output: {e}");
                    return EXIT_IO;
                }
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_io() {
                EXIT_IO
            } else {
                EXIT_USAGE
            }
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdout, stderr),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(
            std::iter::once("grasspack").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn unknown_generator_is_a_usage_error() {
        let (code, _, err) = run_args(&["gen", "nonsense"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("nonsense"));
    }

    #[test]
    fn missing_parameter_is_a_usage_error() {
        let (code, _, err) = run_args(&["gen", "random", "--k", "3"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--m"), "{err}");
    }

    #[test]
    fn bad_tolerance_is_a_usage_error() {
        let (code, _, _) = run_args(&["--tol", "0.5", "gen", "mub-c2"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn gen_to_stdout() {
        let (code, out, _) = run_args(&["gen", "onb-lines", "--field", "C", "--k", "2"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"field\": \"C\""));
    }

    #[test]
    fn verbose_summary_goes_to_stderr() {
        let (code, out, err) = run_args(&[
            "bounds", "--field", "R", "--k", "3", "--m", "1", "--n", "4", "-v",
        ]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"gerzon\": 6"));
        assert!(err.contains("SimplexApplies"));
    }

    #[test]
    fn missing_file_is_an_io_error() {
        let (code, _, _) = run_args(&["check", "/nonexistent/dir/p.json"]);
        assert_eq!(code, EXIT_IO);
    }

    #[test]
    fn tensor_requires_a_source() {
        let (code, _, _) = run_args(&["tensor", "p.json"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_args(&["tensor", "p.json", "--random-seed", "3"]);
        assert_eq!(code, EXIT_USAGE);
    }
}
