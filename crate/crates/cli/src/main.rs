//! `re-kit`: generation, enumeration, verification and baxterization of
//! reflection-equation solutions, with JSON reports on stdout.
//!
//! Exit status: 0 on success, 1 on a nonzero residual or an unrecognized
//! matrix, 2 on usage errors.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "re-kit",
    version,
    about = "Reflection equation toolkit for graded Hecke R-matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The R-matrix as a flattened N²×N² matrix.
    GenR(GradingArg),
    /// The braid matrix Ŝ.
    GenS(GradingArg),
    /// Every solution family for a grading.
    Families(GradingArg),
    /// Assembles a family member.
    Assemble(MemberArgs),
    /// Checks an identity.
    Verify(VerifyArgs),
    /// Support-pattern completeness and lemma-system equivalence.
    Crosscheck(CrosscheckArgs),
    /// Spectral-parameter form of Ŝ, or of a family member with --family.
    Baxterize(MemberArgs),
    /// Recognizes a matrix as a family member.
    Classify(ClassifyArgs),
}

#[derive(Args, Debug)]
struct GradingArg {
    /// Parity string such as 0110.
    #[arg(long)]
    grading: String,
}

#[derive(Args, Debug)]
struct MemberArgs {
    #[arg(long)]
    grading: String,
    /// Family descriptor, e.g. type1:1,2 or type2:1:2-1.
    #[arg(long)]
    family: Option<String>,
    /// Parameter override `name=value` (lambda, mu, y<i>); repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Hecke,
    Braid,
    Ybe,
    Re,
    ReGraded,
    Lemma,
    SpectralYbe,
    SpectralRe,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Symbolic,
    Random,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    #[command(flatten)]
    member: MemberArgs,
    /// Matrix JSON file, instead of --family.
    #[arg(long, conflicts_with = "family")]
    matrix: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = rekit::verifier::DEFAULT_TRIALS)]
    trials: u32,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("target").required(true).args(["grading", "all_gradings"])))]
struct CrosscheckArgs {
    #[arg(long)]
    grading: Option<String>,
    /// Every grading of dimension --n.
    #[arg(long, requires = "n")]
    all_gradings: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random matrices per grading for the lemma-system comparison.
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long)]
    grading: String,
    /// Matrix JSON file; standard input when omitted.
    #[arg(long)]
    matrix: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Json = cli.format;
    match commands::run(cli.command) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.doc).expect("JSON values serialize");
            let mut stdout = std::io::stdout().lock();
            if writeln!(stdout, "{text}").is_err() {
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("re-kit: {e}");
            ExitCode::from(2)
        }
    }
}
