//! `treeact`: command-line front end for the tree-action toolkit.

mod algebra;
mod report;
mod trees;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Status;

#[derive(Parser, Debug)]
#[command(name = "treeact", version, about = "Exact checks for group actions on trees")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0, env = "TREEACT_SEED")]
    seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply out the commutator family and compare every closed form.
    VerifyMatfrm(VerifyArgs),
    /// Certify the builtin genus-2 surface representation.
    CertifySurface(PrimeArg),
    /// Evaluate, normalise or loxodromify surface-group words.
    Word(WordArgs),
    /// Bruhat-Tits tree queries.
    Bt(BtArgs),
    /// Coset-tree queries for lamplighter, Houghton and F wr Z^2.
    Coset(CosetArgs),
}

#[derive(Args, Debug)]
pub struct PrimeArg {
    /// Characteristic of the base field.
    #[arg(long)]
    pub p: u32,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub p: u32,
    /// Parameters "c,h,d,δ" as rational functions in x; builtin when absent.
    #[arg(long)]
    pub params: Option<String>,
    /// Also check this many random parameter sets drawn from --seed.
    #[arg(long, default_value_t = 0, env = "TREEACT_RANDOM")]
    pub random: usize,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "word_op")]
pub struct WordOp {
    /// Image of a word under the representation.
    #[arg(long)]
    pub eval: Option<String>,
    /// Normal form in the amalgam.
    #[arg(long)]
    pub nf: Option<String>,
    /// Comma-separated words to make loxodromic by y -> y·x^n.
    #[arg(long)]
    pub loxodromify: Option<String>,
}

#[derive(Args, Debug)]
pub struct WordArgs {
    #[arg(long)]
    pub p: u32,
    #[command(flatten)]
    pub op: WordOp,
    /// Search bound for --loxodromify.
    #[arg(long, default_value_t = treeact::repcheck::DEFAULT_N_MAX, env = "TREEACT_N_MAX")]
    pub n_max: u32,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "bt_op")]
pub struct BtOp {
    /// Distance between two vertices.
    #[arg(long, num_args = 2, value_names = ["V1", "V2"])]
    pub dist: Option<Vec<String>>,
    /// Classify an SL2 matrix as elliptic or loxodromic.
    #[arg(long)]
    pub classify: Option<String>,
    /// A vertex fixed by an elliptic matrix.
    #[arg(long)]
    pub fixed: Option<String>,
    /// The p+1 neighbours of a vertex.
    #[arg(long)]
    pub neighbors: Option<String>,
}

#[derive(Args, Debug)]
pub struct BtArgs {
    #[arg(long)]
    pub p: u32,
    /// inf, x, or poly:<irreducible>.
    #[arg(long, default_value = "inf")]
    pub place: String,
    #[command(flatten)]
    pub op: BtOp,
    /// Ball radius for the displacement cross-check.
    #[arg(long, default_value_t = 4, env = "TREEACT_RADIUS")]
    pub radius: u32,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "coset_op")]
pub struct CosetOp {
    /// default-vertices, base4, or "i=<level> j=<level>".
    #[arg(long)]
    pub stabiliser: Option<String>,
    /// Classify an element on every tree of the family.
    #[arg(long)]
    pub classify: Option<String>,
}

#[derive(Args, Debug)]
pub struct CosetArgs {
    /// lamp, lamp2, or houghton.
    #[arg(long)]
    pub family: String,
    #[command(flatten)]
    pub op: CosetOp,
    /// Lamp group: c2, c3, ..., or s3.
    #[arg(long, default_value = "c2")]
    pub group: String,
    /// Enumeration window "lo,hi"; family default when absent.
    #[arg(long, env = "TREEACT_WINDOW", allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Largest |shift| enumerated; family default when absent.
    #[arg(long, env = "TREEACT_SHIFT_BOUND")]
    pub shift_bound: Option<i64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Usage.exit() } else { ExitCode::SUCCESS };
        }
    };
    let report = match &cli.command {
        Command::VerifyMatfrm(a) => algebra::verify_matfrm(a, cli.seed),
        Command::CertifySurface(a) => algebra::certify_surface(a),
        Command::Word(a) => algebra::word(a),
        Command::Bt(a) => trees::bt(a),
        Command::Coset(a) => trees::coset(a),
    };
    let text = match cli.format {
        Format::Json => report.render_json(),
        Format::Human => report.human.clone(),
    };
    if report.status == Status::Usage && cli.format == Format::Human {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return Status::Usage.exit();
        }
    }
    report.status.exit()
}
