//! `chow`: exact Chow-function computations on finite posets.
//!
//! Subcommands: `compute` (kernel/KLS/Chow polynomials of a poset),
//! `coxeter` (Bruhat-interval computations), `cd` (cd-index of an
//! Eulerian poset), `cm` (Cohen--Macaulay test), `harness` (conjecture
//! sweeps over seeded corpora), and `verify` (the proved-identity
//! suite over a fixture directory).
//!
//! Exit codes: 0 success, 1 usage or input errors, 2 a verification or
//! assertion failure.

mod commands;
mod harness;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "chow", version, about)]
struct Cli {
    /// Seed for all randomized corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for the harness (output is identical regardless).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute kernel-derived polynomials of a poset from JSON.
    Compute {
        /// Poset JSON file.
        poset: String,
        /// Kernel: chi | eps | adhoc:m=<int> | file:<path>.
        #[arg(long, default_value = "chi")]
        kernel: String,
        /// Quantities to emit (repeatable): H, F, G, Z, f, g.
        #[arg(long = "what", value_delimiter = ',')]
        what: Vec<String>,
        /// Interval endpoints (defaults to the full interval).
        #[arg(long, num_args = 2)]
        interval: Option<Vec<u32>>,
        /// Additionally assert the proved identities; exit 2 on failure.
        #[arg(long)]
        assert: bool,
    },
    /// Bruhat-interval computations in symmetric or dihedral groups.
    Coxeter {
        /// Group: S<n> (n <= 6 for intervals) or I2:<m>.
        #[arg(long)]
        group: String,
        /// Lower endpoint as a word of generator indices, e.g. "1 2 1".
        #[arg(long, default_value = "")]
        u: String,
        /// Upper endpoint word.
        #[arg(long)]
        v: String,
        /// Optional reflection order file (JSON array of words).
        #[arg(long)]
        order: Option<String>,
        /// Quantity: R | Rtilde | H | cd.
        #[arg(long, default_value = "H")]
        what: String,
    },
    /// cd-index and Gal gamma of an Eulerian poset.
    Cd {
        poset: String,
    },
    /// Cohen--Macaulay test (rational homology of all open intervals).
    Cm {
        poset: String,
    },
    /// Conjecture harness: sweep a seeded corpus and report verdicts.
    Harness {
        /// Generator: random-graded | random-eulerian | bruhat:S<n>.
        #[arg(long)]
        generator: String,
        /// Conjecture id: 1.2 | 1.3 | 1.4 | 1.5.
        #[arg(long)]
        conjecture: String,
        /// Number of instances (bruhat generators cap at the interval count).
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Directory for counterexample artifacts.
        #[arg(long, default_value = ".")]
        out: String,
    },
    /// Run the proved-identity suite over a fixture directory.
    Verify {
        /// Directory of poset fixture files.
        #[arg(long, default_value = "fixtures")]
        fixtures: String,
    },
}

/// Print a line to stdout; when the consumer closed the pipe (e.g.
/// `chow harness ... | head`), exit quietly instead of panicking.
pub(crate) fn print_line(text: String) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{text}").is_err() {
        std::process::exit(0);
    }
}

macro_rules! emit {
    ($($arg:tt)*) => {
        $crate::print_line(format!($($arg)*))
    };
}
pub(crate) use emit;

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Compute { poset, kernel, what, interval, assert } => {
            let interval = interval.map(|v| (v[0], v[1]));
            commands::compute(&poset, &kernel, &what, interval, assert)
        }
        Command::Coxeter { group, u, v, order, what } => {
            commands::coxeter(&group, &u, &v, order.as_deref(), &what)
        }
        Command::Cd { poset } => commands::cd(&poset),
        Command::Cm { poset } => commands::cm(&poset),
        Command::Harness { generator, conjecture, count, out } => harness::run(
            &generator,
            &conjecture,
            count,
            cli.seed,
            cli.jobs,
            cli.format == Format::Csv,
            &out,
        ),
        Command::Verify { fixtures } => verify::run(&fixtures, cli.seed),
    }
}
