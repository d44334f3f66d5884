use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cliffivp_cli::{run_command, CaseChoice, Command, Overrides};

/// Exact computations with Clifford-type algebras, generalized
/// Cauchy-Riemann operators and associated evolution operators.
///
/// Exit status: 0 success, 1 a check failed, 2 invalid input.
#[derive(Parser)]
#[command(name = "cliffivp", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct Common {
    /// Problem config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Polynomial degree for bases and oracles.
    #[arg(long)]
    degree: Option<u32>,
    /// Time truncation order for `solve`.
    #[arg(long)]
    nt: Option<usize>,
    /// Iteration cap for `solve`.
    #[arg(long)]
    max_iter: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    Auto,
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "A")]
    A,
}

#[derive(Subcommand)]
enum Sub {
    /// Blade multiplication table.
    Table(Common),
    /// Apply D to the initial function.
    Monogenic(Common),
    /// Basis of monogenic polynomials up to the degree.
    Basis(Common),
    /// Symbolic sufficient conditions for (F, D) to be associated.
    Check {
        #[command(flatten)]
        common: Common,
        /// Condition family; `auto` picks by whether F is real-valued.
        #[arg(long, value_enum, default_value = "auto")]
        case: Case,
    },
    /// Apply D∘F to every monogenic basis polynomial.
    Oracle(Common),
    /// Basis of admissible F within the config's ansatz.
    Enumerate(Common),
    /// Definiteness of the principal symbol of conj(D) D.
    Elliptic(Common),
    /// Picard iteration for u_t = F u, u(0) = initial.
    Solve(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, common) = match cli.command {
        Sub::Table(c) => (Command::Table, c),
        Sub::Monogenic(c) => (Command::Monogenic, c),
        Sub::Basis(c) => (Command::Basis, c),
        Sub::Check { common, case } => {
            let case = match case {
                Case::Auto => CaseChoice::Auto,
                Case::I => CaseChoice::I,
                Case::II => CaseChoice::II,
                Case::A => CaseChoice::A,
            };
            (Command::Check(case), common)
        }
        Sub::Oracle(c) => (Command::Oracle, c),
        Sub::Enumerate(c) => (Command::Enumerate, c),
        Sub::Elliptic(c) => (Command::Elliptic, c),
        Sub::Solve(c) => (Command::Solve, c),
    };
    let overrides = Overrides {
        degree: common.degree,
        nt: common.nt,
        max_iter: common.max_iter,
    };
    let code = run_command(cmd, &common.config, common.out.as_deref(), &overrides);
    ExitCode::from(code as u8)
}
