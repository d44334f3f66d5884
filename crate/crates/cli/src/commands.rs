use std::fmt::Write as _;
use std::path::Path;

use cliffivp_core::{
    check_case1, check_case2, check_case_a, empirical_associated, enumerate_admissible,
    monogenic_basis, oracle_on_basis, solve_ivp, Ansatz, DiracOperator, EvolutionOperator,
    PolyField, SolveOptions,
};
use serde::Serialize;

use crate::config::{load_config, ConfigError, ProblemConfig};
use crate::report::{self, Document, FieldReport, SignatureReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseChoice {
    /// Real-valued `F` uses the real-coefficient conditions, algebra-valued
    /// `F` the two-generator ones.
    Auto,
    I,
    II,
    A,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Table,
    Monogenic,
    Basis,
    Check(CaseChoice),
    Oracle,
    Enumerate,
    Elliptic,
    Solve,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Table => "table",
            Command::Monogenic => "monogenic",
            Command::Basis => "basis",
            Command::Check(_) => "check",
            Command::Oracle => "oracle",
            Command::Enumerate => "enumerate",
            Command::Elliptic => "elliptic",
            Command::Solve => "solve",
        }
    }
}

/// Command-line values that take precedence over the config's `solver` block.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub degree: Option<u32>,
    pub nt: Option<usize>,
    pub max_iter: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Informational command, nothing to fail.
    Ok,
    Pass,
    Fail,
}

impl Status {
    fn from_pass(pass: bool) -> Status {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}

pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid config:\n{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    MissingBlock(String),
    #[error("{0}")]
    Core(#[from] cliffivp_core::Error),
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    /// Human-readable text for standard output.
    pub summary: String,
    /// JSON report, newline-terminated.
    pub document: String,
}

fn need<'a, T>(value: &'a Option<T>, block: &str, cmd: Command) -> Result<&'a T, CliError> {
    value
        .as_ref()
        .ok_or_else(|| CliError::MissingBlock(format!("`{}` needs the `{block}` block in the config", cmd.name())))
}

struct Ctx<'a> {
    cmd: Command,
    config: &'a ProblemConfig,
}

impl Ctx<'_> {
    fn finish<T: Serialize>(&self, status: Status, summary: String, result: T) -> Outcome {
        let doc = Document {
            command: self.cmd.name(),
            status: status.tag(),
            signature: SignatureReport::new(self.config.algebra.signature()),
            result,
        };
        let mut document = serde_json::to_string_pretty(&doc).expect("reports serialize");
        document.push('\n');
        Outcome {
            status,
            summary,
            document,
        }
    }

    fn dirac(&self) -> Result<&DiracOperator, CliError> {
        need(&self.config.dirac, "dirac", self.cmd)
    }

    fn evolution(&self) -> Result<&EvolutionOperator, CliError> {
        need(&self.config.evolution, "evolution", self.cmd)
    }

    fn initial(&self) -> Result<&PolyField, CliError> {
        need(&self.config.initial, "initial", self.cmd)
    }
}

/// Runs one command on a validated config.
pub fn execute(cmd: Command, config: &ProblemConfig, overrides: &Overrides) -> Result<Outcome, CliError> {
    let ctx = Ctx { cmd, config };
    let degree = overrides.degree.unwrap_or(config.solver.degree);
    match cmd {
        Command::Table => table(&ctx),
        Command::Monogenic => monogenic(&ctx),
        Command::Basis => basis(&ctx, degree),
        Command::Check(case) => check(&ctx, case),
        Command::Oracle => oracle(&ctx, degree),
        Command::Enumerate => enumerate(&ctx, degree),
        Command::Elliptic => elliptic(&ctx),
        Command::Solve => solve(&ctx, overrides),
    }
}

/// Loads the config, runs the command, writes the report to `out` if given,
/// prints the summary, and returns the process exit code.
pub fn run_command(cmd: Command, config_path: &Path, out: Option<&Path>, overrides: &Overrides) -> i32 {
    let result = load_config(config_path)
        .map_err(CliError::from)
        .and_then(|config| execute(cmd, &config, overrides))
        .and_then(|outcome| {
            if let Some(path) = out {
                std::fs::write(path, &outcome.document).map_err(|e| CliError::Output {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            Ok(outcome)
        });
    match result {
        Ok(outcome) => {
            print!("{}", outcome.summary);
            outcome.status.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

fn table(ctx: &Ctx) -> Result<Outcome, CliError> {
    let alg = &ctx.config.algebra;
    let mut products = Vec::new();
    let mut summary = String::new();
    for a in alg.blades() {
        let cells: Vec<String> = alg
            .blades()
            .map(|b| {
                let p = alg.blade_mul(a, b)?;
                products.push(report::TableEntry {
                    left: a.digits(),
                    right: b.digits(),
                    product: report::multivector(&p),
                });
                Ok(p.to_expr_string())
            })
            .collect::<Result<_, cliffivp_core::Error>>()?;
        writeln!(summary, "{a:>6} | {}", cells.join(" | ")).unwrap();
    }
    let result = report::TableReport {
        dimension: alg.dim(),
        blades: alg.blades().map(|b| b.digits()).collect(),
        products,
    };
    Ok(ctx.finish(Status::Ok, summary, result))
}

fn monogenic(ctx: &Ctx) -> Result<Outcome, CliError> {
    let u = ctx.initial()?;
    let residual = ctx.dirac()?.apply(u)?;
    let ok = residual.is_zero();
    let summary = format!(
        "D({u}) = {residual}\n{}\n",
        if ok { "monogenic" } else { "not monogenic" }
    );
    let result = report::MonogenicReport {
        field: FieldReport::new(u),
        residual: FieldReport::new(&residual),
        monogenic: ok,
    };
    Ok(ctx.finish(Status::from_pass(ok), summary, result))
}

fn basis(ctx: &Ctx, degree: u32) -> Result<Outcome, CliError> {
    let basis = monogenic_basis(ctx.dirac()?, degree)?;
    let mut summary = format!("monogenic polynomials of degree <= {degree}: dimension {}\n", basis.len());
    for (k, u) in basis.iter().enumerate() {
        writeln!(summary, "  [{k}] {u}").unwrap();
    }
    let result = report::BasisReport {
        degree,
        dimension: basis.len(),
        basis: basis.iter().map(FieldReport::new).collect(),
    };
    Ok(ctx.finish(Status::Ok, summary, result))
}

fn check(ctx: &Ctx, case: CaseChoice) -> Result<Outcome, CliError> {
    let (d, f) = (ctx.dirac()?, ctx.evolution()?);
    let report = match case {
        CaseChoice::I => check_case1(d, f)?,
        CaseChoice::II => check_case2(d, f)?,
        CaseChoice::A => check_case_a(d, f)?,
        CaseChoice::Auto if f.is_real_valued() => check_case1(d, f)?,
        CaseChoice::Auto => check_case2(d, f)?,
    };
    let mut summary = format!("case {}: {}\n", report.case, if report.pass { "PASS" } else { "FAIL" });
    for e in &report.entries {
        writeln!(summary, "  [{}] {} residual {}", if e.pass { "pass" } else { "FAIL" }, e.label, e.residual).unwrap();
    }
    Ok(ctx.finish(Status::from_pass(report.pass), summary, report::CheckReport::new(&report)))
}

fn oracle(ctx: &Ctx, degree: u32) -> Result<Outcome, CliError> {
    let r = empirical_associated(ctx.dirac()?, ctx.evolution()?, degree)?;
    let mut summary = format!(
        "D(F u) over {} monogenic basis elements of degree <= {degree}: {}\n",
        r.checked,
        if r.pass { "all zero" } else { "nonzero" }
    );
    if let Some((u, image)) = &r.witness {
        writeln!(summary, "  witness u = {u}\n  D(F u) = {image}").unwrap();
    }
    let result = report::OracleReportOut {
        degree,
        checked: r.checked,
        pass: r.pass,
        witness: r.witness.as_ref().map(|(u, image)| report::WitnessReport {
            u: FieldReport::new(u),
            image: FieldReport::new(image),
        }),
    };
    Ok(ctx.finish(Status::from_pass(r.pass), summary, result))
}

fn enumerate(ctx: &Ctx, oracle_degree: u32) -> Result<Outcome, CliError> {
    let d = ctx.dirac()?;
    let ansatz = ctx.config.ansatz.unwrap_or(Ansatz {
        degree: 1,
        homogeneous: true,
        algebra_valued: ctx.config.algebra.n() == 2,
    });
    let family = enumerate_admissible(d, ansatz)?;
    let basis = monogenic_basis(d, oracle_degree)?;
    let mut operators = Vec::new();
    let mut all_pass = true;
    let mut summary = format!(
        "ansatz degree {} {} {}: {} unknowns, rank {}, dimension {}\n",
        ansatz.degree,
        if ansatz.homogeneous { "homogeneous" } else { "inhomogeneous" },
        if ansatz.algebra_valued { "algebra-valued" } else { "real" },
        family.unknowns,
        family.rank,
        family.dimension
    );
    for (k, f) in family.operators.iter().enumerate() {
        let pass = oracle_on_basis(d, f, &basis, oracle_degree)?.pass;
        all_pass &= pass;
        let coeffs: Vec<String> = f.coefficients().iter().map(ToString::to_string).collect();
        writeln!(
            summary,
            "  [{k}] A = ({}) oracle(degree {oracle_degree}) {}",
            coeffs.join(", "),
            if pass { "pass" } else { "FAIL" }
        )
        .unwrap();
        operators.push(report::OperatorReport {
            coefficients: report::operator_fields(f),
            oracle_pass: pass,
        });
    }
    let result = report::EnumerateReport {
        case: family.case.tag(),
        ansatz: report::AnsatzReport::new(&ansatz),
        unknowns: family.unknowns,
        rank: family.rank,
        dimension: family.dimension,
        oracle_degree,
        operators,
        condition_matrix: report::SparseMatrix::new(&family.condition_matrix),
    };
    let status = if all_pass { Status::Ok } else { Status::Fail };
    Ok(ctx.finish(status, summary, result))
}

fn elliptic(ctx: &Ctx) -> Result<Outcome, CliError> {
    let v = ctx.dirac()?.ellipticity()?;
    let mut summary = String::from("symbol of the principal part of conj(D) D:\n");
    for r in 0..v.symbol.rows() {
        let row: Vec<String> = v.symbol.row(r).iter().map(ToString::to_string).collect();
        writeln!(summary, "  [{}]", row.join(", ")).unwrap();
    }
    writeln!(
        summary,
        "positive definite: {}\nall alpha > 0: {}\ngamma = 0 and all alpha > 0: {}",
        v.definite, v.c1_satisfied, v.c2_applicable_and_satisfied
    )
    .unwrap();
    Ok(ctx.finish(Status::from_pass(v.definite), summary, report::EllipticReport::new(&v)))
}

fn solve(ctx: &Ctx, overrides: &Overrides) -> Result<Outcome, CliError> {
    let (f, phi) = (ctx.evolution()?, ctx.initial()?);
    let opts = SolveOptions {
        nt: overrides.nt.or(ctx.config.solver.nt),
        max_iter: overrides.max_iter.unwrap_or(ctx.config.solver.max_iter),
    };
    let (u, diag) = solve_ivp(f, phi, &opts, ctx.config.dirac.as_ref())?;
    let trace_ok = diag.monogenicity.as_ref().is_none_or(|t| t.pass);
    let mut summary = format!(
        "u(t) = {u}\n{} after {} iterations (N_t = {}){}\nresidual: {}\n",
        if diag.converged { "converged" } else { "not converged" },
        diag.iterations,
        diag.order,
        if diag.truncated { ", truncated Taylor approximation" } else { "" },
        if diag.residual.is_zero() { "zero".to_string() } else { diag.residual.to_string() },
    );
    if let Some(t) = &diag.monogenicity {
        match t.first_failure() {
            None => summary.push_str("monogenicity trace: pass at every order\n"),
            Some(k) => writeln!(summary, "monogenicity trace: FAIL at order {k}").unwrap(),
        }
    }
    let result = report::SolveReport {
        nt: diag.order,
        max_iter: opts.max_iter,
        iterations: diag.iterations,
        converged: diag.converged,
        truncated: diag.truncated,
        initial: FieldReport::new(phi),
        solution: report::series(&u),
        residual: report::series(&diag.residual),
        monogenicity: diag.monogenicity.as_ref().map(|t| report::TraceReport {
            pass: t.pass,
            first_failure: t.first_failure(),
            residuals: t.residuals.iter().map(FieldReport::new).collect(),
        }),
    };
    Ok(ctx.finish(Status::from_pass(diag.converged && trace_ok), summary, result))
}
