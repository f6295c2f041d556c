use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use jouanolou::residue::ResidueSolver;
use jouanolou::workbench::{parse_form, run_suite, Level, SuiteConfig, SuiteName, VerificationReport};
use jouanolou::{rational, Error};

#[derive(Parser)]
#[command(name = "jouanolou", version, about = "Exact verification workbench for forms on the punctured formal disk")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write its JSON report.
    Suite(SuiteArgs),
    /// Compute the residue of an (n, n−1)-form and write its certificate.
    Residue(ResidueArgs),
    /// Parse a form expression and print its normal form.
    Parse(ParseArgs),
}

#[derive(Args)]
struct SuiteArgs {
    /// cohomology | residue | spectrum | cocycle | cyclic | all
    name: String,
    /// quick | standard | full
    #[arg(long, default_value = "quick")]
    level: String,
    /// Restrict to a single ambient dimension.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    pole_max: Option<u32>,
    /// Weights range over [-B, B]^n.
    #[arg(long)]
    weight_box: Option<i64>,
    #[arg(long)]
    degree_max: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Report path; the report goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Highest witness pole level tried by the residue solver.
    #[arg(long)]
    escalation_cap: Option<u32>,
}

#[derive(Args)]
struct ResidueArgs {
    /// Form expression, e.g. "(w1*dw2 - w2*dw1) * S^-2 * dz1*dz2".
    expr: Option<String>,
    /// Read the expression from a file instead.
    #[arg(long, conflicts_with = "expr")]
    file: Option<PathBuf>,
    #[arg(long)]
    n: usize,
    /// Skip the validity check.
    #[arg(long)]
    raw: bool,
    /// Certificate path.
    #[arg(long, default_value = "residue-certificate.json")]
    out: PathBuf,
    #[arg(long)]
    escalation_cap: Option<u32>,
}

#[derive(Args)]
struct ParseArgs {
    expr: Option<String>,
    #[arg(long, conflicts_with = "expr")]
    file: Option<PathBuf>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    raw: bool,
}

fn source(expr: Option<String>, file: Option<PathBuf>) -> Result<String> {
    match (expr, file) {
        (Some(e), None) => Ok(e),
        (None, Some(f)) => std::fs::read_to_string(&f).with_context(|| format!("reading {}", f.display())),
        _ => Err(Error::Config("give an expression or --file".into()).into()),
    }
}

fn suite(a: SuiteArgs) -> Result<bool> {
    let name: SuiteName = a.name.parse()?;
    let cfg = SuiteConfig {
        level: a.level.parse::<Level>()?,
        n: a.n,
        pole_max: a.pole_max,
        weight_box: a.weight_box,
        degree_max: a.degree_max,
        seed: a.seed,
        jobs: a.jobs,
        escalation_cap: a.escalation_cap,
    };
    let report: VerificationReport = run_suite(name, &cfg)?;
    for c in &report.checks {
        let status = if c.passed() { "pass" } else { "FAIL" };
        match &c.witness {
            None => eprintln!("{status}  {}  ({} ms)", c.id, c.millis),
            Some(w) => eprintln!("{status}  {}  ({} ms): {w}", c.id, c.millis),
        }
    }
    eprintln!("{} passed, {} failed", report.summary.passed, report.summary.failed);
    let json = report.to_json();
    match &a.out {
        Some(p) => std::fs::write(p, json + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => println!("{json}"),
    }
    Ok(report.passed())
}

fn residue(a: ResidueArgs) -> Result<bool> {
    let form = parse_form(&source(a.expr, a.file)?, a.n, a.raw)?;
    let top = matches!(form.bidegree(), Some((p, q)) if p == a.n && q + 1 == a.n);
    let (value, cert) = ResidueSolver::new(a.escalation_cap).residue_certified(&form)?;
    let mixed = form.bidegree().is_none() && !form.is_zero();
    if top || mixed {
        println!("{}", rational::to_text(&value));
    } else {
        println!("{} (bidegree vanishing)", rational::to_text(&value));
    }
    let json = serde_json::to_string_pretty(&cert)?;
    std::fs::write(&a.out, json + "\n").with_context(|| format!("writing {}", a.out.display()))?;
    println!("certificate: {}", a.out.display());
    Ok(true)
}

fn parse(a: ParseArgs) -> Result<bool> {
    let form = parse_form(&source(a.expr, a.file)?, a.n, a.raw)?;
    println!("{form}");
    if let Some((p, q)) = form.bidegree() {
        println!("bidegree: ({p}, {q})");
    }
    if let Some(w) = form.weight() {
        println!("weight: {w:?}");
    }
    println!("level: {}", form.level());
    Ok(true)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Unresolved { .. }) => 3,
        Some(Error::Config(_) | Error::Parse { .. } | Error::InvalidForm(_) | Error::IndexOutOfRange { .. }) => 2,
        Some(_) => 1,
        None if e.downcast_ref::<std::io::Error>().is_some() => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Suite(a) => suite(a),
        Command::Residue(a) => residue(a),
        Command::Parse(a) => parse(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
