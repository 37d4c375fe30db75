//! `pacopt`: solve, check and measure dependency graphs from local files.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use pacopt::audit::{audit_report, compare_reports};
use pacopt::lockfile::{read_lockfile, write_lockfile};
use pacopt::oracle::{oracle_solve, EnumerationMode, OracleOptions, DEFAULT_BLOWUP_BOUND};
use pacopt::rational::format_decimal;
use pacopt::solve::{cost_cve, cost_duplicates, evaluate, mean_oldness};
use pacopt::{
    load_advisories, load_manifest, load_registry, solve, Advisory, Consistency, Cost, Objective, Registry,
    RootManifest, SolutionGraph, SolveOutcome, SolverSpec,
};

#[derive(Parser)]
#[command(
    name = "pacopt",
    version,
    about = "Optimal dependency solving over a local registry snapshot"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find an optimal solution graph and write it as a lockfile.
    Solve(SolveArgs),
    /// Validate a lockfile against a registry and manifest.
    Check(CheckArgs),
    /// Report mean oldness, size, duplicates and CVSS total of a lockfile.
    Metrics(MetricsArgs),
    /// Solve by exhaustive enumeration. For small inputs only.
    Oracle(OracleArgs),
    /// List advisories affecting a lockfile, optionally against a baseline.
    Audit(AuditArgs),
}

#[derive(Args)]
struct ProblemArgs {
    #[arg(long)]
    registry: PathBuf,
    #[arg(long)]
    manifest: PathBuf,
    /// Required when min_cve is minimized.
    #[arg(long)]
    advisories: Option<PathBuf>,
    /// npm, no-dups or cargo.
    #[arg(long, default_value = "npm")]
    consistency: String,
    /// Comma-separated objectives in priority order.
    #[arg(long, default_value = "min_oldness")]
    minimize: String,
    /// Permit dependency cycles (the default).
    #[arg(long, overrides_with = "acyclic")]
    allow_cycles: bool,
    /// Forbid dependency cycles.
    #[arg(long, overrides_with = "allow_cycles")]
    acyclic: bool,
    /// Seconds before the best graph so far is returned.
    #[arg(long, default_value_t = 600)]
    timeout: u64,
    /// Lockfile path; without it the lockfile goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Summary)]
    format: Format,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, value_enum, default_value_t = Mode::Pruned)]
    mode: Mode,
    /// Largest number of candidate assignments to enumerate.
    #[arg(long, default_value_t = DEFAULT_BLOWUP_BOUND)]
    bound: u128,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    registry: PathBuf,
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long)]
    lockfile: PathBuf,
    #[arg(long, default_value = "npm")]
    consistency: String,
    #[arg(long, overrides_with = "acyclic")]
    allow_cycles: bool,
    #[arg(long, overrides_with = "allow_cycles")]
    acyclic: bool,
}

#[derive(Args)]
struct MetricsArgs {
    #[arg(long)]
    registry: PathBuf,
    #[arg(long)]
    lockfile: PathBuf,
    #[arg(long)]
    advisories: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Summary)]
    format: Format,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    lockfile: PathBuf,
    #[arg(long)]
    advisories: PathBuf,
    /// Earlier lockfile to compare against.
    #[arg(long)]
    baseline: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Summary,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Mode {
    Pruned,
    Exhaustive,
}

/// Exit statuses other than success.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Unsat = 2,
    Timeout = 3,
    Input = 4,
    Internal = 5,
    Capacity = 6,
}

#[derive(Debug)]
struct Failure {
    status: Status,
    message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

fn fail(status: Status, message: impl Into<String>) -> anyhow::Error {
    Failure {
        status,
        message: message.into(),
    }
    .into()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| fail(Status::Input, format!("cannot read {}: {e}", path.display())))
}

fn input<T, E: fmt::Display>(path: &Path, result: Result<T, E>) -> Result<T> {
    result.map_err(|e| fail(Status::Input, format!("{}: {e}", path.display())))
}

fn registry_from(path: &Path) -> Result<Registry> {
    input(path, load_registry(&read(path)?))
}

fn manifest_from(path: &Path) -> Result<RootManifest> {
    input(path, load_manifest(&read(path)?))
}

fn advisories_from(path: Option<&Path>) -> Result<Vec<Advisory>> {
    match path {
        Some(p) => input(p, load_advisories(&read(p)?)),
        None => Ok(Vec::new()),
    }
}

fn lockfile_from(path: &Path) -> Result<SolutionGraph> {
    input(path, read_lockfile(&read(path)?))
}

fn consistency(text: &str) -> Result<Consistency> {
    text.parse()
        .map_err(|e| fail(Status::Input, format!("--consistency: {e}")))
}

struct Problem {
    registry: Registry,
    root: RootManifest,
    advisories: Vec<Advisory>,
    spec: SolverSpec,
}

fn load_problem(args: &ProblemArgs) -> Result<Problem> {
    let objectives = args
        .minimize
        .split(',')
        .map(|s| s.trim().parse::<Objective>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| fail(Status::Input, format!("--minimize: {e}")))?;
    let spec = SolverSpec::new(consistency(&args.consistency)?, objectives)
        .map_err(|e| fail(Status::Input, format!("--minimize: {e}")))?
        .allow_cycles(!args.acyclic)
        .timeout(Duration::from_secs(args.timeout));
    if spec.objectives().contains(&Objective::MinCve) && args.advisories.is_none() {
        return Err(fail(Status::Input, "min_cve needs --advisories"));
    }
    Ok(Problem {
        registry: registry_from(&args.registry)?,
        root: manifest_from(&args.manifest)?,
        advisories: advisories_from(args.advisories.as_deref())?,
        spec,
    })
}

fn summary_json(status: &str, problem: &Problem, graph: &SolutionGraph, cost: &Cost) -> Value {
    json!({
        "status": status,
        "objectives": problem.spec.objectives().iter().map(|o| o.name()).collect::<Vec<_>>(),
        "cost": cost.0.iter().map(format_decimal).collect::<Vec<_>>(),
        "nodes": graph.package_nodes().count(),
        "mean_oldness": format_decimal(&mean_oldness(graph, &problem.registry)),
        "cvss_total": format_decimal(&cost_cve(graph, &problem.advisories)),
    })
}

fn summary_text(summary: &Value) -> String {
    let list = |key: &str| {
        summary[key]
            .as_array()
            .map(|a| a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(", "))
            .unwrap_or_default()
    };
    format!(
        "status: {}\ncost ({}): ({})\nnodes: {}\nmean oldness: {}\ncvss total: {}\n",
        summary["status"].as_str().unwrap_or_default(),
        list("objectives"),
        list("cost"),
        summary["nodes"],
        summary["mean_oldness"].as_str().unwrap_or_default(),
        summary["cvss_total"].as_str().unwrap_or_default(),
    )
}

/// Writes the lockfile and the summary. The summary goes to stderr when the
/// lockfile takes stdout.
fn emit(args: &ProblemArgs, problem: &Problem, status: &str, graph: &SolutionGraph, cost: &Cost) -> Result<()> {
    let lock = write_lockfile(graph);
    let summary = summary_json(status, problem, graph, cost);
    let text = match args.format {
        Format::Json => format!("{summary}\n"),
        Format::Summary => summary_text(&summary),
    };
    match &args.out {
        Some(path) => {
            fs::write(path, lock).with_context(|| format!("cannot write {}", path.display()))?;
            print!("{text}");
        }
        None => {
            print!("{lock}");
            eprint!("{text}");
        }
    }
    Ok(())
}

/// A result the solver vouches for must pass the validity checker and carry
/// its true cost.
fn verify(problem: &Problem, graph: &SolutionGraph, cost: &Cost) -> Result<()> {
    let violations = problem.spec.check(&problem.registry, &problem.root, graph);
    if let Some(v) = violations.first() {
        return Err(fail(Status::Internal, format!("solver produced an invalid graph: {v}")));
    }
    let actual = evaluate(problem.spec.objectives(), graph, &problem.registry, &problem.advisories);
    if actual != *cost {
        return Err(fail(
            Status::Internal,
            format!("solver reported cost {cost} but the graph costs {actual}"),
        ));
    }
    Ok(())
}

fn cmd_solve(args: &SolveArgs) -> Result<()> {
    let problem = load_problem(&args.problem)?;
    match solve(&problem.registry, &problem.root, &problem.spec, &problem.advisories) {
        SolveOutcome::Optimal(sol) => {
            verify(&problem, &sol.graph, &sol.cost)?;
            emit(&args.problem, &problem, "optimal", &sol.graph, &sol.cost)
        }
        SolveOutcome::Unsat(report) => Err(fail(Status::Unsat, format!("unsatisfiable: {report}"))),
        SolveOutcome::Timeout(Some(sol)) => {
            verify(&problem, &sol.graph, &sol.cost)?;
            emit(&args.problem, &problem, "timeout", &sol.graph, &sol.cost)?;
            Err(fail(
                Status::Timeout,
                format!(
                    "time limit reached; the lockfile holds the best graph found, cost {}, not proven optimal",
                    sol.cost
                ),
            ))
        }
        SolveOutcome::Timeout(None) => Err(fail(
            Status::Timeout,
            "time limit reached before any valid graph was found",
        )),
    }
}

fn cmd_oracle(args: &OracleArgs) -> Result<()> {
    let problem = load_problem(&args.problem)?;
    let options = OracleOptions {
        mode: match args.mode {
            Mode::Pruned => EnumerationMode::Pruned,
            Mode::Exhaustive => EnumerationMode::Exhaustive,
        },
        bound: args.bound,
    };
    let found = oracle_solve(
        &problem.registry,
        &problem.root,
        &problem.spec,
        &problem.advisories,
        options,
    )
    .map_err(|e| fail(Status::Capacity, e.to_string()))?;
    match found {
        Some((graph, cost)) => {
            verify(&problem, &graph, &cost)?;
            emit(&args.problem, &problem, "optimal", &graph, &cost)
        }
        None => Err(fail(Status::Unsat, "unsatisfiable: no valid solution graph exists")),
    }
}

fn cmd_check(args: &CheckArgs) -> Result<()> {
    let registry = registry_from(&args.registry)?;
    let root = manifest_from(&args.manifest)?;
    let graph = lockfile_from(&args.lockfile)?;
    let violations = pacopt::check_graph(&registry, &root, consistency(&args.consistency)?, !args.acyclic, &graph);
    if violations.is_empty() {
        println!("valid");
        return Ok(());
    }
    for v in &violations {
        println!("{v}");
    }
    Err(fail(Status::Unsat, format!("{} violation(s)", violations.len())))
}

fn cmd_metrics(args: &MetricsArgs) -> Result<()> {
    let registry = registry_from(&args.registry)?;
    let graph = lockfile_from(&args.lockfile)?;
    let advisories = advisories_from(args.advisories.as_deref())?;
    let metrics = json!({
        "mean_oldness": format_decimal(&mean_oldness(&graph, &registry)),
        "nodes": graph.package_nodes().count(),
        "duplicates": format_decimal(&cost_duplicates(&graph)),
        "cvss_total": format_decimal(&cost_cve(&graph, &advisories)),
    });
    match args.format {
        Format::Json => println!("{metrics}"),
        Format::Summary => print!(
            "mean oldness: {}\nnodes: {}\nduplicates: {}\ncvss total: {}\n",
            metrics["mean_oldness"].as_str().unwrap_or_default(),
            metrics["nodes"],
            metrics["duplicates"].as_str().unwrap_or_default(),
            metrics["cvss_total"].as_str().unwrap_or_default(),
        ),
    }
    Ok(())
}

fn cmd_audit(args: &AuditArgs) -> Result<()> {
    let advisories = advisories_from(Some(&args.advisories))?;
    let after = audit_report(&lockfile_from(&args.lockfile)?, &advisories);
    let out = match &args.baseline {
        None => after.to_json(),
        Some(path) => {
            let before = audit_report(&lockfile_from(path)?, &advisories);
            json!({
                "before": before.to_json(),
                "after": after.to_json(),
                "delta": compare_reports(&before, &after).to_json(),
            })
        }
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Check(a) => cmd_check(a),
        Command::Metrics(a) => cmd_metrics(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Audit(a) => cmd_audit(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage {
                ExitCode::from(Status::Input as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let status = e
                .chain()
                .find_map(|c| c.downcast_ref::<Failure>())
                .map_or(Status::Internal, |f| f.status);
            ExitCode::from(status as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn summary_lists_every_field() {
        let text = summary_text(&json!({
            "status": "optimal",
            "objectives": ["min_oldness", "min_num_deps"],
            "cost": ["0", "2"],
            "nodes": 2,
            "mean_oldness": "0",
            "cvss_total": "7.5",
        }));
        assert_eq!(
            text,
            "status: optimal\ncost (min_oldness, min_num_deps): (0, 2)\nnodes: 2\nmean oldness: 0\ncvss total: 7.5\n"
        );
    }
}
