mod commands;
mod job;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand};

use parahecke::grouptab::cache::{self, TableCache};

use job::JobSpec;
use report::{CliError, CliResult, Outcome, Report};

#[derive(Parser, Debug)]
#[command(name = "parahecke", version, about = "Exact parabolic calculus for finite Weyl groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,

    /// Neither read nor write the character-table cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Print the job as JSON and exit without running it.
    #[arg(long, global = true)]
    dump_spec: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal coset or double coset representatives.
    CosetReps(JobSpec),
    /// The tower J ⊇ J₁ ⊇ … ⊇ J_∞ for a piece index w.
    Jtower(JobSpec),
    /// The duality δ_J on coset class functions.
    Duality(JobSpec),
    /// Both sides of the Mackey formula for (K, K2) inside J.
    Mackey(JobSpec),
    /// The double-coset sign sum for H ⊆ K ⊆ J.
    Signsum(JobSpec),
    /// Cuspidal class functions on J.
    Cuspidal(JobSpec),
    /// Harish-Chandra series on J.
    Series(JobSpec),
    /// A product T_w T_u in the Hecke algebra.
    Hecke(JobSpec),
    /// The unequal-parameter model attached to (n, k).
    SpModel(JobSpec),
    /// The group Ω and its trichotomy case.
    Omega(JobSpec),
    /// Quasi-rationality certificates for an extended group.
    Quasirat(JobSpec),
    /// Run the verification suites.
    VerifyAll(JobSpec),
    /// Manage the character-table cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
    /// Run a job stored as JSON.
    Run { path: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    Status(JobSpec),
    Clear(JobSpec),
    /// Precompute tables for the listed Weyl groups.
    Warm(JobSpec),
}

fn named(mut job: JobSpec, command: &str) -> JobSpec {
    job.command = command.to_string();
    job
}

impl Command {
    fn into_job(self) -> CliResult<JobSpec> {
        Ok(match self {
            Command::CosetReps(j) => named(j, "coset-reps"),
            Command::Jtower(j) => named(j, "jtower"),
            Command::Duality(j) => named(j, "duality"),
            Command::Mackey(j) => named(j, "mackey"),
            Command::Signsum(j) => named(j, "signsum"),
            Command::Cuspidal(j) => named(j, "cuspidal"),
            Command::Series(j) => named(j, "series"),
            Command::Hecke(j) => named(j, "hecke"),
            Command::SpModel(j) => named(j, "sp-model"),
            Command::Omega(j) => named(j, "omega"),
            Command::Quasirat(j) => named(j, "quasirat"),
            Command::VerifyAll(j) => named(j, "verify-all"),
            Command::Cache { action } => match action {
                CacheAction::Status(j) => named(j, "cache status"),
                CacheAction::Clear(j) => named(j, "cache clear"),
                CacheAction::Warm(j) => named(j, "cache warm"),
            },
            Command::Run { path } => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
            }
        })
    }
}

fn dispatch(job: &JobSpec, use_cache: bool) -> CliResult<Outcome> {
    let admin = || {
        if use_cache {
            Ok(TableCache::from_env())
        } else {
            Err(CliError::Input("cache commands cannot be combined with --no-cache".into()))
        }
    };
    match job.command.as_str() {
        "coset-reps" => commands::coset_reps(job),
        "jtower" => commands::jtower(job),
        "duality" => commands::duality(job),
        "mackey" => commands::mackey(job),
        "signsum" => commands::signsum(job),
        "cuspidal" => commands::cuspidal(job),
        "series" => commands::series(job),
        "hecke" => commands::hecke(job),
        "sp-model" => commands::sp_model_cmd(job),
        "omega" => commands::omega_cmd(job),
        "quasirat" => commands::quasirat(job),
        "verify-all" => commands::verify_all(job),
        "cache status" => commands::cache_status(&admin()?),
        "cache clear" => commands::cache_clear(&admin()?),
        "cache warm" => commands::cache_warm(job, &admin()?),
        other => Err(CliError::Input(format!("unknown command {other:?}"))),
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let job = cli.command.into_job()?;
    if cli.dump_spec {
        println!("{}", serde_json::to_string_pretty(&job).expect("job serializes"));
        return Ok(true);
    }
    if !cli.no_cache {
        cache::install(Some(TableCache::from_env()));
    }
    let outcome = dispatch(&job, !cli.no_cache)?;
    let verbose = job.verbose;
    let report = Report::new(job, &outcome);
    let json = report.to_json();
    if let Some(path) = &report.job.out {
        std::fs::write(path, &json)?;
    }
    if cli.json {
        print!("{json}");
    } else {
        for l in &outcome.lines {
            println!("{l}");
        }
        if report.command != "verify-all" {
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                println!("[{status}] {} ({} cases)", c.name, c.cases);
                if verbose && !c.detail.is_empty() {
                    println!("       {}", c.detail);
                }
            }
        }
        if let Some(c) = &report.counterexample {
            println!("counterexample: {}", serde_json::to_string(c).expect("value serializes"));
        }
        println!("{}", if report.passed { "PASS" } else { "FAIL" });
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            let code = e.exit_code();
            if code == 2 {
                eprintln!("{}", Cli::command().render_usage());
            }
            ExitCode::from(code)
        }
    }
}
