use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::job::JobSpec;

pub const SCHEMA: &str = "parahecke.report/v1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] parahecke::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 1 for I/O and cache trouble.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(parahecke::Error::Io(_) | parahecke::Error::Cache(_) | parahecke::Error::Dixon(_)) => 1,
            CliError::Core(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    pub counterexample: Option<String>,
}

/// What a command hands back before the report is assembled.
#[derive(Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub result: Value,
    pub lines: Vec<String>,
}

impl Outcome {
    pub fn check(&mut self, name: &str, cases: usize, failure: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: failure.is_none(),
            cases,
            detail: String::new(),
            counterexample: failure,
        });
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub job: JobSpec,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub result: Value,
    pub counterexample: Option<Value>,
}

/// Command line that reruns `job`.
pub fn reproducer(job: &JobSpec) -> String {
    let mut parts = vec!["parahecke".to_string(), job.command.clone()];
    let mut flag = |name: &str, v: Option<String>| {
        if let Some(v) = v {
            parts.push(format!("--{name} {v:?}"));
        }
    };
    flag("group", job.type_name());
    flag("eps", job.eps.clone());
    flag("J", job.j.clone());
    flag("K", job.k.clone());
    flag("K2", job.k2.clone());
    flag("H", job.h.clone());
    flag("w", job.w.clone());
    flag("u", job.u.clone());
    flag("n", job.sp_n.map(|x| x.to_string()));
    flag("k", job.sp_k.map(|x| x.to_string()));
    flag("params", job.params.clone());
    flag("level", job.level.clone());
    flag("gamma", job.gamma.map(|x| x.to_string()));
    flag("seed", job.seed.map(|x| x.to_string()));
    if !job.groups.is_empty() {
        parts.push(format!("--groups {}", job.groups.join(",")));
    }
    parts.join(" ")
}

impl Report {
    pub fn new(job: JobSpec, outcome: &Outcome) -> Self {
        let first = outcome.checks.iter().find(|c| !c.passed);
        let counterexample = first.map(|c| {
            serde_json::json!({
                "check": c.name,
                "detail": c.counterexample,
                "reproduce": reproducer(&job),
            })
        });
        Report {
            schema: SCHEMA,
            command: job.command.clone(),
            passed: first.is_none(),
            checks: outcome.checks.clone(),
            result: outcome.result.clone(),
            counterexample,
            job,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
