//! Property sweeps behind `parahecke verify-all` and the acceptance tests.
//!
//! Each suite returns a [`CheckReport`] with the number of cases examined and,
//! on failure, the first counterexample found.

mod extended;
mod hecke;
mod parabolic;
mod tables;

use std::time::Instant;

use serde::Serialize;

use crate::par::Execution;

pub use extended::{extension_examples, omega_trichotomy, quasi_rationality, OMEGA_EXPECTED};
pub use hecke::hecke_relations;
pub use hecke::{RANDOM_TRIPLES, SEED};
pub use parabolic::{
    curtis_oracle, duality_involution, duality_laws, irreducible_signs, jtower_properties, mackey_formula,
    mu_consistency, series_decomposition, sign_identity, Sweep, DUALITY_TYPES, MU_TYPES, TOWER_TYPES,
};
pub use tables::{character_tables, table_defect};

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip)]
    pub millis: u128,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl CheckReport {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!(
            "[{status}] {:>2}. {}: {} cases, {} ms; {}",
            self.id, self.name, self.cases, self.millis, self.detail
        );
        if let Some(c) = &self.counterexample {
            s.push_str(&format!("; counterexample: {c}"));
        }
        s
    }
}

/// Accumulates cases and the first failure of a suite.
pub(crate) struct Tally {
    id: u32,
    name: &'static str,
    start: Instant,
    cases: usize,
    failure: Option<String>,
    notes: Vec<String>,
}

impl Tally {
    pub(crate) fn new(id: u32, name: &'static str) -> Self {
        Self {
            id,
            name,
            start: Instant::now(),
            cases: 0,
            failure: None,
            notes: Vec::new(),
        }
    }

    pub(crate) fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    pub(crate) fn absorb(&mut self, results: Vec<(usize, Option<String>)>) {
        for (n, fail) in results {
            self.cases += n;
            if self.failure.is_none() {
                self.failure = fail;
            }
        }
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub(crate) fn finish(self) -> CheckReport {
        CheckReport {
            id: self.id,
            name: self.name.to_string(),
            passed: self.failure.is_none(),
            cases: self.cases,
            millis: self.start.elapsed().as_millis(),
            detail: self.notes.join("; "),
            counterexample: self.failure,
        }
    }
}

/// The suites that depend only on a (type, ε) sweep, restricted to the given types.
pub fn run_parabolic(exec: Execution, types: &[String]) -> Vec<CheckReport> {
    let mut sweep = Sweep::with_types(exec, types);
    vec![
        duality_involution(&mut sweep),
        duality_laws(&mut sweep),
        curtis_oracle(&mut sweep),
        irreducible_signs(&mut sweep),
        mackey_formula(&mut sweep),
        sign_identity(&mut sweep),
        series_decomposition(&mut sweep),
    ]
}

/// Runs every suite in criterion order.
pub fn run_all(exec: Execution) -> Vec<CheckReport> {
    let mut sweep = Sweep::new(exec);
    vec![
        duality_involution(&mut sweep),
        duality_laws(&mut sweep),
        curtis_oracle(&mut sweep),
        irreducible_signs(&mut sweep),
        mackey_formula(&mut sweep),
        sign_identity(&mut sweep),
        mu_consistency(exec),
        jtower_properties(exec),
        series_decomposition(&mut sweep),
        character_tables(&mut sweep),
        hecke_relations(exec),
        omega_trichotomy(exec),
        quasi_rationality(exec),
    ]
}
