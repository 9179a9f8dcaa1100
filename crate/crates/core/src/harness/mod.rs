//! The theorem suite: each structural result is a named check evaluated on
//! target algebras, reporting pass, fail (with a witness), skipped (unmet
//! hypothesis) or budget.

mod abelian;
mod context;
mod frattini;
pub mod generate;
mod ledger;
mod modules;
mod simple;
mod soluble;
mod structure;

pub use context::Ctx;
pub use ledger::LEDGER;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{AlgebraFile, AlgebraSpec};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::Budgets;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Abelian,
    Nilpotent,
    Soluble,
    Module,
    Frattini,
    Simple,
    All,
}

impl Suite {
    pub const NAMED: [Suite; 6] = [
        Suite::Abelian,
        Suite::Nilpotent,
        Suite::Soluble,
        Suite::Module,
        Suite::Frattini,
        Suite::Simple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Abelian => "abelian",
            Suite::Nilpotent => "nilpotent",
            Suite::Soluble => "soluble",
            Suite::Module => "module",
            Suite::Frattini => "frattini",
            Suite::Simple => "simple",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::NAMED
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

/// What a check concluded.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail { detail: String, data: Value },
    Skipped(String),
}

impl Outcome {
    pub(crate) fn fail(detail: impl Into<String>, data: Value) -> Self {
        Outcome::Fail {
            detail: detail.into(),
            data,
        }
    }

    pub(crate) fn skip(reason: impl Into<String>) -> Self {
        Outcome::Skipped(reason.into())
    }
}

pub(crate) type CheckFn = fn(&Ctx, &mut ChaCha8Rng) -> Result<Outcome>;

/// A registered check: its id, suite and the hypotheses it gates on.
pub struct CheckDef {
    pub id: &'static str,
    pub suite: Suite,
    pub hypotheses: &'static str,
    pub(crate) run: CheckFn,
}

/// Every registered check, in id order within each suite.
pub fn registry() -> Vec<&'static CheckDef> {
    let mut all: Vec<&'static CheckDef> = structure::CHECKS
        .iter()
        .chain(abelian::CHECKS)
        .chain(soluble::CHECKS)
        .chain(modules::CHECKS)
        .chain(frattini::CHECKS)
        .chain(simple::CHECKS)
        .collect();
    all.sort_by_key(|c| (c.suite, c.id));
    all
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub target: String,
    pub status: Status,
    pub witness: Option<Value>,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    /// Timings zeroed, for byte-for-byte comparison.
    pub fn stable(mut self) -> Self {
        for c in &mut self.checks {
            c.millis = 0;
        }
        self
    }

    pub fn count(&self, id: &str, status: Status) -> usize {
        self.checks
            .iter()
            .filter(|c| c.id == id && c.status == status)
            .count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub(crate) fn subspace_json(s: &Subspace) -> Value {
    json!(s.basis())
}

/// Same structure constants and p-map in the same basis.
pub(crate) fn same_tables(a: &AlgebraSpec, b: &AlgebraSpec) -> bool {
    a.p() == b.p()
        && a.dim() == b.dim()
        && a.bracket_terms() == b.bracket_terms()
        && a.pmap_table() == b.pmap_table()
}

fn algebra_json(spec: &AlgebraSpec) -> Value {
    serde_json::to_value(AlgebraFile::from_spec(spec)).expect("algebra serializes")
}

/// Target label: index and name, so that equal names stay distinct.
pub fn target_label(index: usize, spec: &AlgebraSpec) -> String {
    format!("{index}:{}", spec.name())
}

fn evaluate(ctx: &Ctx, def: &CheckDef, index: usize, check_no: usize, seed: u64) -> CheckRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((index as u64) << 16) | check_no as u64);
    let start = Instant::now();
    let outcome = (def.run)(ctx, &mut rng);
    let millis = start.elapsed().as_millis() as u64;
    let (status, witness) = match outcome {
        Ok(Outcome::Pass) => (Status::Pass, None),
        Ok(Outcome::Skipped(reason)) => (Status::Skipped, Some(json!({ "reason": reason }))),
        Ok(Outcome::Fail { detail, data }) => (
            Status::Fail,
            Some(json!({ "algebra": algebra_json(ctx.spec), "detail": detail, "data": data })),
        ),
        Err(e @ Error::BudgetExceeded { .. }) => (Status::Budget, Some(json!({ "reason": e.to_string() }))),
        Err(e) => (
            Status::Fail,
            Some(json!({ "algebra": algebra_json(ctx.spec), "detail": e.to_string(), "data": Value::Null })),
        ),
    };
    CheckRecord {
        id: def.id.to_string(),
        target: target_label(index, ctx.spec),
        status,
        witness,
        millis,
    }
}

/// Runs every check of `suite` on every target. Targets run in parallel;
/// records are ordered by target index, then check id. Deterministic given
/// `seed` apart from `millis`.
pub fn run_suite(targets: &[AlgebraSpec], suite: Suite, seed: u64, budgets: &Budgets) -> Report {
    run_checks(targets, suite, None, seed, budgets)
}

/// As [`run_suite`], restricted to the listed check ids when `only` is set.
/// A check draws the same random stream as in the full suite.
pub fn run_checks(
    targets: &[AlgebraSpec],
    suite: Suite,
    only: Option<&[&str]>,
    seed: u64,
    budgets: &Budgets,
) -> Report {
    let checks: Vec<&CheckDef> = registry()
        .into_iter()
        .filter(|c| suite.includes(c.suite))
        .collect();
    let mut order: Vec<(usize, &CheckDef)> = checks
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, c)| only.is_none_or(|ids| ids.contains(&c.id)))
        .collect();
    order.sort_by_key(|(_, c)| c.id);
    let per_target: Vec<Vec<CheckRecord>> = targets
        .par_iter()
        .enumerate()
        .map(|(index, spec)| {
            let ctx = Ctx::new(spec, *budgets, seed);
            order
                .iter()
                .map(|(no, def)| evaluate(&ctx, def, index, *no, seed))
                .collect()
        })
        .collect();
    Report {
        suite: suite.name().to_string(),
        seed,
        checks: per_target.into_iter().flatten().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn ledger_matches_registry() {
        let registered: BTreeSet<&str> = registry().iter().map(|c| c.id).collect();
        let ledgered: BTreeSet<&str> = LEDGER.iter().flat_map(|(_, ids)| ids.iter().copied()).collect();
        assert_eq!(registered, ledgered);
        assert!(LEDGER.iter().all(|(_, ids)| !ids.is_empty()));
    }

    #[test]
    fn ids_are_unique() {
        let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
        let set: BTreeSet<&str> = ids.iter().copied().collect();
        assert_eq!(ids.len(), set.len());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::NAMED.into_iter().chain([Suite::All]) {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("bogus"), None);
    }
}
