use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{find_isomorphism, fingerprint, is_minimal_simple, Fingerprint, MinimalMode, Verdict};
use crate::algebra::AlgebraSpec;
use crate::constructions::{random_restricted, sl2, witt, RandomOutcome};
use crate::error::Result;
use crate::Budgets;

/// Bracket draws per trial before the trial is discarded.
pub const JACOBI_ATTEMPTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialOutcome {
    DiscardedJacobi,
    DiscardedPmap,
    NotSimple,
    /// Simple but not minimal simple.
    Simple,
    MinimalSimple,
    /// Simple and `dim <= p`, normalizer condition only sampled.
    Inconclusive,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    pub dim: usize,
    pub outcome: TrialOutcome,
    /// Reference algebra whose fingerprint matches, if any.
    pub matches: Option<String>,
    /// Result of the basis search (dimension at most 3 only).
    pub isomorphic: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub p: u32,
    pub dim_max: usize,
    pub count: usize,
    pub seed: u64,
    pub generated: usize,
    pub discarded_jacobi: usize,
    pub discarded_pmap: usize,
    pub jacobi_rejections: usize,
    pub simple: usize,
    pub minimal_simple: usize,
    pub inconclusive: usize,
    pub matches_sl2: usize,
    pub matches_witt: usize,
    pub isomorphic_sl2: usize,
    pub trials: Vec<TrialRecord>,
}

struct Reference {
    name: &'static str,
    spec: AlgebraSpec,
    print: Fingerprint,
}

fn references(p: u32, dim_max: usize, budgets: &Budgets) -> Vec<Reference> {
    let mut out = Vec::new();
    let mut add = |name, spec: Result<AlgebraSpec>| {
        if let Ok(spec) = spec {
            if spec.dim() <= dim_max {
                if let Ok(print) = fingerprint(&spec, budgets) {
                    out.push(Reference { name, spec, print });
                }
            }
        }
    };
    add("sl2", sl2(p));
    add("witt", witt(p));
    out
}

fn trial(p: u32, dim_max: usize, seed: u64, index: usize, budgets: &Budgets, refs: &[Reference]) -> (TrialRecord, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let dim = rng.gen_range(1..=dim_max);
    let mut record = TrialRecord {
        index,
        dim,
        outcome: TrialOutcome::Budget,
        matches: None,
        isomorphic: None,
    };
    let (spec, rejected) = match random_restricted(p, dim, JACOBI_ATTEMPTS, &mut rng) {
        Ok((RandomOutcome::Algebra(s), r)) => (s, r),
        Ok((RandomOutcome::Jacobi, r)) => {
            record.outcome = TrialOutcome::DiscardedJacobi;
            return (record, r);
        }
        Ok((RandomOutcome::PMap, r)) => {
            record.outcome = TrialOutcome::DiscardedPmap;
            return (record, r);
        }
        Err(_) => return (record, 0),
    };
    let Ok(verdict) = is_minimal_simple(&spec, MinimalMode::Exhaustive, budgets, true) else {
        return (record, rejected);
    };
    record.outcome = match (verdict.simple, verdict.verdict) {
        (false, _) => TrialOutcome::NotSimple,
        (true, Verdict::True) => TrialOutcome::MinimalSimple,
        (true, Verdict::InconclusivePositive) => TrialOutcome::Inconclusive,
        (true, Verdict::False) => TrialOutcome::Simple,
    };
    if !verdict.simple {
        return (record, rejected);
    }
    let Ok(print) = fingerprint(&spec, budgets) else {
        return (record, rejected);
    };
    if let Some(r) = refs.iter().find(|r| r.print == print) {
        record.matches = Some(r.name.to_string());
        if dim <= 3 {
            record.isomorphic = find_isomorphism(&spec, &r.spec, budgets.elements)
                .ok()
                .map(|m| m.is_some());
        }
    }
    (record, rejected)
}

/// `count` seeded trials: each draws a dimension in `1..=dim_max`, a random
/// restricted algebra, and runs the minimal-simple predicate; simple finds
/// are compared with `sl2(p)` and `witt(p)` by fingerprint, then (dimension
/// at most 3) by basis search. Trial `i` uses stream `i` of the seeded
/// generator, so the report does not depend on scheduling.
pub fn search_evidence(p: u32, dim_max: usize, count: usize, seed: u64, budgets: &Budgets) -> SearchReport {
    let dim_max = dim_max.max(1);
    let refs = if count == 0 { Vec::new() } else { references(p, dim_max, budgets) };
    let results: Vec<(TrialRecord, usize)> = (0..count)
        .into_par_iter()
        .map(|i| trial(p, dim_max, seed, i, budgets, &refs))
        .collect();
    let mut report = SearchReport {
        p,
        dim_max,
        count,
        seed,
        generated: 0,
        discarded_jacobi: 0,
        discarded_pmap: 0,
        jacobi_rejections: 0,
        simple: 0,
        minimal_simple: 0,
        inconclusive: 0,
        matches_sl2: 0,
        matches_witt: 0,
        isomorphic_sl2: 0,
        trials: Vec::with_capacity(count),
    };
    for (t, rejected) in results {
        report.jacobi_rejections += rejected;
        match t.outcome {
            TrialOutcome::DiscardedJacobi => report.discarded_jacobi += 1,
            TrialOutcome::DiscardedPmap => report.discarded_pmap += 1,
            _ => report.generated += 1,
        }
        match t.outcome {
            TrialOutcome::Simple => report.simple += 1,
            TrialOutcome::MinimalSimple => {
                report.simple += 1;
                report.minimal_simple += 1;
            }
            TrialOutcome::Inconclusive => {
                report.simple += 1;
                report.inconclusive += 1;
            }
            _ => {}
        }
        match t.matches.as_deref() {
            Some("sl2") => report.matches_sl2 += 1,
            Some("witt") => report.matches_witt += 1,
            _ => {}
        }
        if t.matches.as_deref() == Some("sl2") && t.isomorphic == Some(true) {
            report.isomorphic_sl2 += 1;
        }
        report.trials.push(t);
    }
    report
}
