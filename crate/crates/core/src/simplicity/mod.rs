//! Simplicity, the minimal-simple predicate and a random search for
//! minimal simple algebras.

mod iso;
mod search;

pub use iso::{find_isomorphism, fingerprint, rebase, Fingerprint};
pub use search::{search_evidence, SearchReport, TrialOutcome, TrialRecord};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::analysis::{
    ideal_closure, is_p_subalgebra, is_soluble, normalizer, p_closure, subalgebra_closure,
};
use crate::error::Result;
use crate::linalg::{enumerate_subspaces, projective_points, subspace_count, Subspace};
use crate::Budgets;

/// Nonabelian with no ideals besides 0 and g. Any nonzero ideal contains the
/// ideal generated by one of its elements, so scanning principal ideals
/// over the projective points decides it.
pub fn is_simple(spec: &AlgebraSpec, budgets: &Budgets) -> Result<bool> {
    if spec.is_abelian() {
        return Ok(false);
    }
    budgets.check_elements(spec.p(), spec.dim())?;
    Ok(projective_points(spec.field(), spec.dim())
        .all(|x| ideal_closure(spec, &spec.span(&[x])).is_full()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalMode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NormalizerCondition {
    VerifiedExhaustive { checked: u128 },
    VerifiedSampled { seed: u64, trials: usize },
    Refuted { witness: Vec<Vec<u32>> },
    NotEvaluated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    InconclusivePositive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalSimpleVerdict {
    pub simple: bool,
    pub dim_leq_p: bool,
    pub normalizer_condition: NormalizerCondition,
    pub verdict: Verdict,
    pub warnings: Vec<String>,
}

/// Simple, `dim <= p`, and every nonzero soluble p-subalgebra has a soluble
/// normalizer. Exhaustive mode refuses algebras with more subspaces than the
/// budget unless `allow_downgrade`, in which case it samples 1000 trials
/// from seed 0 and records a warning.
pub fn is_minimal_simple(
    spec: &AlgebraSpec,
    mode: MinimalMode,
    budgets: &Budgets,
    allow_downgrade: bool,
) -> Result<MinimalSimpleVerdict> {
    let simple = is_simple(spec, budgets)?;
    let dim_leq_p = spec.dim() <= spec.p() as usize;
    let mut warnings = Vec::new();
    let condition = if !(simple && dim_leq_p) {
        NormalizerCondition::NotEvaluated
    } else {
        let mut mode = mode;
        if mode == MinimalMode::Exhaustive {
            let count = subspace_count(spec.dim(), spec.p(), None);
            if count > budgets.subspaces {
                if !allow_downgrade {
                    return Err(crate::Error::BudgetExceeded {
                        required: count,
                        budget: budgets.subspaces,
                    });
                }
                warnings.push(format!(
                    "{count} subspaces exceed the budget; sampled instead"
                ));
                mode = MinimalMode::Sampled { trials: 1000, seed: 0 };
            }
        }
        match mode {
            MinimalMode::Exhaustive => exhaustive_condition(spec, budgets)?,
            MinimalMode::Sampled { trials, seed } => sampled_condition(spec, trials, seed)?,
        }
    };
    let verdict = match &condition {
        NormalizerCondition::VerifiedExhaustive { .. } => Verdict::True,
        NormalizerCondition::VerifiedSampled { .. } => Verdict::InconclusivePositive,
        NormalizerCondition::Refuted { .. } | NormalizerCondition::NotEvaluated => Verdict::False,
    };
    Ok(MinimalSimpleVerdict {
        simple,
        dim_leq_p,
        normalizer_condition: condition,
        verdict,
        warnings,
    })
}

fn violates(spec: &AlgebraSpec, b: &Subspace) -> Result<bool> {
    if b.is_zero() || !is_p_subalgebra(spec, b) || !is_soluble(spec, b)? {
        return Ok(false);
    }
    Ok(!is_soluble(spec, &normalizer(spec, b))?)
}

fn exhaustive_condition(spec: &AlgebraSpec, budgets: &Budgets) -> Result<NormalizerCondition> {
    let mut checked = 0;
    for b in enumerate_subspaces(spec.field(), spec.dim(), None, budgets.subspaces)? {
        checked += 1;
        if violates(spec, &b)? {
            return Ok(NormalizerCondition::Refuted {
                witness: b.basis().to_vec(),
            });
        }
    }
    Ok(NormalizerCondition::VerifiedExhaustive { checked })
}

/// Each trial takes the p-subalgebra generated by one or two random
/// elements.
fn sampled_condition(spec: &AlgebraSpec, trials: usize, seed: u64) -> Result<NormalizerCondition> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let k = rng.gen_range(1..=2);
        let gens: Vec<Vec<u32>> = (0..k).map(|_| spec.random_element(&mut rng)).collect();
        let b = generated_p_subalgebra(spec, &spec.span(&gens))?;
        if violates(spec, &b)? {
            return Ok(NormalizerCondition::Refuted {
                witness: b.basis().to_vec(),
            });
        }
    }
    Ok(NormalizerCondition::VerifiedSampled { seed, trials })
}

/// The smallest p-subalgebra containing `s`.
pub fn generated_p_subalgebra(spec: &AlgebraSpec, s: &Subspace) -> Result<Subspace> {
    let mut cur = s.clone();
    loop {
        let next = p_closure(spec, &subalgebra_closure(spec, &cur))?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{borel2, heisenberg, sl2, witt};

    #[test]
    fn simplicity_examples() {
        let b = Budgets::default();
        assert!(is_simple(&witt(5).unwrap(), &b).unwrap());
        assert!(is_simple(&sl2(5).unwrap(), &b).unwrap());
        assert!(!is_simple(&borel2(5).unwrap(), &b).unwrap());
        assert!(!is_simple(&heisenberg(5).unwrap(), &b).unwrap());
    }

    #[test]
    fn minimal_simple_examples() {
        let b = Budgets::default();
        let v = is_minimal_simple(&sl2(5).unwrap(), MinimalMode::Exhaustive, &b, false).unwrap();
        assert_eq!(v.verdict, Verdict::True);
        assert_eq!(v.normalizer_condition, NormalizerCondition::VerifiedExhaustive { checked: 64 });
        let h = is_minimal_simple(&heisenberg(5).unwrap(), MinimalMode::Exhaustive, &b, false).unwrap();
        assert_eq!(h.verdict, Verdict::False);
        assert!(!h.simple);
    }

    #[test]
    fn sampling_never_says_true() {
        let b = Budgets::default();
        let mode = MinimalMode::Sampled { trials: 50, seed: 4 };
        let v = is_minimal_simple(&sl2(5).unwrap(), mode, &b, false).unwrap();
        assert_eq!(v.verdict, Verdict::InconclusivePositive);
    }

    #[test]
    fn downgrade_requires_permission() {
        let small = Budgets { subspaces: 10, elements: 1_000_000 };
        let s = sl2(5).unwrap();
        assert!(is_minimal_simple(&s, MinimalMode::Exhaustive, &small, false).is_err());
        let v = is_minimal_simple(&s, MinimalMode::Exhaustive, &small, true).unwrap();
        assert_eq!(v.verdict, Verdict::InconclusivePositive);
        assert_eq!(v.warnings.len(), 1);
    }

    #[test]
    fn gl2_is_not_evaluated() {
        // sl2 + center is not simple; the predicate stops there.
        let g = crate::constructions::gln(5, 2).unwrap();
        let v = is_minimal_simple(&g, MinimalMode::Exhaustive, &Budgets::default(), false).unwrap();
        assert!(!v.simple);
        assert_eq!(v.normalizer_condition, NormalizerCondition::NotEvaluated);
    }
}
