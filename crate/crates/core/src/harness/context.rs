use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::algebra::AlgebraSpec;
use crate::analysis::{
    frattini_pair, ideal_closure, is_nilpotent, is_p_stable, is_soluble, p_closure, socle,
    FrattiniPair, Socle,
};
use crate::error::Result;
use crate::linalg::{enumerate_subspaces, projective_points, subspace_count, Subspace};
use crate::tori::{cartan_subalgebras, is_torus, CartanOptions, CartanReport};
use crate::Budgets;

/// A target with lazily computed structure shared by its checks.
pub struct Ctx<'a> {
    pub spec: &'a AlgebraSpec,
    pub budgets: Budgets,
    pub seed: u64,
    soluble: OnceLock<Result<bool>>,
    nilpotent: OnceLock<Result<bool>>,
    tori: OnceLock<Result<Vec<Subspace>>>,
    p_ideals: OnceLock<Result<Vec<Subspace>>>,
    cartan: OnceLock<Result<CartanReport>>,
    frattini: OnceLock<Result<FrattiniPair>>,
    socle: OnceLock<Result<Socle>>,
}

fn cached<T>(cell: &OnceLock<Result<T>>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

impl<'a> Ctx<'a> {
    pub fn new(spec: &'a AlgebraSpec, budgets: Budgets, seed: u64) -> Self {
        Ctx {
            spec,
            budgets,
            seed,
            soluble: OnceLock::new(),
            nilpotent: OnceLock::new(),
            tori: OnceLock::new(),
            p_ideals: OnceLock::new(),
            cartan: OnceLock::new(),
            frattini: OnceLock::new(),
            socle: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn p(&self) -> u32 {
        self.spec.p()
    }

    pub fn p_exceeds_dim(&self) -> bool {
        self.p() as usize > self.dim()
    }

    pub fn soluble(&self) -> Result<bool> {
        cached(&self.soluble, || is_soluble(self.spec, &self.spec.full())).copied()
    }

    pub fn nilpotent(&self) -> Result<bool> {
        cached(&self.nilpotent, || is_nilpotent(self.spec, &self.spec.full())).copied()
    }

    pub fn subspaces_within_budget(&self) -> bool {
        subspace_count(self.dim(), self.p(), None) <= self.budgets.subspaces
    }

    pub fn elements_within_budget(&self) -> bool {
        self.budgets.check_elements(self.p(), self.dim()).is_ok()
    }

    /// Every torus, the zero torus included, in canonical order.
    pub fn tori(&self) -> Result<&Vec<Subspace>> {
        cached(&self.tori, || {
            Ok(enumerate_subspaces(self.spec.field(), self.dim(), None, self.budgets.subspaces)?
                .filter(|s| is_torus(self.spec, s))
                .collect())
        })
    }

    /// The inclusion-maximal tori.
    pub fn maximal_tori(&self) -> Result<Vec<Subspace>> {
        let all = self.tori()?;
        Ok(all
            .iter()
            .filter(|t| !all.iter().any(|u| u.dim() > t.dim() && u.contains_unchecked(t)))
            .cloned()
            .collect())
    }

    /// Nonzero proper p-ideals reachable as p-closures of principal ideals.
    /// The ideal generated by an element is contained in every ideal
    /// containing the element, so this includes every minimal p-ideal.
    pub fn p_ideals(&self) -> Result<&Vec<Subspace>> {
        cached(&self.p_ideals, || {
            self.budgets.check_elements(self.p(), self.dim())?;
            let mut out = BTreeSet::new();
            for x in projective_points(self.spec.field(), self.dim()) {
                let i = ideal_closure(self.spec, &self.spec.span(&[x]));
                let i = if is_p_stable(self.spec, &i) { i } else { p_closure(self.spec, &i)? };
                if !i.is_full() {
                    out.insert(i);
                }
            }
            Ok(out.into_iter().collect())
        })
    }

    pub fn cartan(&self) -> Result<&CartanReport> {
        cached(&self.cartan, || {
            cartan_subalgebras(
                self.spec,
                &self.budgets,
                CartanOptions {
                    override_hypotheses: false,
                    seed: self.seed,
                },
            )
        })
    }

    pub fn frattini(&self) -> Result<&FrattiniPair> {
        cached(&self.frattini, || frattini_pair(self.spec, self.budgets.subspaces))
    }

    pub fn socle(&self) -> Result<&Socle> {
        cached(&self.socle, || socle(self.spec, &self.budgets))
    }
}

/// Returns `Ok(Outcome::Skipped(..))` from the enclosing check unless the
/// condition holds.
macro_rules! gate {
    ($cond:expr, $why:expr) => {
        if !$cond {
            return Ok($crate::harness::Outcome::skip($why));
        }
    };
}
pub(crate) use gate;
