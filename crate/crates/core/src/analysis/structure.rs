use std::collections::BTreeSet;

use rayon::prelude::*;

use super::closure::{ideal_closure, is_abelian, is_nilpotent, is_p_stable};
use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::linalg::{projective_points, Subspace};
use crate::Budgets;

/// Ideal closures of every nonzero element, one per line, deduplicated.
pub fn principal_ideals(spec: &AlgebraSpec, budgets: &Budgets) -> Result<BTreeSet<Subspace>> {
    budgets.check_elements(spec.p(), spec.dim())?;
    let points: Vec<Vec<u32>> = projective_points(spec.field(), spec.dim()).collect();
    Ok(points
        .par_iter()
        .map(|x| ideal_closure(spec, &spec.span(std::slice::from_ref(x))))
        .collect::<Vec<_>>()
        .into_iter()
        .collect())
}

/// Minimal nonzero ideals. Every nonzero ideal contains the ideal generated
/// by any of its nonzero elements, so the minimal ideals are exactly the
/// inclusion-minimal principal ideals.
pub fn minimal_ideals(spec: &AlgebraSpec, budgets: &Budgets) -> Result<Vec<Subspace>> {
    let all = principal_ideals(spec, budgets)?;
    let list: Vec<&Subspace> = all.iter().collect();
    Ok(list
        .iter()
        .filter(|&&i| {
            !list
                .iter()
                .any(|&j| j.dim() < i.dim() && i.contains_unchecked(j))
        })
        .map(|&i| i.clone())
        .collect())
}

/// The Fitting subalgebra: the sum of the nilpotent ideals.
pub fn fitting(spec: &AlgebraSpec, budgets: &Budgets) -> Result<Subspace> {
    budgets.check_elements(spec.p(), spec.dim())?;
    let mut f = spec.zero_subspace();
    for x in projective_points(spec.field(), spec.dim()) {
        if f.contains_vector(&x) {
            continue;
        }
        let i = ideal_closure(spec, &spec.span(&[x]));
        if is_nilpotent(spec, &i)? {
            f = f.sum(&i)?;
        }
    }
    if !is_nilpotent(spec, &f)? {
        return Err(Error::theorem("fact-p-subalgebras", "sum of nilpotent ideals is not nilpotent"));
    }
    if !is_p_stable(spec, &f) {
        return Err(Error::theorem("fact-p-subalgebras", "Fitting subalgebra is not a p-ideal"));
    }
    Ok(f)
}

/// The socle and a decomposition into minimal abelian ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Socle {
    pub total: Subspace,
    pub components: Vec<Subspace>,
}

pub fn socle(spec: &AlgebraSpec, budgets: &Budgets) -> Result<Socle> {
    let minimal: Vec<Subspace> = minimal_ideals(spec, budgets)?
        .into_iter()
        .filter(|i| is_abelian(spec, i))
        .collect();
    // A minimal ideal meets any ideal in 0 or in itself, so greedily adding
    // those not yet covered gives a direct decomposition.
    let mut total = spec.zero_subspace();
    let mut components = Vec::new();
    for i in &minimal {
        if !total.contains_unchecked(i) {
            if !total.intersect(i)?.is_zero() {
                return Err(Error::theorem("lemma-socle", "minimal ideals meet nontrivially"));
            }
            total = total.sum(i)?;
            components.push(i.clone());
        }
    }
    if !is_abelian(spec, &total) {
        return Err(Error::theorem("lemma-socle", "socle is not abelian"));
    }
    if !is_p_stable(spec, &total) {
        return Err(Error::theorem("lemma-socle", "socle is not p-stable"));
    }
    Ok(Socle { total, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{abelian, borel2, heisenberg, sl2};
    use crate::ffarith::PrimeField;
    use crate::linalg::Matrix;

    #[test]
    fn fitting_examples() {
        let b = Budgets::default();
        let bo = borel2(5).unwrap();
        assert_eq!(fitting(&bo, &b).unwrap(), bo.span(&[vec![0, 1]]));
        let h = heisenberg(5).unwrap();
        assert!(fitting(&h, &b).unwrap().is_full());
        let s = sl2(5).unwrap();
        assert!(fitting(&s, &b).unwrap().is_zero());
    }

    #[test]
    fn socle_examples() {
        let b = Budgets::default();
        let bo = borel2(5).unwrap();
        let s = socle(&bo, &b).unwrap();
        assert_eq!(s.total, bo.span(&[vec![0, 1]]));
        assert_eq!(s.components.len(), 1);

        let h = heisenberg(5).unwrap();
        assert_eq!(socle(&h, &b).unwrap().total, h.span(&[vec![0, 0, 1]]));

        let a = abelian(&Matrix::zeros(PrimeField::new(5).unwrap(), 2, 2)).unwrap();
        let s = socle(&a, &b).unwrap();
        assert!(s.total.is_full());
        assert_eq!(s.components.len(), 2);
        assert!(s.components.iter().all(|c| c.dim() == 1));
    }

    #[test]
    fn element_budget_enforced() {
        let h = heisenberg(5).unwrap();
        let b = Budgets {
            subspaces: 10,
            elements: 100,
        };
        assert!(matches!(
            fitting(&h, &b),
            Err(Error::BudgetExceeded { required: 125, budget: 100 })
        ));
    }
}
