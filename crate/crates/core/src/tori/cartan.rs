use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::abelian::{p_map_matrix, ToralSplit};
use super::lift;
use crate::algebra::AlgebraSpec;
use crate::analysis::{
    centralizer, is_abelian, is_nilpotent, is_p_stable, is_soluble, is_subalgebra,
    nilpotency_class, normalizer, p_closure, p_closure_of,
};
use crate::error::{Error, Result};
use crate::linalg::{enumerate_subspaces, projective_points, subspace_count, Subspace};
use crate::Budgets;

/// `E_g(x) = ker(ad_x^dim)`, the generalized null space of `ad_x`.
pub fn engel(spec: &AlgebraSpec, x: &[u32]) -> Subspace {
    spec.ad_matrix(x).pow(spec.dim().max(1) as u64).kernel()
}

/// `E_g(h)`: the intersection of `E_g(x)` over all `x ∈ h`.
pub fn engel_of(spec: &AlgebraSpec, h: &Subspace, budgets: &Budgets) -> Result<Subspace> {
    spec.check_ambient(h)?;
    budgets.check_elements(spec.p(), h.dim())?;
    let pts: Vec<Vec<u32>> = projective_points(spec.field(), h.dim())
        .map(|c| h.combine(&c))
        .collect();
    Ok(pts
        .par_iter()
        .map(|x| engel(spec, x))
        .reduce(|| spec.full(), |a, b| a.intersect(&b).expect("same ambient")))
}

/// An abelian p-subalgebra on which the p-map is bijective.
pub fn is_torus(spec: &AlgebraSpec, s: &Subspace) -> bool {
    if s.ambient_dim() != spec.dim() || !is_abelian(spec, s) || !is_p_stable(spec, s) {
        return false;
    }
    s.is_zero() || p_map_matrix(spec, s).map(|m| m.is_invertible()).unwrap_or(false)
}

/// Inclusion-maximal members of `cands`, in canonical order.
fn maximal_members(cands: &[Subspace]) -> Vec<Subspace> {
    let mut out: Vec<Subspace> = cands
        .iter()
        .filter(|s| !cands.iter().any(|t| t.dim() > s.dim() && t.contains_unchecked(s)))
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToriSearch {
    pub tori: Vec<Subspace>,
    /// Only the exhaustive search proves the list complete.
    pub complete: bool,
}

const HEURISTIC_STARTS: usize = 64;

/// Maximal tori, either by filtering every subspace or by growing tori from
/// semisimple elements visited in a seeded order.
pub fn maximal_tori(spec: &AlgebraSpec, exhaustive: bool, budgets: &Budgets, seed: u64) -> Result<ToriSearch> {
    if exhaustive {
        let all: Vec<Subspace> =
            enumerate_subspaces(spec.field(), spec.dim(), None, budgets.subspaces)?.collect();
        let tori: Vec<Subspace> = all.into_par_iter().filter(|s| is_torus(spec, s)).collect();
        return Ok(ToriSearch {
            tori: maximal_members(&tori),
            complete: true,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = (spec.p() as u128).checked_pow(spec.dim() as u32).unwrap_or(u128::MAX);
    let mut elems: Vec<Vec<u32>> = if total <= budgets.elements {
        let mut v: Vec<Vec<u32>> = projective_points(spec.field(), spec.dim()).collect();
        v.shuffle(&mut rng);
        v
    } else {
        (0..budgets.elements)
            .map(|_| (0..spec.dim()).map(|_| rng.gen_range(0..spec.p())).collect())
            .collect()
    };
    elems.retain(|x| {
        let d = p_closure_of(spec, x);
        !d.is_zero() && is_torus(spec, &d)
    });
    let mut found: Vec<Subspace> = Vec::new();
    for s in &elems {
        if found.len() >= HEURISTIC_STARTS {
            break;
        }
        if found.iter().any(|t| t.contains_vector(s)) {
            continue;
        }
        let mut t = p_closure_of(spec, s);
        for s2 in &elems {
            if t.contains_vector(s2) {
                continue;
            }
            if t.basis().iter().any(|b| spec.bracket(b, s2).iter().any(|&c| c != 0)) {
                continue;
            }
            let grown = p_closure(spec, &t.sum(&spec.span(std::slice::from_ref(s2)))?)?;
            if is_torus(spec, &grown) {
                t = grown;
            }
        }
        found.push(t);
    }
    if found.is_empty() {
        found.push(spec.zero_subspace());
    }
    Ok(ToriSearch {
        tori: maximal_members(&found),
        complete: false,
    })
}

/// `n = t ⊕ u` for a nilpotent p-subalgebra of class at most `p`: `t` is the
/// stable p-power image, a central torus, and `u = {x : x^{p^N} = 0}`.
pub fn nilpotent_decomposition(spec: &AlgebraSpec, n: &Subspace, budgets: &Budgets) -> Result<ToralSplit> {
    spec.check_ambient(n)?;
    if !is_subalgebra(spec, n) {
        return Err(Error::NotASubalgebra);
    }
    if let Some(b) = n.basis().iter().find(|b| !n.contains_vector(&spec.p_power(b))) {
        return Err(Error::NotPStable { witness: b.clone() });
    }
    let class = nilpotency_class(spec, n)?
        .ok_or_else(|| Error::HypothesisViolated("subalgebra is not nilpotent".into()))?;
    if class > spec.p() as usize {
        return Err(Error::ClassTooLarge { class, p: spec.p() });
    }
    budgets.check_elements(spec.p(), n.dim())?;
    let elems: Vec<Vec<u32>> = n.elements().collect();
    let powers: Vec<Vec<u32>> = elems.par_iter().map(|x| spec.p_power(x)).collect();
    let i1 = spec.span(&powers);
    let central = |s: &Subspace| {
        s.basis()
            .iter()
            .all(|a| n.basis().iter().all(|b| spec.bracket(a, b).iter().all(|&c| c == 0)))
    };
    if !central(&i1) {
        return Err(Error::theorem("prop-nilpotent-structure", "p-powers are not central"));
    }
    let m = p_map_matrix(spec, &i1)?;
    // I_{j+1} = φ^j(I_1); N is the first j + 1 at which the chain stops.
    let mut j = 0;
    let mut cur = crate::linalg::Matrix::identity(spec.field(), i1.dim());
    while cur.mul(&m).rank() != cur.rank() {
        cur = cur.mul(&m);
        j += 1;
    }
    let exponent = j + 1;
    let torus = lift(&i1, &cur.image());
    let kernel: Vec<Vec<u32>> = elems
        .par_iter()
        .filter(|x| spec.p_power_iter(x, exponent).iter().all(|&c| c == 0))
        .cloned()
        .collect();
    let unipotent = spec.span(&kernel);
    if unipotent.element_count() != kernel.len() as u128 {
        return Err(Error::KernelNotSubspace { exponent });
    }
    if !is_torus(spec, &torus) || !central(&torus) {
        return Err(Error::theorem("prop-nilpotent-structure", "stable image is not a central torus"));
    }
    if torus.dim() + unipotent.dim() != n.dim() || !torus.is_independent_of(&unipotent)? {
        return Err(Error::theorem("prop-nilpotent-structure", "torus and kernel do not split n"));
    }
    Ok(ToralSplit {
        torus,
        unipotent,
        stabilization_exponent: exponent,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CartanOptions {
    /// Run outside the soluble, `p > dim` regime.
    pub override_hypotheses: bool,
    /// Seed for the heuristic torus search used when the subspace budget is
    /// too small for exhaustive search.
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedCartan {
    pub subspace: Subspace,
    /// Found as a minimal Engel subalgebra.
    pub engel_route: bool,
    /// Found as the centralizer of a maximal torus.
    pub torus_route: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanReport {
    pub cartans: Vec<TaggedCartan>,
    pub maximal_tori: Vec<Subspace>,
    pub tori_complete: bool,
    /// Whether the soluble, `p > dim` checks were run.
    pub in_regime: bool,
}

fn is_cartan(spec: &AlgebraSpec, c: &Subspace) -> Result<bool> {
    Ok(normalizer(spec, c) == *c && is_nilpotent(spec, c)?)
}

/// Every subalgebra containing `c` is self-normalizing.
fn check_abnormal(spec: &AlgebraSpec, c: &Subspace, budget: u128) -> Result<()> {
    let w = c.standard_complement();
    let quotient: Vec<Subspace> = enumerate_subspaces(spec.field(), w.dim(), None, budget)?.collect();
    let bad = quotient.into_par_iter().find_any(|q| {
        let u = c.sum(&lift(&w, q)).expect("same ambient");
        is_subalgebra(spec, &u) && normalizer(spec, &u) != u
    });
    match bad {
        Some(q) => Err(Error::theorem(
            "fact-def-abnormal",
            format!("{:?} contains the Cartan subalgebra but is not self-normalizing", lift(&w, &q)),
        )),
        None => Ok(()),
    }
}

/// Cartan subalgebras by two routes: minimal Engel subalgebras, and
/// centralizers of maximal tori. For soluble non-nilpotent algebras with
/// `p > dim` the two must agree and each result must be abnormal.
pub fn cartan_subalgebras(spec: &AlgebraSpec, budgets: &Budgets, opts: CartanOptions) -> Result<CartanReport> {
    let full = spec.full();
    let soluble = is_soluble(spec, &full)?;
    let in_regime = soluble && (spec.p() as usize) > spec.dim();
    if !in_regime && !opts.override_hypotheses {
        return Err(Error::HypothesisViolated(if soluble {
            format!("p = {} does not exceed dim = {}", spec.p(), spec.dim())
        } else {
            "algebra is not soluble".into()
        }));
    }
    let nilpotent = is_nilpotent(spec, &full)?;

    budgets.check_elements(spec.p(), spec.dim())?;
    let pts: Vec<Vec<u32>> = projective_points(spec.field(), spec.dim()).collect();
    let mut engels: BTreeSet<Subspace> = pts.par_iter().map(|x| engel(spec, x)).collect::<Vec<_>>().into_iter().collect();
    engels.insert(full.clone());
    let engels: Vec<Subspace> = engels.into_iter().collect();
    let minimal: Vec<Subspace> = engels
        .iter()
        .filter(|e| !engels.iter().any(|f| f.dim() < e.dim() && e.contains_unchecked(f)))
        .cloned()
        .collect();
    let mut by_engel = BTreeSet::new();
    for e in minimal {
        if is_cartan(spec, &e)? {
            by_engel.insert(e);
        }
    }

    let exhaustive = subspace_count(spec.dim(), spec.p(), None) <= budgets.subspaces;
    let tori = maximal_tori(spec, exhaustive, budgets, opts.seed)?;
    let mut by_torus = BTreeSet::new();
    for t in &tori.tori {
        if in_regime && !nilpotent && t.is_zero() {
            continue;
        }
        let c = centralizer(spec, t);
        if is_cartan(spec, &c)? {
            by_torus.insert(c);
        } else if in_regime {
            return Err(Error::theorem(
                "thm-cartan-tori",
                format!("centralizer of maximal torus {t:?} is not a Cartan subalgebra"),
            ));
        }
    }

    if in_regime && tori.complete && by_engel != by_torus {
        return Err(Error::theorem(
            "thm-cartan-tori",
            format!(
                "{} minimal Engel subalgebras against {} torus centralizers",
                by_engel.len(),
                by_torus.len()
            ),
        ));
    }
    let all: BTreeSet<Subspace> = by_engel.union(&by_torus).cloned().collect();
    if in_regime {
        for c in &all {
            check_abnormal(spec, c, budgets.subspaces)?;
        }
    }
    let cartans = all
        .into_iter()
        .map(|c| TaggedCartan {
            engel_route: by_engel.contains(&c),
            torus_route: by_torus.contains(&c),
            subspace: c,
        })
        .collect();
    Ok(CartanReport {
        cartans,
        maximal_tori: tori.tori,
        tori_complete: tori.complete,
        in_regime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{abelian, borel2, direct_sum, field_torus, heisenberg, sl2};
    use crate::linalg::Matrix;

    #[test]
    fn engel_examples() {
        let s = sl2(5).unwrap();
        assert_eq!(engel(&s, &[0, 1, 0]), s.span(&[vec![0, 1, 0]]));
        let b = borel2(5).unwrap();
        assert!(engel(&b, &[0, 1]).is_full());
        assert!(engel(&b, &[0, 0]).is_full());
        let bud = Budgets::default();
        assert_eq!(engel_of(&b, &b.span(&[vec![1, 0]]), &bud).unwrap(), b.span(&[vec![1, 0]]));
    }

    #[test]
    fn borel_tori() {
        let b = borel2(5).unwrap();
        let r = maximal_tori(&b, true, &Budgets::default(), 0).unwrap();
        assert_eq!(r.tori.len(), 5);
        assert!(r.tori.iter().all(|t| t.dim() == 1));
        assert!(r.tori.contains(&b.span(&[vec![1, 0]])));
        assert!(r.tori.contains(&b.span(&[vec![1, 1]])));
        let h = maximal_tori(&b, false, &Budgets::default(), 7).unwrap();
        assert!(!h.complete);
        assert!(h.tori.iter().all(|t| r.tori.contains(t)));
    }

    #[test]
    fn heisenberg_and_field_tori() {
        let h = heisenberg(5).unwrap();
        let r = maximal_tori(&h, true, &Budgets::default(), 0).unwrap();
        assert_eq!(r.tori, vec![h.zero_subspace()]);
        let f = field_torus(5, 2).unwrap();
        let r = maximal_tori(&f, true, &Budgets::default(), 0).unwrap();
        assert_eq!(r.tori, vec![f.full()]);
    }

    #[test]
    fn nilpotent_examples() {
        let bud = Budgets::default();
        let h = heisenberg(5).unwrap();
        let s = nilpotent_decomposition(&h, &h.full(), &bud).unwrap();
        assert!(s.torus.is_zero() && s.unipotent.is_full());

        let f = crate::ffarith::PrimeField::new(5).unwrap();
        let a = abelian(&Matrix::diagonal(f, &[1, 0])).unwrap();
        let s = nilpotent_decomposition(&a, &a.full(), &bud).unwrap();
        assert_eq!(s.torus, a.span(&[vec![1, 0]]));
        assert_eq!(s.unipotent, a.span(&[vec![0, 1]]));

        let line = field_torus(5, 1).unwrap();
        let d = direct_sum(&[h, line]).unwrap();
        let s = nilpotent_decomposition(&d, &d.full(), &bud).unwrap();
        assert_eq!(s.torus, d.span(&[vec![0, 0, 0, 1]]));
        assert_eq!(s.unipotent, d.span(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]));
    }

    #[test]
    fn borel_cartans() {
        let b = borel2(5).unwrap();
        let r = cartan_subalgebras(&b, &Budgets::default(), CartanOptions::default()).unwrap();
        let expect: Vec<Subspace> = (0..5).map(|c| b.span(&[vec![1, c]])).collect::<BTreeSet<_>>().into_iter().collect();
        let got: Vec<Subspace> = r.cartans.iter().map(|c| c.subspace.clone()).collect();
        assert_eq!(got, expect);
        assert!(r.cartans.iter().all(|c| c.engel_route && c.torus_route));
        assert!(r.in_regime);
    }

    #[test]
    fn nilpotent_cartans_are_everything() {
        let h = heisenberg(5).unwrap();
        let r = cartan_subalgebras(&h, &Budgets::default(), CartanOptions::default()).unwrap();
        assert_eq!(r.cartans.len(), 1);
        assert!(r.cartans[0].subspace.is_full());
        let f = crate::ffarith::PrimeField::new(5).unwrap();
        let a = abelian(&Matrix::zeros(f, 2, 2)).unwrap();
        let r = cartan_subalgebras(&a, &Budgets::default(), CartanOptions::default()).unwrap();
        assert_eq!(r.cartans.len(), 1);
        assert!(r.cartans[0].subspace.is_full());
    }

    #[test]
    fn hypotheses_are_enforced() {
        let s = sl2(5).unwrap();
        assert!(matches!(
            cartan_subalgebras(&s, &Budgets::default(), CartanOptions::default()),
            Err(Error::HypothesisViolated(_))
        ));
        let opts = CartanOptions {
            override_hypotheses: true,
            seed: 0,
        };
        let r = cartan_subalgebras(&s, &Budgets::default(), opts).unwrap();
        assert!(r.cartans.iter().any(|c| c.subspace == s.span(&[vec![0, 1, 0]])));
    }
}
