use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::closure::{is_abelian, is_nilpotent, is_p_ideal, is_p_stable, is_soluble, is_subalgebra};
use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::linalg::{enumerate_subspaces, Subspace};

/// Every subalgebra, in canonical order, paired with whether it is p-stable.
pub fn subalgebras(spec: &AlgebraSpec, budget: u128) -> Result<Vec<(Subspace, bool)>> {
    let all: Vec<Subspace> = enumerate_subspaces(spec.field(), spec.dim(), None, budget)?.collect();
    Ok(all
        .into_par_iter()
        .filter(|s| is_subalgebra(spec, s))
        .map(|s| {
            let p = is_p_stable(spec, &s);
            (s, p)
        })
        .collect())
}

/// The inclusion-maximal proper members of `cands` (which must all lie in
/// an ambient space of dimension `ambient`), in canonical order.
pub fn maximal_proper(cands: &[Subspace], ambient: usize) -> Vec<Subspace> {
    let mut sorted: Vec<&Subspace> = cands.iter().filter(|s| s.dim() < ambient).collect();
    sorted.sort_by(|a, b| b.dim().cmp(&a.dim()).then(a.cmp(b)));
    let mut accepted: Vec<&Subspace> = Vec::new();
    for s in sorted {
        if !accepted.iter().any(|m| m.dim() > s.dim() && m.contains_unchecked(s)) {
            accepted.push(s);
        }
    }
    let mut out: Vec<Subspace> = accepted.into_iter().cloned().collect();
    out.sort();
    out
}

/// Maximal proper subalgebras (p-subalgebras when `restricted`), found by
/// filtering the full subspace enumeration. The zero subalgebra counts.
pub fn maximal_subalgebras(spec: &AlgebraSpec, restricted: bool, budget: u128) -> Result<Vec<Subspace>> {
    let subs = subalgebras(spec, budget)?;
    Ok(maximal_from(&subs, spec.dim(), restricted))
}

fn maximal_from(subs: &[(Subspace, bool)], dim: usize, restricted: bool) -> Vec<Subspace> {
    let cands: Vec<Subspace> = subs
        .iter()
        .filter(|(_, p)| !restricted || *p)
        .map(|(s, _)| s.clone())
        .collect();
    maximal_proper(&cands, dim)
}

fn intersect_all(spec: &AlgebraSpec, spaces: &[Subspace]) -> Subspace {
    spaces
        .iter()
        .fold(spec.full(), |acc, s| acc.intersect(s).expect("same ambient"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrattiniMode {
    Plain,
    P,
}

/// Both Frattini subalgebras from one enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrattiniPair {
    pub plain: Subspace,
    pub p: Subspace,
    pub maximal: Vec<Subspace>,
    pub maximal_p: Vec<Subspace>,
}

/// Computes Φ and Φ_p. For soluble algebras with `p > dim` also checks that
/// Φ_p is a nilpotent p-ideal containing Φ.
pub fn frattini_pair(spec: &AlgebraSpec, budget: u128) -> Result<FrattiniPair> {
    let subs = subalgebras(spec, budget)?;
    let maximal = maximal_from(&subs, spec.dim(), false);
    let maximal_p = maximal_from(&subs, spec.dim(), true);
    let pair = FrattiniPair {
        plain: intersect_all(spec, &maximal),
        p: intersect_all(spec, &maximal_p),
        maximal,
        maximal_p,
    };
    if (spec.p() as usize) > spec.dim() && is_soluble(spec, &spec.full())? {
        if !is_p_ideal(spec, &pair.p) {
            return Err(Error::theorem("prop-frattini-p-ideal", "Φ_p is not a p-ideal"));
        }
        if !is_nilpotent(spec, &pair.p)? {
            return Err(Error::theorem("cor-frattini-nilpotent", "Φ_p is not nilpotent"));
        }
        if !pair.p.contains(&pair.plain)? {
            return Err(Error::theorem("thm-frattini-inclusion", "Φ is not contained in Φ_p"));
        }
    }
    Ok(pair)
}

pub fn frattini(spec: &AlgebraSpec, mode: FrattiniMode, budget: u128) -> Result<Subspace> {
    let pair = frattini_pair(spec, budget)?;
    Ok(match mode {
        FrattiniMode::Plain => pair.plain,
        FrattiniMode::P => pair.p,
    })
}

/// Result of a complement search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub complement: Option<Subspace>,
    /// `false` when the search sampled instead of enumerating, in which case
    /// `complement: None` does not prove that no complement exists.
    pub exhaustive: bool,
    pub candidates_checked: u128,
}

/// Number of random complements tried when exhaustive search is refused.
pub const SPLIT_SAMPLES: u128 = 100_000;

/// Searches for a subalgebra (p-subalgebra when `restricted`) `h` with
/// `g = i ⊕ h`, for an abelian p-ideal `i`.
///
/// Vector-space complements of `i` are the graphs `{w + T(w)}` of linear maps
/// `T: W -> i` on the standard complement `W`; these are enumerated in
/// odometer order over the entries of `T`. A dimension-minimal supplement of
/// `i` is a complement exactly when some complement subalgebra exists, so
/// this decides the same question. Beyond `budget` candidates, `T` is
/// sampled from `seed`.
pub fn split_over(
    spec: &AlgebraSpec,
    i: &Subspace,
    restricted: bool,
    budget: u128,
    seed: u64,
) -> Result<Splitting> {
    spec.check_ambient(i)?;
    if !is_abelian(spec, i) || !is_p_ideal(spec, i) {
        return Err(Error::NotAbelianIdeal);
    }
    let f = spec.field();
    let w = i.standard_complement();
    let (m, d) = (w.dim(), i.dim());
    let entries = m * d;
    let total = (spec.p() as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
    let build = |t: &[u32]| -> Subspace {
        let rows: Vec<Vec<u32>> = (0..m)
            .map(|a| {
                let mut v = w.basis()[a].clone();
                for b in 0..d {
                    f.axpy(&mut v, t[a * d + b], &i.basis()[b]);
                }
                v
            })
            .collect();
        spec.span(&rows)
    };
    let accept = |h: &Subspace| is_subalgebra(spec, h) && (!restricted || is_p_stable(spec, h));
    let p = spec.p() as u128;
    if total <= budget {
        let found = (0..total)
            .into_par_iter()
            .map(|mut n| {
                let mut t = vec![0u32; entries];
                for k in (0..entries).rev() {
                    t[k] = (n % p) as u32;
                    n /= p;
                }
                t
            })
            .find_first(|t| accept(&build(t)))
            .map(|t| build(&t));
        Ok(Splitting {
            complement: found,
            exhaustive: true,
            candidates_checked: total,
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = SPLIT_SAMPLES.min(budget);
        for _ in 0..n {
            let t: Vec<u32> = (0..entries).map(|_| rng.gen_range(0..spec.p())).collect();
            let h = build(&t);
            if accept(&h) {
                return Ok(Splitting {
                    complement: Some(h),
                    exhaustive: false,
                    candidates_checked: n,
                });
            }
        }
        Ok(Splitting {
            complement: None,
            exhaustive: false,
            candidates_checked: n,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::center;
    use crate::constructions::{abelian, borel2, heisenberg, sl2};
    use crate::ffarith::PrimeField;
    use crate::linalg::Matrix;

    #[test]
    fn heisenberg_maximal_subalgebras_are_planes_through_center() {
        let h = heisenberg(5).unwrap();
        let m = maximal_subalgebras(&h, false, 1_000_000).unwrap();
        assert_eq!(m.len(), 6);
        let z = h.span(&[vec![0, 0, 1]]);
        assert!(m.iter().all(|s| s.dim() == 2 && s.contains(&z).unwrap()));
        assert_eq!(frattini(&h, FrattiniMode::Plain, 1_000_000).unwrap(), center(&h));
    }

    #[test]
    fn sl2_borels_are_maximal_and_frattini_vanishes() {
        let s = sl2(5).unwrap();
        let m = maximal_subalgebras(&s, false, 1_000_000).unwrap();
        assert!(m.contains(&s.span(&[vec![0, 1, 0], vec![1, 0, 0]])));
        assert!(m.contains(&s.span(&[vec![0, 1, 0], vec![0, 0, 1]])));
        assert!(frattini(&s, FrattiniMode::Plain, 1_000_000).unwrap().is_zero());
    }

    #[test]
    fn one_dimensional_has_only_zero_maximal() {
        let f = PrimeField::new(5).unwrap();
        let a = abelian(&Matrix::zeros(f, 1, 1)).unwrap();
        assert_eq!(maximal_subalgebras(&a, true, 100).unwrap(), vec![a.zero_subspace()]);
        let a2 = abelian(&Matrix::zeros(f, 2, 2)).unwrap();
        assert!(frattini(&a2, FrattiniMode::P, 100).unwrap().is_zero());
    }

    #[test]
    fn split_examples() {
        let b = borel2(5).unwrap();
        let s = split_over(&b, &b.span(&[vec![0, 1]]), true, 1000, 0).unwrap();
        assert_eq!(s.complement, Some(b.span(&[vec![1, 0]])));
        assert!(s.exhaustive);

        let f = PrimeField::new(5).unwrap();
        let a = abelian(&Matrix::zeros(f, 2, 2)).unwrap();
        let s = split_over(&a, &a.span(&[vec![1, 0]]), true, 1000, 0).unwrap();
        assert_eq!(s.complement, Some(a.span(&[vec![0, 1]])));

        let h = heisenberg(5).unwrap();
        let s = split_over(&h, &center(&h), false, 1000, 0).unwrap();
        assert_eq!(s.complement, None);
        assert!(s.exhaustive);
        assert_eq!(s.candidates_checked, 25);
    }

    #[test]
    fn split_requires_abelian_ideal() {
        let s = sl2(5).unwrap();
        assert_eq!(
            split_over(&s, &s.full(), false, 1000, 0),
            Err(Error::NotAbelianIdeal)
        );
    }
}
