use rayon::prelude::*;
use serde::Serialize;

use super::generated_p_subalgebra;
use crate::algebra::AlgebraSpec;
use crate::analysis::{maximal_subalgebras, series, SeriesKind};
use crate::error::{Error, Result};
use crate::linalg::{subspace_count, Matrix, Subspace};
use crate::tori::{cartan_subalgebras, CartanOptions};
use crate::Budgets;

/// Isomorphism invariants. `maximal_subalgebras` is `None` when the subspace
/// enumeration is over budget; `torus_rank_exact` is false when the torus
/// search was heuristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub derived_dims: Vec<usize>,
    pub torus_rank: usize,
    pub torus_rank_exact: bool,
    pub cartan_dims: Vec<usize>,
    pub maximal_subalgebras: Option<usize>,
}

pub fn fingerprint(spec: &AlgebraSpec, budgets: &Budgets) -> Result<Fingerprint> {
    let full = spec.full();
    let derived_dims = series(spec, &full, SeriesKind::Derived)?.dims();
    let opts = CartanOptions {
        override_hypotheses: true,
        seed: 0,
    };
    let report = cartan_subalgebras(spec, budgets, opts)?;
    let torus_rank = report.maximal_tori.iter().map(|t| t.dim()).max().unwrap_or(0);
    let mut cartan_dims: Vec<usize> = report.cartans.iter().map(|c| c.subspace.dim()).collect();
    cartan_dims.sort_unstable();
    let maximal = if subspace_count(spec.dim(), spec.p(), None) <= budgets.subspaces {
        Some(maximal_subalgebras(spec, false, budgets.subspaces)?.len())
    } else {
        None
    };
    Ok(Fingerprint {
        dim: spec.dim(),
        derived_dims,
        torus_rank,
        torus_rank_exact: report.tori_complete,
        cartan_dims,
        maximal_subalgebras: maximal,
    })
}

/// The same algebra in the basis given by the columns of `m`.
pub fn rebase(spec: &AlgebraSpec, m: &Matrix) -> Result<AlgebraSpec> {
    if m.rows() != spec.dim() || m.cols() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            got: m.rows(),
        });
    }
    let inv = m
        .inverse()
        .ok_or_else(|| Error::Invalid("change of basis is singular".into()))?;
    let cols = m.columns();
    let n = spec.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let c = inv.mul_vec(&spec.bracket(&cols[i], &cols[j]));
            if c.iter().any(|&x| x != 0) {
                brackets.push(((i, j), c));
            }
        }
    }
    let pmap = cols.iter().map(|c| inv.mul_vec(&spec.p_power(c))).collect();
    AlgebraSpec::new(
        spec.p(),
        spec.name().to_string(),
        spec.basis_names().to_vec(),
        &brackets,
        pmap,
    )
}

/// Fewest basis vectors generating `spec` as a p-algebra, lexicographically
/// first among those of that size.
fn generators(spec: &AlgebraSpec) -> Result<Vec<usize>> {
    let n = spec.dim();
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let gens: Vec<Vec<u32>> = idx.iter().map(|&i| spec.basis_vector(i)).collect();
            if generated_p_subalgebra(spec, &spec.span(&gens))?.is_full() {
                return Ok(idx);
            }
            // next k-subset in lexicographic order
            let mut r = k;
            while r > 0 && idx[r - 1] == n - k + r - 1 {
                r -= 1;
            }
            if r == 0 {
                break;
            }
            idx[r - 1] += 1;
            for s in r..k {
                idx[s] = idx[s - 1] + 1;
            }
        }
    }
    unreachable!("the whole basis generates")
}

/// Extends a choice of images for the generators along brackets and
/// p-powers until the source is spanned; returns the induced linear map if
/// it is an isomorphism of restricted algebras.
fn extend(src: &AlgebraSpec, dst: &AlgebraSpec, gens: &[usize], images: &[Vec<u32>]) -> Option<Matrix> {
    let n = src.dim();
    let mut pairs: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut span = Subspace::zero(src.field(), n);
    let mut push = |pairs: &mut Vec<(Vec<u32>, Vec<u32>)>, s: Vec<u32>, d: Vec<u32>| {
        if !span.contains_vector(&s) {
            span = span.sum(&Subspace::from_vector(src.field(), &s)).expect("same ambient");
            pairs.push((s, d));
        }
    };
    for (&g, img) in gens.iter().zip(images) {
        push(&mut pairs, src.basis_vector(g), img.clone());
    }
    let mut done = 0;
    while done < pairs.len() && pairs.len() < n {
        let (s, d) = pairs[done].clone();
        push(&mut pairs, src.p_power(&s), dst.p_power(&d));
        for k in 0..=done {
            let (s2, d2) = pairs[k].clone();
            push(&mut pairs, src.bracket(&s2, &s), dst.bracket(&d2, &d));
        }
        done += 1;
    }
    if pairs.len() < n {
        return None;
    }
    let sm = Matrix::from_columns(src.field(), n, &pairs.iter().map(|p| p.0.clone()).collect::<Vec<_>>());
    let dm = Matrix::from_columns(src.field(), n, &pairs.iter().map(|p| p.1.clone()).collect::<Vec<_>>());
    let m = dm.mul(&sm.inverse()?);
    if !m.is_invertible() {
        return None;
    }
    let cols = m.columns();
    for i in 0..n {
        if m.mul_vec(src.basis_pmap(i)) != dst.p_power(&cols[i]) {
            return None;
        }
        for j in (i + 1)..n {
            if m.mul_vec(src.basis_bracket(i, j)) != dst.bracket(&cols[i], &cols[j]) {
                return None;
            }
        }
    }
    Some(m)
}

/// An isomorphism of restricted algebras `src -> dst` (matrix in the two
/// bases), found by trying every image of a minimal generating set of basis
/// vectors. Refuses when there are more than `budget` choices.
pub fn find_isomorphism(src: &AlgebraSpec, dst: &AlgebraSpec, budget: u128) -> Result<Option<Matrix>> {
    if src.p() != dst.p() || src.dim() != dst.dim() {
        return Ok(None);
    }
    let n = src.dim();
    let gens = generators(src)?;
    let per = (src.p() as u128).pow(n as u32);
    let total = per
        .checked_pow(gens.len() as u32)
        .filter(|&t| t <= budget)
        .ok_or_else(|| Error::budget(per.saturating_pow(gens.len() as u32), budget))?;
    let p = src.p() as u128;
    let decode = |mut idx: u128| -> Vec<Vec<u32>> {
        gens.iter()
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let c = (idx % p) as u32;
                        idx /= p;
                        c
                    })
                    .collect()
            })
            .collect()
    };
    Ok((0..total)
        .into_par_iter()
        .find_map_first(|idx| extend(src, dst, &gens, &decode(idx))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{borel2, heisenberg, sl2, witt};
    use crate::PMorphism;

    #[test]
    fn sl2_is_isomorphic_to_witt_copy() {
        let w = witt(5).unwrap();
        let copy = w.restrict(&w.span_of_names(&["e_-1", "e_0", "e_1"]).unwrap()).unwrap();
        let m = find_isomorphism(&sl2(5).unwrap(), &copy, 1_000_000).unwrap().unwrap();
        PMorphism::new(sl2(5).unwrap(), copy, m).unwrap();
    }

    #[test]
    fn non_isomorphic_pairs() {
        let s = sl2(5).unwrap();
        assert!(find_isomorphism(&s, &heisenberg(5).unwrap(), 1_000_000).unwrap().is_none());
        assert!(find_isomorphism(&s, &borel2(5).unwrap(), 1_000_000).unwrap().is_none());
    }

    #[test]
    fn rebased_algebra_is_isomorphic_and_shares_fingerprint() {
        let s = sl2(5).unwrap();
        let f = s.field();
        let m = Matrix::new(f, 3, 3, vec![1, 2, 0, 0, 1, 3, 4, 0, 2]).unwrap();
        let r = rebase(&s, &m).unwrap();
        assert!(find_isomorphism(&r, &s, 1_000_000).unwrap().is_some());
        let b = Budgets::default();
        assert_eq!(fingerprint(&r, &b).unwrap(), fingerprint(&s, &b).unwrap());
    }

    #[test]
    fn fingerprints_separate_fixtures() {
        let b = Budgets::default();
        let s = fingerprint(&sl2(5).unwrap(), &b).unwrap();
        assert_eq!(s.derived_dims, vec![3]);
        assert_eq!(s.torus_rank, 1);
        let w = fingerprint(&witt(5).unwrap(), &b).unwrap();
        assert_eq!(w.dim, 5);
        assert_ne!(s, fingerprint(&heisenberg(5).unwrap(), &b).unwrap());
    }
}
