//! Exhaustive enumeration of the subspaces of `F_p^n`.
//!
//! Subspaces are produced directly as reduced row-echelon bases: for each
//! pivot set (in lexicographic order) the free entries run through an
//! odometer, last entry fastest. Every subspace appears exactly once and the
//! stream is sorted by [`Subspace`]'s `Ord`.

use super::Subspace;
use crate::error::{Error, Result};
use crate::ffarith::PrimeField;

/// Default cap on the number of subspaces a single enumeration may visit.
pub const DEFAULT_ENUM_BUDGET: u128 = 1_000_000;

/// Gaussian binomial coefficient `[n choose k]_p`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: usize, k: usize, p: u32) -> u128 {
    if k > n {
        return 0;
    }
    let q = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        let a = q.checked_pow((n - i) as u32).map(|x| x - 1);
        let b = q.checked_pow((i + 1) as u32).map(|x| x - 1);
        match (a.and_then(|a| num.checked_mul(a)), b.and_then(|b| den.checked_mul(b))) {
            (Some(x), Some(y)) => {
                num = x;
                den = y;
            }
            _ => return u128::MAX,
        }
    }
    num / den
}

/// Number of subspaces of `F_p^n`, optionally of one dimension only.
pub fn subspace_count(n: usize, p: u32, dim: Option<usize>) -> u128 {
    match dim {
        Some(k) => gaussian_binomial(n, k, p),
        None => (0..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(n, k, p))),
    }
}

/// Streams every subspace (of dimension `dim`, when given), refusing with
/// [`Error::BudgetExceeded`] if the exact count exceeds `budget`.
pub fn enumerate_subspaces(
    field: PrimeField,
    ambient: usize,
    dim: Option<usize>,
    budget: u128,
) -> Result<SubspaceIter> {
    let count = subspace_count(ambient, field.p(), dim);
    if count > budget {
        return Err(Error::budget(count, budget));
    }
    let dims = match dim {
        Some(k) if k <= ambient => vec![k],
        Some(_) => Vec::new(),
        None => (0..=ambient).collect(),
    };
    Ok(SubspaceIter::new(field, ambient, dims))
}

pub struct SubspaceIter {
    field: PrimeField,
    ambient: usize,
    dims: Vec<usize>,
    dim_index: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    odometer: Vec<u32>,
    fresh: bool,
}

impl SubspaceIter {
    fn new(field: PrimeField, ambient: usize, dims: Vec<usize>) -> Self {
        let mut it = SubspaceIter {
            field,
            ambient,
            dims,
            dim_index: 0,
            pivots: None,
            free: Vec::new(),
            odometer: Vec::new(),
            fresh: true,
        };
        it.start_dim();
        it
    }

    fn start_dim(&mut self) {
        match self.dims.get(self.dim_index) {
            Some(&k) => {
                self.pivots = Some((0..k).collect());
                self.start_pivots();
            }
            None => self.pivots = None,
        }
    }

    fn start_pivots(&mut self) {
        let pivots = self.pivots.as_ref().expect("active pivot set");
        let n = self.ambient;
        let mut is_pivot = vec![false; n];
        for &c in pivots {
            is_pivot[c] = true;
        }
        self.free = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| ((pc + 1)..n).filter(|&c| !is_pivot[c]).map(move |c| (r, c)))
            .collect::<Vec<_>>();
        self.odometer = vec![0; self.free.len()];
        self.fresh = true;
    }

    fn next_pivots(&mut self) -> bool {
        let n = self.ambient;
        let piv = self.pivots.as_mut().expect("active pivot set");
        let k = piv.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if piv[i] < n - k + i {
                piv[i] += 1;
                for j in (i + 1)..k {
                    piv[j] = piv[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn advance_odometer(&mut self) -> bool {
        let p = self.field.p();
        for d in self.odometer.iter_mut().rev() {
            *d += 1;
            if *d < p {
                return true;
            }
            *d = 0;
        }
        false
    }

    fn current(&self) -> Subspace {
        let pivots = self.pivots.clone().expect("active pivot set");
        let mut rows: Vec<Vec<u32>> = pivots
            .iter()
            .map(|&pc| {
                let mut r = vec![0; self.ambient];
                r[pc] = 1;
                r
            })
            .collect();
        for (&(r, c), &v) in self.free.iter().zip(&self.odometer) {
            rows[r][c] = v;
        }
        Subspace::from_rref_unchecked(self.field, self.ambient, pivots, rows)
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            self.pivots.as_ref()?;
            if self.fresh {
                self.fresh = false;
                return Some(self.current());
            }
            if self.advance_odometer() {
                return Some(self.current());
            }
            if self.next_pivots() {
                self.start_pivots();
                continue;
            }
            self.dim_index += 1;
            self.start_dim();
        }
    }
}

/// Nonzero vectors of `F_p^n` whose first nonzero entry is 1, in odometer
/// order; one representative per line.
pub fn projective_points(field: PrimeField, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let p = field.p() as u64;
    let total = p.pow(n as u32);
    (1..total).filter_map(move |mut m| {
        let mut v = vec![0u32; n];
        for i in (0..n).rev() {
            v[i] = (m % p) as u32;
            m /= p;
        }
        (v.iter().find(|&&x| x != 0) == Some(&1)).then_some(v)
    })
}

/// Every vector of `F_p^n`, odometer order.
pub fn all_vectors(field: PrimeField, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let p = field.p() as u64;
    let total = p.pow(n as u32);
    (0..total).map(move |mut m| {
        let mut v = vec![0u32; n];
        for i in (0..n).rev() {
            v[i] = (m % p) as u32;
            m /= p;
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn counts_match_gaussian_binomials() {
        assert_eq!(enumerate_subspaces(f(3), 2, Some(1), 100).unwrap().count(), 4);
        assert_eq!(gaussian_binomial(5, 2, 5), 20_306);
        assert_eq!(
            enumerate_subspaces(f(5), 5, Some(2), 100_000).unwrap().count(),
            20_306
        );
        assert_eq!(enumerate_subspaces(f(7), 1, Some(1), 10).unwrap().count(), 1);
    }

    #[test]
    fn budget_refusal_reports_exact_count() {
        match enumerate_subspaces(f(5), 5, Some(2), 1000) {
            Err(Error::BudgetExceeded { required, budget }) => {
                assert_eq!(required, 20_306);
                assert_eq!(budget, 1000);
            }
            other => panic!("expected refusal, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn stream_is_sorted_and_distinct() {
        let all: Vec<_> = enumerate_subspaces(f(3), 4, None, 1_000).unwrap().collect();
        assert_eq!(all.len() as u128, subspace_count(4, 3, None));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn projective_point_count() {
        assert_eq!(projective_points(f(5), 3).count(), 31);
    }
}
