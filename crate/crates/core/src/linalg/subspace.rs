use std::cmp::Ordering;
use std::fmt;

use super::Matrix;
use crate::error::{Error, Result};
use crate::ffarith::PrimeField;

/// A subspace of `F_p^n`, stored by its reduced row-echelon basis.
///
/// The basis is canonical, so equality of values is equality of subspaces.
/// Ordering is by dimension, then pivot columns, then the flattened basis;
/// this is the order in which [`super::enumerate_subspaces`] yields them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<u32>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(F_{}^{}, {:?})", self.field.p(), self.ambient, self.rows)
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.dim(), &self.pivots, &self.rows).cmp(&(
            other.ambient,
            other.dim(),
            &other.pivots,
            &other.rows,
        ))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            pivots: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            pivots: (0..ambient).collect(),
            rows,
        }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(field: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, ambient, vectors).expect("vector length");
        let (r, pivots) = m.rref();
        Subspace {
            field,
            ambient,
            pivots,
            rows: r.to_rows(),
        }
    }

    pub fn from_vector(field: PrimeField, v: &[u32]) -> Self {
        Self::span(field, v.len(), &[v.to_vec()])
    }

    /// Builds a subspace from rows that are already in reduced row-echelon
    /// form. Used by the enumerator; checked in debug builds.
    pub(crate) fn from_rref_unchecked(
        field: PrimeField,
        ambient: usize,
        pivots: Vec<usize>,
        rows: Vec<Vec<u32>>,
    ) -> Self {
        debug_assert_eq!(Self::span(field, ambient, &rows).rows, rows);
        Subspace {
            field,
            ambient,
            pivots,
            rows,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, &self.rows).expect("basis shape")
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: other.ambient,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.p(),
                got: other.field.p(),
            });
        }
        Ok(())
    }

    /// Remainder of `v` after clearing the pivot positions; zero iff
    /// `v` lies in the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = r[pc];
            if c != 0 {
                self.field.axpy(&mut r, self.field.neg(c), row);
            }
        }
        r
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the canonical basis, if `v` is in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// The element with the given coordinates.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        let mut v = vec![0; self.ambient];
        for (row, &c) in self.rows.iter().zip(coords) {
            self.field.axpy(&mut v, c, row);
        }
        v
    }

    /// Every element of the subspace, in coordinate odometer order (last
    /// coordinate fastest).
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let p = self.field.p() as u64;
        let d = self.dim();
        let count = p.pow(d as u32);
        (0..count).map(move |mut n| {
            let mut coords = vec![0u32; d];
            for i in (0..d).rev() {
                coords[i] = (n % p) as u32;
                n /= p;
            }
            self.combine(&coords)
        })
    }

    pub fn element_count(&self) -> u128 {
        (self.field.p() as u128).pow(self.dim() as u32)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Ok(Subspace::span(self.field, self.ambient, &all))
    }

    /// Intersection by the Zassenhaus construction: reduce `[a a; b 0]` and
    /// read the intersection off the rows whose left half vanishes.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for a in &self.rows {
            let mut r = a.clone();
            r.extend_from_slice(a);
            rows.push(r);
        }
        for b in &other.rows {
            let mut r = b.clone();
            r.extend(std::iter::repeat_n(0, n));
            rows.push(r);
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(self.field, n));
        }
        let m = Matrix::from_rows(self.field, 2 * n, &rows).expect("shape");
        let (r, pivots) = m.rref();
        let inter: Vec<Vec<u32>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &pc)| pc >= n)
            .map(|(i, _)| r.row(i)[n..].to_vec())
            .collect();
        Ok(Subspace::span(self.field, n, &inter))
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.rows.iter().all(|v| self.contains_vector(v)))
    }

    /// Inclusion test without the ambient check, for hot loops where the
    /// ambient space is known to agree.
    pub fn contains_unchecked(&self, other: &Subspace) -> bool {
        other.dim() <= self.dim() && other.rows.iter().all(|v| self.contains_vector(v))
    }

    /// A complement of `sub` inside `self` (requires `sub ⊆ self`), built by
    /// greedily extending `sub`'s basis with basis vectors of `self`.
    pub fn complement_in(&self, sub: &Subspace) -> Result<Subspace> {
        if !self.contains(sub)? {
            return Err(Error::Invalid(
                "complement requested for a non-contained subspace".into(),
            ));
        }
        let mut acc = sub.clone();
        let mut chosen = Vec::new();
        for v in &self.rows {
            if !acc.contains_vector(v) {
                chosen.push(v.clone());
                acc = acc.sum(&Subspace::from_vector(self.field, v))?;
            }
        }
        Ok(Subspace::span(self.field, self.ambient, &chosen))
    }

    /// Complement of `self` in the ambient space spanned by the standard basis
    /// vectors at non-pivot columns.
    pub fn standard_complement(&self) -> Subspace {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let rows: Vec<Vec<u32>> = (0..self.ambient)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut v = vec![0; self.ambient];
                v[c] = 1;
                v
            })
            .collect();
        Subspace {
            field: self.field,
            ambient: self.ambient,
            pivots: (0..self.ambient).filter(|&c| !is_pivot[c]).collect(),
            rows,
        }
    }

    /// Coordinates of `v` modulo `self`, relative to [`Self::standard_complement`].
    pub fn quotient_coordinates(&self, v: &[u32]) -> Vec<u32> {
        let r = self.reduce(v);
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient)
            .filter(|&c| !is_pivot[c])
            .map(|c| r[c])
            .collect()
    }

    /// Image under a linear map `F_p^ambient -> F_p^rows(m)`.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let imgs: Vec<Vec<u32>> = self.rows.iter().map(|b| m.mul_vec(b)).collect();
        Subspace::span(self.field, m.rows(), &imgs)
    }

    /// Whether the sum of `self` and `other` is direct.
    pub fn is_independent_of(&self, other: &Subspace) -> Result<bool> {
        Ok(self.intersect(other)?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    #[test]
    fn lattice_examples() {
        let a = Subspace::span(f(5), 3, &[e(3, 0)]);
        let b = Subspace::span(f(5), 3, &[e(3, 1)]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::span(f(5), 3, &[e(3, 0), e(3, 1)]));
        assert!(a.intersect(&b).unwrap().is_zero());

        let a = Subspace::span(f(3), 2, &[vec![1, 1], vec![0, 1]]);
        let b = Subspace::span(f(3), 2, &[e(2, 0)]);
        assert_eq!(a.intersect(&b).unwrap(), b);

        let full = Subspace::full(f(5), 2);
        let line = Subspace::span(f(5), 2, &[e(2, 0)]);
        assert_eq!(
            full.complement_in(&line).unwrap(),
            Subspace::span(f(5), 2, &[e(2, 1)])
        );
    }

    #[test]
    fn intersection_matches_enumeration() {
        // Oracle: enumerate all 9 elements of each subspace of F_3^2.
        let a = Subspace::span(f(3), 2, &[vec![1, 1], vec![0, 1]]);
        let b = Subspace::span(f(3), 2, &[vec![1, 0]]);
        let ea: Vec<_> = a.elements().collect();
        let common: Vec<_> = b.elements().filter(|v| ea.contains(v)).collect();
        assert_eq!(common.len() as u128, a.intersect(&b).unwrap().element_count());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::zero(f(5), 2);
        let b = Subspace::zero(f(5), 3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn coordinates_roundtrip() {
        let s = Subspace::span(f(7), 4, &[vec![1, 2, 0, 3], vec![0, 0, 1, 5]]);
        let v = s.combine(&[3, 4]);
        assert_eq!(s.coordinates(&v).unwrap(), vec![3, 4]);
        assert!(s.coordinates(&e(4, 1)).is_none());
    }
}
