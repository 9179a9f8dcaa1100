//! Restricted Lie algebras given by structure constants and basis p-powers.
//!
//! Elements are plain coefficient vectors (`Vec<u32>` / `&[u32]`) in the
//! algebra's basis. The p-map is stored on the basis only and extended to
//! arbitrary elements with Jacobson's formula.

mod format;
mod morphism;
mod verify;

pub use format::{AlgebraFile, BracketEntry, ModuleBlock, PmapEntry};
pub use morphism::PMorphism;
pub use verify::{verify_restricted, Finding, VerifyReport};

use rand::Rng;

use crate::error::{Error, Result};
use crate::ffarith::PrimeField;
use crate::linalg::{Matrix, Subspace};

/// A finite-dimensional restricted Lie algebra over `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    field: PrimeField,
    name: String,
    basis: Vec<String>,
    dim: usize,
    /// `table[(i * dim + j) * dim + k]` is the coefficient of `e_k` in `[e_i, e_j]`.
    table: Vec<u32>,
    pmap: Vec<Vec<u32>>,
    ad: Vec<Matrix>,
}

impl std::fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlgebraSpec")
            .field("name", &self.name)
            .field("p", &self.field.p())
            .field("dim", &self.dim)
            .finish()
    }
}

/// Structure constants for one basis pair `i < j`.
pub type BracketTerm = ((usize, usize), Vec<u32>);

impl AlgebraSpec {
    /// Builds and validates an algebra: Jacobi on basis triples and
    /// `[e_i^[p], e_j] = ad_{e_i}^p(e_j)` on basis pairs.
    pub fn new(
        p: u32,
        name: impl Into<String>,
        basis: Vec<String>,
        brackets: &[BracketTerm],
        pmap: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let spec = Self::new_unverified(p, name, basis, brackets, pmap)?;
        if let Some((i, j, k)) = spec.jacobi_violation() {
            return Err(Error::NotRestricted(format!(
                "Jacobi identity fails on basis triple ({}, {}, {})",
                spec.basis[i], spec.basis[j], spec.basis[k]
            )));
        }
        if let Some(i) = spec.axiom1_basis_violation() {
            return Err(Error::NotRestricted(format!(
                "ad({}^[p]) differs from ad({})^p",
                spec.basis[i], spec.basis[i]
            )));
        }
        Ok(spec)
    }

    /// Builds an algebra after shape checks only. Antisymmetry is built in:
    /// only pairs `i < j` may be given.
    pub fn new_unverified(
        p: u32,
        name: impl Into<String>,
        basis: Vec<String>,
        brackets: &[BracketTerm],
        pmap: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let dim = basis.len();
        if pmap.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: pmap.len(),
            });
        }
        let mut table = vec![0u32; dim * dim * dim];
        let mut seen = vec![false; dim * dim];
        for ((i, j), c) in brackets {
            let (i, j) = (*i, *j);
            if i >= j || j >= dim {
                return Err(Error::Invalid(format!(
                    "bracket entry ({i}, {j}) must satisfy i < j < {dim}"
                )));
            }
            if seen[i * dim + j] {
                return Err(Error::Invalid(format!("duplicate bracket entry ({i}, {j})")));
            }
            seen[i * dim + j] = true;
            check_vector(field, dim, c)?;
            for k in 0..dim {
                table[(i * dim + j) * dim + k] = c[k];
                table[(j * dim + i) * dim + k] = field.neg(c[k]);
            }
        }
        for v in &pmap {
            check_vector(field, dim, v)?;
        }
        let mut spec = AlgebraSpec {
            field,
            name: name.into(),
            basis,
            dim,
            table,
            pmap,
            ad: Vec::new(),
        };
        spec.ad = (0..dim)
            .map(|i| {
                let cols: Vec<Vec<u32>> = (0..dim).map(|j| spec.basis_bracket(i, j).to_vec()).collect();
                Matrix::from_columns(field, dim, &cols)
            })
            .collect();
        Ok(spec)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    /// `[e_i, e_j]` as a coefficient slice.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[u32] {
        let start = (i * self.dim + j) * self.dim;
        &self.table[start..start + self.dim]
    }

    /// `e_i^[p]`.
    pub fn basis_pmap(&self, i: usize) -> &[u32] {
        &self.pmap[i]
    }

    pub fn pmap_table(&self) -> &[Vec<u32>] {
        &self.pmap
    }

    /// Nonzero structure constants for `i < j`, in `(i, j)` order.
    pub fn bracket_terms(&self) -> Vec<BracketTerm> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let c = self.basis_bracket(i, j);
                if c.iter().any(|&x| x != 0) {
                    out.push(((i, j), c.to_vec()));
                }
            }
        }
        out
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn check_element(&self, x: &[u32]) -> Result<()> {
        check_vector(self.field, self.dim, x)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|&c| c == 0)
    }

    pub fn bracket(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let n = self.dim;
        let p = self.field.p() as u64;
        let mut acc = vec![0u64; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 || i == j {
                    continue;
                }
                let s = (xi as u64 * yj as u64) % p;
                let row = &self.table[(i * n + j) * n..(i * n + j + 1) * n];
                for (a, &c) in acc.iter_mut().zip(row) {
                    *a += s * c as u64;
                }
            }
            // Keep the accumulator bounded for large p.
            for a in acc.iter_mut() {
                *a %= p;
            }
        }
        acc.into_iter().map(|a| (a % p) as u32).collect()
    }

    /// Bracket with shape validation.
    pub fn try_bracket(&self, x: &[u32], y: &[u32]) -> Result<Vec<u32>> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.bracket(x, y))
    }

    /// Matrix of `y -> [x, y]`.
    pub fn ad_matrix(&self, x: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                m.axpy(xi, &self.ad[i]);
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> &Matrix {
        &self.ad[i]
    }

    /// The `s_i(x, y)`, `i = 1..p-1`, of Jacobson's formula.
    ///
    /// Elements of `g ⊗ F_p[X]` are held as one coefficient vector per power
    /// of `X`; `ad_{x⊗X + y⊗1}` is applied `p - 1` times to `x⊗1`, and the
    /// coefficient of `X^{i-1}` is `i·s_i`. Degrees never exceed `p - 1`.
    pub fn jacobson_si(&self, x: &[u32], y: &[u32]) -> Vec<Vec<u32>> {
        let f = self.field;
        let p = f.p() as usize;
        let adx = self.ad_matrix(x);
        let ady = self.ad_matrix(y);
        let mut poly: Vec<Vec<u32>> = vec![self.zero(); p];
        poly[0] = x.to_vec();
        for step in 0..p - 1 {
            let mut next = vec![self.zero(); p];
            // Degree is at most `step` before this application.
            for d in 0..=step {
                if poly[d].iter().all(|&c| c == 0) {
                    continue;
                }
                let bx = adx.mul_vec(&poly[d]);
                let by = ady.mul_vec(&poly[d]);
                let t = next[d + 1].clone();
                next[d + 1] = f.add_vec(&t, &bx);
                let t = next[d].clone();
                next[d] = f.add_vec(&t, &by);
            }
            poly = next;
        }
        (1..p)
            .map(|i| f.scale(f.inv(i as u32), &poly[i - 1]))
            .collect()
    }

    /// `x^[p]`, folding the basis expansion of `x` in ascending index order.
    pub fn p_power(&self, x: &[u32]) -> Vec<u32> {
        let order: Vec<usize> = (0..self.dim).collect();
        self.p_power_fold(x, &order)
    }

    /// `x^[p]` folding the basis terms in the given order; every order must
    /// give the same answer.
    pub fn p_power_fold(&self, x: &[u32], order: &[usize]) -> Vec<u32> {
        let f = self.field;
        let mut acc = self.zero();
        let mut acc_p = self.zero();
        for &i in order {
            let l = x[i];
            if l == 0 {
                continue;
            }
            let mut term = self.zero();
            term[i] = l;
            // (λ e_i)^[p] = λ^p e_i^[p] = λ e_i^[p] over F_p.
            let term_p = f.scale(l, &self.pmap[i]);
            let mut sum = f.add_vec(&acc_p, &term_p);
            // Every s_i is built on [acc, term], so commuting terms add nothing.
            if acc.iter().any(|&c| c != 0) && self.bracket(&acc, &term).iter().any(|&c| c != 0) {
                for s in self.jacobson_si(&acc, &term) {
                    sum = f.add_vec(&sum, &s);
                }
            }
            acc[i] = l;
            acc_p = sum;
        }
        acc_p
    }

    /// `x^{[p]^n}`.
    pub fn p_power_iter(&self, x: &[u32], n: usize) -> Vec<u32> {
        let mut y = x.to_vec();
        for _ in 0..n {
            y = self.p_power(&y);
        }
        y
    }

    /// First basis triple `(i, j, k)` on which the Jacobi identity fails.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let (ei, ej, ek) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let a = self.bracket(&ei, self.basis_bracket(j, k));
                    let b = self.bracket(&ej, self.basis_bracket(k, i));
                    let c = self.bracket(&ek, self.basis_bracket(i, j));
                    let s = self.field.add_vec(&self.field.add_vec(&a, &b), &c);
                    if s.iter().any(|&v| v != 0) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First basis index `i` with `ad(e_i^[p]) != ad(e_i)^p`.
    pub fn axiom1_basis_violation(&self) -> Option<usize> {
        (0..self.dim).find(|&i| self.ad_matrix(&self.pmap[i]) != self.ad[i].pow(self.p() as u64))
    }

    /// Uniform random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Vec<u32> {
        (0..self.dim).map(|_| rng.gen_range(0..self.p())).collect()
    }

    /// Human-readable linear combination of basis names.
    pub fn format_element(&self, x: &[u32]) -> String {
        format_combination(&self.basis, x)
    }

    /// `span` of a set of elements as a subspace of the algebra.
    pub fn span(&self, vectors: &[Vec<u32>]) -> Subspace {
        Subspace::span(self.field, self.dim, vectors)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    /// Basis vectors spanned by the named elements.
    pub fn span_of_names(&self, names: &[&str]) -> Result<Subspace> {
        let vs = names
            .iter()
            .map(|n| {
                self.basis
                    .iter()
                    .position(|b| b == n)
                    .map(|i| self.basis_vector(i))
                    .ok_or_else(|| Error::Invalid(format!("unknown basis element `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.span(&vs))
    }
}

fn check_vector(field: PrimeField, dim: usize, v: &[u32]) -> Result<()> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: v.len(),
        });
    }
    if let Some(&c) = v.iter().find(|&&c| c >= field.p()) {
        return Err(Error::Invalid(format!(
            "coefficient {c} is not reduced mod {}",
            field.p()
        )));
    }
    Ok(())
}

pub(crate) fn format_combination(names: &[String], x: &[u32]) -> String {
    let terms: Vec<String> = x
        .iter()
        .zip(names)
        .filter(|(&c, _)| c != 0)
        .map(|(&c, n)| if c == 1 { n.clone() } else { format!("{c}*{n}") })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn borel(p: u32) -> AlgebraSpec {
        AlgebraSpec::new(
            p,
            "borel2",
            vec!["t".into(), "u".into()],
            &[((0, 1), vec![0, 1])],
            vec![vec![1, 0], vec![0, 0]],
        )
        .unwrap()
    }

    fn heisenberg(p: u32) -> AlgebraSpec {
        AlgebraSpec::new(
            p,
            "heisenberg",
            vec!["x".into(), "y".into(), "z".into()],
            &[((0, 1), vec![0, 0, 1])],
            vec![vec![0; 3]; 3],
        )
        .unwrap()
    }

    #[test]
    fn borel_jacobson_terms() {
        let b = borel(5);
        let s = b.jacobson_si(&[1, 0], &[0, 1]);
        assert_eq!(s, vec![vec![0, 0], vec![0, 0], vec![0, 0], vec![0, 1]]);
        assert_eq!(b.p_power(&[1, 1]), vec![1, 1]);
    }

    #[test]
    fn heisenberg_jacobson_terms_vanish() {
        let h = heisenberg(5);
        for s in h.jacobson_si(&[1, 0, 0], &[0, 1, 0]) {
            assert_eq!(s, vec![0, 0, 0]);
        }
        let z = [0, 0, 1];
        assert!(h.ad_matrix(&z).is_zero());
    }

    #[test]
    fn abelian_jacobson_terms_vanish() {
        let a = AlgebraSpec::new(
            7,
            "ab",
            vec!["a".into(), "b".into()],
            &[],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        for s in a.jacobson_si(&[3, 4], &[5, 6]) {
            assert_eq!(s, vec![0, 0]);
        }
    }

    #[test]
    fn bracket_is_antisymmetric_and_alternating() {
        let b = borel(7);
        let x = [3, 4];
        let y = [2, 6];
        assert_eq!(b.bracket(&x, &x), vec![0, 0]);
        assert_eq!(b.bracket(&x, &y), b.field().neg_vec(&b.bracket(&y, &x)));
    }

    #[test]
    fn rejects_bad_constants() {
        let bad = AlgebraSpec::new(
            5,
            "bad",
            vec!["t".into(), "u".into()],
            &[((0, 1), vec![0, 1])],
            vec![vec![0, 0], vec![0, 0]],
        );
        assert!(matches!(bad, Err(Error::NotRestricted(_))));
        let unreduced = AlgebraSpec::new_unverified(
            5,
            "bad",
            vec!["t".into()],
            &[],
            vec![vec![5]],
        );
        assert!(unreduced.is_err());
        assert!(matches!(
            borel(5).try_bracket(&[1, 0, 0], &[0, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
