//! Seeded random algebras: abelian, soluble by construction, and arbitrary
//! sparse structure constants repaired into restricted algebras.

use rand::Rng;

use crate::algebra::{AlgebraSpec, BracketTerm};
use crate::error::Result;
use crate::ffarith::PrimeField;
use crate::linalg::Matrix;

use super::abelian;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn random_vec<R: Rng>(f: PrimeField, n: usize, rng: &mut R) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..f.p())).collect()
}

fn random_matrix<R: Rng>(f: PrimeField, n: usize, rng: &mut R) -> Matrix {
    Matrix::new(f, n, n, random_vec(f, n * n, rng)).expect("shape")
}

fn random_invertible<R: Rng>(f: PrimeField, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(f, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Abelian algebra with a uniformly random p-map matrix.
pub fn random_abelian<R: Rng>(p: u32, dim: usize, rng: &mut R) -> Result<AlgebraSpec> {
    let f = PrimeField::new(p)?;
    abelian(&random_matrix(f, dim, rng))
}

/// Values for `e_i^[p]` making `ad(e_i^[p]) = ad(e_i)^p` hold, given a
/// bracket satisfying Jacobi. Each value is a particular solution plus a
/// random central element. `None` if some `ad(e_i)^p` is not inner.
pub fn solve_pmap<R: Rng>(spec: &AlgebraSpec, rng: &mut R) -> Option<Vec<Vec<u32>>> {
    let f = spec.field();
    let n = spec.dim();
    let cols: Vec<Vec<u32>> = (0..n).map(|k| spec.ad_basis(k).data().to_vec()).collect();
    let a = Matrix::from_columns(f, n * n, &cols);
    let center = a.kernel();
    (0..n)
        .map(|i| {
            let target = spec.ad_basis(i).pow(spec.p() as u64);
            let mut v = a.solve(target.data())?;
            let c = random_vec(f, center.dim(), rng);
            f.axpy(&mut v, 1, &center.combine(&c));
            Some(v)
        })
        .collect()
}

/// Outcome of one attempt at a random restricted algebra.
#[derive(Debug, Clone)]
pub enum RandomOutcome {
    Algebra(AlgebraSpec),
    /// Every bracket draw failed Jacobi.
    Jacobi,
    /// Jacobi held but some `ad(e_i)^p` is not inner.
    PMap,
}

/// Sparse random structure constants in dimension `dim`, redrawn until
/// Jacobi holds (at most `attempts` draws), then a p-map from
/// [`solve_pmap`]. Returns the outcome and the number of rejected draws.
pub fn random_restricted<R: Rng>(
    p: u32,
    dim: usize,
    attempts: usize,
    rng: &mut R,
) -> Result<(RandomOutcome, usize)> {
    let f = PrimeField::new(p)?;
    let basis = names("x", dim);
    let mut rejected = 0;
    for _ in 0..attempts {
        let mut brackets: Vec<BracketTerm> = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                if rng.gen_bool(0.5) {
                    continue;
                }
                let v: Vec<u32> = (0..dim)
                    .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..p) })
                    .collect();
                if v.iter().any(|&c| c != 0) {
                    brackets.push(((i, j), v));
                }
            }
        }
        let draft = AlgebraSpec::new_unverified(p, "draft", basis.clone(), &brackets, vec![vec![0; dim]; dim])?;
        if draft.jacobi_violation().is_some() {
            rejected += 1;
            continue;
        }
        let Some(pmap) = solve_pmap(&draft, rng) else {
            return Ok((RandomOutcome::PMap, rejected));
        };
        let spec = AlgebraSpec::new(p, format!("random{dim}({})", f.p()), basis, &brackets, pmap)?;
        return Ok((RandomOutcome::Algebra(spec), rejected));
    }
    Ok((RandomOutcome::Jacobi, rejected))
}

/// Shape of a random soluble algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolubleKind {
    /// The acting torus has diagonalisable action with eigenvalues in `F_p`.
    Split,
    /// The acting part acts nilpotently.
    Unipotent,
}

/// `a ⋉ V` with `a` abelian of dimension `acting` and `V` abelian of
/// dimension `dim - acting`, `a` acting by commuting matrices (a random
/// conjugate of diagonal ones for `Split`, of strictly upper triangular
/// polynomials in one matrix for `Unipotent`). The p-map comes from
/// [`solve_pmap`]. Soluble by construction: the derived algebra lies in `V`.
pub fn random_semidirect<R: Rng>(
    p: u32,
    dim: usize,
    acting: usize,
    kind: SolubleKind,
    rng: &mut R,
) -> Result<AlgebraSpec> {
    let f = PrimeField::new(p)?;
    let acting = acting.clamp(1, dim.max(1));
    let m = dim - acting;
    let conj = random_invertible(f, m, rng);
    let conj_inv = conj.inverse().expect("invertible");
    let actions: Vec<Matrix> = match kind {
        SolubleKind::Split => (0..acting)
            .map(|_| {
                let d = Matrix::diagonal(f, &random_vec(f, m, rng));
                conj.mul(&d).mul(&conj_inv)
            })
            .collect(),
        SolubleKind::Unipotent => {
            let mut nil = Matrix::zeros(f, m, m);
            for r in 0..m {
                for c in (r + 1)..m {
                    nil.set(r, c, rng.gen_range(0..p));
                }
            }
            let nil = conj.mul(&nil).mul(&conj_inv);
            (0..acting)
                .map(|_| {
                    let mut a = Matrix::zeros(f, m, m);
                    let mut pw = nil.clone();
                    for _ in 0..m {
                        a.axpy(rng.gen_range(0..p), &pw);
                        pw = pw.mul(&nil);
                    }
                    a
                })
                .collect()
        }
    };
    let mut brackets: Vec<BracketTerm> = Vec::new();
    for (i, act) in actions.iter().enumerate() {
        for k in 0..m {
            let mut v = vec![0; dim];
            v[acting..].copy_from_slice(&act.column(k));
            if v.iter().any(|&c| c != 0) {
                brackets.push(((i, acting + k), v));
            }
        }
    }
    let mut basis = names("t", acting);
    basis.extend(names("v", m));
    let draft = AlgebraSpec::new_unverified(p, "draft", basis.clone(), &brackets, vec![vec![0; dim]; dim])?;
    let pmap = solve_pmap(&draft, rng).expect("semidirect actions have inner p-th powers");
    AlgebraSpec::new(p, format!("semidirect{dim}({p})"), basis, &brackets, pmap)
}
