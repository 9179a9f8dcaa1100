use rayon::prelude::*;
use serde::Serialize;

use super::{action_submodule, fixed_points, PModule};
use crate::analysis::{is_nilpotent, is_subalgebra};
use crate::error::{Error, Result};
use crate::ffarith::poly::{self, Poly};
use crate::ffarith::PrimeField;
use crate::linalg::{projective_points, Matrix, Subspace};
use crate::tori::{is_torus, p_map_matrix};
use crate::Budgets;

fn krylov(a: &Matrix, v: &[u32]) -> (Vec<Vec<u32>>, Poly) {
    let f = a.field();
    let mut vs: Vec<Vec<u32>> = Vec::new();
    let mut span = Subspace::zero(f, v.len());
    let mut w = v.to_vec();
    while !span.contains_vector(&w) {
        vs.push(w.clone());
        span = span.sum(&Subspace::from_vector(f, &w)).expect("ambient");
        w = a.mul_vec(&w);
    }
    let mut mp = vec![0u32; vs.len() + 1];
    mp[vs.len()] = 1;
    if !vs.is_empty() {
        let c = Matrix::from_columns(f, v.len(), &vs).solve(&w).expect("in span");
        for (k, ck) in c.into_iter().enumerate() {
            mp[k] = f.neg(ck);
        }
    }
    (vs, poly::trim(mp))
}

/// Minimal polynomial of a square matrix, low degree first.
pub fn min_poly(a: &Matrix) -> Poly {
    let f = a.field();
    let n = a.rows();
    let mut acc = poly::one();
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        let (_, m) = krylov(a, &e);
        let g = poly::gcd(f, &acc, &m);
        acc = poly::divrem(f, &poly::mul(f, &acc, &m), &g).0;
    }
    poly::monic(f, &acc)
}

fn eval(a: &Matrix, q: &[u32]) -> Matrix {
    let f = a.field();
    let n = a.rows();
    let mut out = Matrix::zeros(f, n, n);
    for &c in q.iter().rev() {
        out = out.mul(a);
        out.axpy(c, &Matrix::identity(f, n));
    }
    out
}

/// `(irreducible factor, generalized eigenspace)` pairs of `a`, in factor order.
fn primary_components(a: &Matrix) -> Vec<(Poly, Subspace)> {
    let f = a.field();
    poly::factor(f, &min_poly(a))
        .into_iter()
        .map(|(q, e)| {
            let qe = (1..e).fold(q.clone(), |acc, _| poly::mul(f, &acc, &q));
            (q, eval(a, &qe).kernel())
        })
        .collect()
}

fn lift(w: &Subspace, s: &Subspace) -> Subspace {
    let vs: Vec<Vec<u32>> = s.basis().iter().map(|c| w.combine(c)).collect();
    Subspace::span(w.field(), w.ambient_dim(), &vs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionMethod {
    /// The torus is generated by one element under the p-map.
    CyclicGenerator,
    /// Simultaneous decomposition under a basis of the torus.
    CommutingFamily,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDecomposition {
    pub fixed: Subspace,
    /// Irreducible submodules, in the order of their minimal polynomials.
    pub components: Vec<Subspace>,
    pub method: DecompositionMethod,
    pub generator: Option<Vec<u32>>,
}

/// A `t0 ∈ t` whose p-power iterates span `t`, trying the basis first and
/// then every element.
fn torus_generator(m: &PModule, t: &Subspace, budget: u128) -> Option<Vec<u32>> {
    if t.is_zero() {
        return Some(m.algebra().zero());
    }
    let phi = p_map_matrix(m.algebra(), t).ok()?;
    let k = t.dim();
    let spans = |c: &[u32]| krylov(&phi, c).0.len() == k;
    let unit = (0..k).map(|j| {
        let mut e = vec![0; k];
        e[j] = 1;
        e
    });
    if let Some(c) = unit.clone().find(|c| spans(c)) {
        return Some(t.combine(&c));
    }
    if t.element_count() > budget {
        return None;
    }
    projective_points(t.field(), k).find(|c| spans(c)).map(|c| t.combine(&c))
}

/// Splits a primary component of a single operator into cyclic summands,
/// each checked irreducible by its minimal polynomial.
fn cyclic_summands(a: &Matrix, w: &Subspace, q: &[u32]) -> Result<Vec<Subspace>> {
    let b = a.restrict_to(w).expect("invariant");
    let f = a.field();
    let d = w.dim();
    let mut sum = Subspace::zero(f, d);
    let mut out = Vec::new();
    for j in 0..d {
        let mut e = vec![0; d];
        e[j] = 1;
        if sum.contains_vector(&e) {
            continue;
        }
        let (vs, mp) = krylov(&b, &e);
        if mp != q {
            return Err(Error::theorem(
                "fact-maschke",
                "primary component is not semisimple under the torus",
            ));
        }
        let c = Subspace::span(f, d, &vs);
        sum = sum.sum(&c)?;
        out.push(lift(w, &c));
    }
    Ok(out)
}

/// Closure of `span(v)` under the given operators.
fn generated(ops: &[Matrix], v: &[u32]) -> Subspace {
    let f = ops.first().map(|m| m.field()).expect("nonempty family");
    let mut cur = Subspace::from_vector(f, v);
    loop {
        let mut gens = cur.basis().to_vec();
        for o in ops {
            gens.extend(cur.basis().iter().map(|b| o.mul_vec(b)));
        }
        let next = Subspace::span(f, v.len(), &gens);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn family_decomposition(
    m: &PModule,
    t: &Subspace,
    budget: u128,
) -> Result<(Subspace, Vec<Subspace>)> {
    let f = m.field();
    let ops: Vec<Matrix> = t.basis().iter().map(|b| m.rho_of(b)).collect();
    let mut blocks = vec![m.full()];
    for o in &ops {
        let mut next = Vec::new();
        for w in &blocks {
            let r = o.restrict_to(w).expect("invariant");
            for (_, c) in primary_components(&r) {
                next.push(lift(w, &c));
            }
        }
        blocks = next;
    }
    let mut fixed = Subspace::zero(f, m.dim_v());
    let mut comps = Vec::new();
    for w in blocks {
        let local: Vec<Matrix> = ops.iter().map(|o| o.restrict_to(&w).expect("invariant")).collect();
        if local.iter().all(|o| o.is_zero()) {
            fixed = fixed.sum(&w)?;
            continue;
        }
        if w.element_count() > budget {
            return Err(Error::budget(w.element_count(), budget));
        }
        // Irreducible submodules are the cyclic ones of least dimension.
        let pts: Vec<Vec<u32>> = projective_points(f, w.dim()).collect();
        let cyc: Vec<Subspace> = pts.par_iter().map(|v| generated(&local, v)).collect();
        let least = cyc.iter().map(|c| c.dim()).min().unwrap_or(0);
        let mut sum = Subspace::zero(f, w.dim());
        for c in cyc.iter().filter(|c| c.dim() == least) {
            if c.is_independent_of(&sum)? {
                sum = sum.sum(c)?;
                comps.push(lift(&w, c));
            }
        }
        if !sum.is_full() {
            return Err(Error::theorem(
                "fact-maschke",
                "isotypic block is not a sum of irreducible submodules",
            ));
        }
    }
    Ok((fixed, comps))
}

/// `V = V^t ⊕ V_1 ⊕ … ⊕ V_r` with irreducible `V_i`, for a torus `t`.
pub fn weight_decomposition(m: &PModule, t: &Subspace, budgets: &Budgets) -> Result<WeightDecomposition> {
    let g = m.algebra();
    g.check_ambient(t)?;
    if !is_torus(g, t) {
        return Err(Error::NotATorus(format!("{t:?}")));
    }
    let f = m.field();
    let out = match torus_generator(m, t, budgets.elements) {
        Some(t0) => {
            let a = m.rho_of(&t0);
            let mut fixed = Subspace::zero(f, m.dim_v());
            let mut comps = Vec::new();
            for (q, w) in primary_components(&a) {
                if q == poly::x() {
                    fixed = w;
                } else {
                    comps.extend(cyclic_summands(&a, &w, &q)?);
                }
            }
            WeightDecomposition {
                fixed,
                components: comps,
                method: DecompositionMethod::CyclicGenerator,
                generator: Some(t0),
            }
        }
        None => {
            let (fixed, components) = family_decomposition(m, t, budgets.elements)?;
            WeightDecomposition {
                fixed,
                components,
                method: DecompositionMethod::CommutingFamily,
                generator: None,
            }
        }
    };
    check_direct(f, m.dim_v(), &out)?;
    if out.fixed != fixed_points(m, t) {
        return Err(Error::theorem("cor-weight-spaces", "fixed summand differs from V^t"));
    }
    Ok(out)
}

fn check_direct(f: PrimeField, n: usize, d: &WeightDecomposition) -> Result<()> {
    let mut sum = d.fixed.clone();
    let mut dims = d.fixed.dim();
    for c in &d.components {
        sum = sum.sum(c)?;
        dims += c.dim();
    }
    if sum != Subspace::full(f, n) || dims != n {
        return Err(Error::theorem("fact-maschke", "summands do not form a direct sum of V"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VnvReport {
    pub passed: bool,
    pub dim_v: usize,
    pub dim_fixed: usize,
    pub dim_action: usize,
    pub dim_sum: usize,
    /// A standard basis vector of `V` outside `V^n + [n, V]`.
    pub witness: Option<Vec<u32>>,
}

/// Checks `V = V^n + [n, V]` for a nilpotent p-divisible p-subalgebra `n`.
pub fn verify_vnv(m: &PModule, n: &Subspace, budgets: &Budgets) -> Result<VnvReport> {
    let g = m.algebra();
    g.check_ambient(n)?;
    if !is_subalgebra(g, n) || !is_nilpotent(g, n)? {
        return Err(Error::HypothesisViolated("n is not a nilpotent subalgebra".into()));
    }
    budgets.check_elements(g.p(), n.dim())?;
    let elems: Vec<Vec<u32>> = n.elements().collect();
    let mut powers: Vec<Vec<u32>> = elems.par_iter().map(|x| g.p_power(x)).collect();
    if powers.iter().any(|y| !n.contains_vector(y)) {
        return Err(Error::HypothesisViolated("n is not p-stable".into()));
    }
    powers.sort();
    powers.dedup();
    if powers.len() != elems.len() {
        return Err(Error::HypothesisViolated("p-map is not bijective on n".into()));
    }
    let fixed = fixed_points(m, n);
    let action = action_submodule(m, n);
    let sum = fixed.sum(&action)?;
    let witness = (0..m.dim_v())
        .map(|j| {
            let mut e = vec![0; m.dim_v()];
            e[j] = 1;
            e
        })
        .find(|e| !sum.contains_vector(e));
    Ok(VnvReport {
        passed: witness.is_none(),
        dim_v: m.dim_v(),
        dim_fixed: fixed.dim(),
        dim_action: action.dim(),
        dim_sum: sum.dim(),
        witness,
    })
}
