use rayon::prelude::*;
use serde::Serialize;

use super::{coords_of, lift};
use crate::algebra::{AlgebraSpec, PMorphism};
use crate::analysis::{centralizer_of, p_closure_of};
use crate::error::{Error, Result};
use crate::linalg::{projective_points, Matrix, Subspace};
use crate::Budgets;

/// `a = torus ⊕ unipotent`, with the p-map bijective on the first summand
/// and nilpotent on the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToralSplit {
    pub torus: Subspace,
    pub unipotent: Subspace,
    /// Least `N ≥ 0` with `im φ^N = im φ^{N+1}`.
    pub stabilization_exponent: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementClass {
    Semisimple,
    PNilpotent,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanPair {
    pub semisimple_part: Vec<u32>,
    pub nilpotent_part: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: ElementClass,
    pub pair: JordanPair,
}

/// Matrix of the p-map on an abelian p-subalgebra `a`, in the coordinates of
/// `a`'s canonical basis. On such a subspace the p-map is additive, hence
/// F_p-linear.
pub fn p_map_matrix(spec: &AlgebraSpec, a: &Subspace) -> Result<Matrix> {
    spec.check_ambient(a)?;
    let b = a.basis();
    for i in 0..b.len() {
        for j in (i + 1)..b.len() {
            let w = spec.bracket(&b[i], &b[j]);
            if w.iter().any(|&c| c != 0) {
                return Err(Error::NotAbelian { witness: w });
            }
        }
    }
    let mut cols = Vec::with_capacity(b.len());
    for v in b {
        let w = spec.p_power(v);
        match a.coordinates(&w) {
            Some(c) => cols.push(c),
            None => return Err(Error::NotPStable { witness: v.clone() }),
        }
    }
    Ok(Matrix::from_columns(spec.field(), b.len(), &cols))
}

fn stabilization(m: &Matrix) -> usize {
    let mut n = 0;
    let mut cur = Matrix::identity(m.field(), m.rows());
    loop {
        let next = cur.mul(m);
        if next.rank() == cur.rank() {
            return n;
        }
        cur = next;
        n += 1;
    }
}

fn split_from_matrix(a: &Subspace, m: &Matrix) -> Result<ToralSplit> {
    if a.dim() == 0 {
        return Ok(ToralSplit {
            torus: a.clone(),
            unipotent: a.clone(),
            stabilization_exponent: 0,
        });
    }
    let n = stabilization(m);
    let mn = m.pow(n as u64);
    let (k, im) = mn.kernel_image();
    let torus = lift(a, &im);
    let unipotent = lift(a, &k);
    if torus.dim() + unipotent.dim() != a.dim() || !torus.is_independent_of(&unipotent)? {
        return Err(Error::theorem(
            "cor-toral-decomposition",
            "kernel and image of the stable power do not split the subalgebra",
        ));
    }
    Ok(ToralSplit {
        torus,
        unipotent,
        stabilization_exponent: n,
    })
}

/// `a = im φ^N ⊕ ker φ^N` for an abelian p-subalgebra `a`.
pub fn toral_decomposition(spec: &AlgebraSpec, a: &Subspace) -> Result<ToralSplit> {
    let m = p_map_matrix(spec, a)?;
    split_from_matrix(a, &m)
}

/// Splits `x ∈ a` along `a = t ⊕ u`.
fn project(split: &ToralSplit, x: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let t = &split.torus;
    let mut cols: Vec<Vec<u32>> = t.basis().to_vec();
    cols.extend(split.unipotent.basis().iter().cloned());
    if cols.is_empty() {
        return (x.to_vec(), x.to_vec());
    }
    let f = t.field();
    let m = Matrix::from_columns(f, x.len(), &cols);
    let c = m.solve(x).expect("x lies in t ⊕ u");
    let mut s = vec![0; x.len()];
    for (b, &k) in t.basis().iter().zip(&c) {
        f.axpy(&mut s, k, b);
    }
    let n = f.sub_vec(x, &s);
    (s, n)
}

/// Semisimple / p-nilpotent / mixed, with the Jordan parts of `x` taken in
/// `d(x)`, the p-closure of `span(x)`. Zero counts as p-nilpotent.
pub fn classify_element(spec: &AlgebraSpec, x: &[u32]) -> Result<Classification> {
    spec.check_element(x)?;
    let d = p_closure_of(spec, x);
    let split = toral_decomposition(spec, &d)?;
    let (s, n) = if d.is_zero() {
        (spec.zero(), spec.zero())
    } else {
        project(&split, x)
    };
    let nz = |v: &[u32]| v.iter().any(|&c| c != 0);
    let class = match (nz(&s), nz(&n)) {
        (true, false) => ElementClass::Semisimple,
        (true, true) => ElementClass::Mixed,
        (false, _) => ElementClass::PNilpotent,
    };
    Ok(Classification {
        class,
        pair: JordanPair {
            semisimple_part: s,
            nilpotent_part: n,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PurityMode {
    Check,
    Complement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PurityOutcome {
    Pure(bool),
    Complement(Subspace),
}

pub fn purity(spec: &AlgebraSpec, a: &Subspace, b: &Subspace, mode: PurityMode) -> Result<PurityOutcome> {
    match mode {
        PurityMode::Check => is_pure(spec, a, b).map(PurityOutcome::Pure),
        PurityMode::Complement => pure_complement(spec, a, b).map(PurityOutcome::Complement),
    }
}

fn sub_in(spec: &AlgebraSpec, a: &Subspace, b: &Subspace) -> Result<(Matrix, Subspace)> {
    let m = p_map_matrix(spec, a)?;
    spec.check_ambient(b)?;
    if !a.contains(b)? {
        return Err(Error::Invalid("b is not contained in a".into()));
    }
    let bc = coords_of(a, b);
    for v in bc.basis() {
        if !bc.contains_vector(&m.mul_vec(v)) {
            return Err(Error::NotPStable { witness: a.combine(v) });
        }
    }
    Ok((m, bc))
}

/// First `n` at which `a^{p^n} ∩ b ≠ b^{p^n}`, in coordinates of `a`.
fn impurity(m: &Matrix, b: &Subspace) -> Option<usize> {
    let k = m.rows();
    let mut mn = Matrix::identity(m.field(), k);
    for n in 0..=k + 1 {
        let an = mn.image();
        if an.intersect(b).expect("ambient") != b.map(&mn) {
            return Some(n);
        }
        mn = mn.mul(m);
    }
    None
}

/// Whether `a^{p^n} ∩ b = b^{p^n}` for every `n`.
pub fn is_pure(spec: &AlgebraSpec, a: &Subspace, b: &Subspace) -> Result<bool> {
    let (m, bc) = sub_in(spec, a, b)?;
    Ok(impurity(&m, &bc).is_none())
}

/// A p-nilpotent p-subalgebra `c` of bounded exponent with `a = b ⊕ c`, for
/// `b` pure in `a` and `a/b` of bounded exponent.
pub fn pure_complement(spec: &AlgebraSpec, a: &Subspace, b: &Subspace) -> Result<Subspace> {
    let (m, bc) = sub_in(spec, a, b)?;
    let k = a.dim();
    if let Some(n) = impurity(&m, &bc) {
        return Err(Error::NotPure(format!("intersection differs at exponent {n}")));
    }
    let mk = m.pow(k as u64);
    if (0..k).any(|j| !bc.contains_vector(&mk.column(j))) {
        return Err(Error::QuotientNotBoundedExponent);
    }
    let f = spec.field();
    let unit = |j: usize| {
        let mut e = vec![0; k];
        e[j] = 1;
        e
    };
    let height = |cur: &Subspace, v: &[u32]| {
        let mut w = v.to_vec();
        let mut h = 0;
        while !cur.contains_vector(&w) {
            w = m.mul_vec(&w);
            h += 1;
        }
        h
    };
    let mut cur = bc;
    let mut comp = Subspace::zero(f, k);
    while cur.dim() < k {
        // Heights are subadditive, so the maximum is attained on a basis vector.
        let (j, n) = (0..k)
            .map(|j| (j, height(&cur, &unit(j))))
            .fold((0, 0), |best, c| if c.1 > best.1 { c } else { best });
        let x = unit(j);
        let mn = m.pow(n as u64);
        let target = mn.mul_vec(&x);
        let b0 = if cur.is_zero() {
            vec![0; k]
        } else {
            let imgs: Vec<Vec<u32>> = cur.basis().iter().map(|v| mn.mul_vec(v)).collect();
            let sys = Matrix::from_columns(f, k, &imgs);
            let c = sys.solve(&target).ok_or_else(|| {
                Error::theorem("lemma-purity", "no element of the pure part has the required power")
            })?;
            cur.combine(&c)
        };
        let mut y = f.sub_vec(&x, &b0);
        let mut gens = Vec::with_capacity(n);
        for _ in 0..n {
            gens.push(y.clone());
            y = m.mul_vec(&y);
        }
        let c = Subspace::span(f, k, &gens);
        if !c.is_independent_of(&cur)? {
            return Err(Error::theorem("lemma-purity", "adjoined block meets the pure part"));
        }
        cur = cur.sum(&c)?;
        comp = comp.sum(&c)?;
        if impurity(&m, &cur).is_some() {
            return Err(Error::theorem("prop-purity", "enlarged subalgebra is not pure"));
        }
    }
    Ok(lift(a, &comp))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootScope {
    /// Every element of `C_g(x)` was tested.
    Centralizer,
    /// The centralizer exceeded the element budget; only `d(x)` was tested.
    Closure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootResult {
    pub root: Vec<u32>,
    /// Length of the p-map orbit of `x`.
    pub period: usize,
    pub scope: RootScope,
    pub candidates_checked: u128,
}

/// First nonzero p-nilpotent element, scanning one vector per line.
fn p_nilpotent_witness(spec: &AlgebraSpec) -> Option<Vec<u32>> {
    let pts: Vec<Vec<u32>> = projective_points(spec.field(), spec.dim()).collect();
    pts.into_par_iter()
        .find_first(|x| spec.p_power_iter(x, spec.dim()).iter().all(|&c| c == 0))
}

/// The unique `y` with `y^[p] = x`, in an algebra without nonzero
/// p-nilpotent elements.
///
/// Any root commutes with `x`, so it lies in `C_g(x)`; uniqueness is
/// confirmed by scanning that centralizer when it fits in the budget.
pub fn p_th_root(spec: &AlgebraSpec, x: &[u32], budgets: &Budgets) -> Result<RootResult> {
    spec.check_element(x)?;
    budgets.check_elements(spec.p(), spec.dim())?;
    if let Some(w) = p_nilpotent_witness(spec) {
        return Err(Error::PNilpotentsExist { witness: w });
    }
    let limit = (spec.p() as u128).pow(spec.dim() as u32);
    let mut prev = x.to_vec();
    let mut y = spec.p_power(x);
    let mut period = 1usize;
    while y != x {
        if period as u128 > limit {
            return Err(Error::NoRoot { witness: x.to_vec() });
        }
        prev = y;
        y = spec.p_power(&prev);
        period += 1;
    }
    let root = prev;
    let c = centralizer_of(spec, x);
    let (space, scope) = if c.element_count() <= budgets.elements {
        (c, RootScope::Centralizer)
    } else {
        (p_closure_of(spec, x), RootScope::Closure)
    };
    let hits: Vec<Vec<u32>> = space
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|z| spec.p_power(z) == x)
        .collect();
    if hits != [root.clone()] {
        return Err(Error::theorem(
            "cor-unique-root",
            format!("{} solutions of y^[p] = x found", hits.len()),
        ));
    }
    Ok(RootResult {
        root,
        period,
        scope,
        candidates_checked: space.element_count(),
    })
}

/// A p-nilpotent `x'` with `f(x') = f(x)`, when `f(x)` is p-nilpotent.
pub fn lift_p_nilpotent(f: &PMorphism, x: &[u32]) -> Result<Vec<u32>> {
    let g = f.source();
    let h = f.target();
    g.check_element(x)?;
    let y = f.apply(x);
    if h.p_power_iter(&y, h.dim() + 1).iter().any(|&c| c != 0) {
        return Err(Error::NotPNilpotentImage { witness: x.to_vec() });
    }
    let ker = f.kernel();
    let mut n = 0;
    let mut z = x.to_vec();
    while !ker.contains_vector(&z) {
        z = g.p_power(&z);
        n += 1;
    }
    let d = p_closure_of(g, &z);
    let split = toral_decomposition(g, &d)?;
    let t = &split.torus;
    let tprime = if t.is_zero() {
        g.zero()
    } else {
        let (zt, _) = project(&split, &z);
        let mt = p_map_matrix(g, t)?.pow(n as u64);
        let c = mt
            .solve(&t.coordinates(&zt).expect("in torus"))
            .ok_or_else(|| Error::theorem("cor-lift", "p-map is not bijective on the torus"))?;
        t.combine(&c)
    };
    let field = g.field();
    let out = field.sub_vec(x, &tprime);
    if g.p_power_iter(&out, n + g.dim() + 1).iter().any(|&c| c != 0) {
        return Err(Error::theorem("cor-lift", "corrected element is not p-nilpotent"));
    }
    if f.apply(&out) != y {
        return Err(Error::theorem("cor-lift", "correction changed the image"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{abelian as abelian_alg, borel2, field_torus, witt};
    use crate::ffarith::{ExtField, PrimeField};

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn abelian_cols(cols: &[Vec<u32>]) -> AlgebraSpec {
        abelian_alg(&Matrix::from_columns(f5(), cols.len(), cols)).unwrap()
    }

    #[test]
    fn chain_example() {
        let a = abelian_cols(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let s = toral_decomposition(&a, &a.full()).unwrap();
        assert_eq!(s.torus, a.span(&[vec![1, 0, 0]]));
        assert_eq!(s.unipotent, a.span(&[vec![0, 1, 0], vec![0, 0, 1]]));
        assert_eq!(s.stabilization_exponent, 2);
    }

    #[test]
    fn identity_and_zero_maps() {
        let id = abelian_cols(&[vec![1, 0], vec![0, 1]]);
        let s = toral_decomposition(&id, &id.full()).unwrap();
        assert!(s.torus.is_full() && s.unipotent.is_zero());
        assert_eq!(s.stabilization_exponent, 0);
        let z = abelian_cols(&[vec![0, 0], vec![0, 0]]);
        let s = toral_decomposition(&z, &z.full()).unwrap();
        assert!(s.torus.is_zero() && s.unipotent.is_full());
    }

    #[test]
    fn rejects_nonabelian() {
        let b = borel2(5).unwrap();
        assert!(matches!(
            toral_decomposition(&b, &b.full()),
            Err(Error::NotAbelian { .. })
        ));
    }

    #[test]
    fn classification_examples() {
        let w = witt(5).unwrap();
        let c = classify_element(&w, &w.basis_vector(1)).unwrap();
        assert_eq!(c.class, ElementClass::Semisimple);
        assert_eq!(c.pair.semisimple_part, w.basis_vector(1));

        let b = borel2(5).unwrap();
        let c = classify_element(&b, &[0, 1]).unwrap();
        assert_eq!(c.class, ElementClass::PNilpotent);
        assert_eq!(c.pair.nilpotent_part, vec![0, 1]);
        let c = classify_element(&b, &[1, 1]).unwrap();
        assert_eq!(c.class, ElementClass::Semisimple);
        assert_eq!(c.pair.semisimple_part, vec![1, 1]);

        // s + u with s^[p] = s, u^[p] = 0 in an abelian algebra.
        let a = abelian_cols(&[vec![1, 0], vec![0, 0]]);
        let c = classify_element(&a, &[2, 3]).unwrap();
        assert_eq!(c.class, ElementClass::Mixed);
        assert_eq!(c.pair.semisimple_part, vec![2, 0]);
        assert_eq!(c.pair.nilpotent_part, vec![0, 3]);
    }

    #[test]
    fn purity_examples() {
        let a = abelian_cols(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let s = toral_decomposition(&a, &a.full()).unwrap();
        assert!(is_pure(&a, &a.full(), &s.torus).unwrap());
        assert_eq!(pure_complement(&a, &a.full(), &s.torus).unwrap(), s.unipotent);
        assert!(pure_complement(&a, &a.full(), &a.full()).unwrap().is_zero());

        let n = abelian_cols(&[vec![0, 1], vec![0, 0]]);
        let b = n.span(&[vec![0, 1]]);
        assert!(!is_pure(&n, &n.full(), &b).unwrap());
        assert!(matches!(pure_complement(&n, &n.full(), &b), Err(Error::NotPure(_))));
    }

    #[test]
    fn complement_needs_bounded_quotient() {
        let a = abelian_cols(&[vec![1, 0], vec![0, 0]]);
        assert_eq!(
            pure_complement(&a, &a.full(), &a.zero_subspace()),
            Err(Error::QuotientNotBoundedExponent)
        );
    }

    #[test]
    fn complement_of_zero_in_nilpotent_chain() {
        let a = abelian_cols(&[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        let c = pure_complement(&a, &a.full(), &a.zero_subspace()).unwrap();
        assert!(c.is_full());
    }

    #[test]
    fn roots_in_field_torus() {
        let ext = ExtField::with_least_modulus(5, 3).unwrap();
        let t = field_torus(5, 3).unwrap();
        let b = Budgets::default();
        for x in ext.elements() {
            let r = p_th_root(&t, &x, &b).unwrap();
            assert_eq!(r.root, ext.frobenius(&x, 2));
            assert_eq!(r.scope, RootScope::Centralizer);
        }
        let h = crate::constructions::heisenberg(5).unwrap();
        assert!(matches!(
            p_th_root(&h, &[0, 0, 1], &b),
            Err(Error::PNilpotentsExist { .. })
        ));
    }

    #[test]
    fn lift_examples() {
        let a = abelian_cols(&[vec![1, 0], vec![0, 0]]);
        let (_, proj) = a.quotient(&a.span(&[vec![1, 0]])).unwrap();
        assert_eq!(lift_p_nilpotent(&proj, &[1, 1]).unwrap(), vec![0, 1]);
        assert_eq!(lift_p_nilpotent(&proj, &[0, 3]).unwrap(), vec![0, 3]);
        let id = PMorphism::identity(&a);
        assert_eq!(lift_p_nilpotent(&id, &[0, 2]).unwrap(), vec![0, 2]);
        assert!(matches!(
            lift_p_nilpotent(&id, &[1, 0]),
            Err(Error::NotPNilpotentImage { .. })
        ));
    }
}
