//! Checks on abelian restricted algebras: toral splitting, purity, roots,
//! lifting and Jordan parts.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::context::gate;
use super::structure::sample;
use super::{subspace_json, CheckDef, Ctx, Outcome, Suite};
use crate::algebra::AlgebraSpec;
use crate::analysis::{is_p_stable, p_closure, p_closure_of};
use crate::error::Result;
use crate::linalg::{enumerate_subspaces, subspace_count, Matrix, Subspace};
use crate::pmodules::min_poly;
use crate::tori::{
    classify_element, is_pure, is_torus, lift_p_nilpotent, p_map_matrix, p_th_root, pure_complement,
    toral_decomposition, ElementClass,
};
use crate::PMorphism;

pub(super) static CHECKS: &[CheckDef] = &[
    CheckDef {
        id: "cor-toral-decomposition",
        suite: Suite::Abelian,
        hypotheses: "abelian",
        run: toral,
    },
    CheckDef {
        id: "def-torus",
        suite: Suite::Abelian,
        hypotheses: "abelian",
        run: torus_part,
    },
    CheckDef {
        id: "lemma-purity-decomposition",
        suite: Suite::Abelian,
        hypotheses: "abelian",
        run: purity_decomposition,
    },
    CheckDef {
        id: "prop-purity-complement",
        suite: Suite::Abelian,
        hypotheses: "abelian",
        run: purity_complement,
    },
    CheckDef {
        id: "cor-unique-root",
        suite: Suite::Abelian,
        hypotheses: "abelian, no nonzero p-nilpotent element",
        run: unique_root,
    },
    CheckDef {
        id: "cor-lift-p-nilpotent",
        suite: Suite::Abelian,
        hypotheses: "abelian",
        run: lift,
    },
    CheckDef {
        id: "def-semisimple-elements",
        suite: Suite::Abelian,
        hypotheses: "none",
        run: jordan_parts,
    },
    CheckDef {
        id: "lemma-cyclic-generator",
        suite: Suite::Abelian,
        hypotheses: "torus on which the p-map has minimal polynomial of degree dim",
        run: cyclic_generator,
    },
];

const COMPLEMENT_CAP: u128 = 5000;

fn nonzero(v: &[u32]) -> bool {
    v.iter().any(|&c| c != 0)
}

fn p_nilpotent(spec: &AlgebraSpec, x: &[u32]) -> bool {
    !nonzero(&spec.p_power_iter(x, spec.dim()))
}

/// The p-map of the whole (abelian) algebra as a matrix in the standard basis.
fn phi(ctx: &Ctx) -> Result<Matrix> {
    p_map_matrix(ctx.spec, &ctx.spec.full())
}

fn toral(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    gate!(ctx.spec.is_abelian(), "algebra is not abelian");
    let spec = ctx.spec;
    let m = phi(ctx)?;
    let md = m.pow(ctx.dim() as u64);
    let (ker, im) = md.kernel_image();
    let split = toral_decomposition(spec, &spec.full())?;
    if split.torus != im || split.unipotent != ker {
        return Ok(Outcome::fail(
            "splitting differs from image and kernel of the dim-th power",
            json!({ "torus": subspace_json(&split.torus), "unipotent": subspace_json(&split.unipotent) }),
        ));
    }
    if !im.intersect(&ker)?.is_zero() || im.dim() + ker.dim() != ctx.dim() {
        return Ok(Outcome::fail("image and kernel do not split the algebra", json!(null)));
    }
    if im.map(&m) != im {
        return Ok(Outcome::fail("p-map is not bijective on the torus part", json!({ "torus": subspace_json(&im) })));
    }
    if !is_pure(spec, &spec.full(), &im)? {
        return Ok(Outcome::fail("torus part is not pure", json!({ "torus": subspace_json(&im) })));
    }
    Ok(Outcome::Pass)
}

fn torus_part(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    gate!(ctx.spec.is_abelian(), "algebra is not abelian");
    let spec = ctx.spec;
    let t = toral_decomposition(spec, &spec.full())?.torus;
    if !is_torus(spec, &t) {
        return Ok(Outcome::fail("torus part is not a torus", json!({ "torus": subspace_json(&t) })));
    }
    let elems: Vec<Vec<u32>> = if t.element_count() <= ctx.budgets.elements {
        t.elements().collect()
    } else {
        (0..200).map(|_| t.combine(&random_coords(rng, ctx.p(), t.dim()))).collect()
    };
    for x in elems {
        if !p_closure_of(spec, &spec.p_power(&x)).contains_vector(&x) {
            return Ok(Outcome::fail("element of the torus is not semisimple", json!({ "element": x })));
        }
    }
    Ok(Outcome::Pass)
}

fn random_coords(rng: &mut ChaCha8Rng, p: u32, k: usize) -> Vec<u32> {
    (0..k).map(|_| rng.gen_range(0..p)).collect()
}

/// `b0 ∈ b` with `φ^n(b0) = φ^n(x)`, if any.
fn matching_in(m: &Matrix, b: &Subspace, x: &[u32], n: usize) -> Option<Vec<u32>> {
    if b.is_zero() {
        return (!nonzero(&m.pow(n as u64).mul_vec(x))).then(|| vec![0; x.len()]);
    }
    let mn = m.pow(n as u64);
    let cols: Vec<Vec<u32>> = b.basis().iter().map(|v| mn.mul_vec(v)).collect();
    let c = Matrix::from_columns(m.field(), x.len(), &cols).solve(&mn.mul_vec(x))?;
    Some(b.combine(&c))
}

fn purity_decomposition(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    gate!(ctx.spec.is_abelian(), "algebra is not abelian");
    let spec = ctx.spec;
    let full = spec.full();
    let m = phi(ctx)?;
    let split = toral_decomposition(spec, &full)?;
    let mut bs = vec![spec.zero_subspace(), split.torus.clone(), split.unipotent.clone()];
    for x in sample(ctx, rng, 3) {
        bs.push(p_closure_of(spec, &x));
    }
    let f = spec.field();
    for b in bs.iter().filter(|b| is_pure(spec, &full, b).unwrap_or(false)) {
        for x in sample(ctx, rng, 6) {
            let Some(n) = (0..=ctx.dim()).find(|&n| b.contains_vector(&m.pow(n as u64).mul_vec(&x))) else {
                continue;
            };
            let Some(b0) = matching_in(&m, b, &x, n) else {
                return Ok(Outcome::fail(
                    "p^n-th power of x is not a p^n-th power from b",
                    json!({ "b": subspace_json(b), "x": x, "n": n }),
                ));
            };
            let y = f.sub_vec(&x, &b0);
            let mut gens: Vec<Vec<u32>> = b.basis().to_vec();
            let mut z = y.clone();
            for _ in 0..n {
                gens.push(z.clone());
                z = m.mul_vec(&z);
            }
            let lhs = spec.span(&gens);
            let rhs = p_closure(spec, &b.sum(&spec.span(std::slice::from_ref(&x)))?)?;
            if nonzero(&z) || lhs != rhs || lhs.dim() != b.dim() + n {
                return Ok(Outcome::fail(
                    "p-closure of b + x is not b plus a cyclic p-nilpotent part",
                    json!({ "b": subspace_json(b), "x": x, "n": n, "y": y }),
                ));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn purity_complement(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    gate!(ctx.spec.is_abelian(), "algebra is not abelian");
    let spec = ctx.spec;
    let full = spec.full();
    let m = phi(ctx)?;
    let split = toral_decomposition(spec, &full)?;
    let u = &split.unipotent;
    let lift_from_u = |s: &Subspace| -> Subspace {
        let vs: Vec<Vec<u32>> = s.basis().iter().map(|c| u.combine(c)).collect();
        split.torus.sum(&spec.span(&vs)).expect("same ambient")
    };
    let cands: Vec<Subspace> = if subspace_count(u.dim(), ctx.p(), None) <= COMPLEMENT_CAP {
        enumerate_subspaces(spec.field(), u.dim(), None, COMPLEMENT_CAP)?
            .map(|s| lift_from_u(&s))
            .collect()
    } else {
        (0..40)
            .map(|_| {
                let k = rng.gen_range(0..=u.dim());
                let vs: Vec<Vec<u32>> = (0..k).map(|_| random_coords(rng, ctx.p(), u.dim())).collect();
                lift_from_u(&Subspace::span(spec.field(), u.dim(), &vs))
            })
            .collect()
    };
    for b in cands.iter().filter(|b| is_p_stable(spec, b)) {
        if !is_pure(spec, &full, b)? {
            continue;
        }
        let c = pure_complement(spec, &full, b)?;
        let nilpotent = c.basis().iter().all(|v| !nonzero(&m.pow(ctx.dim() as u64).mul_vec(v)));
        if !b.intersect(&c)?.is_zero() || b.dim() + c.dim() != ctx.dim() || !is_p_stable(spec, &c) || !nilpotent {
            return Ok(Outcome::fail(
                "complement is not a p-nilpotent p-subalgebra complementing b",
                json!({ "b": subspace_json(b), "complement": subspace_json(&c) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn unique_root(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    gate!(ctx.spec.is_abelian(), "algebra is not abelian");
    let spec = ctx.spec;
    ctx.budgets.check_elements(ctx.p(), ctx.dim())?;
    let all: Vec<Vec<u32>> = spec.full().elements().collect();
    gate!(
        !all.iter().any(|x| nonzero(x) && p_nilpotent(spec, x)),
        "nonzero p-nilpotent elements exist"
    );
    let powers: Vec<Vec<u32>> = all.iter().map(|y| spec.p_power(y)).collect();
    let mut images = powers.clone();
    images.sort();
    images.dedup();
    if images.len() != all.len() {
        return Ok(Outcome::fail("p-map is not injective", json!(null)));
    }
    for x in sample(ctx, rng, 8) {
        let r = p_th_root(spec, &x, &ctx.budgets)?;
        let roots: Vec<&Vec<u32>> = all.iter().zip(&powers).filter(|(_, y)| **y == x).map(|(r, _)| r).collect();
        if roots != [&r.root] {
            return Ok(Outcome::fail(
                "p-th root is not the unique solution",
                json!({ "x": x, "root": r.root, "solutions": roots }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn lift(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    gate!(ctx.spec.is_abelian(), "algebra is not abelian");
    let spec = ctx.spec;
    let mut kernels = vec![toral_decomposition(spec, &spec.full())?.torus];
    for x in sample(ctx, rng, 2) {
        kernels.push(p_closure_of(spec, &x));
    }
    for i in kernels.iter().filter(|i| !i.is_full()) {
        let (_, pi): (AlgebraSpec, PMorphism) = spec.quotient(i)?;
        for x in sample(ctx, rng, 8) {
            let fx = pi.apply(&x);
            if !p_nilpotent(pi.target(), &fx) {
                continue;
            }
            let x1 = lift_p_nilpotent(&pi, &x)?;
            if pi.apply(&x1) != fx || !p_nilpotent(spec, &x1) {
                return Ok(Outcome::fail(
                    "lift is not a p-nilpotent preimage",
                    json!({ "kernel": subspace_json(i), "x": x, "lift": x1 }),
                ));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn jordan_parts(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let spec = ctx.spec;
    let f = spec.field();
    for x in sample(ctx, rng, 12) {
        let c = classify_element(spec, &x)?;
        let (s, n) = (&c.pair.semisimple_part, &c.pair.nilpotent_part);
        let semisimple = p_closure_of(spec, &spec.p_power(s)).contains_vector(s);
        let ok = f.add_vec(s, n) == x
            && semisimple
            && p_nilpotent(spec, n)
            && !nonzero(&spec.bracket(s, n))
            && (c.class == ElementClass::Semisimple) == (!nonzero(n) && nonzero(s));
        if !ok {
            return Ok(Outcome::fail("Jordan parts are wrong", json!({ "x": x, "classification": c })));
        }
    }
    Ok(Outcome::Pass)
}

fn cyclic_generator(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let spec = ctx.spec;
    let full = spec.full();
    gate!(is_torus(spec, &full), "algebra is not a torus");
    let degree = min_poly(&phi(ctx)?).len().saturating_sub(1);
    gate!(degree == ctx.dim(), "minimal polynomial of the p-map has degree below dim");
    for _ in 0..6 {
        let k = rng.gen_range(1..=ctx.dim().max(1));
        let s = spec.span(&sample(ctx, rng, k));
        let h = p_closure(spec, &s)?;
        ctx.budgets.check_elements(ctx.p(), h.dim())?;
        let g = s
            .basis()
            .iter()
            .cloned()
            .chain(h.elements())
            .find(|g| p_closure_of(spec, g) == h);
        if g.is_none() {
            return Ok(Outcome::fail(
                "generated p-subalgebra has no single generator",
                json!({ "subalgebra": subspace_json(&h) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}
