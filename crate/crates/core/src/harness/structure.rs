//! Restricted axioms, the general p-closure facts, and nilpotent structure.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::context::gate;
use super::{subspace_json, CheckDef, Ctx, Outcome, Suite};
use crate::algebra::verify_restricted;
use crate::analysis::{
    center, centralizer, fitting, ideal_closure, is_abelian, is_ideal, is_p_stable, minimal_ideals,
    nilpotency_class, normalizer, p_closure, series, subalgebra_closure, SeriesKind,
};
use crate::error::Result;
use crate::linalg::Subspace;
use crate::tori::{is_torus, nilpotent_decomposition};

pub(super) static CHECKS: &[CheckDef] = &[
    CheckDef {
        id: "def-restricted-axioms",
        suite: Suite::Nilpotent,
        hypotheses: "none",
        run: restricted_axioms,
    },
    CheckDef {
        id: "fact-p-closure-class",
        suite: Suite::Nilpotent,
        hypotheses: "none",
        run: p_closure_class,
    },
    CheckDef {
        id: "fact-p-subalgebras",
        suite: Suite::Nilpotent,
        hypotheses: "none",
        run: p_subalgebras,
    },
    CheckDef {
        id: "fact-abelian-ideal-powers",
        suite: Suite::Nilpotent,
        hypotheses: "none",
        run: abelian_ideal_powers,
    },
    CheckDef {
        id: "fact-minimal-ideal-p",
        suite: Suite::Nilpotent,
        hypotheses: "soluble",
        run: minimal_ideals_p,
    },
    CheckDef {
        id: "prop-central-tori",
        suite: Suite::Nilpotent,
        hypotheses: "nilpotent",
        run: central_tori,
    },
    CheckDef {
        id: "prop-nilpotent-structure",
        suite: Suite::Nilpotent,
        hypotheses: "nilpotent of class at most p",
        run: nilpotent_structure,
    },
    CheckDef {
        id: "lemma-fitting-torus",
        suite: Suite::Nilpotent,
        hypotheses: "Fitting subalgebra of class at most p - 1",
        run: fitting_torus,
    },
];

/// Random elements, each nonzero.
pub(super) fn sample(ctx: &Ctx, rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|_| loop {
            let x = ctx.spec.random_element(rng);
            if x.iter().any(|&c| c != 0) || ctx.dim() == 0 {
                break x;
            }
        })
        .collect()
}

fn restricted_axioms(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let r = verify_restricted(ctx.spec, ctx.budgets.elements);
    Ok(if r.passed {
        Outcome::Pass
    } else {
        Outcome::fail("restricted axioms fail", serde_json::to_value(&r.findings).expect("json"))
    })
}

/// Subalgebras to test the closure facts on: small generated subalgebras,
/// principal ideals and the derived algebra.
fn test_subalgebras(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Vec<Subspace> {
    let spec = ctx.spec;
    let mut out = vec![series_term(ctx, 1)];
    for x in sample(ctx, rng, 6) {
        out.push(subalgebra_closure(spec, &spec.span(std::slice::from_ref(&x))));
        out.push(ideal_closure(spec, &spec.span(&[x])));
    }
    for pair in sample(ctx, rng, 6).chunks(2) {
        out.push(subalgebra_closure(spec, &spec.span(pair)));
    }
    out.sort();
    out.dedup();
    out
}

fn series_term(ctx: &Ctx, k: usize) -> Subspace {
    let s = series(ctx.spec, &ctx.spec.full(), SeriesKind::Derived).expect("full algebra");
    s.terms.get(k).cloned().unwrap_or_else(|| s.last().clone())
}

/// The span of `x^{p^i}` over all elements `x` of `h` and all `i`.
fn p_power_span(ctx: &Ctx, h: &Subspace) -> Subspace {
    let spec = ctx.spec;
    let mut acc = h.clone();
    let mut frontier: Vec<Vec<u32>> = h.elements().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in frontier {
            let y = spec.p_power(&x);
            next.push(y);
        }
        let grown = acc.sum(&spec.span(&next)).expect("same ambient");
        frontier = if grown == acc { Vec::new() } else { next };
        acc = grown;
    }
    acc
}

fn p_closure_class(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let spec = ctx.spec;
    for h in test_subalgebras(ctx, rng) {
        let hp = p_closure(spec, &h)?;
        if h.element_count() <= ctx.budgets.elements && p_power_span(ctx, &h) != hp {
            return Ok(Outcome::fail(
                "p-closure differs from the span of iterated p-powers",
                json!({ "subalgebra": subspace_json(&h) }),
            ));
        }
        for kind in [SeriesKind::Derived, SeriesKind::LowerCentral] {
            let a = series(spec, &h, kind)?;
            let b = series(spec, &hp, kind)?;
            if a.terms.get(1..) != b.terms.get(1..) {
                return Ok(Outcome::fail(
                    format!("{kind:?} series of the p-closure differs beyond the first term"),
                    json!({ "subalgebra": subspace_json(&h) }),
                ));
            }
        }
        if is_ideal(spec, &h) && !is_ideal(spec, &hp) {
            return Ok(Outcome::fail(
                "p-closure of an ideal is not an ideal",
                json!({ "ideal": subspace_json(&h) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn p_subalgebras(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let spec = ctx.spec;
    let mut named: Vec<(String, Subspace)> = Vec::new();
    for (k, x) in sample(ctx, rng, 4).into_iter().enumerate() {
        named.push((format!("centralizer of sample {k}"), centralizer(spec, &spec.span(&[x]))));
    }
    for (k, pair) in sample(ctx, rng, 8).chunks(2).enumerate() {
        let a = spec.span(pair);
        named.push((format!("centralizer of subspace {k}"), centralizer(spec, &a)));
        named.push((format!("normalizer of subspace {k}"), normalizer(spec, &a)));
    }
    let upper = series(spec, &spec.full(), SeriesKind::UpperCentral)?;
    for (k, z) in upper.terms.iter().enumerate() {
        named.push((format!("upper central term {k}"), z.clone()));
    }
    if ctx.elements_within_budget() {
        named.push(("Fitting subalgebra".into(), fitting(spec, &ctx.budgets)?));
    }
    for (what, s) in named {
        if !is_p_stable(spec, &s) {
            return Ok(Outcome::fail(
                format!("{what} is not a p-subalgebra"),
                json!({ "subspace": subspace_json(&s) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn abelian_ideal_powers(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let spec = ctx.spec;
    let z = center(spec);
    let mut ideals = vec![z.clone()];
    if ctx.elements_within_budget() {
        ideals.extend(ctx.p_ideals()?.iter().cloned());
    }
    for x in sample(ctx, rng, 8) {
        ideals.push(ideal_closure(spec, &spec.span(&[x])));
    }
    for i in ideals.iter().filter(|i| is_abelian(spec, i)) {
        for x in i.basis().iter().cloned().chain((0..8).map(|_| i.combine(&spec.random_element(rng)[..i.dim()]))) {
            let y = spec.p_power(&x);
            if !z.contains_vector(&y) {
                return Ok(Outcome::fail(
                    "p-power of an element of an abelian ideal is not central",
                    json!({ "ideal": subspace_json(i), "element": x }),
                ));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn minimal_ideals_p(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    gate!(ctx.soluble()?, "algebra is not soluble");
    let spec = ctx.spec;
    for m in minimal_ideals(spec, &ctx.budgets)? {
        if !is_abelian(spec, &m) || !is_p_stable(spec, &m) {
            return Ok(Outcome::fail(
                "minimal ideal of a soluble algebra is not an abelian p-ideal",
                json!({ "ideal": subspace_json(&m), "p_power": spec.p_power(&m.basis()[0]) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn central_tori(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    gate!(ctx.nilpotent()?, "algebra is not nilpotent");
    let z = center(ctx.spec);
    for t in ctx.maximal_tori()? {
        if !z.contains_unchecked(&t) {
            return Ok(Outcome::fail("torus is not central", json!({ "torus": subspace_json(&t) })));
        }
    }
    Ok(Outcome::Pass)
}

fn nilpotent_structure(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    gate!(ctx.nilpotent()?, "algebra is not nilpotent");
    let class = nilpotency_class(ctx.spec, &ctx.spec.full())?.unwrap_or(0);
    gate!(class <= ctx.p() as usize, "nilpotency class exceeds p");
    let spec = ctx.spec;
    let split = nilpotent_decomposition(spec, &spec.full(), &ctx.budgets)?;
    let (t, u) = (&split.torus, &split.unipotent);
    if !t.intersect(u)?.is_zero() || t.dim() + u.dim() != ctx.dim() {
        return Ok(Outcome::fail(
            "torus and p-nilpotent part do not form a direct sum",
            json!({ "torus": subspace_json(t), "unipotent": subspace_json(u) }),
        ));
    }
    if !is_torus(spec, t) || !center(spec).contains_unchecked(t) {
        return Ok(Outcome::fail("torus part is not a central torus", json!({ "torus": subspace_json(t) })));
    }
    if !is_p_stable(spec, u) {
        return Ok(Outcome::fail("p-nilpotent part is not p-stable", json!({ "unipotent": subspace_json(u) })));
    }
    let elems: Vec<Vec<u32>> = if u.element_count() <= ctx.budgets.elements {
        u.elements().collect()
    } else {
        (0..200).map(|_| u.combine(&(0..u.dim()).map(|_| rng.gen_range(0..ctx.p())).collect::<Vec<_>>())).collect()
    };
    if let Some(x) = elems.into_iter().find(|x| spec.p_power_iter(x, ctx.dim()).iter().any(|&c| c != 0)) {
        return Ok(Outcome::fail("element of the p-nilpotent part is not p-nilpotent", json!({ "element": x })));
    }
    Ok(Outcome::Pass)
}

fn fitting_torus(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let spec = ctx.spec;
    let f = fitting(spec, &ctx.budgets)?;
    let class = nilpotency_class(spec, &f)?.unwrap_or(usize::MAX);
    gate!(class < ctx.p() as usize, "Fitting subalgebra has class at least p");
    let z = center(spec);
    for t in ctx.tori()?.iter().filter(|t| f.contains_unchecked(t)) {
        if !z.contains_unchecked(t) {
            return Ok(Outcome::fail(
                "torus inside the Fitting subalgebra is not central",
                json!({ "torus": subspace_json(t), "fitting": subspace_json(&f) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}
