//! Tori and Cartan subalgebras in soluble algebras with `p > dim`.

use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::context::gate;
use super::structure::sample;
use super::{subspace_json, CheckDef, Ctx, Outcome, Suite};
use crate::analysis::{
    bracket_spaces, centralizer, is_nilpotent, is_p_subalgebra, is_soluble, normalizer, p_closure_of,
    subalgebras,
};
use crate::error::Result;
use crate::linalg::Subspace;
use crate::tori::{engel_of, is_torus, maximal_tori, nilpotent_decomposition};

pub(super) static CHECKS: &[CheckDef] = &[
    CheckDef {
        id: "thm-cartan-tori",
        suite: Suite::Soluble,
        hypotheses: "soluble, not nilpotent, p > dim",
        run: cartan_tori,
    },
    CheckDef {
        id: "thm-cartan-derived-sum",
        suite: Suite::Soluble,
        hypotheses: "soluble, not nilpotent, p > dim",
        run: derived_sum,
    },
    CheckDef {
        id: "cor-torus-rank-constant",
        suite: Suite::Soluble,
        hypotheses: "soluble, p > dim",
        run: rank_constant,
    },
    CheckDef {
        id: "prop-torus-quotient",
        suite: Suite::Soluble,
        hypotheses: "soluble, p > dim",
        run: torus_quotient,
    },
    CheckDef {
        id: "prop-nilpotency-criterion",
        suite: Suite::Soluble,
        hypotheses: "soluble, p > dim, no nonzero torus",
        run: nilpotency_criterion,
    },
    CheckDef {
        id: "lemma-engel-centralizer",
        suite: Suite::Soluble,
        hypotheses: "soluble, p > dim",
        run: engel_centralizer,
    },
    CheckDef {
        id: "lemma-generalized-centralizer",
        suite: Suite::Soluble,
        hypotheses: "soluble, p > dim",
        run: generalized_centralizer,
    },
    CheckDef {
        id: "prop-nilpotent-centralizer",
        suite: Suite::Soluble,
        hypotheses: "soluble, p >= dim",
        run: nilpotent_centralizer,
    },
    CheckDef {
        id: "lemma-maximality",
        suite: Suite::Soluble,
        hypotheses: "soluble",
        run: maximality,
    },
];

fn regime(ctx: &Ctx) -> Result<Option<Outcome>> {
    if !ctx.soluble()? {
        return Ok(Some(Outcome::skip("algebra is not soluble")));
    }
    if !ctx.p_exceeds_dim() {
        return Ok(Some(Outcome::skip("p does not exceed dim")));
    }
    Ok(None)
}

macro_rules! in_regime {
    ($ctx:expr) => {
        if let Some(o) = regime($ctx)? {
            return Ok(o);
        }
    };
}

fn cartan_tori(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    in_regime!(ctx);
    gate!(!ctx.nilpotent()?, "algebra is nilpotent");
    let spec = ctx.spec;
    // Oracle: self-normalizing nilpotent subalgebras, by enumeration.
    let mut oracle = BTreeSet::new();
    for (s, _) in subalgebras(spec, ctx.budgets.subspaces)? {
        if normalizer(spec, &s) == s && is_nilpotent(spec, &s)? {
            oracle.insert(s);
        }
    }
    let from_tori: BTreeSet<Subspace> = ctx
        .maximal_tori()?
        .iter()
        .filter(|t| !t.is_zero())
        .map(|t| centralizer(spec, t))
        .collect();
    let report = ctx.cartan()?;
    let found: BTreeSet<Subspace> = report.cartans.iter().map(|c| c.subspace.clone()).collect();
    if oracle != from_tori || found != oracle {
        return Ok(Outcome::fail(
            "Cartan subalgebras differ from centralizers of maximal tori",
            json!({
                "enumerated": oracle.iter().map(subspace_json).collect::<Vec<_>>(),
                "centralizers": from_tori.iter().map(subspace_json).collect::<Vec<_>>(),
                "engine": found.iter().map(subspace_json).collect::<Vec<_>>(),
            }),
        ));
    }
    if let Some(c) = report.cartans.iter().find(|c| !(c.engel_route && c.torus_route)) {
        return Ok(Outcome::fail(
            "Cartan subalgebra found by only one route",
            json!({ "cartan": subspace_json(&c.subspace) }),
        ));
    }
    Ok(Outcome::Pass)
}

fn derived_sum(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    in_regime!(ctx);
    gate!(!ctx.nilpotent()?, "algebra is nilpotent");
    let spec = ctx.spec;
    let derived = bracket_spaces(spec, &spec.full(), &spec.full());
    for c in &ctx.cartan()?.cartans {
        if !derived.sum(&c.subspace)?.is_full() {
            return Ok(Outcome::fail(
                "derived algebra plus Cartan subalgebra is proper",
                json!({ "cartan": subspace_json(&c.subspace), "derived": subspace_json(&derived) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn rank_constant(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    in_regime!(ctx);
    let dims: BTreeSet<usize> = ctx.maximal_tori()?.iter().map(|t| t.dim()).collect();
    Ok(if dims.len() <= 1 {
        Outcome::Pass
    } else {
        Outcome::fail("maximal tori of different dimensions", json!({ "dims": dims }))
    })
}

fn torus_quotient(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    in_regime!(ctx);
    let spec = ctx.spec;
    let tori = ctx.maximal_tori()?;
    for i in ctx.p_ideals()? {
        let (q, pi) = spec.quotient(i)?;
        let images: BTreeSet<Subspace> = tori.iter().map(|t| pi.image_of(t)).collect();
        let search = maximal_tori(&q, true, &ctx.budgets, ctx.seed)?;
        let expected: BTreeSet<Subspace> = search.tori.into_iter().collect();
        if images != expected {
            return Ok(Outcome::fail(
                "images of maximal tori differ from maximal tori of the quotient",
                json!({
                    "ideal": subspace_json(i),
                    "images": images.iter().map(subspace_json).collect::<Vec<_>>(),
                    "quotient_tori": expected.iter().map(subspace_json).collect::<Vec<_>>(),
                }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn nilpotency_criterion(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    in_regime!(ctx);
    gate!(ctx.tori()?.iter().all(|t| t.is_zero()), "a nonzero torus exists");
    Ok(if ctx.nilpotent()? {
        Outcome::Pass
    } else {
        Outcome::fail("torus-free algebra is not nilpotent", json!(null))
    })
}

fn engel_centralizer(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    in_regime!(ctx);
    let spec = ctx.spec;
    for t in ctx.tori()? {
        let e = engel_of(spec, t, &ctx.budgets)?;
        let c = centralizer(spec, t);
        if e != c {
            return Ok(Outcome::fail(
                "Engel subalgebra of a torus differs from its centralizer",
                json!({ "torus": subspace_json(t), "engel": subspace_json(&e), "centralizer": subspace_json(&c) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn generalized_centralizer(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    in_regime!(ctx);
    let spec = ctx.spec;
    let mut hs: Vec<Subspace> = sample(ctx, rng, 8).iter().map(|x| p_closure_of(spec, x)).collect();
    if !ctx.nilpotent()? {
        hs.extend(ctx.cartan()?.cartans.iter().map(|c| c.subspace.clone()));
    }
    for h in hs {
        if !is_p_subalgebra(spec, &h) || !is_nilpotent(spec, &h)? {
            continue;
        }
        let t = nilpotent_decomposition(spec, &h, &ctx.budgets)?.torus;
        if t.is_zero() {
            continue;
        }
        let (eh, et) = (engel_of(spec, &h, &ctx.budgets)?, engel_of(spec, &t, &ctx.budgets)?);
        if eh != et {
            return Ok(Outcome::fail(
                "Engel subalgebras of h and of its maximal torus differ",
                json!({ "h": subspace_json(&h), "torus": subspace_json(&t) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn nilpotent_centralizer(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    gate!(ctx.soluble()?, "algebra is not soluble");
    gate!(ctx.p() as usize >= ctx.dim(), "dim exceeds p");
    let spec = ctx.spec;
    for t in ctx.maximal_tori()? {
        let c = centralizer(spec, &t);
        if c.is_full() || !is_soluble(spec, &c)? {
            continue;
        }
        if !is_p_subalgebra(spec, &c) || !is_nilpotent(spec, &c)? || normalizer(spec, &c) != c {
            return Ok(Outcome::fail(
                "centralizer of a maximal torus is not a self-normalizing nilpotent p-subalgebra",
                json!({ "torus": subspace_json(&t), "centralizer": subspace_json(&c) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn maximality(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    // An extension of a torus by a torus is abelian, so nothing is lost.
    gate!(ctx.soluble()?, "algebra is not soluble");
    let spec = ctx.spec;
    if is_torus(spec, &spec.full()) {
        return Ok(Outcome::Pass);
    }
    for i in ctx.p_ideals()? {
        if !is_torus(spec, i) {
            continue;
        }
        let (q, _) = spec.quotient(i)?;
        if is_torus(&q, &q.full()) {
            return Ok(Outcome::fail(
                "ideal and quotient are tori but the algebra is not",
                json!({ "ideal": subspace_json(i) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}
