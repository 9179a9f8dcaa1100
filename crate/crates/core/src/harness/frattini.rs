//! Frattini subalgebras, the socle and splittings.

use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::context::gate;
use super::{subspace_json, CheckDef, Ctx, Outcome, Suite};
use crate::analysis::{
    center, ideal_closure, is_abelian, is_ideal, is_nilpotent, is_p_ideal, is_p_stable, maximal_proper,
    p_closure, split_over, subalgebras, Splitting,
};
use crate::error::{Error, Result};
use crate::linalg::{projective_points, Subspace};

pub(super) static CHECKS: &[CheckDef] = &[
    CheckDef {
        id: "prop-frattini-p-ideal",
        suite: Suite::Frattini,
        hypotheses: "soluble, p > dim",
        run: p_ideal,
    },
    CheckDef {
        id: "cor-frattini-nilpotent",
        suite: Suite::Frattini,
        hypotheses: "soluble, p > dim",
        run: nilpotent,
    },
    CheckDef {
        id: "thm-frattini-inclusion",
        suite: Suite::Frattini,
        hypotheses: "soluble, p > dim",
        run: inclusion,
    },
    CheckDef {
        id: "lemma-socle",
        suite: Suite::Frattini,
        hypotheses: "none",
        run: socle_shape,
    },
    CheckDef {
        id: "lemma-frattini-subalgebra",
        suite: Suite::Frattini,
        hypotheses: "none",
        run: frattini_of_subalgebra,
    },
    CheckDef {
        id: "lemma-frattini-splitting",
        suite: Suite::Frattini,
        hypotheses: "none",
        run: frattini_splitting,
    },
    CheckDef {
        id: "lemma-maximal-abelian-p",
        suite: Suite::Frattini,
        hypotheses: "none",
        run: maximal_abelian,
    },
    CheckDef {
        id: "cor-socle-splitting",
        suite: Suite::Frattini,
        hypotheses: "soluble, p > dim, zero p-Frattini subalgebra",
        run: socle_splitting,
    },
    CheckDef {
        id: "thm-socle-frattini",
        suite: Suite::Frattini,
        hypotheses: "soluble, p > dim",
        run: socle_frattini,
    },
];

/// Caps the number of subalgebras examined by the subalgebra lemma.
const SUBALGEBRA_CAP: usize = 300;

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

fn p_ideal(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    in_regime!(ctx);
    let phi = &ctx.frattini()?.p;
    Ok(if is_p_ideal(ctx.spec, phi) {
        Outcome::Pass
    } else {
        Outcome::fail("p-Frattini subalgebra is not a p-ideal", json!({ "frattini_p": subspace_json(phi) }))
    })
}

fn nilpotent(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    in_regime!(ctx);
    let phi = &ctx.frattini()?.p;
    Ok(if is_nilpotent(ctx.spec, phi)? {
        Outcome::Pass
    } else {
        Outcome::fail("p-Frattini subalgebra is not nilpotent", json!({ "frattini_p": subspace_json(phi) }))
    })
}

fn inclusion(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    in_regime!(ctx);
    let pair = ctx.frattini()?;
    Ok(if pair.p.contains(&pair.plain)? {
        Outcome::Pass
    } else {
        Outcome::fail(
            "Frattini subalgebra is not inside the p-Frattini subalgebra",
            json!({ "frattini": subspace_json(&pair.plain), "frattini_p": subspace_json(&pair.p) }),
        )
    })
}

fn socle_shape(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let spec = ctx.spec;
    let s = ctx.socle()?;
    let mut sum = spec.zero_subspace();
    let mut dims = 0;
    for c in &s.components {
        sum = sum.sum(c)?;
        dims += c.dim();
    }
    let ok = sum == s.total
        && dims == s.total.dim()
        && is_abelian(spec, &s.total)
        && is_ideal(spec, &s.total)
        && is_p_stable(spec, &s.total)
        && s.components.iter().all(|c| is_ideal(spec, c) && is_abelian(spec, c));
    Ok(if ok {
        Outcome::Pass
    } else {
        Outcome::fail(
            "socle is not a direct sum of minimal abelian ideals forming an abelian p-ideal",
            json!({
                "socle": subspace_json(&s.total),
                "components": s.components.iter().map(subspace_json).collect::<Vec<_>>(),
            }),
        )
    })
}

fn intersect_all(ambient: &Subspace, spaces: &[Subspace]) -> Subspace {
    spaces.iter().fold(ambient.clone(), |acc, s| acc.intersect(s).expect("same ambient"))
}

/// Ideals of the whole algebra (p-ideals when `restricted`) contained in
/// `within`, one generated by each line of `within`.
fn ideals_inside(ctx: &Ctx, within: &Subspace, restricted: bool) -> Result<Vec<Subspace>> {
    let spec = ctx.spec;
    let mut out = Vec::new();
    for c in projective_points(spec.field(), within.dim()) {
        let i = ideal_closure(spec, &spec.span(&[within.combine(&c)]));
        let i = if restricted { p_closure(spec, &i)? } else { i };
        if within.contains_unchecked(&i) {
            out.push(i);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn frattini_of_subalgebra(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let spec = ctx.spec;
    let pair = ctx.frattini()?;
    let subs = subalgebras(spec, ctx.budgets.subspaces)?;
    for restricted in [false, true] {
        let pool: Vec<Subspace> = subs
            .iter()
            .filter(|(_, p)| !restricted || *p)
            .map(|(s, _)| s.clone())
            .collect();
        let global = if restricted { &pair.p } else { &pair.plain };
        for h in pool.iter().filter(|h| !h.is_full() && !h.is_zero()).take(SUBALGEBRA_CAP) {
            let inside: Vec<Subspace> = pool.iter().filter(|s| h.contains_unchecked(s)).cloned().collect();
            let local = intersect_all(h, &maximal_proper(&inside, h.dim()).iter().filter(|m| m.dim() < h.dim()).cloned().collect::<Vec<_>>());
            for i in ideals_inside(ctx, &local, restricted)? {
                if !global.contains_unchecked(&i) {
                    return Ok(Outcome::fail(
                        "ideal inside the Frattini subalgebra of a subalgebra escapes the global one",
                        json!({ "restricted": restricted, "subalgebra": subspace_json(h), "ideal": subspace_json(&i) }),
                    ));
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

/// A complement must exist; a sampled search that finds none is reported
/// as over budget rather than as a failure.
fn expect_split(ctx: &Ctx, i: &Subspace, restricted: bool) -> Result<Option<Splitting>> {
    let s = split_over(ctx.spec, i, restricted, ctx.budgets.subspaces, ctx.seed)?;
    match (&s.complement, s.exhaustive) {
        (Some(_), _) => Ok(None),
        (None, true) => Ok(Some(s)),
        (None, false) => Err(split_budget(ctx, i)),
    }
}

fn split_budget(ctx: &Ctx, i: &Subspace) -> Error {
    let entries = ((ctx.dim() - i.dim()) * i.dim()) as u32;
    let required = (ctx.p() as u128).checked_pow(entries).unwrap_or(u128::MAX);
    Error::budget(required, ctx.budgets.subspaces)
}

fn frattini_splitting(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let spec = ctx.spec;
    let pair = ctx.frattini()?;
    let mut cands: Vec<Subspace> = vec![center(spec), ctx.socle()?.total.clone()];
    cands.extend(ctx.socle()?.components.iter().cloned());
    cands.extend(ctx.p_ideals()?.iter().cloned());
    cands.sort();
    cands.dedup();
    for restricted in [false, true] {
        let phi = if restricted { &pair.p } else { &pair.plain };
        for i in cands.iter().filter(|i| !i.is_zero() && is_abelian(spec, i) && is_p_ideal(spec, i)) {
            if !i.intersect(phi)?.is_zero() {
                continue;
            }
            if let Some(s) = expect_split(ctx, i, restricted)? {
                return Ok(Outcome::fail(
                    "no complement to an abelian ideal meeting the Frattini subalgebra trivially",
                    json!({ "restricted": restricted, "ideal": subspace_json(i), "candidates": s.candidates_checked.to_string() }),
                ));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn maximal_abelian(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let spec = ctx.spec;
    for m in &ctx.frattini()?.maximal {
        if is_abelian(spec, m) && !is_ideal(spec, m) && !is_p_stable(spec, m) {
            return Ok(Outcome::fail(
                "maximal abelian non-ideal subalgebra is not p-stable",
                json!({ "subalgebra": subspace_json(m) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn socle_splitting(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    in_regime!(ctx);
    gate!(ctx.frattini()?.p.is_zero(), "p-Frattini subalgebra is nonzero");
    let s = &ctx.socle()?.total;
    if let Some(r) = expect_split(ctx, s, true)? {
        return Ok(Outcome::fail(
            "algebra does not split over its socle",
            json!({ "socle": subspace_json(s), "candidates": r.candidates_checked.to_string() }),
        ));
    }
    Ok(Outcome::Pass)
}

fn socle_frattini(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    in_regime!(ctx);
    let s = &ctx.socle()?.total;
    let phi_zero = ctx.frattini()?.plain.is_zero();
    let split = split_over(ctx.spec, s, false, ctx.budgets.subspaces, ctx.seed)?;
    let splits = match (&split.complement, split.exhaustive) {
        (Some(_), _) => true,
        (None, true) => false,
        (None, false) => return Err(split_budget(ctx, s)),
    };
    Ok(if phi_zero == splits {
        Outcome::Pass
    } else {
        Outcome::fail(
            "vanishing Frattini subalgebra and splitting over the socle disagree",
            json!({ "frattini_zero": phi_zero, "splits": splits, "socle": subspace_json(s) }),
        )
    })
}
