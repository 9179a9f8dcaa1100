//! The Witt algebra and `sl_2`: basis facts and the minimal-simple property.

use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::context::gate;
use super::{same_tables, subspace_json, CheckDef, Ctx, Outcome, Suite};
use crate::analysis::{is_p_subalgebra, is_soluble, normalizer, p_closure_of, subalgebras};
use crate::constructions::{sl2, witt};
use crate::error::Result;
use crate::simplicity::{find_isomorphism, is_minimal_simple, is_simple, MinimalMode, Verdict};

pub(super) static CHECKS: &[CheckDef] = &[
    CheckDef {
        id: "fact-witt-semisimple",
        suite: Suite::Simple,
        hypotheses: "Witt algebra",
        run: witt_semisimple,
    },
    CheckDef {
        id: "fact-sl2-embedding",
        suite: Suite::Simple,
        hypotheses: "Witt algebra",
        run: sl2_embedding,
    },
    CheckDef {
        id: "def-minimal-simple",
        suite: Suite::Simple,
        hypotheses: "Witt algebra or sl2",
        run: minimal_simple,
    },
];

fn is_witt(ctx: &Ctx) -> bool {
    witt(ctx.p()).is_ok_and(|w| same_tables(&w, ctx.spec))
}

fn is_sl2(ctx: &Ctx) -> bool {
    sl2(ctx.p()).is_ok_and(|s| same_tables(&s, ctx.spec))
}

fn witt_semisimple(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    gate!(is_witt(ctx), "not the Witt algebra");
    let spec = ctx.spec;
    let semisimple: Vec<&str> = (0..ctx.dim())
        .filter(|&i| {
            let x = spec.basis_vector(i);
            p_closure_of(spec, spec.basis_pmap(i)).contains_vector(&x)
        })
        .map(|i| spec.basis_names()[i].as_str())
        .collect();
    if semisimple != ["e_0"] {
        return Ok(Outcome::fail("semisimple basis elements are not exactly e_0", json!({ "semisimple": semisimple })));
    }
    // e_1, ..., e_{p-2} have zero p-th power; e_{-1} is the index-0 vector.
    if let Some(i) = (2..ctx.dim()).find(|&i| spec.basis_pmap(i).iter().any(|&c| c != 0)) {
        return Ok(Outcome::fail("positive-degree basis element has nonzero p-th power", json!({ "basis": i })));
    }
    Ok(if is_simple(spec, &ctx.budgets)? {
        Outcome::Pass
    } else {
        Outcome::fail("Witt algebra is not simple", json!(null))
    })
}

fn sl2_embedding(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    gate!(is_witt(ctx), "not the Witt algebra");
    let spec = ctx.spec;
    let span = spec.span_of_names(&["e_-1", "e_0", "e_1"])?;
    if !is_p_subalgebra(spec, &span) {
        return Ok(Outcome::fail("e_-1, e_0, e_1 do not span a p-subalgebra", json!({ "span": subspace_json(&span) })));
    }
    let copy = spec.restrict(&span)?;
    Ok(match find_isomorphism(&sl2(ctx.p())?, &copy, ctx.budgets.elements)? {
        Some(_) => Outcome::Pass,
        None => Outcome::fail("span of e_-1, e_0, e_1 is not isomorphic to sl2", json!(null)),
    })
}

fn minimal_simple(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    gate!(is_witt(ctx) || is_sl2(ctx), "neither the Witt algebra nor sl2");
    let spec = ctx.spec;
    let v = is_minimal_simple(spec, MinimalMode::Exhaustive, &ctx.budgets, false)?;
    // Oracle: every nonzero soluble p-subalgebra from the subalgebra list.
    let mut witness = None;
    for (b, p) in subalgebras(spec, ctx.budgets.subspaces)? {
        if p && !b.is_zero() && is_soluble(spec, &b)? && !is_soluble(spec, &normalizer(spec, &b))? {
            witness = Some(b);
            break;
        }
    }
    Ok(match (v.verdict, witness) {
        (Verdict::True, None) => Outcome::Pass,
        (_, w) => Outcome::fail(
            "not minimal simple",
            json!({ "verdict": v, "oracle_witness": w.as_ref().map(subspace_json) }),
        ),
    })
}
