//! Restricted modules under tori: Maschke, weight spaces, `V = V^n + [n, V]`.

use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::structure::sample;
use super::{same_tables, subspace_json, CheckDef, Ctx, Outcome, Suite};
use crate::analysis::{centralizer, normalizer};
use crate::constructions::{gln, sl2};
use crate::error::Result;
use crate::linalg::{enumerate_subspaces, Matrix, Subspace};
use crate::pmodules::{
    action_submodule, adjoint_module, fixed_points, natural_gln, natural_sl2, verify_vnv,
    weight_decomposition, PModule,
};

pub(super) static CHECKS: &[CheckDef] = &[
    CheckDef {
        id: "def-p-module",
        suite: Suite::Module,
        hypotheses: "none",
        run: p_module,
    },
    CheckDef {
        id: "fact-maschke",
        suite: Suite::Module,
        hypotheses: "none",
        run: maschke,
    },
    CheckDef {
        id: "prop-vnv",
        suite: Suite::Module,
        hypotheses: "none",
        run: vnv,
    },
    CheckDef {
        id: "cor-normalizer-centralizer",
        suite: Suite::Module,
        hypotheses: "none",
        run: normalizer_centralizer,
    },
    CheckDef {
        id: "cor-weight-spaces",
        suite: Suite::Module,
        hypotheses: "none",
        run: weight_spaces,
    },
    CheckDef {
        id: "cor-weight-decomposition",
        suite: Suite::Module,
        hypotheses: "none",
        run: weight_decomposition_meets,
    },
];

/// The adjoint module, plus the natural module when the target is `sl_2`
/// or `gl_n` in its standard basis.
fn modules(ctx: &Ctx) -> Result<Vec<(&'static str, PModule)>> {
    let spec = ctx.spec;
    let mut out = vec![("adjoint", adjoint_module(spec)?)];
    if sl2(spec.p()).is_ok_and(|s| same_tables(&s, spec)) {
        out.push(("natural", PModule::new(spec.clone(), natural_sl2(spec.p())?.rho().to_vec())?));
    }
    let n = (1..=4).find(|n| n * n == spec.dim());
    if let Some(n) = n {
        if gln(spec.p(), n).is_ok_and(|g| same_tables(&g, spec)) {
            out.push(("natural", PModule::new(spec.clone(), natural_gln(spec.p(), n)?.rho().to_vec())?));
        }
    }
    Ok(out)
}

fn stable_under(ops: &[Matrix], w: &Subspace) -> bool {
    ops.iter().all(|o| w.basis().iter().all(|v| w.contains_vector(&o.mul_vec(v))))
}

fn p_module(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let spec = ctx.spec;
    for (name, m) in modules(ctx)? {
        let rho = m.rho();
        for i in 0..spec.dim() {
            if m.rho_of(spec.basis_pmap(i)) != rho[i].pow(spec.p() as u64) {
                return Ok(Outcome::fail("rho(x^[p]) differs from rho(x)^p", json!({ "module": name, "basis": i })));
            }
            for j in (i + 1)..spec.dim() {
                if m.rho_of(spec.basis_bracket(i, j)) != rho[i].commutator(&rho[j]) {
                    return Ok(Outcome::fail("rho is not a Lie morphism", json!({ "module": name, "pair": [i, j] })));
                }
            }
        }
        for x in sample(ctx, rng, 8) {
            if m.rho_of(&spec.p_power(&x)) != m.rho_of(&x).pow(spec.p() as u64) {
                return Ok(Outcome::fail("rho(x^[p]) differs from rho(x)^p", json!({ "module": name, "x": x })));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn maschke(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    for (name, m) in modules(ctx)? {
        for t in ctx.maximal_tori()? {
            let d = weight_decomposition(&m, &t, &ctx.budgets)?;
            let ops: Vec<Matrix> = t.basis().iter().map(|b| m.rho_of(b)).collect();
            for w in &d.components {
                if !stable_under(&ops, w) {
                    return Ok(Outcome::fail("component is not a submodule", json!({ "module": name, "component": subspace_json(w) })));
                }
                // Irreducible: no proper nonzero stable subspace, by enumeration.
                let inside = enumerate_subspaces(m.field(), w.dim(), None, ctx.budgets.subspaces)?
                    .filter(|s| !s.is_zero() && !s.is_full())
                    .map(|s| Subspace::span(m.field(), m.dim_v(), &s.basis().iter().map(|c| w.combine(c)).collect::<Vec<_>>()))
                    .find(|s| stable_under(&ops, s));
                if let Some(s) = inside {
                    return Ok(Outcome::fail(
                        "component is reducible",
                        json!({ "module": name, "component": subspace_json(w), "submodule": subspace_json(&s) }),
                    ));
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

fn vnv(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    for (name, m) in modules(ctx)? {
        for t in ctx.maximal_tori()? {
            let r = verify_vnv(&m, &t, &ctx.budgets)?;
            let sum = fixed_points(&m, &t).sum(&action_submodule(&m, &t))?;
            if !r.passed || !sum.is_full() {
                return Ok(Outcome::fail(
                    "V is not V^n + [n, V]",
                    json!({ "module": name, "torus": subspace_json(&t), "report": r }),
                ));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn normalizer_centralizer(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let spec = ctx.spec;
    for t in ctx.tori()? {
        let (n, c) = (normalizer(spec, t), centralizer(spec, t));
        if n != c {
            return Ok(Outcome::fail(
                "normalizer of a torus differs from its centralizer",
                json!({ "torus": subspace_json(t), "normalizer": subspace_json(&n), "centralizer": subspace_json(&c) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn weight_spaces(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    for (name, m) in modules(ctx)? {
        for t in ctx.maximal_tori()? {
            let d = weight_decomposition(&m, &t, &ctx.budgets)?;
            let mut sum = d.fixed.clone();
            let mut dims = d.fixed.dim();
            for w in &d.components {
                sum = sum.sum(w)?;
                dims += w.dim();
            }
            if !sum.is_full() || dims != m.dim_v() || d.fixed != fixed_points(&m, &t) {
                return Ok(Outcome::fail(
                    "weight decomposition is not direct with fixed part V^t",
                    json!({ "module": name, "torus": subspace_json(&t) }),
                ));
            }
            // Each component: the image of t acts through a field, so the
            // span of the restricted operators and their products is a
            // commutative algebra of dimension dim W.
            for w in &d.components {
                let local: Vec<Matrix> = t
                    .basis()
                    .iter()
                    .map(|b| m.rho_of(b).restrict_to(w).expect("stable"))
                    .collect();
                let k = w.dim();
                let mut algebra: Vec<Vec<u32>> = vec![Matrix::identity(m.field(), k).data().to_vec()];
                let mut frontier = algebra.clone();
                while !frontier.is_empty() {
                    let mut next = Vec::new();
                    for a in &frontier {
                        let a = Matrix::new(m.field(), k, k, a.clone())?;
                        for o in &local {
                            next.push(a.mul(o).data().to_vec());
                        }
                    }
                    let before = Subspace::span(m.field(), k * k, &algebra).dim();
                    algebra.extend(next.iter().cloned());
                    let after = Subspace::span(m.field(), k * k, &algebra);
                    frontier = if after.dim() == before { Vec::new() } else { next };
                    algebra = after.basis().to_vec();
                }
                let commutative = local.iter().all(|a| local.iter().all(|b| a.commutator(b).is_zero()));
                if !commutative || algebra.len() != k {
                    return Ok(Outcome::fail(
                        "torus does not act on a component through a field of its dimension",
                        json!({ "module": name, "component": subspace_json(w), "algebra_dim": algebra.len() }),
                    ));
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

fn weight_decomposition_meets(ctx: &Ctx, _: &mut ChaCha8Rng) -> Result<Outcome> {
    for (name, m) in modules(ctx)? {
        for t in ctx.tori()? {
            let meet = fixed_points(&m, t).intersect(&action_submodule(&m, t))?;
            if !meet.is_zero() {
                return Ok(Outcome::fail(
                    "V^t meets [t, V]",
                    json!({ "module": name, "torus": subspace_json(t), "meet": subspace_json(&meet) }),
                ));
            }
        }
    }
    Ok(Outcome::Pass)
}
