//! Acceptance gate: one line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use plalg_core::algebra::verify_restricted;
use plalg_core::analysis::{
    center, frattini, is_ideal, is_nilpotent, is_p_subalgebra, is_soluble, FrattiniMode,
};
use plalg_core::constructions::{
    borel2, cyclic_generator, field_torus, gln, gln_matrix, heisenberg, sl2, sl2_into_witt, witt,
};
use plalg_core::ffarith::poly::{degree, is_irreducible};
use plalg_core::ffarith::ExtField;
use plalg_core::harness::{generate, run_checks, Report, Status, Suite};
use plalg_core::linalg::enumerate_subspaces;
use plalg_core::pmodules::{
    adjoint_module, min_poly, natural_gln, natural_sl2, verify_vnv, weight_decomposition, PModule,
};
use plalg_core::simplicity::{is_minimal_simple, MinimalMode, Verdict};
use plalg_core::tori::{is_torus, p_map_matrix, p_th_root, purity, toral_decomposition, PurityMode, PurityOutcome};
use plalg_core::{AlgebraSpec, Budgets, Subspace};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240601;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn no_failures(r: &Report, allow_budget: bool) -> Result<(), String> {
    for c in &r.checks {
        let bad = match c.status {
            Status::Pass => false,
            Status::Budget => !allow_budget,
            _ => true,
        };
        if bad {
            return Err(format!("{} on {}: {:?} {}", c.id, c.target, c.status, c.witness.clone().unwrap_or_default()));
        }
    }
    Ok(())
}

fn c1() -> Outcome {
    let fixtures = [
        witt(5), witt(7), sl2(5), sl2(7), gln(3, 2), gln(5, 2), heisenberg(5), borel2(5),
        field_torus(5, 2), field_torus(5, 3),
    ];
    for spec in fixtures {
        let spec = spec.map_err(|e| e.to_string())?;
        let r = verify_restricted(&spec, 1_000_000);
        let small = (spec.p() as u128).pow(spec.dim() as u32) <= 1_000_000;
        ensure(r.passed, || format!("{}: {:?}", spec.name(), r.findings))?;
        ensure(r.exhaustive == small, || format!("{}: exhaustive = {}", spec.name(), r.exhaustive))?;
    }
    Ok("10 fixtures verified".into())
}

fn c2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (p, n) in [(3, 2), (3, 3), (5, 2), (5, 3)] {
        let g = gln(p, n).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let x = g.random_element(&mut rng);
            let lhs = gln_matrix(g.field(), n, &g.p_power(&x));
            let rhs = gln_matrix(g.field(), n, &x).pow(p as u64);
            ensure(lhs == rhs, || format!("gl{n}({p}): mismatch at {x:?}"))?;
        }
    }
    Ok("400 elements".into())
}

fn semisimple_basis(w: &AlgebraSpec) -> Vec<String> {
    (0..w.dim())
        .filter(|&i| {
            let x = w.basis_vector(i);
            let iterates: Vec<Vec<u32>> = (1..=w.dim()).map(|k| w.p_power_iter(&x, k)).collect();
            w.span(&iterates).contains_vector(&x)
        })
        .map(|i| w.basis_names()[i].clone())
        .collect()
}

fn c3() -> Outcome {
    for p in [5, 7] {
        let w = witt(p).map_err(|e| e.to_string())?;
        let ss = semisimple_basis(&w);
        ensure(ss == ["e_0"], || format!("witt({p}): semisimple basis {ss:?}"))?;
        let span = w.span_of_names(&["e_-1", "e_0", "e_1"]).map_err(|e| e.to_string())?;
        ensure(is_p_subalgebra(&w, &span), || format!("witt({p}): span not p-closed"))?;
        let f = sl2_into_witt(p).map_err(|e| e.to_string())?;
        let s = f.source();
        ensure(f.image_of(&s.full()) == span && f.kernel().is_zero(), || "embedding is not onto the span".into())?;
        for i in 0..s.dim() {
            ensure(f.apply(s.basis_pmap(i)) == w.p_power(&f.apply(&s.basis_vector(i))), || format!("p-map differs on {i}"))?;
            for j in 0..s.dim() {
                let lhs = f.apply(&s.bracket(&s.basis_vector(i), &s.basis_vector(j)));
                let rhs = w.bracket(&f.apply(&s.basis_vector(i)), &f.apply(&s.basis_vector(j)));
                ensure(lhs == rhs, || format!("bracket differs on ({i}, {j})"))?;
            }
        }
    }
    let w = witt(5).map_err(|e| e.to_string())?;
    let ideals = enumerate_subspaces(w.field(), w.dim(), None, 1_000_000)
        .map_err(|e| e.to_string())?
        .filter(|s| is_ideal(&w, s))
        .count();
    ensure(ideals == 2, || format!("witt(5) has {ideals} ideals"))?;
    Ok("e_0 only; sl2 copy; witt(5) simple".into())
}

fn c4() -> Outcome {
    let b = Budgets::default();
    for (spec, want) in [
        (sl2(5), Verdict::True),
        (witt(5), Verdict::True),
        (heisenberg(5), Verdict::False),
        (borel2(5), Verdict::False),
    ] {
        let spec = spec.map_err(|e| e.to_string())?;
        let v = is_minimal_simple(&spec, MinimalMode::Exhaustive, &b, false).map_err(|e| e.to_string())?;
        ensure(v.verdict == want, || format!("{}: {:?}", spec.name(), v.verdict))?;
    }
    Ok("sl2(5), witt(5) true; heisenberg(5), borel2(5) false".into())
}

fn c5_report() -> Result<Report, String> {
    let targets = generate::abelian_suite(SEED, 200).map_err(|e| e.to_string())?;
    for a in &targets {
        let full = a.full();
        let split = toral_decomposition(a, &full).map_err(|e| e.to_string())?;
        let (t, u) = (&split.torus, &split.unipotent);
        let m = p_map_matrix(a, &full).map_err(|e| e.to_string())?;
        ensure(t.intersect(u).unwrap().is_zero() && t.sum(u).unwrap().is_full(), || format!("{}: not a direct sum", a.name()))?;
        ensure(t.map(&m) == *t, || format!("{}: p-map not bijective on t", a.name()))?;
        let md = m.pow(a.dim() as u64);
        ensure(u.basis().iter().all(|v| md.mul_vec(v).iter().all(|&c| c == 0)), || format!("{}: u not killed", a.name()))?;
        let pure = purity(a, &full, t, PurityMode::Check).map_err(|e| e.to_string())?;
        ensure(pure == PurityOutcome::Pure(true), || format!("{}: t not pure", a.name()))?;
    }
    Ok(run_checks(&targets, Suite::Abelian, Some(&["cor-toral-decomposition"]), SEED, &Budgets::default()))
}

fn c5() -> Outcome {
    let r = c5_report()?;
    no_failures(&r, false)?;
    Ok(format!("{}/200 split and pure", r.count("cor-toral-decomposition", Status::Pass)))
}

fn c6() -> Outcome {
    let t = field_torus(5, 3).map_err(|e| e.to_string())?;
    let all: Vec<Vec<u32>> = t.full().elements().collect();
    let powers: Vec<Vec<u32>> = all.iter().map(|y| t.p_power(y)).collect();
    for x in &all {
        let r = p_th_root(&t, x, &Budgets::default()).map_err(|e| e.to_string())?;
        ensure(t.p_power(&r.root) == *x, || format!("{x:?}: wrong root"))?;
        let n = powers.iter().filter(|y| *y == x).count();
        ensure(n == 1, || format!("{x:?} has {n} roots"))?;
    }
    Ok("125 unique roots".into())
}

const CARTAN_IDS: &[&str] = &["thm-cartan-tori", "thm-cartan-derived-sum", "cor-torus-rank-constant", "prop-torus-quotient"];
const FRATTINI_IDS: &[&str] = &["prop-frattini-p-ideal", "cor-frattini-nilpotent", "thm-frattini-inclusion", "thm-socle-frattini"];

fn soluble_targets() -> Result<Vec<AlgebraSpec>, String> {
    generate::soluble_suite(SEED, 24).map_err(|e| e.to_string())
}

fn c7_report() -> Result<Report, String> {
    Ok(run_checks(&soluble_targets()?, Suite::Soluble, Some(CARTAN_IDS), SEED, &Budgets::default()))
}

fn c7() -> Outcome {
    let r = c7_report()?;
    no_failures(&r, false)?;
    Ok(format!("24 algebras, {} checks pass", r.checks.len()))
}

fn c8_report() -> Result<Report, String> {
    let targets = generate::torus_free_suite(SEED, 50).map_err(|e| e.to_string())?;
    ensure(targets.len() == 50, || format!("only {} torus-free algebras generated", targets.len()))?;
    for g in &targets {
        ensure(is_soluble(g, &g.full()).unwrap() && g.p() as usize > g.dim(), || format!("{}: outside hypotheses", g.name()))?;
        ensure(is_nilpotent(g, &g.full()).unwrap(), || format!("{}: torus-free but not nilpotent", g.name()))?;
    }
    Ok(run_checks(&targets, Suite::Soluble, Some(&["prop-nilpotency-criterion"]), SEED, &Budgets::default()))
}

fn c8() -> Outcome {
    let r = c8_report()?;
    no_failures(&r, false)?;
    Ok("50 torus-free algebras are nilpotent".into())
}

fn c9_report() -> Result<Report, String> {
    Ok(run_checks(&soluble_targets()?, Suite::Frattini, Some(FRATTINI_IDS), SEED, &Budgets::default()))
}

fn c9() -> Outcome {
    let h = heisenberg(5).map_err(|e| e.to_string())?;
    let phi = frattini(&h, FrattiniMode::Plain, 1_000_000).map_err(|e| e.to_string())?;
    ensure(phi == center(&h), || "Frattini subalgebra of heisenberg(5) is not the center".into())?;
    let r = c9_report()?;
    no_failures(&r, true)?;
    let within = r.count("thm-socle-frattini", Status::Pass);
    ensure(within > 0, || "socle criterion never within budget".into())?;
    Ok(format!("center of heisenberg(5); socle criterion on {within}/24"))
}

/// Some element of `t` acts on `w` with irreducible minimal polynomial of
/// degree `dim w`, so `w` is a simple module.
fn irreducible_by_invariant_factor(m: &PModule, t: &Subspace, w: &Subspace) -> bool {
    t.elements().any(|x| {
        let Some(op) = m.rho_of(&x).restrict_to(w) else { return false };
        let mp = min_poly(&op);
        degree(&mp) == Some(w.dim()) && is_irreducible(m.field(), &mp)
    })
}

fn c10() -> Outcome {
    let b = Budgets::default();
    let s = sl2(5).map_err(|e| e.to_string())?;
    let h = s.span_of_names(&["h"]).unwrap();
    let nat = natural_sl2(5).map_err(|e| e.to_string())?;
    let d = weight_decomposition(&nat, &h, &b).map_err(|e| e.to_string())?;
    ensure(d.fixed.is_zero() && d.components.len() == 2 && d.components.iter().all(|w| w.dim() == 1), || "natural module shape".into())?;
    let ad = adjoint_module(&s).map_err(|e| e.to_string())?;
    let d = weight_decomposition(&ad, &h, &b).map_err(|e| e.to_string())?;
    let mut comps = d.components.clone();
    comps.sort();
    let mut want = vec![s.span_of_names(&["e"]).unwrap(), s.span_of_names(&["f"]).unwrap()];
    want.sort();
    ensure(d.fixed == h && comps == want, || "adjoint module shape".into())?;

    let modules = [
        nat,
        ad,
        natural_gln(3, 2).map_err(|e| e.to_string())?,
        natural_gln(5, 2).map_err(|e| e.to_string())?,
        adjoint_module(&borel2(5).unwrap()).map_err(|e| e.to_string())?,
        adjoint_module(&field_torus(5, 2).unwrap()).map_err(|e| e.to_string())?,
    ];
    let mut pairs = 0;
    for m in &modules {
        let g = m.algebra();
        let tori: Vec<Subspace> = enumerate_subspaces(g.field(), g.dim(), None, 1_000_000)
            .unwrap()
            .filter(|t| !t.is_zero() && is_torus(g, t))
            .collect();
        for t in &tori {
            pairs += 1;
            let v = verify_vnv(m, t, &b).map_err(|e| e.to_string())?;
            ensure(v.passed, || format!("vnv fails on {} under {t:?}", g.name()))?;
            let d = weight_decomposition(m, t, &b).map_err(|e| e.to_string())?;
            for w in &d.components {
                ensure(irreducible_by_invariant_factor(m, t, w), || format!("{}: reducible component {w:?}", g.name()))?;
            }
        }
    }
    Ok(format!("{pairs} (module, torus) pairs"))
}

/// `span{x^{p^i}}` over all inputs, by field powers.
fn generated(e: &ExtField, xs: &[Vec<u32>]) -> Subspace {
    let mut gens = Vec::new();
    for x in xs {
        let mut y = x.clone();
        for _ in 0..e.degree() {
            gens.push(y.clone());
            y = e.pow(&y, e.p() as u64);
        }
    }
    Subspace::span(e.base(), e.degree(), &gens)
}

fn c11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for k in [2, 3] {
        let e = ExtField::with_least_modulus(5, k).map_err(|e| e.to_string())?;
        let all: Vec<Vec<u32>> = e.elements().collect();
        for _ in 0..20 {
            let n = rng.gen_range(1..=4);
            let xs: Vec<Vec<u32>> = all.choose_multiple(&mut rng, n).cloned().collect();
            let t = cyclic_generator(&e, &xs, 1_000_000).map_err(|e| e.to_string())?;
            let m = generated(&e, &xs);
            ensure(m.contains_vector(&t) && generated(&e, &[t.clone()]) == m, || format!("F_5^{k}: {t:?} does not generate"))?;
        }
    }
    Ok("40 subsets".into())
}

fn c12() -> Outcome {
    type Build = fn() -> Result<Report, String>;
    let builders: [(&str, Build); 4] = [("5", c5_report), ("7", c7_report), ("8", c8_report), ("9", c9_report)];
    for (name, f) in builders {
        let (a, b) = (f()?.stable(), f()?.stable());
        ensure(a.to_json() == b.to_json(), || format!("criterion {name} report differs between runs"))?;
    }
    Ok("reports for 5, 7, 8, 9 identical".into())
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 12] = [
        (1, "restricted axioms on fixtures", Duration::from_secs(30), c1),
        (2, "Jacobson formula against matrix powers", Duration::from_secs(10), c2),
        (3, "Witt algebra facts", Duration::from_secs(60), c3),
        (4, "minimal simple verdicts", Duration::from_secs(300), c4),
        (5, "abelian toral decomposition", Duration::from_secs(30), c5),
        (6, "unique p-th roots", Duration::from_secs(5), c6),
        (7, "Cartan subalgebras and maximal tori", Duration::from_secs(300), c7),
        (8, "torus-free soluble algebras are nilpotent", Duration::MAX, c8),
        (9, "Frattini theory", Duration::from_secs(600), c9),
        (10, "weight decompositions", Duration::from_secs(10), c10),
        (11, "cyclic generators", Duration::from_secs(10), c11),
        (12, "determinism", Duration::MAX, c12),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (ok, note) = match result {
            Ok(note) if elapsed <= limit => (true, note),
            Ok(note) => (false, format!("{note}; took longer than {}s", limit.as_secs())),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {} {name} ({:.2}s): {note}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
