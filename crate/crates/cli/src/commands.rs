//! Subcommand bodies. Each returns the JSON report, a text rendering and an
//! exit code.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use plalg_core::analysis::{
    center, fitting, frattini_pair, is_p_subalgebra, series, socle, SeriesKind,
};
use plalg_core::constructions::Family;
use plalg_core::harness::{run_suite, Report, Status, Suite};
use plalg_core::linalg::subspace_count;
use plalg_core::pmodules::{adjoint_module, verify_vnv, weight_decomposition, PModule};
use plalg_core::simplicity::{is_minimal_simple, is_simple, search_evidence, MinimalMode};
use plalg_core::tori::{
    cartan_subalgebras, is_torus, maximal_tori, nilpotent_decomposition, toral_decomposition,
    CartanOptions,
};
use plalg_core::algebra::verify_restricted;
use plalg_core::{AlgebraSpec, Budgets, Error, Subspace};
use serde_json::{json, Value};

use crate::input;

pub struct Config {
    pub budgets: Budgets,
    pub seed: u64,
    pub stable: bool,
}

pub struct Output {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn input(message: String) -> Self {
        CliError { code: 2, kind: "input", message }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::BudgetExceeded { .. } => (3, "budget"),
            Error::TheoremViolation { .. } | Error::NoGenerator => (1, "theorem"),
            _ => (2, "input"),
        };
        CliError { code, kind, message: e.to_string() }
    }
}

fn subspace_json(s: &Subspace) -> Value {
    json!(s.basis())
}

fn subspace_text(spec: &AlgebraSpec, s: &Subspace) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = s.basis().iter().map(|v| spec.format_element(v)).collect();
    format!("span({})", parts.join(", "))
}

pub fn verify(cfg: &Config, path: &Path) -> Result<Output, CliError> {
    let file = input::read_file(path)?;
    let spec = file
        .to_spec_unverified()
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let report = verify_restricted(&spec, cfg.budgets.elements);
    let module = match (&file.module, report.passed) {
        (Some(block), true) => Some(PModule::from_block(spec.clone(), block).err().map(|e| e.to_string())),
        _ => None,
    };
    let module_ok = module.as_ref().is_none_or(|e| e.is_none());
    let mut text = String::new();
    if report.passed {
        let mode = if report.exhaustive { "exhaustive" } else { "basis" };
        let _ = writeln!(
            text,
            "{}: restricted axioms hold ({mode}, {} elements checked)",
            spec.name(),
            report.elements_checked
        );
    } else {
        let _ = writeln!(text, "{}: restricted axioms fail", spec.name());
        for f in &report.findings {
            let _ = writeln!(text, "  {}: {}", f.check, f.detail);
        }
    }
    match &module {
        Some(None) => text.push_str("module: valid restricted representation\n"),
        Some(Some(e)) => {
            let _ = writeln!(text, "module: {e}");
        }
        None => {}
    }
    let mut body = serde_json::to_value(&report).expect("json");
    if let Some(m) = &module {
        body["module"] = json!({ "valid": m.is_none(), "error": m });
    }
    Ok(Output {
        json: body,
        text,
        code: if report.passed && module_ok { 0 } else { 1 },
    })
}

/// One analysis item: a value, or the reason it is missing.
struct Sections {
    json: serde_json::Map<String, Value>,
    text: String,
    code: u8,
}

impl Sections {
    fn add(&mut self, name: &str, item: Result<(Value, String), Error>) {
        match item {
            Ok((v, t)) => {
                self.json.insert(name.into(), v);
                let _ = writeln!(self.text, "{name}: {t}");
            }
            Err(e) => {
                let err = CliError::from(e);
                let status = match err.code {
                    3 => "budget",
                    1 => "fail",
                    _ => "not_applicable",
                };
                if err.code == 1 || (err.code == 3 && self.code == 0) {
                    self.code = err.code;
                }
                self.json.insert(name.into(), json!({ "status": status, "reason": err.message }));
                let _ = writeln!(self.text, "{name}: {status} ({})", err.message);
            }
        }
    }
}

pub fn analyze(cfg: &Config, path: &Path) -> Result<Output, CliError> {
    let (_, spec) = input::read_algebra(path)?;
    let spec = &spec;
    let b = &cfg.budgets;
    let full = spec.full();
    let mut s = Sections {
        json: serde_json::Map::new(),
        text: format!("{} over F_{}, dim {}\n", spec.name(), spec.p(), spec.dim()),
        code: 0,
    };
    s.json.insert(
        "algebra".into(),
        json!({ "name": spec.name(), "p": spec.p(), "dim": spec.dim(), "basis": spec.basis_names() }),
    );

    s.add("series", (|| {
        let d = series(spec, &full, SeriesKind::Derived)?;
        let l = series(spec, &full, SeriesKind::LowerCentral)?;
        let u = series(spec, &full, SeriesKind::UpperCentral)?;
        let text = format!("derived {:?}, lower central {:?}, upper central {:?}", d.dims(), l.dims(), u.dims());
        Ok((json!({ "derived": d.dims(), "lower_central": l.dims(), "upper_central": u.dims() }), text))
    })());

    let z = center(spec);
    s.add("center", Ok((subspace_json(&z), subspace_text(spec, &z))));

    s.add("fitting", fitting(spec, b).map(|f| (subspace_json(&f), subspace_text(spec, &f))));

    s.add("socle", socle(spec, b).map(|so| {
        let comps: Vec<Value> = so.components.iter().map(subspace_json).collect();
        let text = format!("{} ({} components)", subspace_text(spec, &so.total), so.components.len());
        (json!({ "total": subspace_json(&so.total), "components": comps }), text)
    }));

    let exhaustive = subspace_count(spec.dim(), spec.p(), None) <= b.subspaces;
    s.add("tori", maximal_tori(spec, exhaustive, b, cfg.seed).map(|t| {
        let rank = t.tori.iter().map(|x| x.dim()).max().unwrap_or(0);
        let list: Vec<Value> = t.tori.iter().map(subspace_json).collect();
        let text = format!(
            "{} maximal, rank {rank}{}",
            t.tori.len(),
            if t.complete { "" } else { " (heuristic search)" }
        );
        (json!({ "maximal": list, "rank": rank, "complete": t.complete }), text)
    }));

    let opts = CartanOptions { override_hypotheses: true, seed: cfg.seed };
    s.add("cartan", cartan_subalgebras(spec, b, opts).map(|r| {
        let list: Vec<Value> = r
            .cartans
            .iter()
            .map(|c| json!({ "subspace": subspace_json(&c.subspace), "engel_route": c.engel_route, "torus_route": c.torus_route }))
            .collect();
        let dims: Vec<usize> = r.cartans.iter().map(|c| c.subspace.dim()).collect();
        let text = format!("{} found, dims {dims:?}{}", dims.len(), if r.in_regime { ", routes checked" } else { "" });
        (json!({ "subalgebras": list, "in_regime": r.in_regime }), text)
    }));

    s.add("frattini", frattini_pair(spec, b.subspaces).map(|f| {
        let text = format!("plain {}, restricted {}", subspace_text(spec, &f.plain), subspace_text(spec, &f.p));
        (json!({ "plain": subspace_json(&f.plain), "p": subspace_json(&f.p) }), text)
    }));

    s.add("classification", (|| {
        let d = series(spec, &full, SeriesKind::Derived)?;
        let l = series(spec, &full, SeriesKind::LowerCentral)?;
        let simple = is_simple(spec, b)?;
        let minimal = if simple {
            Some(is_minimal_simple(spec, MinimalMode::Exhaustive, b, false)?)
        } else {
            None
        };
        let kind = if spec.is_abelian() {
            "abelian"
        } else if l.is_nilpotent() {
            "nilpotent"
        } else if d.is_soluble() {
            "soluble"
        } else if simple {
            "simple"
        } else {
            "other"
        };
        let mut text = kind.to_string();
        if let Some(m) = &minimal {
            let _ = write!(text, ", minimal simple: {:?}", m.verdict);
        }
        let v = json!({
            "kind": kind,
            "abelian": spec.is_abelian(),
            "nilpotent": l.is_nilpotent(),
            "nilpotency_class": l.class,
            "soluble": d.is_soluble(),
            "derived_length": d.class,
            "simple": simple,
            "minimal_simple": minimal,
        });
        Ok((v, text))
    })());

    Ok(Output { json: Value::Object(s.json), text: s.text, code: s.code })
}

pub fn decompose(cfg: &Config, path: &Path, args: &[String]) -> Result<Output, CliError> {
    let (_, spec) = input::read_algebra(path)?;
    let h = input::subspace(&spec, args)?;
    if !is_p_subalgebra(&spec, &h) {
        return Err(CliError::input(format!("{} is not a p-subalgebra", subspace_text(&spec, &h))));
    }
    let abelian = plalg_core::analysis::is_abelian(&spec, &h);
    let split = if abelian {
        toral_decomposition(&spec, &h)?
    } else {
        nilpotent_decomposition(&spec, &h, &cfg.budgets)?
    };
    let method = if abelian { "abelian" } else { "nilpotent" };
    let text = format!(
        "{method} splitting of {}\n  torus:     {}\n  unipotent: {}\n  p-power exponent: {}\n",
        subspace_text(&spec, &h),
        subspace_text(&spec, &split.torus),
        subspace_text(&spec, &split.unipotent),
        split.stabilization_exponent
    );
    let json = json!({
        "subspace": subspace_json(&h),
        "method": method,
        "torus": subspace_json(&split.torus),
        "unipotent": subspace_json(&split.unipotent),
        "stabilization_exponent": split.stabilization_exponent,
    });
    Ok(Output { json, text, code: 0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Witt,
    Sl2,
    Gln,
    Heisenberg,
    Borel2,
    Abelian,
    FieldTorus,
}

pub fn construct(
    name: FamilyName,
    p: u32,
    n: usize,
    k: usize,
    pmap: Option<&str>,
    out: Option<&Path>,
) -> Result<Output, CliError> {
    let family = match name {
        FamilyName::Witt => Family::Witt { p },
        FamilyName::Sl2 => Family::Sl2 { p },
        FamilyName::Gln => Family::Gln { p, n },
        FamilyName::Heisenberg => Family::Heisenberg { p },
        FamilyName::Borel2 => Family::Borel2 { p },
        FamilyName::FieldTorus => Family::FieldTorus { p, k },
        FamilyName::Abelian => {
            let text = pmap.ok_or_else(|| CliError::input("abelian needs --pmap".into()))?;
            Family::Abelian { p, pmap: input::matrix(p, text)? }
        }
    };
    let spec = family.construct()?;
    let body = spec.to_json();
    match out {
        Some(path) => {
            fs::write(path, &body)
                .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
            Ok(Output {
                json: json!({ "written": path.display().to_string(), "name": spec.name(), "dim": spec.dim() }),
                text: format!("wrote {} (dim {}) to {}\n", spec.name(), spec.dim(), path.display()),
                code: 0,
            })
        }
        None => Ok(Output {
            json: serde_json::from_str(&body).expect("json"),
            text: body,
            code: 0,
        }),
    }
}

fn report_text(report: &Report) -> String {
    let mut text = String::new();
    for c in &report.checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
            Status::Budget => "budget",
        };
        let _ = write!(text, "{status:<7} {:<30} {:<22} {:>6}ms", c.id, c.target, c.millis);
        if let Some(w) = &c.witness {
            let note = w.get("detail").or_else(|| w.get("reason")).and_then(Value::as_str).unwrap_or("");
            let _ = write!(text, "  {note}");
        }
        text.push('\n');
    }
    let count = |s: Status| report.checks.iter().filter(|c| c.status == s).count();
    let _ = writeln!(
        text,
        "suite {} seed {}: {} pass, {} fail, {} skipped, {} budget",
        report.suite,
        report.seed,
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped),
        count(Status::Budget)
    );
    text
}

pub fn theorems(cfg: &Config, files: &[PathBuf], suite: &str) -> Result<Output, CliError> {
    let suite = Suite::parse(suite).ok_or_else(|| CliError::input(format!("unknown suite `{suite}`")))?;
    let specs = files
        .iter()
        .map(|f| input::read_algebra(f).map(|(_, s)| s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = run_suite(&specs, suite, cfg.seed, &cfg.budgets);
    if cfg.stable {
        report = report.stable();
    }
    let code = if report.checks.iter().any(|c| c.status == Status::Fail) {
        1
    } else if report.checks.iter().any(|c| c.status == Status::Budget) {
        3
    } else {
        0
    };
    Ok(Output {
        text: report_text(&report),
        json: serde_json::to_value(&report).expect("json"),
        code,
    })
}

pub fn search(cfg: &Config, p: u32, dim_max: usize, count: usize) -> Result<Output, CliError> {
    if plalg_core::ffarith::PrimeField::new(p).is_err() || p < 3 {
        return Err(CliError::input(format!("--p must be an odd prime, got {p}")));
    }
    let r = search_evidence(p, dim_max, count, cfg.seed, &cfg.budgets);
    let text = format!(
        "p = {p}, dim <= {dim_max}, {count} trials, seed {}\n  generated {}, discarded {} (Jacobi) + {} (p-map)\n  simple {}, minimal simple {}, inconclusive {}\n  matching sl2 {}, matching witt {}, isomorphic to sl2 {}\n",
        r.seed,
        r.generated,
        r.discarded_jacobi,
        r.discarded_pmap,
        r.simple,
        r.minimal_simple,
        r.inconclusive,
        r.matches_sl2,
        r.matches_witt,
        r.isomorphic_sl2
    );
    Ok(Output { json: serde_json::to_value(&r).expect("json"), text, code: 0 })
}

pub fn module(cfg: &Config, path: &Path, torus: &[String]) -> Result<Output, CliError> {
    let (file, spec) = input::read_algebra(path)?;
    let t = input::subspace(&spec, torus)?;
    if !is_torus(&spec, &t) {
        return Err(CliError::input(format!("{} is not a torus", subspace_text(&spec, &t))));
    }
    let (source, m) = match &file.module {
        Some(block) => ("file", PModule::from_block(spec.clone(), block)?),
        None => ("adjoint", adjoint_module(&spec)?),
    };
    let d = weight_decomposition(&m, &t, &cfg.budgets)?;
    let vnv = verify_vnv(&m, &t, &cfg.budgets)?;
    let vec_text = |v: &[u32]| format!("{v:?}");
    let mut text = format!(
        "{source} module of {} (dim {}) under {}\n  fixed: {} (dim {})\n",
        spec.name(),
        m.dim_v(),
        subspace_text(&spec, &t),
        d.fixed.basis().iter().map(|v| vec_text(v)).collect::<Vec<_>>().join(" "),
        d.fixed.dim()
    );
    for (i, w) in d.components.iter().enumerate() {
        let _ = writeln!(
            text,
            "  component {i}: {} (dim {})",
            w.basis().iter().map(|v| vec_text(v)).collect::<Vec<_>>().join(" "),
            w.dim()
        );
    }
    let _ = writeln!(text, "  V = V^t + [t, V]: {}", if vnv.passed { "holds" } else { "FAILS" });
    let json = json!({
        "module": source,
        "dim_v": m.dim_v(),
        "torus": subspace_json(&t),
        "fixed": subspace_json(&d.fixed),
        "components": d.components.iter().map(subspace_json).collect::<Vec<_>>(),
        "method": d.method,
        "generator": d.generator,
        "vnv": vnv,
    });
    Ok(Output { json, text, code: if vnv.passed { 0 } else { 1 } })
}
