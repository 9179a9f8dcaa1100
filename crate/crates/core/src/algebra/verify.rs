use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::AlgebraSpec;
use crate::linalg::Matrix;

/// One failed check with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub check: String,
    pub detail: String,
    pub witness: serde_json::Value,
}

/// Outcome of [`verify_restricted`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub p: u32,
    pub dim: usize,
    pub passed: bool,
    pub exhaustive: bool,
    pub elements_checked: u64,
    pub findings: Vec<Finding>,
}

/// Checks Jacobi on basis triples and `[x^[p], y] = ad_x^p(y)` on basis pairs.
/// When `p^dim <= exhaustive_budget` the second axiom is also checked for
/// every element `x` (and hence, by linearity in `y`, every pair).
pub fn verify_restricted(spec: &AlgebraSpec, exhaustive_budget: u128) -> VerifyReport {
    let mut findings = Vec::new();
    let names = spec.basis_names();

    if let Some((i, j, k)) = spec.jacobi_violation() {
        findings.push(Finding {
            check: "jacobi".into(),
            detail: format!(
                "Jacobi identity fails on ({}, {}, {})",
                names[i], names[j], names[k]
            ),
            witness: json!({ "triple": [i, j, k] }),
        });
    }

    'basis: for i in 0..spec.dim() {
        let power = spec.ad_basis(i).pow(spec.p() as u64);
        for j in 0..spec.dim() {
            let lhs = spec.bracket(spec.basis_pmap(i), &spec.basis_vector(j));
            let rhs = power.column(j);
            if lhs != rhs {
                findings.push(Finding {
                    check: "axiom1-basis".into(),
                    detail: format!(
                        "[{0}^[p], {1}] = {2} but ad({0})^p({1}) = {3}",
                        names[i],
                        names[j],
                        spec.format_element(&lhs),
                        spec.format_element(&rhs)
                    ),
                    witness: json!({ "x": spec.basis_vector(i), "y": spec.basis_vector(j),
                                     "lhs": lhs, "rhs": rhs }),
                });
                break 'basis;
            }
        }
    }

    let total = (spec.p() as u128).checked_pow(spec.dim() as u32);
    let exhaustive = findings.is_empty() && total.is_some_and(|t| t <= exhaustive_budget);
    let mut elements_checked = 0;
    if exhaustive {
        elements_checked = total.unwrap() as u64;
        if let Some(x) = first_axiom1_failure(spec) {
            let xp = spec.p_power(&x);
            findings.push(Finding {
                check: "axiom1-exhaustive".into(),
                detail: format!(
                    "ad(x^[p]) differs from ad(x)^p for x = {}",
                    spec.format_element(&x)
                ),
                witness: json!({ "x": x, "x_p": xp }),
            });
        }
    }

    VerifyReport {
        algebra: spec.name().to_string(),
        p: spec.p(),
        dim: spec.dim(),
        passed: findings.is_empty(),
        exhaustive,
        elements_checked,
        findings,
    }
}

/// Every element together with its p-th power, visited depth first over the
/// coordinates. Extending a prefix `x` by `λ e_k` uses
/// `s_i(x, λ e_k) = λ^{p-i} s_i(x, e_k)`, so the Jacobson terms are computed
/// once per prefix rather than once per element.
struct Walker<'a> {
    spec: &'a AlgebraSpec,
}

impl Walker<'_> {
    fn visit(&self, k: usize, x: &mut Vec<u32>, xp: &[u32], adx: &Matrix) -> Option<Vec<u32>> {
        let spec = self.spec;
        let f = spec.field();
        let p = spec.p();
        if k == spec.dim() {
            let ok = spec.ad_matrix(xp) == adx.pow(p as u64);
            return (!ok).then(|| x.clone());
        }
        let nonzero = x.iter().any(|&c| c != 0);
        let si = if nonzero {
            spec.jacobson_si(x, &spec.basis_vector(k))
        } else {
            Vec::new()
        };
        for l in 0..p {
            let mut yp = xp.to_vec();
            let mut ady = adx.clone();
            if l != 0 {
                f.axpy(&mut yp, l, spec.basis_pmap(k));
                for (idx, s) in si.iter().enumerate() {
                    let i = idx as u64 + 1;
                    f.axpy(&mut yp, f.pow(l, p as u64 - i), s);
                }
                ady.axpy(l, spec.ad_basis(k));
            }
            x[k] = l;
            if let Some(w) = self.visit(k + 1, x, &yp, &ady) {
                x[k] = 0;
                return Some(w);
            }
        }
        x[k] = 0;
        None
    }
}

/// First element (odometer order, first coordinate slowest) violating
/// axiom 1, searched in parallel over a prefix of the coordinates.
fn first_axiom1_failure(spec: &AlgebraSpec) -> Option<Vec<u32>> {
    let n = spec.dim();
    if n == 0 {
        return None;
    }
    let p = spec.p() as u64;
    let mut split = 0;
    while split < n && p.pow(split as u32) < 64 {
        split += 1;
    }
    let walker = Walker { spec };
    let tasks = p.pow(split as u32);
    let results: Vec<Option<Vec<u32>>> = (0..tasks)
        .into_par_iter()
        .map(|mut t| {
            let mut x = vec![0u32; n];
            for i in (0..split).rev() {
                x[i] = (t % p) as u32;
                t /= p;
            }
            let xp = spec.p_power(&x);
            let adx = spec.ad_matrix(&x);
            walker.visit(split, &mut x, &xp, &adx)
        })
        .collect();
    results.into_iter().flatten().next()
}

/// Runs the depth-first walk and returns every `(x, x^[p])`; used to
/// cross-check the incremental p-powers against [`AlgebraSpec::p_power`].
#[cfg(test)]
pub(crate) fn all_p_powers(spec: &AlgebraSpec) -> Vec<(Vec<u32>, Vec<u32>)> {
    fn go(spec: &AlgebraSpec, k: usize, x: &mut Vec<u32>, xp: &[u32], out: &mut Vec<(Vec<u32>, Vec<u32>)>) {
        let f = spec.field();
        let p = spec.p();
        if k == spec.dim() {
            out.push((x.clone(), xp.to_vec()));
            return;
        }
        let si = if x.iter().any(|&c| c != 0) {
            spec.jacobson_si(x, &spec.basis_vector(k))
        } else {
            Vec::new()
        };
        for l in 0..p {
            let mut yp = xp.to_vec();
            if l != 0 {
                f.axpy(&mut yp, l, spec.basis_pmap(k));
                for (idx, s) in si.iter().enumerate() {
                    f.axpy(&mut yp, f.pow(l, p as u64 - idx as u64 - 1), s);
                }
            }
            x[k] = l;
            go(spec, k + 1, x, &yp, out);
        }
        x[k] = 0;
    }
    let mut out = Vec::new();
    let mut x = spec.zero();
    go(spec, 0, &mut x, &spec.zero(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incremental_powers_match_direct_fold() {
        let b = AlgebraSpec::new(
            5,
            "borel2",
            vec!["t".into(), "u".into()],
            &[((0, 1), vec![0, 1])],
            vec![vec![1, 0], vec![0, 0]],
        )
        .unwrap();
        for (x, xp) in all_p_powers(&b) {
            assert_eq!(b.p_power(&x), xp, "x = {x:?}");
        }
    }

    #[test]
    fn abelian_with_any_linear_pmap_passes() {
        let a = AlgebraSpec::new_unverified(
            3,
            "ab",
            vec!["a".into(), "b".into(), "c".into()],
            &[],
            vec![vec![1, 2, 0], vec![0, 0, 1], vec![2, 2, 2]],
        )
        .unwrap();
        let r = verify_restricted(&a, 1_000_000);
        assert!(r.passed && r.exhaustive);
        assert_eq!(r.elements_checked, 27);
    }

    #[test]
    fn reports_jacobi_failure() {
        // [a,b]=a, [a,c]=b, [b,c]=a violates Jacobi.
        let s = AlgebraSpec::new_unverified(
            5,
            "bad",
            vec!["a".into(), "b".into(), "c".into()],
            &[((0, 1), vec![1, 0, 0]), ((0, 2), vec![0, 1, 0]), ((1, 2), vec![1, 0, 0])],
            vec![vec![0; 3]; 3],
        )
        .unwrap();
        let r = verify_restricted(&s, 0);
        assert!(!r.passed);
        assert_eq!(r.findings[0].check, "jacobi");
    }
}
