//! Seeded target families for the suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraSpec;
use crate::analysis::{is_nilpotent, p_closure_of};
use crate::constructions::{borel2, direct_sum, random_abelian, random_semidirect, SolubleKind};
use crate::error::Result;
use crate::linalg::projective_points;

const ATTEMPTS: usize = 200;

fn named(spec: AlgebraSpec, family: &str, k: usize) -> AlgebraSpec {
    let name = format!("{family}{k}({})", spec.p());
    spec.with_name(name)
}

/// Random abelian restricted algebras, `p ∈ {3, 5, 7}`, `dim ∈ 1..=6`.
pub fn abelian_suite(seed: u64, count: usize) -> Result<Vec<AlgebraSpec>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let p = [3, 5, 7][rng.gen_range(0..3)];
            let dim = rng.gen_range(1..=6);
            Ok(named(random_abelian(p, dim, &mut rng)?, "abelian", k))
        })
        .collect()
}

/// Soluble, non-nilpotent algebras with `p ∈ {5, 7}` and `dim ∈ 2..=4`:
/// split semidirect products, and every third target a direct sum of the
/// 2-dimensional Borel with a small split product or abelian factor.
pub fn soluble_suite(seed: u64, count: usize) -> Result<Vec<AlgebraSpec>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = out.len();
        let p = [5, 7][rng.gen_range(0..2)];
        let spec = if k % 3 == 2 {
            let extra = rng.gen_range(1..=2);
            let factor = if extra == 1 {
                random_abelian(p, 1, &mut rng)?
            } else {
                random_semidirect(p, 2, 1, SolubleKind::Split, &mut rng)?
            };
            direct_sum(&[borel2(p)?, factor])?
        } else {
            let dim = rng.gen_range(2..=4);
            let acting = rng.gen_range(1..dim);
            random_semidirect(p, dim, acting, SolubleKind::Split, &mut rng)?
        };
        if !is_nilpotent(&spec, &spec.full())? {
            out.push(named(spec, "soluble", k));
        }
    }
    Ok(out)
}

/// A nonzero torus exists exactly when some nonzero `x` is semisimple,
/// i.e. lies in the p-closure of `x^[p]`; that closure is then a torus.
fn has_nonzero_torus(spec: &AlgebraSpec) -> bool {
    projective_points(spec.field(), spec.dim())
        .any(|x| p_closure_of(spec, &spec.p_power(&x)).contains_vector(&x))
}

/// Soluble algebras with `p > dim` and no nonzero torus.
pub fn torus_free_suite(seed: u64, count: usize) -> Result<Vec<AlgebraSpec>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count * ATTEMPTS {
        if out.len() == count {
            break;
        }
        let p = [5, 7][rng.gen_range(0..2)];
        let dim = rng.gen_range(2..=4);
        let acting = rng.gen_range(1..dim);
        let kind = if rng.gen_bool(0.5) { SolubleKind::Unipotent } else { SolubleKind::Split };
        let spec = random_semidirect(p, dim, acting, kind, &mut rng)?;
        if !has_nonzero_torus(&spec) {
            let k = out.len();
            out.push(named(spec, "torusfree", k));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::is_soluble;

    #[test]
    fn suites_are_deterministic_and_shaped() {
        let a = abelian_suite(1, 10).unwrap();
        assert_eq!(a, abelian_suite(1, 10).unwrap());
        assert!(a.iter().all(|s| s.is_abelian() && (1..=6).contains(&s.dim())));
        for s in soluble_suite(2, 6).unwrap() {
            assert!(is_soluble(&s, &s.full()).unwrap());
            assert!(!is_nilpotent(&s, &s.full()).unwrap());
            assert!(s.p() as usize > s.dim());
        }
        let t = torus_free_suite(3, 4).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.iter().all(|s| !has_nonzero_torus(s)));
    }
}
