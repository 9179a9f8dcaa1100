//! Built-in algebra families.

mod cyclic;
mod random;

pub use cyclic::{cyclic_generator, frobenius_module, generates};
pub use random::{
    random_abelian, random_restricted, random_semidirect, solve_pmap, RandomOutcome, SolubleKind,
};

use crate::algebra::{AlgebraSpec, BracketTerm, PMorphism};
use crate::error::{Error, Result};
use crate::ffarith::{ExtField, PrimeField};
use crate::linalg::Matrix;

/// Largest dimension a constructed algebra may have.
pub const MAX_CONSTRUCTED_DIM: usize = 16;

/// A named family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Witt { p: u32 },
    Sl2 { p: u32 },
    Gln { p: u32, n: usize },
    Heisenberg { p: u32 },
    Borel2 { p: u32 },
    /// Zero bracket; column `j` of `pmap` is `e_j^[p]`.
    Abelian { p: u32, pmap: Matrix },
    FieldTorus { p: u32, k: usize },
    DirectSum(Vec<Family>),
}

impl Family {
    pub fn construct(&self) -> Result<AlgebraSpec> {
        match self {
            Family::Witt { p } => witt(*p),
            Family::Sl2 { p } => sl2(*p),
            Family::Gln { p, n } => gln(*p, *n),
            Family::Heisenberg { p } => heisenberg(*p),
            Family::Borel2 { p } => borel2(*p),
            Family::Abelian { p, pmap } => {
                if pmap.field().p() != *p {
                    return Err(Error::FieldMismatch {
                        expected: *p,
                        got: pmap.field().p(),
                    });
                }
                abelian(pmap)
            }
            Family::FieldTorus { p, k } => field_torus(*p, *k),
            Family::DirectSum(parts) => {
                let specs = parts.iter().map(|f| f.construct()).collect::<Result<Vec<_>>>()?;
                direct_sum(&specs)
            }
        }
    }
}

fn odd_prime(p: u32) -> Result<PrimeField> {
    let f = PrimeField::new(p)?;
    if p < 3 {
        return Err(Error::Invalid(format!("family requires p >= 3, got {p}")));
    }
    Ok(f)
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// The Witt algebra: derivations `e_i = x^{i+1} d/dx` of `F_p[x]/(x^p)`,
/// `i = -1..p-2`, with `[e_i, e_j] = (j - i) e_{i+j}`.
pub fn witt(p: u32) -> Result<AlgebraSpec> {
    let f = odd_prime(p)?;
    let n = p as usize;
    if n > MAX_CONSTRUCTED_DIM {
        return Err(Error::Invalid(format!("witt({p}) exceeds dimension {MAX_CONSTRUCTED_DIM}")));
    }
    let idx = |i: i64| (i + 1) as usize;
    let basis: Vec<String> = (-1..=(p as i64 - 2)).map(|i| format!("e_{i}")).collect();
    let mut brackets: Vec<BracketTerm> = Vec::new();
    for i in -1..=(p as i64 - 2) {
        for j in (i + 1)..=(p as i64 - 2) {
            let s = i + j;
            let c = f.from_i64(j - i);
            if (-1..=p as i64 - 2).contains(&s) && c != 0 {
                let mut v = vec![0; n];
                v[idx(s)] = c;
                brackets.push(((idx(i), idx(j)), v));
            }
        }
    }
    let mut pmap = vec![vec![0; n]; n];
    pmap[idx(0)][idx(0)] = 1;
    AlgebraSpec::new(p, format!("witt({p})"), basis, &brackets, pmap)
}

/// `sl_2` in the basis `(e, h, f)`.
pub fn sl2(p: u32) -> Result<AlgebraSpec> {
    let f = odd_prime(p)?;
    let brackets = vec![
        ((0, 1), vec![f.from_i64(-2), 0, 0]),
        ((0, 2), vec![0, 1, 0]),
        ((1, 2), vec![0, 0, f.from_i64(-2)]),
    ];
    let pmap = vec![vec![0; 3], vec![0, 1, 0], vec![0; 3]];
    AlgebraSpec::new(p, format!("sl2({p})"), names(&["e", "h", "f"]), &brackets, pmap)
}

/// `gl_n` on matrix units `E_ab` (index `a*n + b`), p-map the matrix p-th power.
pub fn gln(p: u32, n: usize) -> Result<AlgebraSpec> {
    let f = PrimeField::new(p)?;
    let d = n * n;
    if n == 0 || d > MAX_CONSTRUCTED_DIM {
        return Err(Error::Invalid(format!("gl_{n} is outside the supported range")));
    }
    let basis: Vec<String> = (0..d).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
    let mut brackets = Vec::new();
    for x in 0..d {
        for y in (x + 1)..d {
            let (a, b, c, e) = (x / n, x % n, y / n, y % n);
            let mut v = vec![0; d];
            if b == c {
                v[a * n + e] = f.add(v[a * n + e], 1);
            }
            if e == a {
                v[c * n + b] = f.sub(v[c * n + b], 1);
            }
            if v.iter().any(|&t| t != 0) {
                brackets.push(((x, y), v));
            }
        }
    }
    let pmap = (0..d)
        .map(|k| {
            let m = unit_matrix(f, n, k).pow(p as u64);
            m.data().to_vec()
        })
        .collect();
    AlgebraSpec::new(p, format!("gl{n}({p})"), basis, &brackets, pmap)
}

/// The `n x n` matrix whose row-major entries are the coordinates of an
/// element of [`gln`].
pub fn gln_matrix(f: PrimeField, n: usize, x: &[u32]) -> Matrix {
    Matrix::new(f, n, n, x.to_vec()).expect("n*n coordinates")
}

fn unit_matrix(f: PrimeField, n: usize, k: usize) -> Matrix {
    let mut m = Matrix::zeros(f, n, n);
    m.set(k / n, k % n, 1);
    m
}

pub fn heisenberg(p: u32) -> Result<AlgebraSpec> {
    PrimeField::new(p)?;
    AlgebraSpec::new(
        p,
        format!("heisenberg({p})"),
        names(&["x", "y", "z"]),
        &[((0, 1), vec![0, 0, 1])],
        vec![vec![0; 3]; 3],
    )
}

/// Two-dimensional non-abelian: `[t, u] = u`, `t^[p] = t`, `u^[p] = 0`.
pub fn borel2(p: u32) -> Result<AlgebraSpec> {
    PrimeField::new(p)?;
    AlgebraSpec::new(
        p,
        format!("borel2({p})"),
        names(&["t", "u"]),
        &[((0, 1), vec![0, 1])],
        vec![vec![1, 0], vec![0, 0]],
    )
}

/// Abelian algebra whose p-map has matrix `pmap` (columns are images).
pub fn abelian(pmap: &Matrix) -> Result<AlgebraSpec> {
    if !pmap.is_square() {
        return Err(Error::Invalid("abelian p-map must be square".into()));
    }
    let n = pmap.rows();
    let basis = (1..=n).map(|i| format!("a{i}")).collect();
    AlgebraSpec::new(
        pmap.field().p(),
        format!("abelian{n}({})", pmap.field().p()),
        basis,
        &[],
        pmap.columns(),
    )
}

/// `F_{p^k}` as a `k`-dimensional abelian algebra over `F_p` with the
/// Frobenius as p-map, in the basis `1, X, ..., X^{k-1}`.
pub fn field_torus(p: u32, k: usize) -> Result<AlgebraSpec> {
    let ext = ExtField::with_least_modulus(p, k)?;
    field_torus_over(&ext)
}

pub fn field_torus_over(ext: &ExtField) -> Result<AlgebraSpec> {
    let k = ext.degree();
    let basis = (0..k)
        .map(|j| match j {
            0 => "1".to_string(),
            1 => "X".to_string(),
            _ => format!("X^{j}"),
        })
        .collect();
    let fm = Matrix::from_rows(ext.base(), k, &ext.frobenius_matrix())?;
    AlgebraSpec::new(
        ext.p(),
        format!("field_torus({},{k})", ext.p()),
        basis,
        &[],
        fm.columns(),
    )
}

/// Direct sum; basis names are kept when distinct, otherwise suffixed by the
/// summand index.
pub fn direct_sum(parts: &[AlgebraSpec]) -> Result<AlgebraSpec> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Invalid("direct sum of no algebras".into()))?;
    let p = first.p();
    if let Some(bad) = parts.iter().find(|s| s.p() != p) {
        return Err(Error::FieldMismatch {
            expected: p,
            got: bad.p(),
        });
    }
    let d: usize = parts.iter().map(|s| s.dim()).sum();
    let mut all_names: Vec<String> = parts.iter().flat_map(|s| s.basis_names().to_vec()).collect();
    let mut sorted = all_names.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != all_names.len() {
        all_names = parts
            .iter()
            .enumerate()
            .flat_map(|(k, s)| s.basis_names().iter().map(move |n| format!("{n}_{}", k + 1)))
            .collect();
    }
    let mut brackets = Vec::new();
    let mut pmap = Vec::new();
    let mut off = 0;
    for s in parts {
        let embed = |v: &[u32]| {
            let mut w = vec![0; d];
            w[off..off + s.dim()].copy_from_slice(v);
            w
        };
        for ((i, j), c) in s.bracket_terms() {
            brackets.push(((i + off, j + off), embed(&c)));
        }
        for i in 0..s.dim() {
            pmap.push(embed(s.basis_pmap(i)));
        }
        off += s.dim();
    }
    let name = parts.iter().map(|s| s.name()).collect::<Vec<_>>().join("+");
    AlgebraSpec::new(p, name, all_names, &brackets, pmap)
}

/// The copy of `sl_2` inside the Witt algebra: `e -> e_1`, `h -> 2 e_0`,
/// `f -> -e_{-1}`.
pub fn sl2_into_witt(p: u32) -> Result<PMorphism> {
    let s = sl2(p)?;
    let w = witt(p)?;
    let f = w.field();
    let n = w.dim();
    let col = |k: usize, c: i64| {
        let mut v = vec![0; n];
        v[k] = f.from_i64(c);
        v
    };
    let m = Matrix::from_columns(f, n, &[col(2, 1), col(1, 2), col(0, -1)]);
    PMorphism::new(s, w, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::verify_restricted;

    /// Derivations of `F_p[x]/(x^p)` as matrices on the monomial basis,
    /// bracketed as commutators.
    fn witt_derivation(p: u32, i: i64) -> Matrix {
        let f = PrimeField::new(p).unwrap();
        let n = p as usize;
        let mut m = Matrix::zeros(f, n, n);
        // x^{i+1} d/dx (x^k) = k x^{k+i}
        for k in 0..n as i64 {
            let t = k + i;
            if k != 0 && (0..n as i64).contains(&t) {
                m.set(t as usize, k as usize, f.from_i64(k));
            }
        }
        m
    }

    #[test]
    fn witt_brackets_match_derivations() {
        for p in [3, 5, 7] {
            let w = witt(p).unwrap();
            let ders: Vec<Matrix> = (-1..=(p as i64 - 2)).map(|i| witt_derivation(p, i)).collect();
            for a in 0..w.dim() {
                for b in 0..w.dim() {
                    let comm = ders[a].commutator(&ders[b]);
                    let expect = w.basis_bracket(a, b);
                    let mut sum = Matrix::zeros(w.field(), p as usize, p as usize);
                    for (k, &c) in expect.iter().enumerate() {
                        sum.axpy(c, &ders[k]);
                    }
                    assert_eq!(comm, sum, "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn witt5_examples() {
        let w = witt(5).unwrap();
        assert_eq!(w.dim(), 5);
        assert_eq!(w.bracket(&[1, 0, 0, 0, 0], &[0, 0, 1, 0, 0]), vec![0, 2, 0, 0, 0]);
        for j in 0..5 {
            let v = w.bracket(&w.basis_vector(1), &w.basis_vector(j));
            let mut e = vec![0; 5];
            e[j] = w.field().from_i64(j as i64 - 1);
            assert_eq!(v, e);
        }
        assert_eq!(w.p_power(&w.basis_vector(1)), w.basis_vector(1));
        assert_eq!(w.p_power(&w.basis_vector(2)), vec![0; 5]);
    }

    #[test]
    fn families_pass_verification() {
        let specs = [
            witt(5).unwrap(),
            sl2(5).unwrap(),
            sl2(7).unwrap(),
            gln(3, 2).unwrap(),
            heisenberg(5).unwrap(),
            borel2(5).unwrap(),
            field_torus(5, 2).unwrap(),
            field_torus(5, 3).unwrap(),
            direct_sum(&[heisenberg(5).unwrap(), field_torus(5, 1).unwrap()]).unwrap(),
        ];
        for s in &specs {
            let r = verify_restricted(s, 1_000_000);
            assert!(r.passed, "{}: {:?}", s.name(), r.findings);
            assert!(r.exhaustive);
        }
    }

    #[test]
    fn sl2_embeds_in_witt() {
        for p in [5, 7] {
            sl2_into_witt(p).unwrap();
        }
    }

    #[test]
    fn sl2_ad_h_is_diagonal() {
        let s = sl2(5).unwrap();
        assert_eq!(s.ad_matrix(&[0, 1, 0]), Matrix::diagonal(s.field(), &[2, 0, 3]));
    }

    #[test]
    fn abelian_zero_pmap_is_p_nilpotent() {
        let f = PrimeField::new(3).unwrap();
        let a = abelian(&Matrix::zeros(f, 2, 2)).unwrap();
        for x in crate::linalg::all_vectors(f, 2) {
            assert_eq!(a.p_power(&x), vec![0, 0]);
        }
    }

    #[test]
    fn direct_sum_has_no_cross_terms() {
        let d = direct_sum(&[borel2(5).unwrap(), field_torus(5, 2).unwrap()]).unwrap();
        let x = [3, 1, 0, 0];
        let y = [0, 0, 2, 4];
        for s in d.jacobson_si(&x, &y) {
            assert_eq!(s, vec![0; 4]);
        }
        let sum = d.field().add_vec(&x, &y);
        assert_eq!(
            d.p_power(&sum),
            d.field().add_vec(&d.p_power(&x), &d.p_power(&y))
        );
    }
}
