//! Restricted representations: validation, fixed points, the submodule
//! `[s, V]`, weight decompositions under tori and the `V = V^n + [n, V]`
//! identity.

mod decompose;

pub use decompose::{
    min_poly, verify_vnv, weight_decomposition, DecompositionMethod, VnvReport,
    WeightDecomposition,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::ModuleBlock;
use crate::algebra::AlgebraSpec;
use crate::constructions::{gln, sl2};
use crate::error::{Error, Result};
use crate::ffarith::PrimeField;
use crate::linalg::{Matrix, Subspace};

pub const MODULE_SAMPLE_SEED: u64 = 0x6d6f64;
pub const MODULE_SAMPLES: usize = 100;

/// A p-morphism `g -> gl(V)`, given by the images of the basis.
#[derive(Debug, Clone)]
pub struct PModule {
    algebra: AlgebraSpec,
    dim_v: usize,
    rho: Vec<Matrix>,
    seed: u64,
}

impl PModule {
    pub fn new(algebra: AlgebraSpec, rho: Vec<Matrix>) -> Result<Self> {
        Self::with_seed(algebra, rho, MODULE_SAMPLE_SEED)
    }

    pub fn with_seed(algebra: AlgebraSpec, rho: Vec<Matrix>, seed: u64) -> Result<Self> {
        let dim_v = rho.first().map_or(0, |m| m.rows());
        Self::build(algebra, dim_v, rho, seed)
    }

    fn build(algebra: AlgebraSpec, dim_v: usize, rho: Vec<Matrix>, seed: u64) -> Result<Self> {
        if rho.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                got: rho.len(),
            });
        }
        for m in &rho {
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch {
                    expected: algebra.p(),
                    got: m.field().p(),
                });
            }
            if m.rows() != dim_v || m.cols() != dim_v {
                return Err(Error::DimensionMismatch {
                    expected: dim_v,
                    got: m.rows().max(m.cols()),
                });
            }
        }
        let m = PModule {
            algebra,
            dim_v,
            rho,
            seed,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.algebra;
        let p = g.p() as u64;
        for i in 0..g.dim() {
            for j in (i + 1)..g.dim() {
                if self.rho_of(g.basis_bracket(i, j)) != self.rho[i].commutator(&self.rho[j]) {
                    return Err(Error::NotAMorphism(format!(
                        "bracket of basis elements {i} and {j} is not preserved"
                    )));
                }
            }
            if self.rho_of(g.basis_pmap(i)) != self.rho[i].pow(p) {
                return Err(Error::NotAMorphism(format!(
                    "p-map of basis element {i} is not preserved"
                )));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..MODULE_SAMPLES {
            let x = g.random_element(&mut rng);
            if self.rho_of(&g.p_power(&x)) != self.rho_of(&x).pow(p) {
                return Err(Error::NotAMorphism(format!(
                    "p-map of {} is not preserved",
                    g.format_element(&x)
                )));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `rho(x) = Σ x_i rho(e_i)`.
    pub fn rho_of(&self, x: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim_v, self.dim_v);
        for (r, &c) in self.rho.iter().zip(x) {
            if c != 0 {
                m.axpy(c, r);
            }
        }
        m
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.field(), self.dim_v)
    }

    pub fn from_block(algebra: AlgebraSpec, block: &ModuleBlock) -> Result<Self> {
        let f = algebra.field();
        let rho = block
            .rho
            .iter()
            .map(|rows| {
                if rows.len() != block.dim_v || rows.iter().any(|r| r.iter().any(|&c| c >= f.p())) {
                    return Err(Error::Invalid(
                        "module matrices must be dim_v x dim_v with entries below p".into(),
                    ));
                }
                Matrix::from_rows(f, block.dim_v, rows)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::build(algebra, block.dim_v, rho, MODULE_SAMPLE_SEED)
    }

    pub fn to_block(&self) -> ModuleBlock {
        ModuleBlock {
            dim_v: self.dim_v,
            rho: self.rho.iter().map(|m| m.to_rows()).collect(),
        }
    }
}

/// `rho(e_i) = ad(e_i)`.
pub fn adjoint_module(spec: &AlgebraSpec) -> Result<PModule> {
    let rho = (0..spec.dim()).map(|i| spec.ad_basis(i).clone()).collect();
    PModule::new(spec.clone(), rho)
}

/// The zero action on `F_p^dim_v`.
pub fn trivial_module(spec: &AlgebraSpec, dim_v: usize) -> Result<PModule> {
    let rho = (0..spec.dim())
        .map(|_| Matrix::zeros(spec.field(), dim_v, dim_v))
        .collect();
    PModule::build(spec.clone(), dim_v, rho, MODULE_SAMPLE_SEED)
}

/// `sl_2` acting on `F_p^2`.
pub fn natural_sl2(p: u32) -> Result<PModule> {
    let s = sl2(p)?;
    let f = s.field();
    let e = Matrix::new(f, 2, 2, vec![0, 1, 0, 0])?;
    let h = Matrix::diagonal(f, &[1, f.neg(1)]);
    let fm = Matrix::new(f, 2, 2, vec![0, 0, 1, 0])?;
    PModule::new(s, vec![e, h, fm])
}

/// `gl_n` acting on `F_p^n` by matrix units.
pub fn natural_gln(p: u32, n: usize) -> Result<PModule> {
    let g = gln(p, n)?;
    let f = g.field();
    let rho = (0..n * n)
        .map(|k| {
            let mut m = Matrix::zeros(f, n, n);
            m.set(k / n, k % n, 1);
            m
        })
        .collect();
    PModule::new(g, rho)
}

/// Joint kernel of `rho` over a basis of `s`.
pub fn fixed_points(m: &PModule, s: &Subspace) -> Subspace {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for b in s.basis() {
        rows.extend(m.rho_of(b).to_rows());
    }
    if rows.is_empty() {
        return m.full();
    }
    Matrix::from_rows(m.field(), m.dim_v, &rows)
        .expect("shape")
        .kernel()
}

/// `[s, V]`: the span of `rho(b) v` over bases of `s` and `V`.
pub fn action_submodule(m: &PModule, s: &Subspace) -> Subspace {
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for b in s.basis() {
        cols.extend(m.rho_of(b).columns());
    }
    Subspace::span(m.field(), m.dim_v, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{abelian, heisenberg, witt};

    #[test]
    fn natural_modules_validate() {
        natural_sl2(5).unwrap();
        natural_sl2(7).unwrap();
        natural_gln(3, 2).unwrap();
    }

    #[test]
    fn bad_module_is_rejected() {
        let s = sl2(5).unwrap();
        let f = s.field();
        let e = Matrix::new(f, 2, 2, vec![0, 1, 0, 0]).unwrap();
        let h = Matrix::diagonal(f, &[1, 1]);
        let fm = Matrix::new(f, 2, 2, vec![0, 0, 1, 0]).unwrap();
        assert!(matches!(PModule::new(s, vec![e, h, fm]), Err(Error::NotAMorphism(_))));
    }

    #[test]
    fn fixed_and_action_examples() {
        let n = natural_sl2(5).unwrap();
        let h = n.algebra().span(&[vec![0, 1, 0]]);
        assert!(fixed_points(&n, &h).is_zero());
        assert!(action_submodule(&n, &h).is_full());
        let z = n.algebra().zero_subspace();
        assert!(fixed_points(&n, &z).is_full());
        assert!(action_submodule(&n, &z).is_zero());

        let ad = adjoint_module(n.algebra()).unwrap();
        assert_eq!(fixed_points(&ad, &h), h);

        let t = trivial_module(n.algebra(), 3).unwrap();
        assert!(action_submodule(&t, &n.algebra().full()).is_zero());
    }

    #[test]
    fn adjoint_examples() {
        let w = witt(5).unwrap();
        let ad = adjoint_module(&w).unwrap();
        let f = w.field();
        let diag: Vec<u32> = (-1..=3).map(|j| f.from_i64(j)).collect();
        assert_eq!(ad.rho()[1], Matrix::diagonal(f, &diag));

        let a = abelian(&Matrix::identity(f, 2)).unwrap();
        assert!(adjoint_module(&a).unwrap().rho().iter().all(|m| m.is_zero()));
        let h = heisenberg(5).unwrap();
        assert!(adjoint_module(&h).unwrap().rho()[2].is_zero());
    }

    #[test]
    fn block_round_trip() {
        let n = natural_sl2(5).unwrap();
        let b = n.to_block();
        let back = PModule::from_block(n.algebra().clone(), &b).unwrap();
        assert_eq!(back.rho(), n.rho());
    }
}
