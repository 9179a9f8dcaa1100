use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{format_combination, AlgebraSpec};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// Seed used for the random-element part of morphism validation.
pub const MORPHISM_SAMPLE_SEED: u64 = 0x70_6d_6f_72;
/// Number of random elements on which p-compatibility is sampled.
pub const MORPHISM_SAMPLES: usize = 100;

/// A linear map between restricted algebras preserving bracket and p-map.
///
/// The p-map is not linear, so besides the basis checks the map is tested on
/// [`MORPHISM_SAMPLES`] random elements drawn from a recorded seed.
#[derive(Debug, Clone)]
pub struct PMorphism {
    source: AlgebraSpec,
    target: AlgebraSpec,
    matrix: Matrix,
    seed: u64,
}

impl PMorphism {
    pub fn new(source: AlgebraSpec, target: AlgebraSpec, matrix: Matrix) -> Result<Self> {
        Self::with_seed(source, target, matrix, MORPHISM_SAMPLE_SEED)
    }

    pub fn with_seed(
        source: AlgebraSpec,
        target: AlgebraSpec,
        matrix: Matrix,
        seed: u64,
    ) -> Result<Self> {
        if source.p() != target.p() || matrix.field() != source.field() {
            return Err(Error::FieldMismatch {
                expected: source.p(),
                got: target.p(),
            });
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::NotAMorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let m = PMorphism {
            source,
            target,
            matrix,
            seed,
        };
        m.check_basis()?;
        m.check_samples(seed, MORPHISM_SAMPLES)?;
        Ok(m)
    }

    pub fn identity(spec: &AlgebraSpec) -> Self {
        PMorphism {
            source: spec.clone(),
            target: spec.clone(),
            matrix: Matrix::identity(spec.field(), spec.dim()),
            seed: MORPHISM_SAMPLE_SEED,
        }
    }

    fn check_basis(&self) -> Result<()> {
        let s = &self.source;
        let names = s.basis_names();
        for i in 0..s.dim() {
            let fi = self.matrix.column(i);
            for j in (i + 1)..s.dim() {
                let lhs = self.apply(s.basis_bracket(i, j));
                let rhs = self.target.bracket(&fi, &self.matrix.column(j));
                if lhs != rhs {
                    return Err(Error::NotAMorphism(format!(
                        "bracket of ({}, {}) not preserved",
                        names[i], names[j]
                    )));
                }
            }
            if self.apply(s.basis_pmap(i)) != self.target.p_power(&fi) {
                return Err(Error::NotAMorphism(format!(
                    "p-map not preserved on {}",
                    names[i]
                )));
            }
        }
        Ok(())
    }

    /// Checks `f(x^[p]) = f(x)^[p]` on `count` random elements from `seed`.
    pub fn check_samples(&self, seed: u64, count: usize) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            let x = self.source.random_element(&mut rng);
            let lhs = self.apply(&self.source.p_power(&x));
            let rhs = self.target.p_power(&self.apply(&x));
            if lhs != rhs {
                return Err(Error::NotAMorphism(format!(
                    "p-map not preserved on {}",
                    self.source.format_element(&x)
                )));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &AlgebraSpec {
        &self.source
    }

    pub fn target(&self) -> &AlgebraSpec {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(x)
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }

    pub fn image_of(&self, s: &Subspace) -> Subspace {
        s.map(&self.matrix)
    }
}

impl AlgebraSpec {
    /// Checks that `i` is an ideal stable under the p-map. Basis checks
    /// suffice: the Jacobson terms are Lie words and lie in any ideal.
    pub fn check_p_ideal(&self, i: &Subspace) -> Result<()> {
        self.check_ambient(i)?;
        for b in i.basis() {
            for j in 0..self.dim() {
                let w = self.bracket(&self.basis_vector(j), b);
                if !i.contains_vector(&w) {
                    return Err(Error::NotAnIdeal { witness: w });
                }
            }
        }
        for b in i.basis() {
            let w = self.p_power(b);
            if !i.contains_vector(&w) {
                return Err(Error::NotPStable { witness: w });
            }
        }
        Ok(())
    }

    /// Checks that `h` is a p-subalgebra (bracket- and p-closed on a basis).
    pub fn check_p_subalgebra(&self, h: &Subspace) -> Result<()> {
        self.check_ambient(h)?;
        let b = h.basis();
        for i in 0..b.len() {
            for j in (i + 1)..b.len() {
                let w = self.bracket(&b[i], &b[j]);
                if !h.contains_vector(&w) {
                    return Err(Error::NotClosed { witness: w });
                }
            }
            let w = self.p_power(&b[i]);
            if !h.contains_vector(&w) {
                return Err(Error::NotClosed { witness: w });
            }
        }
        Ok(())
    }

    pub(crate) fn check_ambient(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: s.ambient_dim(),
            });
        }
        if s.field() != self.field() {
            return Err(Error::FieldMismatch {
                expected: self.p(),
                got: s.field().p(),
            });
        }
        Ok(())
    }

    /// `g / i` on the standard complement of `i`, with the projection.
    pub fn quotient(&self, i: &Subspace) -> Result<(AlgebraSpec, PMorphism)> {
        self.check_p_ideal(i)?;
        let comp = i.standard_complement();
        let reps = comp.basis();
        let names: Vec<String> = comp
            .pivots()
            .iter()
            .map(|&c| self.basis_names()[c].clone())
            .collect();
        let q = |v: &[u32]| i.quotient_coordinates(v);
        let mut brackets = Vec::new();
        for a in 0..reps.len() {
            for b in (a + 1)..reps.len() {
                let c = q(&self.bracket(&reps[a], &reps[b]));
                if c.iter().any(|&x| x != 0) {
                    brackets.push(((a, b), c));
                }
            }
        }
        let pmap = reps.iter().map(|r| q(&self.p_power(r))).collect();
        let quotient = AlgebraSpec::new_unverified(
            self.p(),
            format!("{}/ideal", self.name()),
            names,
            &brackets,
            pmap,
        )?;
        let cols: Vec<Vec<u32>> = (0..self.dim()).map(|j| q(&self.basis_vector(j))).collect();
        let proj = Matrix::from_columns(self.field(), reps.len(), &cols);
        let pi = PMorphism::new(self.clone(), quotient.clone(), proj)?;
        Ok((quotient, pi))
    }

    /// The p-subalgebra `h` as an algebra in its canonical basis.
    pub fn restrict(&self, h: &Subspace) -> Result<AlgebraSpec> {
        Ok(self.restrict_with_embedding(h)?.0)
    }

    pub fn restrict_with_embedding(&self, h: &Subspace) -> Result<(AlgebraSpec, PMorphism)> {
        self.check_p_subalgebra(h)?;
        let b = h.basis();
        let names: Vec<String> = b
            .iter()
            .map(|v| {
                let nz: Vec<usize> = (0..v.len()).filter(|&k| v[k] != 0).collect();
                if nz.len() == 1 && v[nz[0]] == 1 {
                    self.basis_names()[nz[0]].clone()
                } else {
                    format_combination(self.basis_names(), v)
                }
            })
            .collect();
        let coords = |v: &[u32]| h.coordinates(v).expect("closure checked");
        let mut brackets = Vec::new();
        for i in 0..b.len() {
            for j in (i + 1)..b.len() {
                let c = coords(&self.bracket(&b[i], &b[j]));
                if c.iter().any(|&x| x != 0) {
                    brackets.push(((i, j), c));
                }
            }
        }
        let pmap = b.iter().map(|v| coords(&self.p_power(v))).collect();
        let sub = AlgebraSpec::new_unverified(
            self.p(),
            format!("{}|sub", self.name()),
            names,
            &brackets,
            pmap,
        )?;
        let emb = Matrix::from_columns(self.field(), self.dim(), b);
        let iota = PMorphism::new(sub.clone(), self.clone(), emb)?;
        Ok((sub, iota))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn borel() -> AlgebraSpec {
        AlgebraSpec::new(
            5,
            "borel2",
            vec!["t".into(), "u".into()],
            &[((0, 1), vec![0, 1])],
            vec![vec![1, 0], vec![0, 0]],
        )
        .unwrap()
    }

    fn heisenberg() -> AlgebraSpec {
        AlgebraSpec::new(
            5,
            "heisenberg",
            vec!["x".into(), "y".into(), "z".into()],
            &[((0, 1), vec![0, 0, 1])],
            vec![vec![0; 3]; 3],
        )
        .unwrap()
    }

    #[test]
    fn borel_mod_u() {
        let b = borel();
        let (q, pi) = b.quotient(&b.span(&[vec![0, 1]])).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.basis_pmap(0), &[1]);
        assert_eq!(pi.apply(&[3, 4]), vec![3]);
    }

    #[test]
    fn heisenberg_mod_center_is_abelian() {
        let h = heisenberg();
        let (q, _) = h.quotient(&h.span(&[vec![0, 0, 1]])).unwrap();
        assert!(q.is_abelian());
        assert_eq!(q.pmap_table(), &[vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn quotient_by_zero_is_isomorphic() {
        let b = borel();
        let (q, pi) = b.quotient(&b.zero_subspace()).unwrap();
        assert_eq!(q.bracket_terms(), b.bracket_terms());
        assert_eq!(q.pmap_table(), b.pmap_table());
        assert_eq!(pi.matrix(), &Matrix::identity(b.field(), 2));
    }

    #[test]
    fn non_ideal_is_rejected() {
        let b = borel();
        match b.quotient(&b.span(&[vec![1, 0]])) {
            Err(Error::NotAnIdeal { witness }) => assert_eq!(witness, vec![0, 4]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn restrict_full_is_identical() {
        let b = borel();
        let r = b.restrict(&b.full()).unwrap();
        assert_eq!(r.bracket_terms(), b.bracket_terms());
        assert_eq!(r.pmap_table(), b.pmap_table());
        assert_eq!(r.basis_names(), b.basis_names());
    }

    #[test]
    fn restrict_rejects_unclosed() {
        let h = heisenberg();
        let s = h.span(&[vec![1, 0, 0], vec![0, 1, 0]]);
        assert!(matches!(h.restrict(&s), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn bad_morphism_rejected() {
        let b = borel();
        // t -> u does not preserve the p-map.
        let m = Matrix::from_columns(b.field(), 2, &[vec![0, 1], vec![0, 0]]);
        assert!(PMorphism::new(b.clone(), b, m).is_err());
    }
}
