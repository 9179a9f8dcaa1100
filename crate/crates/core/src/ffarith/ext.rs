use super::poly;
use super::PrimeField;
use crate::error::{Error, Result};

/// `F_{p^k}` as `F_p[X]/(m)` for a monic irreducible `m` of degree `k`.
///
/// Elements are coefficient vectors of length `k`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtField {
    base: PrimeField,
    k: usize,
    modulus: Vec<u32>,
}

/// Irreducibility is checked by trial factorisation, which is only cheap for
/// small degrees.
pub const MAX_EXTENSION_DEGREE: usize = 6;

impl ExtField {
    /// Builds the field from an explicit modulus given lowest degree first.
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let modulus = poly::trim(modulus);
        let k = poly::degree(&modulus)
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidModulus("degree must be at least 1".into()))?;
        if k > MAX_EXTENSION_DEGREE {
            return Err(Error::InvalidModulus(format!(
                "degree {k} exceeds {MAX_EXTENSION_DEGREE}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus("coefficients not reduced".into()));
        }
        if modulus[k] != 1 {
            return Err(Error::InvalidModulus("modulus is not monic".into()));
        }
        if !poly::is_irreducible(base, &modulus) {
            return Err(Error::InvalidModulus(format!(
                "{modulus:?} is reducible over F_{p}"
            )));
        }
        Ok(ExtField { base, k, modulus })
    }

    /// `F_{p^k}` with the least irreducible monic modulus (ordering of
    /// [`poly::monic_of_degree`]).
    pub fn with_least_modulus(p: u32, k: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if k == 0 || k > MAX_EXTENSION_DEGREE {
            return Err(Error::InvalidModulus(format!("unsupported degree {k}")));
        }
        let modulus = poly::monic_of_degree(p, k)
            .find(|m| poly::is_irreducible(base, m))
            .expect("irreducible polynomials exist in every degree");
        Ok(ExtField { base, k, modulus })
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn p(&self) -> u32 {
        self.base.p()
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        (self.p() as u64).pow(self.k as u32)
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.k]
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    /// The `n`-th element in base-`p` digit order (lowest coefficient first).
    pub fn element(&self, mut n: u64) -> Vec<u32> {
        let p = self.p() as u64;
        (0..self.k)
            .map(|_| {
                let d = (n % p) as u32;
                n /= p;
                d
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.order()).map(move |n| self.element(n))
    }

    fn pad(&self, mut v: Vec<u32>) -> Vec<u32> {
        v.resize(self.k, 0);
        v
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.base.add_vec(a, b)
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.base.sub_vec(a, b)
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let prod = poly::mul(self.base, a, b);
        self.pad(poly::rem(self.base, &prod, &self.modulus))
    }

    pub fn pow(&self, a: &[u32], e: u64) -> Vec<u32> {
        self.pad(poly::powmod(self.base, a, e, &self.modulus))
    }

    /// `x^(p^iterations)`, by repeated `p`-th powering.
    pub fn frobenius(&self, x: &[u32], iterations: usize) -> Vec<u32> {
        let mut y = x.to_vec();
        for _ in 0..iterations {
            y = self.pow(&y, self.p() as u64);
        }
        y
    }

    /// Matrix of the Frobenius map in the basis `1, X, ..., X^{k-1}`
    /// (column `j` is the image of `X^j`).
    pub fn frobenius_matrix(&self) -> Vec<Vec<u32>> {
        let cols: Vec<Vec<u32>> = (0..self.k)
            .map(|j| {
                let mut e = self.zero();
                e[j] = 1;
                self.frobenius(&e, 1)
            })
            .collect();
        (0..self.k)
            .map(|i| (0..self.k).map(|j| cols[j][i]).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_modulus_for_25_is_x2_plus_2() {
        let f = ExtField::with_least_modulus(5, 2).unwrap();
        assert_eq!(f.modulus(), &[2, 0, 1]);
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(ExtField::new(5, vec![1, 0, 1]).is_err());
        assert!(ExtField::new(5, vec![2, 0, 2]).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let f = ExtField::new(5, vec![2, 0, 1]).unwrap();
        let x = vec![0, 1];
        // Oracle: x^(5^2) by plain repeated multiplication.
        let mut y = f.one();
        for _ in 0..25 {
            y = f.mul(&y, &x);
        }
        assert_eq!(y, x);
        assert_eq!(f.frobenius(&x, 2), x);
        assert_eq!(f.frobenius(&[3, 0], 1), vec![3, 0]);
        assert_eq!(f.frobenius(&[0, 0], 7), vec![0, 0]);
    }

    #[test]
    fn frobenius_fixes_everything_after_k_steps() {
        for (p, k) in [(3, 3), (5, 2), (5, 3), (7, 2), (3, 4)] {
            let f = ExtField::with_least_modulus(p, k).unwrap();
            for x in f.elements() {
                assert_eq!(f.frobenius(&x, k), x);
            }
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism() {
        use rand::{Rng, SeedableRng};
        let f = ExtField::with_least_modulus(7, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = f.element(rng.gen_range(0..f.order()));
            let b = f.element(rng.gen_range(0..f.order()));
            assert_eq!(
                f.frobenius(&f.mul(&a, &b), 1),
                f.mul(&f.frobenius(&a, 1), &f.frobenius(&b, 1))
            );
            assert_eq!(
                f.frobenius(&f.add(&a, &b), 1),
                f.add(&f.frobenius(&a, 1), &f.frobenius(&b, 1))
            );
        }
    }
}
