use crate::error::{Error, Result};
use crate::ffarith::ExtField;
use crate::linalg::Subspace;

/// The `F_p[X]`-submodule of `F_{p^k}` generated by `elements`, with `X`
/// acting as the Frobenius.
pub fn frobenius_module(ext: &ExtField, elements: &[Vec<u32>]) -> Subspace {
    let k = ext.degree();
    let mut gens = Vec::new();
    for x in elements {
        let mut y = x.clone();
        for _ in 0..k {
            gens.push(y.clone());
            y = ext.frobenius(&y, 1);
        }
    }
    Subspace::span(ext.base(), k, &gens)
}

/// Whether `F_p[X]·t` is all of `m`.
pub fn generates(ext: &ExtField, t: &[u32], m: &Subspace) -> bool {
    frobenius_module(ext, &[t.to_vec()]) == *m
}

/// A single generator of the module generated by `elements`.
///
/// The inputs are tried first, in order; then the module's elements are
/// scanned in the field's element order. Refuses if the field has more than
/// `budget` elements.
pub fn cyclic_generator(ext: &ExtField, elements: &[Vec<u32>], budget: u128) -> Result<Vec<u32>> {
    if ext.order() as u128 > budget {
        return Err(Error::budget(ext.order() as u128, budget));
    }
    for x in elements {
        if x.len() != ext.degree() || x.iter().any(|&c| c >= ext.p()) {
            return Err(Error::Invalid(format!("{x:?} is not an element of F_{}", ext.order())));
        }
    }
    let m = frobenius_module(ext, elements);
    if let Some(x) = elements.iter().find(|x| generates(ext, x, &m)) {
        return Ok(x.clone());
    }
    ext.elements()
        .filter(|x| m.contains_vector(x))
        .find(|x| generates(ext, x, &m))
        .ok_or(Error::NoGenerator)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_subfield_is_generated_by_one() {
        let f = ExtField::with_least_modulus(5, 2).unwrap();
        assert_eq!(cyclic_generator(&f, &[vec![1, 0]], 1000).unwrap(), vec![1, 0]);
    }

    #[test]
    fn scan_returns_least_generator() {
        let f = ExtField::with_least_modulus(5, 2).unwrap();
        let g = cyclic_generator(&f, &[vec![1, 0], vec![0, 1]], 1000).unwrap();
        // Oracle: first element, in field order, with {a, a^5} independent.
        let expect = f
            .elements()
            .find(|a| {
                let b = f.frobenius(a, 1);
                (a[0] * b[1] + 25 - (a[1] * b[0]) % 5) % 5 != 0
            })
            .unwrap();
        assert_eq!(g, expect);
        assert_eq!(g, vec![1, 1]);
    }

    #[test]
    fn normal_basis_element_is_returned() {
        let f = ExtField::with_least_modulus(5, 3).unwrap();
        let m = Subspace::full(f.base(), 3);
        let alpha = f.elements().find(|a| generates(&f, a, &m)).unwrap();
        assert_eq!(cyclic_generator(&f, &[alpha.clone()], 1000).unwrap(), alpha);
    }

    #[test]
    fn budget_is_enforced() {
        let f = ExtField::with_least_modulus(5, 3).unwrap();
        assert!(matches!(
            cyclic_generator(&f, &[vec![1, 0, 0]], 10),
            Err(Error::BudgetExceeded { required: 125, .. })
        ));
    }
}
