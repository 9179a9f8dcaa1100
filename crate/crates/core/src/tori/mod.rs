//! Semisimple and p-nilpotent structure: Jordan decomposition of elements,
//! toral splittings of abelian p-subalgebras, purity, p-th roots, lifting,
//! Engel and Cartan subalgebras, maximal tori.

mod abelian;
mod cartan;

pub use abelian::{
    classify_element, is_pure, lift_p_nilpotent, p_map_matrix, p_th_root, pure_complement,
    purity, toral_decomposition, Classification, ElementClass, JordanPair, PurityMode,
    PurityOutcome, RootResult, RootScope, ToralSplit,
};
pub use cartan::{
    cartan_subalgebras, engel, engel_of, is_torus, maximal_tori, nilpotent_decomposition,
    CartanOptions, CartanReport, TaggedCartan, ToriSearch,
};

use crate::linalg::Subspace;

/// The subspace of the ambient algebra whose coordinates relative to `a`
/// form `s`.
pub(crate) fn lift(a: &Subspace, s: &Subspace) -> Subspace {
    let vs: Vec<Vec<u32>> = s.basis().iter().map(|c| a.combine(c)).collect();
    Subspace::span(a.field(), a.ambient_dim(), &vs)
}

/// `s ⊆ a`, in coordinates relative to `a`.
pub(crate) fn coords_of(a: &Subspace, s: &Subspace) -> Subspace {
    let vs: Vec<Vec<u32>> = s
        .basis()
        .iter()
        .map(|v| a.coordinates(v).expect("contained"))
        .collect();
    Subspace::span(a.field(), a.dim(), &vs)
}
