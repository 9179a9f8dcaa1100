//! Exact linear algebra over `F_p`: matrices, canonical subspaces and their
//! lattice operations, and budgeted subspace enumeration.

mod enumerate;
mod matrix;
mod subspace;

pub use enumerate::{
    all_vectors, enumerate_subspaces, gaussian_binomial, projective_points, subspace_count,
    SubspaceIter, DEFAULT_ENUM_BUDGET,
};
pub use matrix::Matrix;
pub use subspace::Subspace;
