//! Exact computations in finite-dimensional restricted Lie algebras over
//! prime fields.

pub mod algebra;
pub mod analysis;
pub mod constructions;
pub mod error;
pub mod ffarith;
pub mod harness;
pub mod linalg;
pub mod pmodules;
pub mod simplicity;
pub mod tori;

pub use algebra::{AlgebraSpec, PMorphism};
pub use error::{Error, Result};
pub use linalg::{Matrix, Subspace};

/// Caps on exhaustive work: number of subspaces an enumeration may visit and
/// number of elements an element-wise scan may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub subspaces: u128,
    pub elements: u128,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            subspaces: linalg::DEFAULT_ENUM_BUDGET,
            elements: 1_000_000,
        }
    }
}

impl Budgets {
    /// Fails with the exact count when `p^dim` elements exceed the budget.
    pub fn check_elements(&self, p: u32, dim: usize) -> Result<()> {
        let n = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if n > self.elements {
            return Err(Error::BudgetExceeded {
                required: n,
                budget: self.elements,
            });
        }
        Ok(())
    }
}
