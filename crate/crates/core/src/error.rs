use thiserror::Error;

/// Errors raised by the algebra kernels.
///
/// Variants carrying a `witness` hold a coefficient vector (or a short
/// description) of the element that broke the precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("field mismatch: expected p = {expected}, got p = {got}")]
    FieldMismatch { expected: u32, got: u32 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("budget exceeded: {required} items requested, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("subspace is not an ideal: bracket {witness:?} escapes it")]
    NotAnIdeal { witness: Vec<u32> },

    #[error("subspace is not stable under the p-map: {witness:?}")]
    NotPStable { witness: Vec<u32> },

    #[error("subspace is not closed: {witness:?}")]
    NotClosed { witness: Vec<u32> },

    #[error("subspace is not a subalgebra")]
    NotASubalgebra,

    #[error("subspace is not abelian: bracket {witness:?} is nonzero")]
    NotAbelian { witness: Vec<u32> },

    #[error("subspace is not an abelian p-ideal")]
    NotAbelianIdeal,

    #[error("subalgebra is not pure: {0}")]
    NotPure(String),

    #[error("quotient is not p-nilpotent of bounded exponent")]
    QuotientNotBoundedExponent,

    #[error("algebra has nonzero p-nilpotent element {witness:?}")]
    PNilpotentsExist { witness: Vec<u32> },

    #[error("no p-th root found for {witness:?}")]
    NoRoot { witness: Vec<u32> },

    #[error("image of {witness:?} is not p-nilpotent")]
    NotPNilpotentImage { witness: Vec<u32> },

    #[error("nilpotency class {class} exceeds p = {p}")]
    ClassTooLarge { class: usize, p: u32 },

    #[error("p-power kernel is not a subspace (exponent {exponent})")]
    KernelNotSubspace { exponent: usize },

    #[error("subspace is not a torus: {0}")]
    NotATorus(String),

    #[error("no cyclic generator found")]
    NoGenerator,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("morphism check failed: {0}")]
    NotAMorphism(String),

    #[error("restricted axioms fail: {0}")]
    NotRestricted(String),

    #[error("theorem check `{check}` failed: {detail}")]
    TheoremViolation { check: String, detail: String },
}

impl Error {
    pub(crate) fn theorem(check: &str, detail: impl Into<String>) -> Self {
        Error::TheoremViolation {
            check: check.to_string(),
            detail: detail.into(),
        }
    }

    pub(crate) fn budget(required: u128, budget: u128) -> Self {
        Error::BudgetExceeded { required, budget }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
