//! Real forms of a family of complex surfaces: exact symbolic checks,
//! lattice enumeration, classification and the blow-up construction.

pub mod classification;
pub mod intersection;
pub mod kernel;
pub mod modification;
pub mod report;
pub mod suite;
pub mod surfaces;

pub use kernel::KernelError;
pub use report::{CertifiedReport, Claim, Status};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("forbidden parameter: {0}")]
    ForbiddenParameter(String),
    #[error("not an anti-regular involution: {0}")]
    NotAntiInvolution(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("configuration not stable under conjugation: {0}")]
    NotConjugationStable(String),
    #[error("not a curve class: {0}")]
    NotACurveClass(String),
    #[error("points coincide")]
    IdenticalPoints,
    #[error("classes live in different lattices")]
    LatticeMismatch,
    #[error("distinguished element is not in the ideal: {0}")]
    FNotInIdeal(String),
    #[error("point is not on the variety: {0}")]
    PointNotOnVariety(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
