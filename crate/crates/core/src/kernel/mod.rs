//! Exact polynomial arithmetic over the Gaussian rationals.

mod gaussian;
pub mod groebner;
mod ideal;
pub mod linalg;
mod monomial;
mod parse;
mod poly;
mod ratfunc;
mod ringmap;
mod vars;

pub use gaussian::GaussianRational;
pub use groebner::{buchberger, GroebnerBasis};
pub use ideal::{ideal_equal, ideal_member, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, parse_rational};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use ringmap::{parse_ratfunc, RingMap};
pub use vars::{VarFlag, VarTable, Vars};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different variable tables")]
    VarTableMismatch,
    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("conjugation undefined: variable {0} is generic")]
    ConjugationUndefined(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("duplicate variable {0}")]
    DuplicateVariable(String),
    #[error("invalid variable name {0:?}")]
    InvalidVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("groebner step budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("basis was computed under a different monomial order")]
    OrderMismatch,
}
