//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by a series with zero constant term")]
    DivisionByNonUnit,

    #[error("eisenstein weight must be even and >= 2, got {0}")]
    BadEisensteinWeight(i64),

    #[error("fit is under-determined: {unknowns} unknowns but only {equations} equations")]
    UnderDetermined { unknowns: usize, equations: usize },

    #[error("order too small for requested fit: need order >= {needed}, got {got}")]
    OrderTooSmallForFit { needed: usize, got: usize },

    #[error("no quasimodular fit of weight <= {max_weight}: first mismatch at q^{first_mismatch}")]
    FitMismatch { max_weight: u32, first_mismatch: usize },

    #[error("oracle budget exceeded: needs {required} loop iterations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("cross-check failed in {context}: paths differ first at q^{first_diff}")]
    CrossCheckMismatch { context: String, first_diff: usize },

    #[error("graph must be reduced (no loops) for constant-term extraction")]
    GraphNotReduced,

    #[error("edge exponents must be even, got {0}")]
    OddEdgeExponent(u32),

    #[error("zeta0_Z_power supports e in 1..=7 (needs only G2,G4,G6), got {0}")]
    UnsupportedZPower(u32),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
