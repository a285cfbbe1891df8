use thiserror::Error;

/// Errors raised while building or analysing finite rings and modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring structure: {0}")]
    InvalidStructure(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid module action: {0}")]
    InvalidAction(String),
    #[error("modules are defined over different rings")]
    RingMismatch,
    #[error("operation requires a commutative ring")]
    NotCommutative,
    #[error("element set is not closed under the scalar action")]
    NotSubmoduleClosed,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    /// Two independent decision routes disagreed. Always a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
