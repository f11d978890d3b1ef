//! Error taxonomy shared by every module.

use thiserror::Error;

/// Library-wide error type.
///
/// The CLI maps these onto exit codes: `Domain`, `DivisionByZero`,
/// `Reducible`, and `Regime` are usage/domain errors; `Resource` signals
/// an exhausted cap (never a wrong answer); `Consistency` means two
/// independent computations of the same fact disagreed, which indicates
/// an arithmetic bug and is never tolerated silently.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("reducible polynomial: {0}")]
    Reducible(String),

    #[error("regime error: {0}")]
    Regime(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
