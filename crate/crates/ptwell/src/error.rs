use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the solvers and the verification oracle.
///
/// Numeric payloads are carried as `f64` regardless of the scalar type the
/// computation ran in; they are diagnostics, not data.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument left the mathematical domain of an operation.
    #[error("domain error: {what} = {value} violates {requirement}")]
    Domain {
        what: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// An iterative solver hit its iteration cap.
    #[error("no convergence after {iterations} iterations (last bracket [{bracket_lo}, {bracket_hi}])")]
    Convergence {
        iterations: u32,
        bracket_lo: f64,
        bracket_hi: f64,
    },

    /// A sign-change scan contradicted the single-root structure.
    #[error("structural failure: expected exactly one sign change of the secular residual, found {found}")]
    Structural { found: usize },

    /// An oracle configuration violated a grid invariant.
    #[error("oracle configuration error: {0}")]
    Config(String),

    /// The finite-difference eigensolver failed.
    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    /// A wave function was requested from an unconverged level.
    #[error("level N={index} is not converged (secular residual {residual:e})")]
    NotConverged { index: u32, residual: f64 },
}
