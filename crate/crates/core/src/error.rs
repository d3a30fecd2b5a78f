//! Error types shared across the crate.

use thiserror::Error;

/// Evaluation left the domain where the profile equation is defined.
///
/// The structural quantity `w = r - y r'` is bounded below by a positive
/// constant on expander solutions, so a tiny `|λ w|` signals exit from the
/// regime rather than a need for regularization.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("radius not positive: r = {r}")]
    NonPositiveRadius { r: f64 },
    #[error("denominator |λ·w| = {scaled} below floor {floor}")]
    DenominatorFloor { scaled: f64, floor: f64 },
}

/// Errors from the Picard local solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PicardError {
    #[error("parameter out of range: {0}")]
    Param(String),
    #[error("fixed-point iteration did not converge within {max_iter} iterations (last delta {last_delta})")]
    NoConvergence { max_iter: usize, last_delta: f64 },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Errors from the global integrator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegrateError {
    #[error("invalid integration setup: {0}")]
    Param(String),
    #[error("Picard and Runge-Kutta starts disagree: sup-difference {sup_diff} exceeds {tol}")]
    CrossCheckFailure { sup_diff: f64, tol: f64 },
    #[error("query y = {y} outside profile span [{lo}, {hi}]")]
    Range { y: f64, lo: f64, hi: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Picard(#[from] PicardError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Errors from the profile analysis layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("r'' never changes sign on the integrated span (horizon too short or fault)")]
    NoInflection,
    #[error("r'' changes sign {count} times; the profile equation admits exactly one")]
    MultipleInflections { count: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}
