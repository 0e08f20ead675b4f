use thiserror::Error;

use crate::slcurve::EmbeddingReport;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("every input polynomial is zero")]
    AllZeroInput,
    #[error("resource budget exceeded: {0}")]
    ResourceExceeded(String),
    #[error("variable context error: {0}")]
    VariableContext(String),
    #[error("assignment does not admit a section polynomial (not a closed embedding)")]
    NotASection,
    #[error("matrix is not unimodular: det = {0}")]
    NotUnimodular(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid generator support: {0}")]
    InvalidSupport(String),
    #[error("curve multiplier does not preserve the first column: {0}")]
    FirstColumnNotPreserved(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("curve is not an embedding: {0}")]
    NotAnEmbedding(Box<EmbeddingReport>),
    #[error("randomized search exhausted after {trials} trials")]
    SearchExhausted { trials: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("division obstruction: {0}")]
    DivisionObstruction(String),
    #[error("unsupported matrix size n = {0}")]
    UnsupportedSize(usize),
    #[error("g2 does not divide g1*g3 - 1 (remainder {0})")]
    DivisibilityFails(String),
    #[error("divisibility heuristic failed within budget {budget}")]
    HeuristicFailed { budget: usize },
    #[error("degree obstruction: neither of {0} and {1} divides the other")]
    DegreeObstruction(usize, usize),
    #[error("plane curve passes through the origin at t = {0}")]
    OriginOnCurve(String),
}

pub type Result<T> = std::result::Result<T, Error>;
