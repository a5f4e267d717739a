use thiserror::Error;

use crate::subdivision::SubdivisionWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid input: {0}")]
    Input(String),

    /// An exact chromatic-number computation ran out of node budget where the
    /// caller required an exact value.
    #[error("chromatic-number budget exhausted: {0}")]
    Budget(String),

    #[error("subdivision oracle size guard exceeded: {size} vertices > guard {guard}")]
    SizeGuard { size: usize, guard: usize },

    /// The input is not in the class the operation requires. Carries a witness
    /// when one could be extracted.
    #[error("graph is not {class}-free")]
    NotInClass { class: String, witness: Option<Box<SubdivisionWitness>> },

    /// A structural theorem failed to deliver on an input that met its
    /// hypotheses. Never expected; surfaces as a test failure.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn violation(msg: impl Into<String>) -> Self {
        Error::TheoremViolation(msg.into())
    }
}
