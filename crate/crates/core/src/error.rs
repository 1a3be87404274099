use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the physically meaningful range.
    #[error("domain error: {0}")]
    Domain(String),
    /// A structural invariant of a state or matrix does not hold.
    #[error("integrity error: {0}")]
    Integrity(String),
    /// The dense reference path refuses truncations it cannot afford.
    #[error("n_max = {requested} exceeds the dense oracle limit of {limit}")]
    CostGuard { requested: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn integrity(msg: impl Into<String>) -> Error {
    Error::Integrity(msg.into())
}
