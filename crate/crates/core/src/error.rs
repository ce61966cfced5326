use thiserror::Error;

use crate::qalg::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("substitution makes the denominator vanish")]
    SubstitutionSingular,

    #[error("cannot expand in {0}: denominator has no constant term in {0}")]
    NotExpandable(Var),

    #[error("exact division failed: {0}")]
    InexactDivision(String),

    #[error("enumeration needs {size} points, above the limit {limit}")]
    Resource { size: u128, limit: u128 },

    #[error("closed form did not clear to an integer: {0}")]
    NonIntegral(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
