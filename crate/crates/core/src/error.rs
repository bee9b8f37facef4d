use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input violates a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The field is Q(i) or Q(sqrt(-3)), where the curve model degenerates.
    #[error("unsupported field: d_K = {0} (Q(sqrt(-1)) and Q(sqrt(-3)) are excluded)")]
    UnsupportedField(i64),

    /// The requested accuracy cannot be reached.
    #[error("precision error: {reason} (achievable digits: {achievable_digits})")]
    Precision { reason: String, achievable_digits: u32 },

    /// Evaluation at a lattice point of the Weierstrass function.
    #[error("pole: {0}")]
    Pole(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
