use thiserror::Error;

/// Errors raised by the numerical and combinatorial routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// A series or quadrature did not reach the requested accuracy.
    #[error("accuracy error in {func}: {detail}")]
    Accuracy { func: &'static str, detail: String },

    /// A linear system was singular or too ill-conditioned to trust.
    #[error("numeric error in {func}: {detail}")]
    Numeric { func: &'static str, detail: String },

    /// The truncation window leaves too much mass outside.
    #[error("window too small: boundary mass {boundary_mass:e} exceeds {limit:e} (n_max = {n_max})")]
    WindowTooSmall { n_max: usize, boundary_mass: f64, limit: f64 },

    /// The Poisson tail beyond the enumeration cutoff is not negligible.
    #[error("poisson tail {tail:e} beyond n_cut = {n_cut} exceeds {limit:e}")]
    TailTooLarge { n_cut: usize, tail: f64, limit: f64 },

    /// Invalid parameters or malformed input data.
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain { func, detail: detail.into() }
}

pub(crate) fn accuracy(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Accuracy { func, detail: detail.into() }
}

pub(crate) fn numeric(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Numeric { func, detail: detail.into() }
}
