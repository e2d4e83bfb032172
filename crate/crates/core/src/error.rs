use alloc::string::String;

/// Errors surfaced by the numeric layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative solver exhausted its budget.
    #[error("convergence failure: {0}")]
    Convergence(String),
    /// The eigensolver or another matrix routine failed.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// A data column has no variance, so it cannot be standardized.
    #[error("column {0} has zero variance")]
    DegenerateColumn(usize),
    /// An index argument is out of range.
    #[error("range error: {0}")]
    Range(String),
    /// A spiked and a bulk eigenvalue coincide exactly.
    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),
    /// The parameter fit had no usable optimum.
    #[error("fit failure: {0}")]
    Fit(String),
    /// A named distribution is not recognized.
    #[error("unknown distribution: {0}")]
    UnknownDistribution(String),
    /// A configuration value is invalid.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// The requested method is not handled by this operation.
    #[error("unsupported method: {0}")]
    UnsupportedMethod(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn convergence(msg: impl Into<String>) -> Self {
        Error::Convergence(msg.into())
    }
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
