//! Error type shared by every module.

use alloc::string::String;

/// Failure modes of the library.
///
/// `InvalidParameter` covers construction-time rejections, `Domain` covers
/// evaluation requests outside a function's domain of definition, and
/// `NonConvergence` is reserved for adaptive schemes that exhaust their
/// escalation budget. The distinction matters to the CLI, which maps the
/// variants to distinct exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Rejected input at construction time.
    InvalidParameter(String),
    /// Evaluation point outside the domain of definition.
    Domain(String),
    /// An adaptive scheme reached its budget without meeting its tolerance.
    NonConvergence(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NonConvergence(msg) => write!(f, "non-convergence: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn non_convergence(msg: impl Into<String>) -> Self {
        Error::NonConvergence(msg.into())
    }
}
