use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// The geometry collapses (e.g. a wall at rest cannot quantize modes).
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    /// An iteration (root search, quadrature refinement) did not settle.
    #[error("convergence error: {0}")]
    Convergence(String),
    /// A result could not be certified to the requested accuracy.
    #[error("accuracy error: {0}")]
    Accuracy(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

impl Error {
    /// True for the variants that signal a numerical (not input) failure.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Convergence(_) | Error::Accuracy(_))
    }
}
