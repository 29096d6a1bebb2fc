use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
///
/// Quadrature that exhausts its refinement budget is *not* an error; it is
/// reported through [`crate::quad::Estimate::converged`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the routine.
    #[error("{name} = {value} is outside the domain: {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// The integrand returned NaN or an infinity at an interior abscissa.
    #[error("integrand is not finite at x = {x} (value {value})")]
    NonFinite { x: f64, value: f64 },

    /// A series or iteration hit its hard cap before reaching the requested accuracy.
    #[error("{what} did not reach the requested accuracy within {limit} steps")]
    Accuracy { what: &'static str, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        expected,
    }
}
