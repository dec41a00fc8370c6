use alloc::string::String;
use core::fmt;

/// Errors surfaced by the kernel.
///
/// Structural errors indicate that a parameter pair broke an assumption the
/// partition construction relies on (they are reported, never silently
/// repaired); numerical errors indicate a residual above its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A matrix or vector had the wrong dimension.
    Dimension { expected: usize, got: usize },
    /// The parameter pair violates `a > b > 0` (or is not finite).
    InvalidParams { a: f64, b: f64 },
    /// An input was outside the domain of the operation.
    Domain(String),
    /// A structural assumption failed (wrong root count, ordering violation,
    /// failed coincidence identity, ...).
    Structural(String),
    /// A residual exceeded its tolerance.
    Numerical(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::InvalidParams { a, b } => {
                write!(f, "invalid parameters: require a > b > 0, got a={a}, b={b}")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Structural(msg) => write!(f, "structural error: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical error: {msg}"),
        }
    }
}
