use core::fmt;

/// Errors raised by the tensor operations.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An argument lies outside the operation's domain (wrong order, zero
    /// tensor, broken index symmetry, violated reality constraint, ...).
    Domain(&'static str),
    /// Input dimensions do not match what the operation expects.
    Dimension { expected: usize, found: usize },
    /// A class-defining inequality fails: the tensor is (numerically) in a
    /// more symmetric class than the operation requires.
    Degenerate {
        quantity: &'static str,
        value: f64,
        threshold: f64,
    },
    /// Root pairing failed; the form is too ill-conditioned to factor.
    Conditioning {
        reason: &'static str,
        residual: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Dimension { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Degenerate {
                quantity,
                value,
                threshold,
            } => write!(
                f,
                "degenerate class: {quantity} = {value:e} is below the threshold {threshold:e}"
            ),
            Error::Conditioning { reason, residual } => {
                write!(f, "numerical conditioning: {reason} (residual {residual:e})")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
