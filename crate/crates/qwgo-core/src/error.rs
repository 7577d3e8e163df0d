use core::fmt;

/// Errors surfaced by the emulation kernels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    Domain(&'static str),
    /// A computation produced no usable result (overflow, zero mass, ...).
    Numerical(&'static str),
    /// Two containers that must share a length do not.
    DimensionMismatch { expected: usize, found: usize },
    /// A state index beyond the register size.
    IndexOutOfRange { index: usize, len: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for register of {len} states")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_informative() {
        let e = Error::DimensionMismatch { expected: 8, found: 4 };
        assert_eq!(e.to_string(), "dimension mismatch: expected 8, found 4");
        assert!(Error::Domain("z must be nonnegative").to_string().contains("nonnegative"));
    }
}
