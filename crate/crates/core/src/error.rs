use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A probability vector (or anything sized by one) had no entries.
    Empty,
    ProbabilityOutOfRange { index: usize, value: f64 },
    LengthMismatch { expected: usize, found: usize },
    NegativeDecay { index: usize, value: f64 },
    DecreasingDecay { index: usize },
    FactorOutOfRange(f64),
    InvalidInterval(f64),
    InvalidPermutation,
    /// Exhaustive search was asked for more items than it will enumerate.
    TooManyItems { n: usize, max: usize },
    InvalidModel(&'static str),
    /// The weakest-first integral needs more dimensions than the nested
    /// quadrature handles; use Monte Carlo instead.
    TooManyThresholds { active: usize, max: usize },
    ZeroTrials,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Empty => write!(f, "probability vector is empty"),
            Error::ProbabilityOutOfRange { index, value } => {
                write!(f, "probability at position {} is {}, outside [0, 1]", index + 1, value)
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::NegativeDecay { index, value } => {
                write!(f, "decay at stage {} is {}, must be >= 0", index + 1, value)
            }
            Error::DecreasingDecay { index } => {
                write!(f, "decay sequence decreases at stage {}", index + 1)
            }
            Error::FactorOutOfRange(p) => {
                write!(f, "multiplicative factor {p} outside the open interval (0, 1)")
            }
            Error::InvalidInterval(t) => write!(f, "interval {t} must be finite and > 0"),
            Error::InvalidPermutation => write!(f, "order is not a permutation of the items"),
            Error::TooManyItems { n, max } => {
                write!(f, "exhaustive search over {n} items exceeds the limit of {max}")
            }
            Error::InvalidModel(why) => write!(f, "invalid population model: {why}"),
            Error::TooManyThresholds { active, max } => write!(
                f,
                "{active} active thresholds exceed the quadrature limit of {max}; use Monte Carlo"
            ),
            Error::ZeroTrials => write!(f, "number of trials must be positive"),
        }
    }
}

impl core::error::Error for Error {}
