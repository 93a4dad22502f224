use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands live in symmetric groups of different rank.
    RankMismatch { left: usize, right: usize },
    /// Text or data that does not describe a valid value.
    Parse(String),
    InvalidPermutation(String),
    InvalidGenSet(String),
    InvalidSegment { b: i64, e: i64 },
    /// An operation was called outside its domain.
    Precondition(String),
    /// A poset enumeration hit the element cap.
    EnumerationCap { cap: usize },
    /// `S(a)` has more than one minimal element.
    NonUniqueMinimum { count: usize },
    /// The upper-interval realization of `S(a)` failed its checks.
    Realization { input: String, reason: String },
    /// The parabolic reduction loop did not terminate within its bound.
    IterationCap { input: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::InvalidPermutation(msg) => write!(f, "invalid permutation: {msg}"),
            Error::InvalidGenSet(msg) => write!(f, "invalid generator set: {msg}"),
            Error::InvalidSegment { b, e } => write!(f, "invalid segment [{b},{e}]: b > e"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::EnumerationCap { cap } => {
                write!(f, "poset enumeration exceeded the cap of {cap} elements")
            }
            Error::NonUniqueMinimum { count } => {
                write!(f, "poset has {count} minimal elements, expected exactly one")
            }
            Error::Realization { input, reason } => {
                write!(f, "interval realization failed for {input}: {reason}")
            }
            Error::IterationCap { input } => {
                write!(f, "parabolic reduction did not terminate for {input}")
            }
        }
    }
}

impl core::error::Error for Error {}
