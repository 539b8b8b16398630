use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("channel index {channel} out of range for {channels} channels")]
    ChannelOutOfRange { channel: usize, channels: usize },
    #[error("time index {time} out of range for length {length}")]
    TimeOutOfRange { time: usize, length: usize },
    #[error("duplicate entry ({0}, {1}) in scheduling pattern")]
    DuplicateEntry(usize, usize),
    #[error("empty scheduling pattern")]
    EmptyPattern,
    #[error("pattern {index} has weight {found}, expected {expected}")]
    WeightMismatch {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("patterns {0} and {1} are the same codeword")]
    DuplicatePattern(usize, usize),
    #[error("classification is only defined for weights 3 and 4, got {0}")]
    ClassificationUnsupported(usize),
    #[error("cross-correlation needs two distinct codewords, got index {0} twice")]
    InvalidPair(usize),
    #[error("pattern index {0} out of range")]
    PatternIndexOutOfRange(usize),
    #[error("bound not applicable: {0}")]
    BoundNotApplicable(String),
    #[error("unsupported weight {0}")]
    UnsupportedWeight(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("a difference matrix over Z_{modulus} has at most {modulus} rows, got {rows}")]
    TooManyRows { rows: usize, modulus: usize },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("construction unavailable: {0}")]
    ConstructionUnavailable(String),
    #[error("shape infeasible: {0}")]
    ShapeInfeasible(String),
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("node uses a pattern that is not a codeword of the code")]
    UnknownCodeword,
    #[error("guarantee not claimed: {0}")]
    GuaranteeNotClaimed(String),
    #[error("unknown catalog fixture '{0}'")]
    UnknownFixture(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
