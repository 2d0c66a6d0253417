use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("interval does not isolate exactly one root: {0}")]
    NotIsolating(String),
    #[error("operation not supported for this base: {0}")]
    UnsupportedBase(String),
    #[error("digit {digit} outside alphabet 0..={m}")]
    DigitOutOfRange { digit: u32, m: u32 },
    #[error("last digit is at the alphabet bound")]
    LastDigitAtBound,
    #[error("point lies outside J_q = [0, M/(q-1)]")]
    OutOfJq,
    #[error("point is not in V_q \\ U_q")]
    NotInVMinusU,
    #[error("point is not a nonzero univoque point")]
    NotUnivoquePoint,
    #[error("base is not below the generalized golden ratio")]
    BaseTooLarge,
    #[error("base is not an integer")]
    NotInteger,
    #[error("no right endpoint found with period at most {0}")]
    PeriodBoundExceeded(usize),
    #[error("seed word is not admissible: {0}")]
    InadmissibleSeed(String),
    #[error("word is not admissible: {0}")]
    Inadmissible(String),
    #[error("prefix budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("greedy expansion is not finite")]
    NotFiniteGreedy,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("exact decision not reached within depth {0}")]
    Undecided(usize),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
