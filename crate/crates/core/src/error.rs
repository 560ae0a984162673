use thiserror::Error;

/// Errors raised anywhere in the toolkit.
///
/// Resource exhaustion is always reported as [`Error::Budget`], never as a
/// verdict, so callers can tell "no" apart from "gave up".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("ring mismatch: expected {expected} variables, found {found}")]
    RingMismatch { expected: usize, found: usize },
    #[error("the zero polynomial cannot be used as a generator")]
    ZeroGenerator,
    #[error("step budget of {limit} exhausted{}", context_suffix(.context))]
    Budget { limit: u64, context: String },
    #[error("Hadamard product undefined: every coordinate product vanishes")]
    AllZeroProduct,
    #[error("coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("the point has no nonzero coordinate")]
    ZeroPoint,
    #[error("operands live in different algebraic extensions")]
    IncompatibleExtensions,
    #[error("the variety is empty")]
    EmptyVariety,
    #[error("the system is not zero-dimensional")]
    NotZeroDimensional,
    #[error("no witness found after {retries} attempts")]
    WitnessNotFound { retries: usize },
    #[error("the variety is not strongly concise at coordinate {0}")]
    NotStronglyConcise(usize),
    #[error("only irrational witnesses were found for coordinate {0}")]
    IrrationalWitnessesOnly(usize),
    #[error("all {0} sample points were degenerate")]
    AllSamplesDegenerate(usize),
    #[error("not a curve parametrization: {0}")]
    NotACurveParam(String),
    #[error("retry cap of {0} reached")]
    RetryCap(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("I/O error: {0}")]
    Io(String),
}

fn context_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" ({context})")
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
