use std::fmt;

use crate::freq::Symbol;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// No symbols with positive frequency were supplied.
    EmptyInput,
    /// A frequency table source could not be interpreted.
    MalformedTable(String),
    /// A blocking-scheme string failed to parse; `pos` is the byte offset
    /// of the offending character.
    SchemeParse { pos: usize, msg: String },
    /// The blocking scheme does not address enough tree levels.
    SchemeTooShort,
    /// The internal-node sequence does not describe a prefix tree.
    InvalidShape,
    /// No tree satisfies the code-length budget (and height bound).
    Infeasible { budget: u64 },
    /// The fixed-block-level solver found no tree within the budget.
    NoValidTree,
    /// The instance exceeds the size guard of a brute-force routine.
    TooLarge { n: usize, max: usize },
    /// The dynamic-program table would exceed the configured cell limit.
    WorkLimitExceeded { cells: u128, limit: u128 },
    /// A parameter is outside its documented domain.
    InvalidParameter(&'static str),
    /// A symbol to encode is missing from the codebook.
    UnknownSymbol(Symbol),
    /// An encoded container is structurally invalid.
    CorruptContainer(&'static str),
    /// The lookup tables were compiled from a different code than the
    /// container carries.
    TableMismatch,
    /// Codeword lengths exceed the 64-bit words used for code bits.
    CodeTooDeep { height: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyInput => write!(f, "input contains no symbols with positive frequency"),
            Error::MalformedTable(msg) => write!(f, "malformed frequency table: {msg}"),
            Error::SchemeParse { pos, msg } => {
                write!(f, "blocking scheme parse error at byte {pos}: {msg}")
            }
            Error::SchemeTooShort => write!(f, "blocking scheme too short for required height"),
            Error::InvalidShape => write!(f, "invalid internal-node sequence"),
            Error::Infeasible { budget } => {
                write!(f, "no prefix tree meets code-length budget {budget}")
            }
            Error::NoValidTree => write!(f, "no valid tree within the code-length budget"),
            Error::TooLarge { n, max } => {
                write!(f, "instance size {n} exceeds brute-force guard {max}")
            }
            Error::WorkLimitExceeded { cells, limit } => {
                write!(f, "solver would need {cells} table cells, above the limit {limit}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::UnknownSymbol(sym) => write!(f, "symbol {sym} is not in the codebook"),
            Error::CorruptContainer(msg) => write!(f, "corrupt container: {msg}"),
            Error::TableMismatch => write!(f, "lookup tables do not match the container's code"),
            Error::CodeTooDeep { height } => {
                write!(f, "code height {height} exceeds the 64-bit codeword limit")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
