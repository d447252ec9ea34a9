//! Failure taxonomy mapped to process exit codes. Exit 0 is reserved for a
//! run whose every task passed; a failed check or expectation exits 4
//! through the report path, not through a fault.

use std::fmt;

/// A run-aborting failure, carrying the exit code contract.
#[derive(Debug, Clone)]
pub enum Fault {
    /// Malformed invocation or document: unreadable file, invalid JSON,
    /// unknown names, wrong kinds, unparseable exact numbers. Exit 2.
    Schema(String),
    /// Mathematically rejected input: Blaschke zeros on or outside the
    /// circle, poles on the circle, matrices that fail the inner
    /// certificate. Exit 3.
    Domain(String),
    /// An internal certificate violated; a bug, never a user error. Exit 4.
    Internal(String),
}

impl Fault {
    pub fn code(&self) -> u8 {
        match self {
            Fault::Schema(_) => 2,
            Fault::Domain(_) => 3,
            Fault::Internal(_) => 4,
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fault::Schema(m) => write!(f, "document error: {m}"),
            Fault::Domain(m) => write!(f, "rejected input: {m}"),
            Fault::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<beurling::Error> for Fault {
    fn from(e: beurling::Error) -> Fault {
        match e {
            beurling::Error::Certificate(_) => Fault::Internal(e.to_string()),
            _ => Fault::Domain(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, Fault>;
