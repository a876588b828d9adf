//! Failure classes and the exit-code contract.
//!
//! 2 = parse/usage error, 3 = semantic error (dimension mismatch,
//! unsupported dimension, bad argument values), 4 = internal invariant
//! violation. Success is 0. Diagnostics go to stderr, never stdout.

use cobord::Error;

#[derive(Debug)]
pub enum Failure {
    Parse(String),
    Semantic(String),
    Invariant(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Semantic(_) => 3,
            Failure::Invariant(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Semantic(m) | Failure::Invariant(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Semantic(e.to_string()),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message())
    }
}
