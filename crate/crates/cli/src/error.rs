use std::fmt;

/// Failure classes mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// A verification or property suite found a violation (exit 1).
    Invariant(String),
    /// Unreadable or malformed input (exit 2).
    Input(anyhow::Error),
    /// A budget ran out where an exact answer was required (exit 3).
    Budget(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Invariant(_) => 1,
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invariant(m) => write!(f, "invariant violated: {m}"),
            Failure::Input(e) => write!(f, "input error: {e:#}"),
            Failure::Budget(m) => write!(f, "budget exhausted: {m}"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<helly_core::Error> for Failure {
    fn from(e: helly_core::Error) -> Self {
        Failure::Input(e.into())
    }
}

pub type CliResult<T> = Result<T, Failure>;
