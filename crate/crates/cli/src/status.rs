use std::fmt;
use std::path::Path;

use lonesieve::Error;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerdictFailed = 1,
    InputError = 2,
    InvariantViolation = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// A run that could not produce its report.
#[derive(Debug)]
pub struct Failure {
    pub status: ExitStatus,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { status: ExitStatus::InputError, message: message.into() }
    }

    /// Prefixes the message with where the bad value came from.
    pub fn at(mut self, ctx: impl fmt::Display) -> Self {
        self.message = format!("{ctx}: {}", self.message);
        self
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.is_invariant_violation() { ExitStatus::InvariantViolation } else { ExitStatus::InputError };
        Failure { status, message: e.to_string() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn read_json(path: &Path) -> Result<serde_json::Value, Failure> {
    serde_json::from_str(&read_file(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}
