use std::fmt;

use serde::Serialize;

/// Keep at most this many violation messages; the count is always exact.
const MAX_MESSAGES: usize = 25;

/// Outcome of an exhaustive or randomized check. Violations are content,
/// not errors, so a failing report can still be printed in full.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub checked: usize,
    pub violation_count: usize,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        VerificationReport {
            name: name.into(),
            ..Default::default()
        }
    }

    /// Records one check; `message` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, message: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < MAX_MESSAGES {
                self.violations.push(message());
            }
        }
        ok
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < MAX_MESSAGES {
                self.violations.push(format!("{}: {v}", other.name));
            }
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: OK ({} checks)", self.name, self.checked)
        } else {
            write!(
                f,
                "{}: FAILED ({} of {} checks)",
                self.name, self.violation_count, self.checked
            )?;
            for v in &self.violations {
                write!(f, "\n  {v}")?;
            }
            Ok(())
        }
    }
}
