use std::fmt;

/// Outcome of a bounded verification sweep.
///
/// Only the first few failures are kept verbatim; the total is still counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checked: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
}

const KEPT_FAILURES: usize = 8;

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            checked: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    /// Records one case; `detail` is only evaluated when the case fails.
    pub fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(detail());
        }
    }

    pub fn fail(&mut self, detail: String) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(detail);
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.failures.first().map(String::as_str)
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(f);
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: ok ({} cases)", self.name, self.checked)
        } else {
            write!(
                f,
                "{}: {} of {} cases failed; first: {}",
                self.name,
                self.failure_count,
                self.checked,
                self.first_failure().unwrap_or("")
            )
        }
    }
}
