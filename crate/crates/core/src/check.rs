//! Outcome of a hypothesis check.

use std::fmt;

/// Result of checking a hypothesis over a set of samples.
///
/// A failure is a value, not an error: it carries the witness `W` (a pair of
/// points, a single point, a chain, ...) that refutes the hypothesis.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckResult<W> {
    Pass {
        /// Number of samples (pairs, points, chains) that were examined.
        checked: usize,
    },
    Fail {
        witness: W,
        reason: String,
        /// Size of the violation where the check is quantitative.
        magnitude: Option<f64>,
    },
}

impl<W> CheckResult<W> {
    pub fn pass(checked: usize) -> Self {
        CheckResult::Pass { checked }
    }

    pub fn fail(witness: W, reason: impl Into<String>) -> Self {
        CheckResult::Fail {
            witness,
            reason: reason.into(),
            magnitude: None,
        }
    }

    pub fn fail_by(witness: W, reason: impl Into<String>, magnitude: f64) -> Self {
        CheckResult::Fail {
            witness,
            reason: reason.into(),
            magnitude: Some(magnitude),
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, CheckResult::Pass { .. })
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            CheckResult::Pass { .. } => None,
            CheckResult::Fail { witness, .. } => Some(witness),
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            CheckResult::Pass { .. } => None,
            CheckResult::Fail { reason, .. } => Some(reason),
        }
    }

    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> CheckResult<V> {
        match self {
            CheckResult::Pass { checked } => CheckResult::Pass { checked },
            CheckResult::Fail {
                witness,
                reason,
                magnitude,
            } => CheckResult::Fail {
                witness: f(witness),
                reason,
                magnitude,
            },
        }
    }
}

impl<W> CheckResult<W> {
    fn summary_with(&self, show: impl FnOnce(&W) -> String) -> CheckSummary {
        match self {
            CheckResult::Pass { checked } => CheckSummary {
                passed: true,
                checked: *checked,
                detail: String::new(),
            },
            CheckResult::Fail {
                witness,
                reason,
                magnitude,
            } => {
                let shown = show(witness);
                let mut detail = reason.clone();
                if !shown.is_empty() {
                    detail.push_str(&format!("; witness {shown}"));
                }
                if let Some(m) = magnitude {
                    detail.push_str(&format!("; magnitude {m:e}"));
                }
                CheckSummary {
                    passed: false,
                    checked: 0,
                    detail,
                }
            }
        }
    }
}

impl<W: fmt::Debug> CheckResult<W> {
    /// Type-erased form used in reports.
    pub fn summarize(&self) -> CheckSummary {
        self.summary_with(|w| format!("{w:?}"))
    }
}

impl CheckResult<String> {
    /// Like [`CheckResult::summarize`], for witnesses already rendered as text.
    pub fn describe(&self) -> CheckSummary {
        self.summary_with(|w| w.clone())
    }
}

/// Witness-free summary of a [`CheckResult`].
#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub passed: bool,
    pub checked: usize,
    pub detail: String,
}

impl CheckSummary {
    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// A hypothesis recorded as a declared assumption rather than checked.
    pub fn assumed(note: impl Into<String>) -> Self {
        CheckSummary {
            passed: true,
            checked: 0,
            detail: format!("assumed: {}", note.into()),
        }
    }
}

impl fmt::Display for CheckSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            if self.detail.is_empty() {
                write!(f, "pass ({} checked)", self.checked)
            } else {
                write!(f, "pass ({})", self.detail)
            }
        } else {
            write!(f, "FAIL ({})", self.detail)
        }
    }
}
