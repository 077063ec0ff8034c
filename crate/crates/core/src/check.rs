//! Outcome of a single exact identity check.

use std::fmt::Debug;

/// Witness strings longer than this are cut; the check label plus the run
/// seed always reproduce the full inputs.
pub const WITNESS_LIMIT: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub holds: bool,
    pub witness: Option<String>,
}

fn clip(s: String) -> String {
    if s.chars().count() <= WITNESS_LIMIT {
        return s;
    }
    let mut t: String = s.chars().take(WITNESS_LIMIT).collect();
    t.push('…');
    t
}

impl Check {
    pub fn pass(label: impl Into<String>) -> Self {
        Self { label: label.into(), holds: true, witness: None }
    }

    pub fn fail(label: impl Into<String>, witness: impl Into<String>) -> Self {
        Self { label: label.into(), holds: false, witness: Some(clip(witness.into())) }
    }

    pub fn truth(label: impl Into<String>, holds: bool, witness: impl FnOnce() -> String) -> Self {
        if holds {
            Self::pass(label)
        } else {
            Self::fail(label, witness())
        }
    }

    /// Compares two values, keeping both sides as the witness on mismatch.
    pub fn equal<T: PartialEq + Debug>(label: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        Self::truth(label, lhs == rhs, || format!("lhs = {lhs:?}; rhs = {rhs:?}"))
    }

    /// Like [`Check::equal`] with a caller-supplied rendering.
    pub fn equal_by<T: PartialEq>(label: impl Into<String>, lhs: &T, rhs: &T, show: impl Fn(&T) -> String) -> Self {
        Self::truth(label, lhs == rhs, || format!("lhs = {}; rhs = {}", show(lhs), show(rhs)))
    }
}

pub fn all_hold(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.holds)
}
