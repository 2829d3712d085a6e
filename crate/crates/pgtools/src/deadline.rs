//! Cooperative time budgets for expensive measures.

use std::time::{Duration, Instant};

use thiserror::Error;

/// Raised when a measure runs past its [`Deadline`].
#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("measure timed out")]
pub struct TimedOut;

/// A wall-clock budget that long-running loops poll.
///
/// Polling is cheap enough to do per outer-loop iteration; inner loops
/// poll through [`Deadline::check_every`] with a stride to keep the cost
/// negligible. `Deadline::none()` never expires.
#[derive(Clone, Copy, Debug)]
pub struct Deadline {
    expires: Option<Instant>,
}

impl Deadline {
    /// A deadline that never expires.
    pub fn none() -> Deadline {
        Deadline { expires: None }
    }

    /// Expires `budget` from now.
    pub fn after(budget: Duration) -> Deadline {
        Deadline { expires: Some(Instant::now() + budget) }
    }

    /// Expires at the given instant.
    pub fn at(instant: Instant) -> Deadline {
        Deadline { expires: Some(instant) }
    }

    /// Whether the budget has run out.
    pub fn expired(&self) -> bool {
        self.expires.is_some_and(|t| Instant::now() >= t)
    }

    /// Errors once the budget has run out.
    #[inline]
    pub fn check(&self) -> Result<(), TimedOut> {
        if self.expired() {
            Err(TimedOut)
        } else {
            Ok(())
        }
    }

    /// Like [`Deadline::check`], but only consults the clock every 1024
    /// calls. Pass a loop counter.
    #[inline]
    pub fn check_every(&self, counter: u64) -> Result<(), TimedOut> {
        if counter % 1024 == 0 {
            self.check()
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn none_never_expires() {
        let d = Deadline::none();
        assert!(!d.expired());
        assert_eq!(d.check(), Ok(()));
    }

    #[test]
    fn zero_budget_expires_immediately() {
        let d = Deadline::after(Duration::ZERO);
        assert!(d.expired());
        assert_eq!(d.check(), Err(TimedOut));
    }
}
