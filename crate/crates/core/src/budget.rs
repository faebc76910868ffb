use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default cap on elementary enumeration steps.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Shared counter guarding exhaustive scans.
///
/// Every backtracking search and square enumeration charges its elementary
/// steps here. Exceeding the cap is reported as
/// [`Error::EnumerationBudgetExceeded`]; results are never truncated.
#[derive(Debug)]
pub struct Budget {
    cap: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(cap: u64) -> Self {
        Budget {
            cap,
            used: AtomicU64::new(0),
        }
    }

    /// A budget that never runs out, for callers that bound sizes themselves.
    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn charge(&self, steps: u64) -> Result<()> {
        let before = self.used.fetch_add(steps, Ordering::Relaxed);
        if before.saturating_add(steps) > self.cap {
            Err(Error::EnumerationBudgetExceeded { cap: self.cap })
        } else {
            Ok(())
        }
    }

    pub fn tick(&self) -> Result<()> {
        self.charge(1)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exceeding_cap_is_an_error() {
        let b = Budget::new(3);
        assert!(b.charge(2).is_ok());
        assert!(b.tick().is_ok());
        assert_eq!(b.tick(), Err(Error::EnumerationBudgetExceeded { cap: 3 }));
    }
}
