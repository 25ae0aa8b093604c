//! Work budgets: every exhaustive search charges elementary checks against a
//! budget so runtimes stay predictable. Exceeding a budget downgrades
//! certificates or aborts searches; it never silently truncates a verdict.

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("work budget of {limit} elementary checks exceeded")]
pub struct BudgetExceeded {
    pub limit: u64,
}

#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    /// Charge `n` elementary checks.
    pub fn charge(&self, n: u64) -> Result<(), BudgetExceeded> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        if before.saturating_add(n) > self.limit {
            Err(BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn exhausted(&self) -> bool {
        self.used() > self.limit
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(DEFAULT_BUDGET)
    }
}
