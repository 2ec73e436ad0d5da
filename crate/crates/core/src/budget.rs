//! Resource budgets for potentially expensive computations.
//!
//! Exceeding a budget is a first-class error, never a silent truncation.

use std::sync::atomic::{AtomicU64, Ordering};

/// Caps for a single Groebner-basis (or closure) computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of polynomial reduction steps across the run.
    pub max_reductions: u64,
    /// Maximum size the intermediate basis may reach.
    pub max_basis: usize,
    /// Maximum number of elements a group closure may enumerate.
    pub max_group_order: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_reductions: 50_000_000,
            max_basis: 20_000,
            max_group_order: 10_000,
        }
    }
}

impl Budget {
    pub fn with_reductions(mut self, n: u64) -> Self {
        self.max_reductions = n;
        self
    }

    pub fn with_basis(mut self, n: usize) -> Self {
        self.max_basis = n;
        self
    }
}

/// Shared reduction counter; one per top-level computation.
#[derive(Debug, Default)]
pub struct Meter {
    reductions: AtomicU64,
}

impl Meter {
    pub fn new() -> Self {
        Meter::default()
    }

    /// Charges `n` reduction steps. Returns false once the budget is blown.
    pub fn charge(&self, n: u64, budget: &Budget) -> bool {
        let prev = self.reductions.fetch_add(n, Ordering::Relaxed);
        prev + n <= budget.max_reductions
    }

    pub fn used(&self) -> u64 {
        self.reductions.load(Ordering::Relaxed)
    }
}
