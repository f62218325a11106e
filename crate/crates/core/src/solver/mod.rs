//! Deciding polynomial systems: Gröbner certificates of inconsistency and a
//! rational witness search.

pub mod eliminant;
pub mod groebner;
mod roots;
pub mod system;
pub mod witness;

pub use groebner::{buchberger, normal_form, BudgetExhausted, GroebnerBasis, MonomialOrder};
pub use roots::rational_roots;
pub use system::PolySystem;
pub use witness::{find_rational_witness, SolveOutcome, UnknownReason};

/// Default number of reduction steps.
pub const DEFAULT_BUDGET: u64 = 100_000;

/// Counter of reduction steps shared by one solve.
#[derive(Debug, Clone)]
pub struct Budget {
    remaining: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutOfBudget;

impl Budget {
    pub fn new(steps: u64) -> Self {
        Budget { remaining: Some(steps) }
    }

    pub fn unlimited() -> Self {
        Budget { remaining: None }
    }

    pub fn consume(&mut self, steps: u64) -> Result<(), OutOfBudget> {
        match &mut self.remaining {
            None => Ok(()),
            Some(r) if *r >= steps => {
                *r -= steps;
                Ok(())
            }
            Some(r) => {
                *r = 0;
                Err(OutOfBudget)
            }
        }
    }

    pub fn remaining(&self) -> Option<u64> {
        self.remaining
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}
