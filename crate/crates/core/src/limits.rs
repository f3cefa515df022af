//! Process-wide resource ceilings.

use std::sync::RwLock;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest Bernoulli index the memo table will grow to.
    pub max_bernoulli_index: usize,
    /// Largest decimal precision accepted by any evaluation.
    pub max_digits: usize,
    /// Ceiling on `k_max * n_max` for a coefficient table.
    pub max_table_cells: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_bernoulli_index: 20_000,
            max_digits: 1000,
            max_table_cells: 200_000,
        }
    }
}

static LIMITS: RwLock<Limits> = RwLock::new(Limits {
    max_bernoulli_index: 20_000,
    max_digits: 1000,
    max_table_cells: 200_000,
});

pub fn limits() -> Limits {
    *LIMITS.read().unwrap_or_else(|e| e.into_inner())
}

pub fn set_limits(limits: Limits) {
    *LIMITS.write().unwrap_or_else(|e| e.into_inner()) = limits;
}

pub(crate) fn check(what: &'static str, requested: usize, maximum: usize) -> Result<()> {
    if requested > maximum {
        return Err(Error::ResourceLimit {
            what,
            requested,
            maximum,
        });
    }
    Ok(())
}

pub(crate) fn check_digits(digits: usize) -> Result<()> {
    if digits == 0 {
        return Err(Error::invalid("digits must be at least 1"));
    }
    check("digits", digits, limits().max_digits)
}
