//! Work budgets. `LP_BUDGET` replaces the base budget for every bounded search.

pub const DEFAULT_BUDGET: u64 = 10_000;

/// Base budget: `LP_BUDGET` if set to a positive integer, else [`DEFAULT_BUDGET`].
pub fn base_budget() -> u64 {
    std::env::var("LP_BUDGET").ok().and_then(|v| v.trim().parse::<u64>().ok()).filter(|&v| v > 0).unwrap_or(DEFAULT_BUDGET)
}

/// Candidate-factor budget of the irreducibility heuristic.
pub fn irreducibility_budget() -> u64 {
    base_budget().saturating_mul(20)
}
