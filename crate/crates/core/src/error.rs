use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("item {index} has weight {weight} and profit {profit}; both must be at least 1")]
    InvalidItem { index: usize, weight: u64, profit: u64 },

    #[error("tie-breaking overflows the 128-bit profit representation (n = {n}, w_max = {w_max}, p_max = {p_max})")]
    ProfitOverflow { n: usize, w_max: u64, p_max: u64 },

    #[error("{solver} refuses the instance: {reason}")]
    Refused { solver: &'static str, reason: String },

    #[error("balls-and-bins coloring left {found} elements of one set in one color, above the bound {bound}")]
    ColoringBound { found: usize, bound: usize },

    #[error("cross-check failed: {solver} returned {got}, bellman returned {expected}")]
    Mismatch {
        solver: &'static str,
        got: String,
        expected: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
