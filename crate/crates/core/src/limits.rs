//! Resource guards.

use serde::{Deserialize, Serialize};

/// Environment variable overriding the dimension guards.
pub const MAX_DIM_ENV: &str = "SEL_MAX_DIM";

/// Upper bounds on the sizes the library is willing to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest accepted quotient `|G/Gₙ|`.
    pub max_quotient_size: usize,
    /// Largest dense regular-representation matrix dimension.
    pub max_matrix_dim: usize,
    /// Largest number of labelings `|A|^d` visited by exhaustive enumeration.
    pub max_labelings: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_quotient_size: 1_000_000,
            max_matrix_dim: 4096,
            max_labelings: 10_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with both dimension guards replaced by `SEL_MAX_DIM` when it
    /// is set to a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(dim) = std::env::var(MAX_DIM_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
        {
            limits.max_quotient_size = dim;
            limits.max_matrix_dim = dim;
        }
        limits
    }
}
