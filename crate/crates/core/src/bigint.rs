//! Helpers for arbitrary-precision counts.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Natural logarithm of a big integer, from its bit length plus the
/// logarithm of its leading 64 bits. Relative error stays below `1e-15`.
///
/// Returns `-inf` for zero.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 64 {
        return (n.to_u64().expect("fits in 64 bits") as f64).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().expect("top 64 bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}
