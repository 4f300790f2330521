use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::linalg::bareiss;
use super::{regular_rep_matrix_with_limits, AlgebraicError, RegularRepMatrix};
use crate::bigint::ln_biguint;
use crate::groups::{FiniteQuotient, GroupRingElement};
use crate::Limits;

/// Size of the solution group `{h ∈ (ℝ/ℤ)^d : M h = 0}`.
///
/// The group is `(ℝ/ℤ)^nullity × Π ℤ/dᵢ` over the nonzero invariant factors
/// `dᵢ`, so it is finite exactly when `M` is nonsingular, and then has
/// `|det M|` elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolutionCount {
    Finite {
        #[serde(serialize_with = "ser_decimal")]
        value: BigUint,
    },
    Infinite {
        nullity: usize,
    },
}

fn ser_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl SolutionCount {
    pub fn finite_value(&self) -> Option<&BigUint> {
        match self {
            SolutionCount::Finite { value } => Some(value),
            SolutionCount::Infinite { .. } => None,
        }
    }

    /// Natural log of a finite count.
    pub fn ln(&self) -> Option<f64> {
        self.finite_value().map(ln_biguint)
    }
}

/// Counts solutions of `M h = 0` over the torus `(ℝ/ℤ)^d`.
///
/// Uses fraction-free elimination: the count is `|det M|` at full rank and
/// infinite with nullity `d − rank` otherwise.
pub fn count_solutions(m: &RegularRepMatrix) -> SolutionCount {
    let e = bareiss(m.rows());
    if e.rank == m.dim() {
        SolutionCount::Finite {
            value: e.det.magnitude().clone(),
        }
    } else {
        SolutionCount::Infinite {
            nullity: m.dim() - e.rank,
        }
    }
}

/// `|Fix_{Gₙ}(X_f)|`, the number of points of the principal algebraic
/// action fixed by the kernel of `q`. Equals the solution count of `πₙ(f)`.
pub fn fix_count(
    f: &GroupRingElement,
    q: &FiniteQuotient,
) -> Result<SolutionCount, AlgebraicError> {
    fix_count_with_limits(f, q, &Limits::default())
}

pub fn fix_count_with_limits(
    f: &GroupRingElement,
    q: &FiniteQuotient,
    limits: &Limits,
) -> Result<SolutionCount, AlgebraicError> {
    let m = regular_rep_matrix_with_limits(f, q, limits)?;
    Ok(count_solutions(&m))
}

/// Fuglede–Kadison determinant of `πₙ(f)` for the normalized trace on the
/// quotient: `|det M|^{1/d}`.
pub fn fk_determinant_quotient(
    f: &GroupRingElement,
    q: &FiniteQuotient,
) -> Result<f64, AlgebraicError> {
    match fix_count(f, q)? {
        SolutionCount::Finite { value } => Ok((ln_biguint(&value) / q.size() as f64).exp()),
        SolutionCount::Infinite { nullity } => Err(AlgebraicError::NotInvertible {
            quotient: q.label().to_string(),
            nullity,
        }),
    }
}
