//! Principal algebraic actions over finite quotients.
//!
//! For `f ∈ ℤG` and a finite quotient `G/Gₙ`, the points of
//! `X_f = {h ∈ (ℝ/ℤ)^G : f h = 0}` fixed by `Gₙ` correspond exactly to the
//! solutions of `πₙ(f) h = 0` on the finite torus `(ℝ/ℤ)^{G/Gₙ}`, where
//! `πₙ(f)` is the group-circulant matrix of convolution by `f`. Their number
//! is `|det πₙ(f)|` when that is nonzero, so the normalized logarithm
//! `(1/|G/Gₙ|) log |Fix|` is the log of the finite-dimensional
//! Fuglede–Kadison determinant and converges to the entropy of `X_f`.

mod count;
pub mod linalg;
mod matrix;
mod trace;

pub use count::{
    count_solutions, fix_count, fix_count_with_limits, fk_determinant_quotient, SolutionCount,
};
pub use matrix::{
    det_abs_exact, regular_rep_matrix, regular_rep_matrix_with_limits, smith_normal_form,
    RegularRepMatrix,
};
pub use trace::{
    entropy_trace, entropy_trace_with_limits, EntropyTrace, SkippedQuotient, TraceRecord,
};

use thiserror::Error;

use crate::groups::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraicError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("polynomial of rank {polynomial} does not live on a quotient of rank {quotient}")]
    AmbientMismatch { polynomial: usize, quotient: usize },
    #[error("matrix dimension {dim} exceeds the size guard {limit}")]
    SizeGuard { dim: usize, limit: usize },
    #[error("not invertible at quotient {quotient} (nullity {nullity})")]
    NotInvertible { quotient: String, nullity: usize },
    #[error("empty quotient list")]
    EmptyQuotientList,
    #[error("quotients must have nondecreasing size: {before} precedes {after}")]
    UnorderedQuotients { before: String, after: String },
}
