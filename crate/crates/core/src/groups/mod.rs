//! Groups, integral group rings, finite quotients and sofic maps.
//!
//! Two ambient-group modes are supported. In lattice mode the group is
//! `ℤ^d` for `1 ≤ d ≤ 4`, elements are exponent vectors, and finite quotients
//! are tori `Π ℤ/nᵢ`. In generic mode the group is known only through a
//! chain of explicit finite quotients, each given by a Cayley table and the
//! images of a fixed list of generators; elements are reduced words in those
//! generators and group ring elements have rank 0.

mod element;
mod parse;
mod quotient;
mod ring;
mod sofic;

pub use element::{GroupElement, Letter};
pub use parse::{parse_laurent, parse_word_polynomial, ParseError};
pub use quotient::{torus_quotient, ExplicitGroup, FiniteQuotient, QuotientKind};
pub use ring::{involution, GroupRingElement};
pub use sofic::{
    defect_rows, freeness_defect, multiplicative_defect, sofic_map_from_quotient, DefectRow,
    Permutation, SoficMap,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("ambient group mismatch: expected rank {expected}, found rank {found}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("exponent overflow in group product")]
    ExponentOverflow,
    #[error("coefficient leaves the 64-bit range")]
    CoefficientOverflow,
    #[error("torus rank must be between 1 and 4, got {0}")]
    UnsupportedRank(usize),
    #[error("torus moduli must be at least 1")]
    ZeroModulus,
    #[error("quotient of size {size} exceeds the size guard {limit}")]
    SizeGuard { size: u128, limit: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("generator images do not generate the finite group")]
    NotSurjective,
    #[error("generator {generator} is not among the {count} known generators")]
    UnknownGenerator { generator: usize, count: usize },
    #[error("not a permutation of the expected size")]
    NotAPermutation,
    #[error("sofic map needs d >= 1")]
    EmptySoficMap,
    #[error("sofic map has no permutation for {0}")]
    MissingPermutation(GroupElement),
    #[error("freeness defect needs distinct elements, got {0} twice")]
    EqualElements(GroupElement),
}
