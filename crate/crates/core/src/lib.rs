//! Sofic entropy of algebraic actions and subshifts, computed by exact
//! counting over finite quotients.
//!
//! The crate is organised around four layers:
//!
//! * [`groups`]: group elements, integral group ring elements, finite
//!   quotients and the permutation families (sofic maps) they induce.
//! * [`algebraic`]: the regular representation of `f ∈ ℤG` over a finite
//!   quotient, exact fixed-point counts of the principal algebraic action
//!   `X_f`, and the per-quotient entropy trace.
//! * [`spectral`]: independent reference values for `log det f` (Mahler
//!   measure by Jensen's formula or torus quadrature) and a torus
//!   invertibility certificate.
//! * [`subshift`]: homomorphism (microstate) counts for subshifts of finite
//!   type over cyclic quotients of `ℤ`.
//!
//! Report serialization shared by all of them lives in [`report`].

pub mod algebraic;
pub mod bigint;
pub mod groups;
pub mod limits;
pub mod report;
pub mod spectral;
pub mod subshift;

pub use limits::Limits;
