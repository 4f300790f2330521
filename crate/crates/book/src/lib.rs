//! The guide in `book/` compiled as doctests, one module per chapter, so
//! `cargo test` keeps every listing working.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/group-rings.md")]
pub mod group_rings {}
#[doc = include_str!("../../../book/src/fixed-points.md")]
pub mod fixed_points {}
#[doc = include_str!("../../../book/src/mahler.md")]
pub mod mahler {}
#[doc = include_str!("../../../book/src/sofic-maps.md")]
pub mod sofic_maps {}
#[doc = include_str!("../../../book/src/subshifts.md")]
pub mod subshifts {}
#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
