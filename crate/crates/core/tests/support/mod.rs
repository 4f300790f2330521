#![allow(dead_code)]

use proptest::prelude::*;
use sel_core::groups::{GroupElement, GroupRingElement};

/// Laurent polynomials of the given rank with exponents in `-3..=3` and
/// coefficients in `-5..=5`.
pub fn laurent(rank: usize, max_terms: usize) -> impl Strategy<Value = GroupRingElement> {
    prop::collection::vec(
        (prop::collection::vec(-3i64..=3, rank), -5i64..=5),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        GroupRingElement::from_terms(
            rank,
            terms
                .into_iter()
                .map(|(e, c)| (GroupElement::lattice(e), c)),
        )
        .unwrap()
    })
}

pub fn any_rank_laurent() -> impl Strategy<Value = GroupRingElement> {
    (1usize..=3).prop_flat_map(|r| laurent(r, 6))
}

/// Rank-1 polynomials whose constant term strictly dominates the rest, so
/// `F` has no zero on the circle.
pub fn dominant_rank_one() -> impl Strategy<Value = GroupRingElement> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 1..=4)
        .prop_flat_map(|terms| {
            let rest: i64 = terms
                .iter()
                .filter(|(e, _)| *e != 0)
                .map(|(_, c)| c.abs())
                .sum();
            (Just(terms), rest + 1..=rest + 4, prop::bool::ANY)
        })
        .prop_map(|(terms, c0, negative)| {
            let mut all: Vec<(GroupElement, i64)> = terms
                .into_iter()
                .filter(|(e, _)| *e != 0)
                .map(|(e, c)| (GroupElement::lattice([e]), c))
                .collect();
            all.push((GroupElement::lattice([0]), if negative { -c0 } else { c0 }));
            GroupRingElement::from_terms(1, all).unwrap()
        })
}
