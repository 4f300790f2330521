use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GroupElement, GroupError};

const AXES: [char; 4] = ['x', 'y', 'z', 'w'];

/// A finitely supported integer-valued function on the ambient group, i.e. an
/// element `f = Σ f_s s` of the integral group ring `ℤG`.
///
/// `rank` is the lattice rank `d` for `ℤ^d`, or 0 for the generic (word) mode.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupRingElement {
    rank: usize,
    terms: BTreeMap<GroupElement, i64>,
}

impl GroupRingElement {
    pub fn zero(rank: usize) -> Self {
        GroupRingElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// The constant `k·e`.
    pub fn constant(rank: usize, k: i64) -> Self {
        let mut f = Self::zero(rank);
        if k != 0 {
            f.terms.insert(GroupElement::identity(rank), k);
        }
        f
    }

    /// Builds an element by summing like terms. Fails on a rank mismatch or
    /// when a combined coefficient leaves the 64-bit range.
    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (GroupElement, i64)>,
    ) -> Result<Self, GroupError> {
        let mut f = Self::zero(rank);
        for (s, c) in terms {
            f.add_term(s, c)?;
        }
        Ok(f)
    }

    pub(crate) fn add_term(&mut self, s: GroupElement, c: i64) -> Result<(), GroupError> {
        if s.rank() != self.rank {
            return Err(GroupError::AmbientMismatch {
                expected: self.rank,
                found: s.rank(),
            });
        }
        match self.terms.entry(s) {
            Entry::Vacant(v) => {
                if c != 0 {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o
                    .get()
                    .checked_add(c)
                    .ok_or(GroupError::CoefficientOverflow)?;
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, i64> {
        &self.terms
    }

    pub fn coefficient(&self, s: &GroupElement) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.keys()
    }

    /// `‖f‖₁ = Σ |f_s|`.
    pub fn one_norm(&self) -> u128 {
        self.terms.values().map(|c| c.unsigned_abs() as u128).sum()
    }

    /// `f(e)`, the sum of all coefficients.
    pub fn augmentation(&self) -> i128 {
        self.terms.values().map(|&c| c as i128).sum()
    }

    /// The adjoint `f* = Σ f_s s⁻¹`.
    pub fn involution(&self) -> Self {
        GroupRingElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(s, &c)| (s.inverse(), c)).collect(),
        }
    }

    /// Left translate `s·f = Σ f_t (s t)`.
    pub fn translate(&self, s: &GroupElement) -> Result<Self, GroupError> {
        let terms = self
            .terms
            .iter()
            .map(|(t, &c)| Ok((s.mul(t)?, c)))
            .collect::<Result<BTreeMap<_, _>, GroupError>>()?;
        Ok(GroupRingElement {
            rank: self.rank,
            terms,
        })
    }

    pub fn negate(&self) -> Result<Self, GroupError> {
        let terms = self
            .terms
            .iter()
            .map(|(s, &c)| c.checked_neg().map(|n| (s.clone(), n)))
            .collect::<Option<BTreeMap<_, _>>>()
            .ok_or(GroupError::CoefficientOverflow)?;
        Ok(GroupRingElement {
            rank: self.rank,
            terms,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        let mut out = self.clone();
        for (s, &c) in &other.terms {
            out.add_term(s.clone(), c)?;
        }
        Ok(out)
    }

    /// Canonical rendering in the Laurent grammar: terms in ascending
    /// exponent order, `±1` coefficients elided in front of monomials.
    /// Generic-mode words are rendered with generators `a, b, c, …`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// The adjoint `f*`.
pub fn involution(f: &GroupRingElement) -> GroupRingElement {
    f.involution()
}

fn write_monomial(out: &mut String, s: &GroupElement) {
    let mut factors: Vec<(char, i64)> = Vec::new();
    match s {
        GroupElement::Lattice(v) => {
            for (axis, &e) in v.iter().enumerate() {
                if e != 0 {
                    factors.push((AXES[axis], e));
                }
            }
        }
        GroupElement::Word(w) => {
            for l in w {
                let name = (b'a' + l.generator as u8) as char;
                factors.push((name, l.power));
            }
        }
    }
    for (i, (name, e)) in factors.into_iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        out.push(name);
        if e != 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (s, &c)) in self.terms.iter().enumerate() {
            let negative = c < 0;
            let mag = c.unsigned_abs();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if s.is_identity() {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                write_monomial(&mut out, s);
            }
        }
        f.write_str(&out)
    }
}
