use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// One letter `g^p` of a word over abstract generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub power: i64,
}

/// An element of the ambient group.
///
/// `Lattice` elements live in `ℤ^d` (the exponent vector of a Laurent
/// monomial). `Word` elements are freely reduced words over the generators
/// of a group known only through explicit finite quotients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupElement {
    Lattice(Vec<i64>),
    Word(Vec<Letter>),
}

impl GroupElement {
    pub fn lattice(exponents: impl Into<Vec<i64>>) -> Self {
        GroupElement::Lattice(exponents.into())
    }

    /// The reduced word for `letters`.
    pub fn word(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_letter(&mut out, l);
        }
        GroupElement::Word(out)
    }

    /// Identity of the ambient group of the given rank (0 = generic mode).
    pub fn identity(rank: usize) -> Self {
        if rank == 0 {
            GroupElement::Word(Vec::new())
        } else {
            GroupElement::Lattice(vec![0; rank])
        }
    }

    /// Rank of the ambient lattice, or 0 for words.
    pub fn rank(&self) -> usize {
        match self {
            GroupElement::Lattice(v) => v.len(),
            GroupElement::Word(_) => 0,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Lattice(v) => v.iter().all(|&x| x == 0),
            GroupElement::Word(w) => w.is_empty(),
        }
    }

    /// Group product `self · other`.
    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        match (self, other) {
            (GroupElement::Lattice(a), GroupElement::Lattice(b)) if a.len() == b.len() => {
                let v = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x.checked_add(*y).ok_or(GroupError::ExponentOverflow))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(GroupElement::Lattice(v))
            }
            (GroupElement::Word(a), GroupElement::Word(b)) => {
                let mut out = a.clone();
                for &l in b {
                    push_letter(&mut out, l);
                }
                Ok(GroupElement::Word(out))
            }
            _ => Err(GroupError::AmbientMismatch {
                expected: self.rank(),
                found: other.rank(),
            }),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Lattice(v) => GroupElement::Lattice(v.iter().map(|x| -x).collect()),
            GroupElement::Word(w) => GroupElement::Word(
                w.iter()
                    .rev()
                    .map(|l| Letter {
                        generator: l.generator,
                        power: -l.power,
                    })
                    .collect(),
            ),
        }
    }

    /// `‖s‖₁`: sum of absolute exponents.
    pub fn l1_norm(&self) -> u64 {
        match self {
            GroupElement::Lattice(v) => v.iter().map(|x| x.unsigned_abs()).sum(),
            GroupElement::Word(w) => w.iter().map(|l| l.power.unsigned_abs()).sum(),
        }
    }
}

fn push_letter(out: &mut Vec<Letter>, l: Letter) {
    if l.power == 0 {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.generator == l.generator {
            last.power += l.power;
            if last.power == 0 {
                out.pop();
            }
            return;
        }
    }
    out.push(l);
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Lattice(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            GroupElement::Word(w) if w.is_empty() => write!(f, "e"),
            GroupElement::Word(w) => {
                for (i, l) in w.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "g{}^{}", l.generator, l.power)?;
                }
                Ok(())
            }
        }
    }
}
