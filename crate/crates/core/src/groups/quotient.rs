use serde::{Deserialize, Serialize};

use super::{GroupElement, GroupError};
use crate::Limits;

/// A finite quotient `G/Gₙ` of the ambient group, with cosets indexed by
/// `0..size`.
///
/// Torus quotients `ℤ^d / Π nᵢℤ` enumerate cosets lexicographically in
/// `(k₁, …, k_d)`, with `k_d` varying fastest. Explicit quotients carry a
/// multiplication table and the images of the abstract generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteQuotient {
    label: String,
    kind: QuotientKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuotientKind {
    Torus { moduli: Vec<u64> },
    Explicit(ExplicitGroup),
}

/// A finite group given by its Cayley table, together with the images of the
/// ambient group's generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    generator_images: Vec<usize>,
}

impl ExplicitGroup {
    /// Validates the table (closure, associativity, identity, inverses) and
    /// that the generator images generate the whole group.
    pub fn new(table: Vec<Vec<usize>>, generator_images: Vec<usize>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if let Some(i) = table.iter().position(|row| row.len() != n) {
            return Err(GroupError::InvalidTable(format!(
                "row {i} has wrong length"
            )));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        if flat.iter().any(|&x| x >= n) {
            return Err(GroupError::InvalidTable("entry out of range".into()));
        }
        let mul = |a: usize, b: usize| flat[a * n + b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;

        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(GroupError::InvalidTable(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }

        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                    .ok_or_else(|| GroupError::InvalidTable(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>, _>>()?;

        if let Some(&g) = generator_images.iter().find(|&&g| g >= n) {
            return Err(GroupError::InvalidTable(format!(
                "generator image {g} out of range"
            )));
        }

        // Surjectivity: the generator images must generate everything.
        let mut reached = vec![false; n];
        reached[identity] = true;
        let mut frontier = vec![identity];
        while let Some(a) = frontier.pop() {
            for &g in &generator_images {
                for b in [mul(a, g), mul(a, inverses[g])] {
                    if !reached[b] {
                        reached[b] = true;
                        frontier.push(b);
                    }
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(GroupError::NotSurjective);
        }

        Ok(ExplicitGroup {
            order: n,
            table: flat,
            identity,
            inverses,
            generator_images,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generator_count(&self) -> usize {
        self.generator_images.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    fn power(&self, a: usize, exponent: i64) -> usize {
        let base = if exponent < 0 { self.inverses[a] } else { a };
        let mut e = exponent.unsigned_abs();
        let mut acc = self.identity;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }
}

impl FiniteQuotient {
    /// `ℤ^d / Π nᵢℤ` with the default size guard.
    pub fn torus(moduli: &[u64]) -> Result<Self, GroupError> {
        Self::torus_with_limit(moduli, Limits::default().max_quotient_size)
    }

    pub fn torus_with_limit(moduli: &[u64], max_size: usize) -> Result<Self, GroupError> {
        if moduli.is_empty() || moduli.len() > 4 {
            return Err(GroupError::UnsupportedRank(moduli.len()));
        }
        if moduli.contains(&0) {
            return Err(GroupError::ZeroModulus);
        }
        let size = moduli
            .iter()
            .try_fold(1u128, |acc, &m| acc.checked_mul(m as u128))
            .unwrap_or(u128::MAX);
        if size > max_size as u128 {
            return Err(GroupError::SizeGuard {
                size,
                limit: max_size,
            });
        }
        let label = moduli
            .iter()
            .map(|m| format!("Z/{m}"))
            .collect::<Vec<_>>()
            .join("x");
        Ok(FiniteQuotient {
            label,
            kind: QuotientKind::Torus {
                moduli: moduli.to_vec(),
            },
        })
    }

    pub fn explicit(label: impl Into<String>, group: ExplicitGroup) -> Self {
        FiniteQuotient {
            label: label.into(),
            kind: QuotientKind::Explicit(group),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> &QuotientKind {
        &self.kind
    }

    /// Ambient rank: `d` for torus quotients, 0 for explicit ones.
    pub fn rank(&self) -> usize {
        match &self.kind {
            QuotientKind::Torus { moduli } => moduli.len(),
            QuotientKind::Explicit(_) => 0,
        }
    }

    /// `|G/Gₙ|`.
    pub fn size(&self) -> usize {
        match &self.kind {
            QuotientKind::Torus { moduli } => moduli.iter().map(|&m| m as usize).product(),
            QuotientKind::Explicit(g) => g.order,
        }
    }

    pub fn identity(&self) -> usize {
        match &self.kind {
            QuotientKind::Torus { .. } => 0,
            QuotientKind::Explicit(g) => g.identity,
        }
    }

    /// The quotient map `ρₙ`: coset index of `s`.
    pub fn project(&self, s: &GroupElement) -> Result<usize, GroupError> {
        match (&self.kind, s) {
            (QuotientKind::Torus { moduli }, GroupElement::Lattice(v))
                if v.len() == moduli.len() =>
            {
                let mut index = 0usize;
                for (&m, &e) in moduli.iter().zip(v) {
                    let k = e.rem_euclid(m as i64) as usize;
                    index = index * m as usize + k;
                }
                Ok(index)
            }
            (QuotientKind::Explicit(g), GroupElement::Word(w)) => {
                let mut acc = g.identity;
                for l in w {
                    let image = *g.generator_images.get(l.generator).ok_or(
                        GroupError::UnknownGenerator {
                            generator: l.generator,
                            count: g.generator_count(),
                        },
                    )?;
                    acc = g.mul(acc, g.power(image, l.power));
                }
                Ok(acc)
            }
            _ => Err(GroupError::AmbientMismatch {
                expected: self.rank(),
                found: s.rank(),
            }),
        }
    }

    /// Product of cosets `a·b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            QuotientKind::Torus { moduli } => {
                let (ka, kb) = (self.decode(a), self.decode(b));
                self.encode(
                    ka.iter()
                        .zip(&kb)
                        .zip(moduli)
                        .map(|((x, y), &m)| (x + y) % m),
                )
            }
            QuotientKind::Explicit(g) => g.mul(a, b),
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        match &self.kind {
            QuotientKind::Torus { moduli } => {
                let k = self.decode(a);
                self.encode(k.iter().zip(moduli).map(|(x, &m)| (m - x) % m))
            }
            QuotientKind::Explicit(g) => g.inverses[a],
        }
    }

    /// `a·b⁻¹`, the coset on which entry `(a, b)` of a group-circulant
    /// matrix depends.
    pub fn ratio(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            QuotientKind::Torus { moduli } => {
                let (ka, kb) = (self.decode(a), self.decode(b));
                self.encode(
                    ka.iter()
                        .zip(&kb)
                        .zip(moduli)
                        .map(|((x, y), &m)| (x + m - y) % m),
                )
            }
            QuotientKind::Explicit(g) => g.mul(a, g.inverses[b]),
        }
    }

    /// Torus coordinates `(k₁, …, k_d)` of a coset index.
    pub fn decode(&self, mut index: usize) -> Vec<u64> {
        match &self.kind {
            QuotientKind::Torus { moduli } => {
                let mut k = vec![0u64; moduli.len()];
                for (slot, &m) in k.iter_mut().zip(moduli).rev() {
                    *slot = (index % m as usize) as u64;
                    index /= m as usize;
                }
                k
            }
            QuotientKind::Explicit(_) => vec![index as u64],
        }
    }

    fn encode(&self, coords: impl Iterator<Item = u64>) -> usize {
        match &self.kind {
            QuotientKind::Torus { moduli } => coords
                .zip(moduli)
                .fold(0usize, |acc, (k, &m)| acc * m as usize + k as usize),
            QuotientKind::Explicit(_) => unreachable!("explicit cosets are table indices"),
        }
    }

    /// Elements of `elems` that are not the identity but project to the
    /// identity coset. A quotient chain converging to `{e}` eventually has
    /// none of these for any fixed finite set.
    pub fn kernel_witnesses<'a>(
        &self,
        elems: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<Vec<GroupElement>, GroupError> {
        let mut out = Vec::new();
        for s in elems {
            if !s.is_identity() && self.project(s)? == self.identity() {
                out.push(s.clone());
            }
        }
        Ok(out)
    }
}

/// `ℤ^d / Π nᵢℤ` with the default size guard of `10⁶` cosets.
pub fn torus_quotient(moduli: &[u64]) -> Result<FiniteQuotient, GroupError> {
    FiniteQuotient::torus(moduli)
}
