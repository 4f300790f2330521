use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};

use super::{FiniteQuotient, GroupElement, GroupError};

/// A bijection of `{0, …, d-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || std::mem::replace(&mut seen[i], true) {
                return Err(GroupError::NotAPermutation);
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(d: usize) -> Self {
        Permutation((0..d).collect())
    }

    /// Swaps `a` and `b`.
    pub fn transposition(d: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(d);
        p.0.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (k, &i) in self.0.iter().enumerate() {
            inv[i] = k;
        }
        Permutation(inv)
    }
}

/// A finite piece of a map `s ↦ σ_s` from the group into `Sym(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoficMap {
    label: String,
    d: usize,
    perms: BTreeMap<GroupElement, Permutation>,
}

impl SoficMap {
    pub fn new(d: usize, perms: BTreeMap<GroupElement, Permutation>) -> Result<Self, GroupError> {
        if d == 0 {
            return Err(GroupError::EmptySoficMap);
        }
        if perms.values().any(|p| p.len() != d) {
            return Err(GroupError::NotAPermutation);
        }
        Ok(SoficMap {
            label: format!("sofic({d})"),
            d,
            perms,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, s: &GroupElement) -> Result<&Permutation, GroupError> {
        self.perms
            .get(s)
            .ok_or_else(|| GroupError::MissingPermutation(s.clone()))
    }

    pub fn elements(&self) -> impl Iterator<Item = &GroupElement> {
        self.perms.keys()
    }
}

/// The left-translation action of the listed elements on the cosets of `q`:
/// `σ_s(k) = ρ(s)·k`.
pub fn sofic_map_from_quotient<'a>(
    q: &FiniteQuotient,
    elems: impl IntoIterator<Item = &'a GroupElement>,
) -> Result<SoficMap, GroupError> {
    let d = q.size();
    let mut perms = BTreeMap::new();
    for s in elems {
        let c = q.project(s)?;
        let images = (0..d).map(|k| q.mul(c, k)).collect();
        perms.insert(s.clone(), Permutation(images));
    }
    Ok(SoficMap::new(d, perms)?.with_label(q.label()))
}

/// Fraction of sites where `σ_{st} ≠ σ_s σ_t`, as an exact ratio.
pub fn multiplicative_defect(
    sigma: &SoficMap,
    s: &GroupElement,
    t: &GroupElement,
) -> Result<Ratio<u64>, GroupError> {
    let st = s.mul(t)?;
    let (ps, pt, pst) = (sigma.get(s)?, sigma.get(t)?, sigma.get(&st)?);
    let agree = (0..sigma.d)
        .filter(|&k| pst.apply(k) == ps.apply(pt.apply(k)))
        .count();
    Ok(Ratio::new((sigma.d - agree) as u64, sigma.d as u64))
}

/// Fraction of sites where `σ_s` and `σ_t` agree, for distinct `s`, `t`.
pub fn freeness_defect(
    sigma: &SoficMap,
    s: &GroupElement,
    t: &GroupElement,
) -> Result<Ratio<u64>, GroupError> {
    if s == t {
        return Err(GroupError::EqualElements(s.clone()));
    }
    let (ps, pt) = (sigma.get(s)?, sigma.get(t)?);
    let agree = (0..sigma.d).filter(|&k| ps.apply(k) == pt.apply(k)).count();
    Ok(Ratio::new(agree as u64, sigma.d as u64))
}

fn ser_ratio<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_ratio<S: Serializer>(r: &Option<Ratio<u64>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser_ratio(r, s),
        None => s.serialize_none(),
    }
}

/// Both defects of one element pair on one quotient-induced map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectRow {
    pub quotient_label: String,
    pub d: usize,
    pub s: String,
    pub t: String,
    #[serde(serialize_with = "ser_ratio")]
    pub multiplicative_defect: Ratio<u64>,
    /// `None` when `s = t` in the group.
    #[serde(serialize_with = "ser_opt_ratio")]
    pub freeness_defect: Option<Ratio<u64>>,
    /// `s` and `t` have the same image in the quotient.
    pub congruent: bool,
}

/// Defects of each pair under the left-translation model of `q`.
pub fn defect_rows(
    q: &FiniteQuotient,
    pairs: &[(GroupElement, GroupElement)],
) -> Result<Vec<DefectRow>, GroupError> {
    pairs
        .iter()
        .map(|(s, t)| {
            let st = s.mul(t)?;
            let sigma = sofic_map_from_quotient(q, [s, t, &st])?;
            Ok(DefectRow {
                quotient_label: q.label().to_string(),
                d: sigma.d,
                s: s.to_string(),
                t: t.to_string(),
                multiplicative_defect: multiplicative_defect(&sigma, s, t)?,
                freeness_defect: (s != t)
                    .then(|| freeness_defect(&sigma, s, t))
                    .transpose()?,
                congruent: q.project(s)? == q.project(t)?,
            })
        })
        .collect()
}
