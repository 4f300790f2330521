//! Homomorphism counts for subshifts of finite type over cyclic quotients.
//!
//! A microstate over a permutation model `σ: G → Sym(d)` is a labeling
//! `ℓ: {0..d-1} → A`. Site `k` sees the pattern `s ↦ ℓ(σ_s⁻¹(k))`; it is
//! *good* when every `F`-translate of the window reads an allowed pattern.
//! Labelings with at most `budget` bad sites are counted, where a tolerance
//! `δ` on the normalized ℓ² defect converts to `budget = ⌊δ²·d⌋` sites. With
//! budget 0 over a cyclic quotient `ℤ/n` the count is exactly the number of
//! `n`-periodic points of the shift.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::bigint::ln_biguint;
use crate::groups::{sofic_map_from_quotient, torus_quotient, GroupElement, GroupError, SoficMap};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubshiftError {
    #[error("malformed SFT JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid subshift: {0}")]
    Invalid(String),
    #[error("transfer matrices need a window of two consecutive offsets, got {0:?}")]
    UnsupportedWindow(Vec<i64>),
    #[error(
        "{labelings} labelings exceed the enumeration cap {cap}; use the transfer-matrix count"
    )]
    EnumerationCap { labelings: u128, cap: u64 },
    #[error("cycle length must be at least 1")]
    EmptyCycle,
    #[error("empty {0} list")]
    EmptyList(&'static str),
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// An alphabet symbol as written in the input.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Symbol {
    Int(i64),
    Text(String),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Int(i) => write!(f, "{i}"),
            Symbol::Text(s) => f.write_str(s),
        }
    }
}

/// The JSON input schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SftSpec {
    pub alphabet: Vec<Symbol>,
    pub window: Vec<i64>,
    pub allowed: Vec<Vec<Symbol>>,
}

/// A subshift of `A^ℤ` defined by the patterns allowed on a finite window.
/// Patterns are stored as symbol indices listed in window order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubshiftSFT {
    alphabet: Vec<Symbol>,
    window: Vec<i64>,
    allowed: BTreeSet<Vec<usize>>,
}

impl SubshiftSFT {
    pub fn new(
        alphabet: Vec<Symbol>,
        window: Vec<i64>,
        allowed: Vec<Vec<Symbol>>,
    ) -> Result<Self, SubshiftError> {
        SftSpec {
            alphabet,
            window,
            allowed,
        }
        .try_into()
    }

    pub fn from_json(text: &str) -> Result<Self, SubshiftError> {
        let spec: SftSpec = serde_json::from_str(text).map_err(|e| SubshiftError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        spec.try_into()
    }

    /// `{0..k-1}^ℤ`: window `{0}`, every symbol allowed.
    pub fn full_shift(k: usize) -> Result<Self, SubshiftError> {
        let alphabet: Vec<Symbol> = (0..k as i64).map(Symbol::Int).collect();
        let allowed = alphabet.iter().map(|s| vec![s.clone()]).collect();
        Self::new(alphabet, vec![0], allowed)
    }

    /// Binary sequences without two adjacent 1s.
    pub fn golden_mean() -> Self {
        let s = |v: i64| Symbol::Int(v);
        Self::new(
            vec![s(0), s(1)],
            vec![0, 1],
            vec![vec![s(0), s(0)], vec![s(0), s(1)], vec![s(1), s(0)]],
        )
        .expect("valid golden mean shift")
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn allowed(&self) -> &BTreeSet<Vec<usize>> {
        &self.allowed
    }

    pub fn to_spec(&self) -> SftSpec {
        SftSpec {
            alphabet: self.alphabet.clone(),
            window: self.window.clone(),
            allowed: self
                .allowed
                .iter()
                .map(|p| p.iter().map(|&i| self.alphabet[i].clone()).collect())
                .collect(),
        }
    }

    /// True when every pattern on the window is allowed.
    pub fn is_full(&self) -> bool {
        let total = (self.alphabet.len() as u128).checked_pow(self.window.len() as u32);
        total == Some(self.allowed.len() as u128)
    }

    /// 0/1 matrix `T[a][b]` = "a at the lower offset may be followed by b",
    /// for windows of two consecutive offsets.
    pub fn transition_matrix(&self) -> Result<Vec<Vec<bool>>, SubshiftError> {
        let w = &self.window;
        let (lo_first, ok) = match w.as_slice() {
            [a, b] if *b == a + 1 => (true, true),
            [a, b] if *a == b + 1 => (false, true),
            _ => (true, false),
        };
        if !ok {
            return Err(SubshiftError::UnsupportedWindow(w.clone()));
        }
        let k = self.alphabet.len();
        let mut t = vec![vec![false; k]; k];
        for p in &self.allowed {
            let (a, b) = if lo_first { (p[0], p[1]) } else { (p[1], p[0]) };
            t[a][b] = true;
        }
        Ok(t)
    }

    /// Dense lookup table indexed by the base-|A| encoding of a pattern.
    fn allowed_table(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let mut table = vec![false; k.pow(self.window.len() as u32)];
        for p in &self.allowed {
            table[p.iter().fold(0, |acc, &s| acc * k + s)] = true;
        }
        table
    }
}

impl TryFrom<SftSpec> for SubshiftSFT {
    type Error = SubshiftError;

    fn try_from(spec: SftSpec) -> Result<Self, Self::Error> {
        let invalid = |m: String| Err(SubshiftError::Invalid(m));
        if spec.alphabet.is_empty() {
            return invalid("empty alphabet".into());
        }
        let mut index = HashMap::new();
        for (i, s) in spec.alphabet.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return invalid(format!("duplicate symbol {s}"));
            }
        }
        if spec.window.is_empty() {
            return invalid("empty window".into());
        }
        if spec.window.iter().collect::<BTreeSet<_>>().len() != spec.window.len() {
            return invalid("duplicate window offset".into());
        }
        let cells = (spec.alphabet.len() as u128).checked_pow(spec.window.len() as u32);
        if cells.is_none_or(|c| c > 1 << 24) {
            return invalid("pattern space too large".into());
        }
        if spec.allowed.is_empty() {
            return invalid("no allowed patterns".into());
        }
        let mut allowed = BTreeSet::new();
        for p in &spec.allowed {
            if p.len() != spec.window.len() {
                return invalid(format!(
                    "pattern of length {} on a window of size {}",
                    p.len(),
                    spec.window.len()
                ));
            }
            let encoded = p
                .iter()
                .map(|s| index.get(s).copied())
                .collect::<Option<Vec<_>>>();
            match encoded {
                Some(e) => {
                    allowed.insert(e);
                }
                None => return invalid("pattern uses a symbol outside the alphabet".into()),
            }
        }
        Ok(SubshiftSFT {
            alphabet: spec.alphabet,
            window: spec.window,
            allowed,
        })
    }
}

/// A tolerance on the averaged defect and the number of bad sites it admits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MicrostateBudget {
    pub delta: f64,
    pub sites: u64,
}

impl MicrostateBudget {
    /// `⌊δ²·d⌋` bad sites.
    pub fn from_delta(delta: f64, d: usize) -> Self {
        MicrostateBudget {
            delta,
            sites: (delta * delta * d as f64).floor() as u64,
        }
    }

    /// An exact site budget, paired with the tolerance at the middle of the
    /// interval `δ²·d ∈ [sites, sites + 1)`.
    pub fn from_sites(sites: u64, d: usize) -> Self {
        MicrostateBudget {
            delta: ((sites as f64 + 0.5) / d as f64).sqrt(),
            sites,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    ClosedForm,
    ExactEnumeration,
    TransferMatrix,
}

fn ser_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// One microstate count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomCountReport {
    pub quotient_label: String,
    pub d: usize,
    pub delta: f64,
    pub budget: u64,
    #[serde(serialize_with = "ser_decimal")]
    pub count: BigUint,
    pub method: CountMethod,
}

/// Every labeling is a microstate of the full `k`-shift: the count is `k^d`.
pub fn hom_count_full_shift(k: usize, sigma: &SoficMap) -> Result<HomCountReport, SubshiftError> {
    if k == 0 {
        return Err(SubshiftError::EmptyAlphabet);
    }
    let d = sigma.d();
    Ok(HomCountReport {
        quotient_label: sigma.label().to_string(),
        d,
        delta: 0.0,
        budget: 0,
        count: BigUint::from(k).pow(d),
        method: CountMethod::ClosedForm,
    })
}

/// Labelings of the cycle `ℤ/n` with at most `budget` disallowed adjacent
/// pairs, by dynamic programming over (symbol, violations so far) for each
/// starting symbol, closing the cycle at the end.
pub fn transfer_matrix_count(
    sft: &SubshiftSFT,
    n: usize,
    budget: u64,
) -> Result<BigUint, SubshiftError> {
    let t = sft.transition_matrix()?;
    if n == 0 {
        return Err(SubshiftError::EmptyCycle);
    }
    let k = t.len();
    let levels = budget.min(n as u64) as usize + 1;
    let mut total = BigUint::zero();
    for start in 0..k {
        // states[b][v]: paths from `start` ending at b with v violations.
        let mut states = vec![vec![BigUint::zero(); levels]; k];
        states[start][0] = BigUint::one();
        for _ in 1..n {
            let mut next = vec![vec![BigUint::zero(); levels]; k];
            for (b, row) in states.iter().enumerate() {
                for (v, count) in row.iter().enumerate() {
                    if count.is_zero() {
                        continue;
                    }
                    for (c, slot) in next.iter_mut().enumerate() {
                        let nv = v + usize::from(!t[b][c]);
                        if nv < levels {
                            slot[nv] += count;
                        }
                    }
                }
            }
            states = next;
        }
        for (b, row) in states.iter().enumerate() {
            let closing = usize::from(!t[b][start]);
            for (v, count) in row.iter().enumerate() {
                if v + closing < levels {
                    total += count;
                }
            }
        }
    }
    Ok(total)
}

/// `trace(Tⁿ)`, the number of `n`-periodic points, by repeated squaring.
pub fn periodic_points(sft: &SubshiftSFT, n: usize) -> Result<BigUint, SubshiftError> {
    let t = sft.transition_matrix()?;
    let k = t.len();
    let to_big = |m: &Vec<Vec<bool>>| -> Vec<Vec<BigUint>> {
        m.iter()
            .map(|r| r.iter().map(|&b| BigUint::from(u8::from(b))).collect())
            .collect()
    };
    let mul = |a: &Vec<Vec<BigUint>>, b: &Vec<Vec<BigUint>>| -> Vec<Vec<BigUint>> {
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut result: Vec<Vec<BigUint>> = (0..k)
        .map(|i| (0..k).map(|j| BigUint::from(u8::from(i == j))).collect())
        .collect();
    let mut base = to_big(&t);
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    Ok((0..k).map(|i| result[i][i].clone()).sum())
}

/// Group elements `t + w` (`t ∈ F`, `w ∈ W`) the count reads permutations for.
pub fn required_elements(sft: &SubshiftSFT, translates: &[i64]) -> Vec<GroupElement> {
    let set: BTreeSet<i64> = translates
        .iter()
        .flat_map(|t| sft.window.iter().map(move |w| t + w))
        .collect();
    set.into_iter()
        .map(|e| GroupElement::lattice([e]))
        .collect()
}

/// The left-translation model of `ℤ/n` restricted to what a count over
/// `translates` needs.
pub fn cyclic_sofic_map(
    sft: &SubshiftSFT,
    n: usize,
    translates: &[i64],
) -> Result<SoficMap, SubshiftError> {
    let q = torus_quotient(&[n as u64])?;
    Ok(sofic_map_from_quotient(
        &q,
        &required_elements(sft, translates),
    )?)
}

/// Exhaustive microstate count over all `|A|^d` labelings.
///
/// Site `k` is good iff for every `t ∈ translates` the pattern
/// `w ↦ ℓ(σ_{t+w}⁻¹(k))` is allowed.
pub fn hom_count_exact(
    sft: &SubshiftSFT,
    sigma: &SoficMap,
    translates: &[i64],
    budget: MicrostateBudget,
) -> Result<HomCountReport, SubshiftError> {
    hom_count_exact_with_limits(sft, sigma, translates, budget, &Limits::default())
}

pub fn hom_count_exact_with_limits(
    sft: &SubshiftSFT,
    sigma: &SoficMap,
    translates: &[i64],
    budget: MicrostateBudget,
    limits: &Limits,
) -> Result<HomCountReport, SubshiftError> {
    if translates.is_empty() {
        return Err(SubshiftError::EmptyList("translate"));
    }
    let d = sigma.d();
    let k = sft.alphabet.len();
    let labelings = (k as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if labelings > limits.max_labelings as u128 {
        return Err(SubshiftError::EnumerationCap {
            labelings,
            cap: limits.max_labelings,
        });
    }

    let mut inverses = BTreeMap::new();
    for s in required_elements(sft, translates) {
        let p = sigma.get(&s)?.inverse();
        inverses.insert(s, p);
    }
    // For each site, the sites read by each constraint, in window order.
    let constraints: Vec<Vec<Vec<usize>>> = (0..d)
        .map(|site| {
            translates
                .iter()
                .map(|t| {
                    sft.window
                        .iter()
                        .map(|w| inverses[&GroupElement::lattice([t + w])].apply(site))
                        .collect()
                })
                .collect()
        })
        .collect();
    let table = sft.allowed_table();

    let mut labeling = vec![0usize; d];
    let mut count: u64 = 0;
    loop {
        let mut bad = 0u64;
        for site in &constraints {
            let ok = site
                .iter()
                .all(|reads| table[reads.iter().fold(0, |acc, &j| acc * k + labeling[j])]);
            if !ok {
                bad += 1;
                if bad > budget.sites {
                    break;
                }
            }
        }
        if bad <= budget.sites {
            count += 1;
        }
        // Odometer step.
        let mut i = 0;
        loop {
            if i == d {
                return Ok(HomCountReport {
                    quotient_label: sigma.label().to_string(),
                    d,
                    delta: budget.delta,
                    budget: budget.sites,
                    count: BigUint::from(count),
                    method: CountMethod::ExactEnumeration,
                });
            }
            labeling[i] += 1;
            if labeling[i] < k {
                break;
            }
            labeling[i] = 0;
            i += 1;
        }
    }
}

/// One cell `h(n, budget) = (1/n) log count`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyCell {
    pub n: usize,
    pub budget: u64,
    pub delta: f64,
    #[serde(serialize_with = "ser_decimal")]
    pub count: BigUint,
    /// `None` when the count is zero.
    pub h: Option<f64>,
    pub method: CountMethod,
}

/// Microstate entropies over cycle lengths × budgets. Budget 0 (the exact
/// periodic-point count) is always included and listed first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyTable {
    pub log_alphabet: f64,
    pub cells: Vec<EntropyCell>,
}

impl EntropyTable {
    pub fn get(&self, n: usize, budget: u64) -> Option<&EntropyCell> {
        self.cells.iter().find(|c| c.n == n && c.budget == budget)
    }

    /// The budget-0 cells in length order.
    pub fn principal(&self) -> impl Iterator<Item = &EntropyCell> {
        self.cells.iter().filter(|c| c.budget == 0)
    }
}

pub fn subshift_entropy_table(
    sft: &SubshiftSFT,
    lengths: &[usize],
    budgets: &[u64],
) -> Result<EntropyTable, SubshiftError> {
    subshift_entropy_table_with_limits(sft, lengths, budgets, &Limits::default())
}

/// Uses the transfer matrix for nearest-neighbour windows and exhaustive
/// enumeration over `ℤ/n` (translates `{0}`) otherwise.
pub fn subshift_entropy_table_with_limits(
    sft: &SubshiftSFT,
    lengths: &[usize],
    budgets: &[u64],
    limits: &Limits,
) -> Result<EntropyTable, SubshiftError> {
    if lengths.is_empty() {
        return Err(SubshiftError::EmptyList("length"));
    }
    if budgets.is_empty() {
        return Err(SubshiftError::EmptyList("budget"));
    }
    if lengths.contains(&0) {
        return Err(SubshiftError::EmptyCycle);
    }
    let mut columns: Vec<u64> = vec![0];
    for &b in budgets {
        if !columns.contains(&b) {
            columns.push(b);
        }
    }
    let nearest_neighbour = sft.transition_matrix().is_ok();
    let jobs: Vec<(usize, u64)> = lengths
        .iter()
        .flat_map(|&n| columns.iter().map(move |&b| (n, b)))
        .collect();
    let cells = jobs
        .par_iter()
        .map(|&(n, b)| {
            let budget = MicrostateBudget::from_sites(b, n);
            let (count, method) = if nearest_neighbour {
                (
                    transfer_matrix_count(sft, n, b)?,
                    CountMethod::TransferMatrix,
                )
            } else {
                let sigma = cyclic_sofic_map(sft, n, &[0])?;
                let r = hom_count_exact_with_limits(sft, &sigma, &[0], budget, limits)?;
                (r.count, r.method)
            };
            let h = (!count.is_zero()).then(|| ln_biguint(&count) / n as f64);
            Ok(EntropyCell {
                n,
                budget: b,
                delta: budget.delta,
                count,
                h,
                method,
            })
        })
        .collect::<Result<Vec<_>, SubshiftError>>()?;
    Ok(EntropyTable {
        log_alphabet: (sft.alphabet.len() as f64).ln(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cyclic labelings of length n with no two adjacent 1s, by brute force.
    fn golden_brute(n: usize) -> u64 {
        (0u64..1 << n)
            .filter(|&m| (0..n).all(|i| !(m >> i & 1 == 1 && m >> ((i + 1) % n) & 1 == 1)))
            .count() as u64
    }

    #[test]
    fn brute_force_oracle_values() {
        assert_eq!(golden_brute(4), 7);
        assert_eq!(golden_brute(5), 11);
    }

    #[test]
    fn golden_mean_transfer_counts() {
        let g = SubshiftSFT::golden_mean();
        assert_eq!(
            transfer_matrix_count(&g, 4, 0).unwrap(),
            BigUint::from(7u32)
        );
        assert_eq!(
            transfer_matrix_count(&g, 5, 0).unwrap(),
            BigUint::from(11u32)
        );
        for n in 1..=12 {
            assert_eq!(
                transfer_matrix_count(&g, n, 0).unwrap(),
                periodic_points(&g, n).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn full_transition_matrix_counts_everything() {
        let s = |v| Symbol::Int(v);
        let full = SubshiftSFT::new(
            vec![s(0), s(1)],
            vec![0, 1],
            vec![
                vec![s(0), s(0)],
                vec![s(0), s(1)],
                vec![s(1), s(0)],
                vec![s(1), s(1)],
            ],
        )
        .unwrap();
        assert!(full.is_full());
        for budget in [0, 1, 3, 10] {
            assert_eq!(
                transfer_matrix_count(&full, 6, budget).unwrap(),
                BigUint::from(64u32)
            );
        }
    }

    #[test]
    fn budget_relaxes_the_count() {
        let g = SubshiftSFT::golden_mean();
        // Every labeling has at most n violations.
        assert_eq!(
            transfer_matrix_count(&g, 6, 6).unwrap(),
            BigUint::from(64u32)
        );
        let b1 = transfer_matrix_count(&g, 6, 1).unwrap();
        let b0 = transfer_matrix_count(&g, 6, 0).unwrap();
        assert!(b0 < b1);
        // Exactly one violating pair: a single "11" block and nothing else,
        // 6 rotations of 110000, 110100, 110010 (then 6+6+6=18, plus 18 from b0).
        assert_eq!(b1, BigUint::from(18u32 + 18u32));
    }

    #[test]
    fn windows_outside_nearest_neighbour_are_rejected() {
        let s = |v| Symbol::Int(v);
        let gap = SubshiftSFT::new(vec![s(0), s(1)], vec![0, 2], vec![vec![s(0), s(0)]]).unwrap();
        assert!(matches!(
            transfer_matrix_count(&gap, 4, 0),
            Err(SubshiftError::UnsupportedWindow(_))
        ));
        let reversed = SubshiftSFT::new(
            vec![s(0), s(1)],
            vec![1, 0],
            vec![vec![s(0), s(0)], vec![s(0), s(1)], vec![s(1), s(0)]],
        )
        .unwrap();
        assert_eq!(
            transfer_matrix_count(&reversed, 4, 0).unwrap(),
            BigUint::from(7u32)
        );
    }

    #[test]
    fn exact_enumeration_examples() {
        let g = SubshiftSFT::golden_mean();
        let sigma = cyclic_sofic_map(&g, 4, &[0, 1]).unwrap();
        let r = hom_count_exact(&g, &sigma, &[0, 1], MicrostateBudget::from_sites(0, 4)).unwrap();
        assert_eq!(r.count, BigUint::from(7u32));
        assert_eq!(r.method, CountMethod::ExactEnumeration);

        let s = |v| Symbol::Int(v);
        let zeros = SubshiftSFT::new(vec![s(0), s(1)], vec![0, 1], vec![vec![s(0), s(0)]]).unwrap();
        let sigma = cyclic_sofic_map(&zeros, 3, &[0]).unwrap();
        let r = hom_count_exact(&zeros, &sigma, &[0], MicrostateBudget::from_sites(0, 3)).unwrap();
        assert_eq!(r.count, BigUint::one());

        let full = SubshiftSFT::full_shift(3).unwrap();
        let sigma = cyclic_sofic_map(&full, 5, &[0]).unwrap();
        let r = hom_count_exact(&full, &sigma, &[0], MicrostateBudget::from_sites(2, 5)).unwrap();
        assert_eq!(r.count, BigUint::from(243u32));
    }

    #[test]
    fn enumeration_cap_and_missing_permutations() {
        let g = SubshiftSFT::golden_mean();
        let sigma = cyclic_sofic_map(&g, 30, &[0]).unwrap();
        assert!(matches!(
            hom_count_exact(&g, &sigma, &[0], MicrostateBudget::from_sites(0, 30)),
            Err(SubshiftError::EnumerationCap { .. })
        ));
        let sigma = cyclic_sofic_map(&g, 4, &[0]).unwrap();
        assert!(matches!(
            hom_count_exact(&g, &sigma, &[0, 5], MicrostateBudget::from_sites(0, 4)),
            Err(SubshiftError::Group(GroupError::MissingPermutation(_)))
        ));
    }

    #[test]
    fn full_shift_closed_form() {
        let g = SubshiftSFT::full_shift(2).unwrap();
        let sigma = cyclic_sofic_map(&g, 5, &[0]).unwrap();
        assert_eq!(
            hom_count_full_shift(2, &sigma).unwrap().count,
            BigUint::from(32u32)
        );
        let sigma = cyclic_sofic_map(&g, 10, &[0]).unwrap();
        assert_eq!(
            hom_count_full_shift(1, &sigma).unwrap().count,
            BigUint::one()
        );
        let sigma = cyclic_sofic_map(&g, 4, &[0]).unwrap();
        assert_eq!(
            hom_count_full_shift(3, &sigma).unwrap().count,
            BigUint::from(81u32)
        );
        assert!(hom_count_full_shift(0, &sigma).is_err());
    }

    #[test]
    fn budget_conversion() {
        let b = MicrostateBudget::from_delta(0.5, 10);
        assert_eq!(b.sites, 2);
        for sites in 0..20 {
            for d in [1, 7, 30, 1000] {
                let b = MicrostateBudget::from_sites(sites, d);
                assert_eq!(MicrostateBudget::from_delta(b.delta, d).sites, sites);
            }
        }
    }

    #[test]
    fn json_input() {
        let g = SubshiftSFT::from_json(
            r#"{"alphabet": [0, 1], "window": [0, 1], "allowed": [[0,0],[0,1],[1,0]]}"#,
        )
        .unwrap();
        assert_eq!(g, SubshiftSFT::golden_mean());
        let named = SubshiftSFT::from_json(
            r#"{"alphabet": ["a", "b"], "window": [0], "allowed": [["a"], ["b"]]}"#,
        )
        .unwrap();
        assert!(named.is_full());

        match SubshiftSFT::from_json("{\"alphabet\": [0, 1],\n \"window\": [0 1]}") {
            Err(SubshiftError::Json {
                line: 2, column, ..
            }) => assert!(column > 0),
            other => panic!("{other:?}"),
        }
        for bad in [
            r#"{"alphabet": [], "window": [0], "allowed": [[0]]}"#,
            r#"{"alphabet": [0], "window": [0], "allowed": []}"#,
            r#"{"alphabet": [0], "window": [0, 1], "allowed": [[0]]}"#,
            r#"{"alphabet": [0], "window": [0], "allowed": [[1]]}"#,
            r#"{"alphabet": [0, 0], "window": [0], "allowed": [[0]]}"#,
            r#"{"alphabet": [0], "window": [0, 0], "allowed": [[0, 0]]}"#,
        ] {
            assert!(
                matches!(SubshiftSFT::from_json(bad), Err(SubshiftError::Invalid(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn entropy_table_examples() {
        let g = SubshiftSFT::golden_mean();
        let t = subshift_entropy_table(&g, &[10, 20, 30], &[0]).unwrap();
        let h: Vec<f64> = t.principal().map(|c| c.h.unwrap()).collect();
        assert!(h[0] > h[1] && h[1] > h[2]);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        // Lucas numbers: L_n = φ^n + (−φ)^{−n}.
        for (c, n) in t.principal().zip([10, 20, 30]) {
            let lucas = phi.powi(n) + (-1.0 / phi).powi(n);
            assert_eq!(c.count, BigUint::from(lucas.round() as u64));
            assert!(c.h.unwrap() < 2f64.ln());
        }
        assert!((h[2] - phi.ln()).abs() < 1e-3);

        let full = SubshiftSFT::full_shift(2).unwrap();
        let t = subshift_entropy_table(&full, &[3, 7, 12], &[0, 1]).unwrap();
        assert_eq!(t.cells.len(), 6);
        for c in &t.cells {
            assert!((c.h.unwrap() - 2f64.ln()).abs() < 1e-15);
            assert_eq!(c.method, CountMethod::ExactEnumeration);
        }

        assert!(subshift_entropy_table(&g, &[], &[0]).is_err());
        assert!(subshift_entropy_table(&g, &[3], &[]).is_err());
    }

    #[test]
    fn zero_counts_have_no_entropy() {
        let s = |v| Symbol::Int(v);
        let alternating = SubshiftSFT::new(
            vec![s(0), s(1)],
            vec![0, 1],
            vec![vec![s(0), s(1)], vec![s(1), s(0)]],
        )
        .unwrap();
        let t = subshift_entropy_table(&alternating, &[3, 4], &[0]).unwrap();
        assert_eq!(t.get(3, 0).unwrap().h, None);
        assert_eq!(t.get(4, 0).unwrap().count, BigUint::from(2u32));
    }
}
