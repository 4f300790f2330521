use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{fix_count_with_limits, AlgebraicError, SolutionCount};
use crate::groups::{FiniteQuotient, GroupRingElement};
use crate::Limits;

/// One quotient's contribution: `h_n = log|Fix| / d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub label: String,
    pub d: usize,
    pub log_fix_count: f64,
    pub h_n: f64,
}

/// A quotient where `πₙ(f)` is singular and the fixed-point group is
/// infinite; it contributes nothing to the trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedQuotient {
    pub label: String,
    pub d: usize,
    pub nullity: usize,
}

/// Per-quotient entropy estimates converging (for `f` invertible in
/// `C*(G)`) to `log det f`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyTrace {
    pub polynomial: String,
    pub records: Vec<TraceRecord>,
    pub skipped: Vec<SkippedQuotient>,
    pub reference: Option<f64>,
}

impl EntropyTrace {
    pub fn last(&self) -> Option<&TraceRecord> {
        self.records.last()
    }

    /// `|h_N − reference|` for the largest quotient.
    pub fn residual(&self) -> Option<f64> {
        Some((self.last()?.h_n - self.reference?).abs())
    }
}

pub fn entropy_trace(
    f: &GroupRingElement,
    quotients: &[FiniteQuotient],
    reference: Option<f64>,
) -> Result<EntropyTrace, AlgebraicError> {
    entropy_trace_with_limits(f, quotients, reference, &Limits::default())
}

/// Evaluates every quotient (concurrently) and assembles records in input
/// order. Quotients must be ordered by nondecreasing size.
pub fn entropy_trace_with_limits(
    f: &GroupRingElement,
    quotients: &[FiniteQuotient],
    reference: Option<f64>,
    limits: &Limits,
) -> Result<EntropyTrace, AlgebraicError> {
    if quotients.is_empty() {
        return Err(AlgebraicError::EmptyQuotientList);
    }
    if let Some(w) = quotients.windows(2).find(|w| w[1].size() < w[0].size()) {
        return Err(AlgebraicError::UnorderedQuotients {
            before: w[0].label().to_string(),
            after: w[1].label().to_string(),
        });
    }
    let counts = quotients
        .par_iter()
        .map(|q| fix_count_with_limits(f, q, limits))
        .collect::<Result<Vec<_>, _>>()?;

    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (q, count) in quotients.iter().zip(counts) {
        let d = q.size();
        match count {
            SolutionCount::Finite { value } => {
                let log_fix_count = crate::bigint::ln_biguint(&value);
                records.push(TraceRecord {
                    label: q.label().to_string(),
                    d,
                    log_fix_count,
                    h_n: log_fix_count / d as f64,
                });
            }
            SolutionCount::Infinite { nullity } => skipped.push(SkippedQuotient {
                label: q.label().to_string(),
                d,
                nullity,
            }),
        }
    }
    Ok(EntropyTrace {
        polynomial: f.render(),
        records,
        skipped,
        reference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{parse_laurent, torus_quotient};

    fn cyclic(ns: impl IntoIterator<Item = u64>) -> Vec<FiniteQuotient> {
        ns.into_iter()
            .map(|n| torus_quotient(&[n]).unwrap())
            .collect()
    }

    #[test]
    fn bernoulli_trace_is_flat() {
        let f = GroupRingElement::constant(1, 3);
        let t = entropy_trace(&f, &cyclic([2, 4, 8]), Some(3f64.ln())).unwrap();
        assert_eq!(t.records.len(), 3);
        for r in &t.records {
            assert!((r.h_n - 3f64.ln()).abs() < 1e-12);
        }
        assert!(t.residual().unwrap() < 1e-12);
    }

    #[test]
    fn expanding_trace_increases_to_log_two() {
        let f = parse_laurent("x - 2", 1).unwrap();
        let t = entropy_trace(&f, &cyclic(1..=30), None).unwrap();
        for (n, r) in (1..=30).zip(&t.records) {
            let closed = ((2f64).powi(n) - 1.0).ln() / n as f64;
            assert!((r.h_n - closed).abs() < 1e-13, "n={n}");
            assert_eq!(r.h_n, r.log_fix_count / r.d as f64);
        }
        assert!(t.records.windows(2).all(|w| w[0].h_n < w[1].h_n));
        assert!((t.last().unwrap().h_n - 2f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn singular_quotients_are_skipped() {
        let f = parse_laurent("x - 1", 1).unwrap();
        let t = entropy_trace(&f, &cyclic([4]), None).unwrap();
        assert!(t.records.is_empty());
        assert_eq!(
            t.skipped,
            vec![SkippedQuotient {
                label: "Z/4".into(),
                d: 4,
                nullity: 1
            }]
        );
        assert_eq!(t.residual(), None);
    }

    #[test]
    fn list_errors() {
        let f = GroupRingElement::constant(1, 2);
        assert!(matches!(
            entropy_trace(&f, &[], None),
            Err(AlgebraicError::EmptyQuotientList)
        ));
        assert!(matches!(
            entropy_trace(&f, &cyclic([4, 2]), None),
            Err(AlgebraicError::UnorderedQuotients { .. })
        ));
    }
}
