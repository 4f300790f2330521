use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use super::linalg::{bareiss, smith_invariants};
use super::AlgebraicError;
use crate::groups::{FiniteQuotient, GroupRingElement};
use crate::Limits;

/// The matrix of `πₙ(f)` acting on `ℤ^{G/Gₙ}` by convolution:
/// `entries[a][b] = f̂(a·b⁻¹)` with `f̂(c) = Σ { f_s : ρₙ(s) = c }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularRepMatrix {
    dim: usize,
    #[serde(serialize_with = "ser_bigints")]
    folded: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigints")]
    entries: Vec<BigInt>,
    quotient: String,
    polynomial: String,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl RegularRepMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> &BigInt {
        &self.entries[a * self.dim + b]
    }

    /// `f̂`, the coefficients of `f` summed over each fibre of `ρₙ`.
    pub fn folded(&self) -> &[BigInt] {
        &self.folded
    }

    pub fn quotient_label(&self) -> &str {
        &self.quotient
    }

    pub fn polynomial(&self) -> &str {
        &self.polynomial
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.dim)
            .map(<[BigInt]>::to_vec)
            .collect()
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        self.entries
            .chunks(self.dim)
            .map(|r| r.iter().sum())
            .collect()
    }
}

pub fn regular_rep_matrix(
    f: &GroupRingElement,
    q: &FiniteQuotient,
) -> Result<RegularRepMatrix, AlgebraicError> {
    regular_rep_matrix_with_limits(f, q, &Limits::default())
}

pub fn regular_rep_matrix_with_limits(
    f: &GroupRingElement,
    q: &FiniteQuotient,
    limits: &Limits,
) -> Result<RegularRepMatrix, AlgebraicError> {
    let dim = q.size();
    if dim > limits.max_matrix_dim {
        return Err(AlgebraicError::SizeGuard {
            dim,
            limit: limits.max_matrix_dim,
        });
    }
    if f.rank() != q.rank() {
        return Err(AlgebraicError::AmbientMismatch {
            polynomial: f.rank(),
            quotient: q.rank(),
        });
    }
    let mut folded = vec![BigInt::zero(); dim];
    for (s, &c) in f.terms() {
        folded[q.project(s)?] += c;
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            entries.push(folded[q.ratio(a, b)].clone());
        }
    }
    Ok(RegularRepMatrix {
        dim,
        folded,
        entries,
        quotient: q.label().to_string(),
        polynomial: f.render(),
    })
}

/// `|det M|`, by fraction-free elimination.
pub fn det_abs_exact(m: &RegularRepMatrix) -> BigUint {
    bareiss(m.rows()).det.magnitude().clone()
}

/// Invariant factors of `M` (length `dim`, zeros last).
pub fn smith_normal_form(m: &RegularRepMatrix) -> Vec<BigUint> {
    smith_invariants(m.rows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{parse_laurent, torus_quotient};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn scalar_gives_scaled_identity() {
        let f = GroupRingElement::constant(1, 3);
        let m = regular_rep_matrix(&f, &torus_quotient(&[4]).unwrap()).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let expected = if a == b { 3 } else { 0 };
                assert_eq!(m.get(a, b), &BigInt::from(expected));
            }
        }
        assert_eq!(det_abs_exact(&m), BigUint::from(81u32));
    }

    #[test]
    fn x_minus_two_circulant() {
        let f = parse_laurent("x - 2", 1).unwrap();
        let m = regular_rep_matrix(&f, &torus_quotient(&[3]).unwrap()).unwrap();
        assert_eq!(m.folded(), &ints(&[-2, 1, 0])[..]);
        assert_eq!(
            m.rows(),
            vec![ints(&[-2, 0, 1]), ints(&[1, -2, 0]), ints(&[0, 1, -2])]
        );
        assert_eq!(det_abs_exact(&m), BigUint::from(7u32));

        let m1 = regular_rep_matrix(&f, &torus_quotient(&[1]).unwrap()).unwrap();
        assert_eq!(m1.rows(), vec![ints(&[-1])]);
    }

    #[test]
    fn rank_two_rows_follow_lexicographic_cosets() {
        let f = parse_laurent("y", 2).unwrap();
        let q = torus_quotient(&[2, 3]).unwrap();
        let m = regular_rep_matrix(&f, &q).unwrap();
        // Row a has its single 1 at column b with a - b = (0, 1).
        assert_eq!(m.get(1, 0), &BigInt::from(1));
        assert_eq!(m.get(0, 2), &BigInt::from(1));
        assert_eq!(m.get(3, 5), &BigInt::from(1));
        assert!(m.row_sums().iter().all(|s| *s == BigInt::from(1)));
    }

    #[test]
    fn guards_and_mismatches() {
        let f = parse_laurent("x", 1).unwrap();
        let q = torus_quotient(&[10]).unwrap();
        let tight = Limits {
            max_matrix_dim: 9,
            ..Limits::default()
        };
        assert!(matches!(
            regular_rep_matrix_with_limits(&f, &q, &tight),
            Err(AlgebraicError::SizeGuard { dim: 10, limit: 9 })
        ));
        let q2 = torus_quotient(&[2, 2]).unwrap();
        assert!(matches!(
            regular_rep_matrix(&f, &q2),
            Err(AlgebraicError::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn smith_of_circulant() {
        let f = parse_laurent("x - 2", 1).unwrap();
        let m = regular_rep_matrix(&f, &torus_quotient(&[3]).unwrap()).unwrap();
        let snf = smith_normal_form(&m);
        assert_eq!(
            snf,
            vec![
                BigUint::from(1u32),
                BigUint::from(1u32),
                BigUint::from(7u32)
            ]
        );
    }
}
