//! Exact integer elimination: fraction-free (Bareiss) echelon form and Smith
//! normal form over arbitrary-precision integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

/// Rows below this count are updated sequentially.
const PARALLEL_ROWS: usize = 64;

/// Outcome of fraction-free elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub rank: usize,
    /// Determinant for square full-rank input, zero otherwise.
    pub det: BigInt,
}

/// Fraction-free Gaussian elimination with column skipping.
///
/// After each pivot step every live entry is a minor of the input, so the
/// division by the previous pivot is exact.
pub fn bareiss(mut a: Vec<Vec<BigInt>>) -> Elimination {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut negate = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        let update = |row: &mut Vec<BigInt>| {
            let mult = std::mem::take(&mut row[c]);
            if mult.is_zero() && *pivot == prev {
                return;
            }
            for j in c + 1..cols {
                let mut v = &row[j] * pivot;
                if !mult.is_zero() && !pivot_row[j].is_zero() {
                    v -= &mult * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        };
        if bottom.len() >= PARALLEL_ROWS {
            bottom.par_iter_mut().for_each(update);
        } else {
            bottom.iter_mut().for_each(update);
        }
        prev = pivot.clone();
        r += 1;
    }
    let det = if rows == cols && r == rows {
        if rows == 0 {
            BigInt::one()
        } else if negate {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    Elimination { rank: r, det }
}

/// Invariant factors `d₁ | d₂ | …` of an integer matrix, one per diagonal
/// position (`min(rows, cols)` values, zeros last).
///
/// Pivoting picks the smallest nonzero magnitude in the remaining block,
/// ties going to the lowest (row, column) index.
pub fn smith_invariants(mut a: Vec<Vec<BigInt>>) -> Vec<BigUint> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let n = rows.min(cols);
    let mut out = Vec::with_capacity(n);

    for t in 0..n {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&a, t) else {
                out.resize(n, BigUint::zero());
                return out;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                let (top, bottom) = a.split_at_mut(i);
                let (pivot_row, row) = (&top[t], &mut bottom[0]);
                for j in t..cols {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &q * &pivot_row[j];
                    }
                }
                clean &= row[t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                for row in a.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }

            // Divisibility: fold an offending row into the pivot row.
            let offending =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offending {
                Some(i) => {
                    let (top, bottom) = a.split_at_mut(i);
                    for (dst, src) in top[t].iter_mut().zip(&bottom[0]).skip(t) {
                        *dst += src;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].magnitude().clone());
    }
    out
}

fn smallest_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => v.magnitude() < a[bi][bj].magnitude(),
            };
            if better {
                best = Some((i, j));
                if v.magnitude().is_one() {
                    return best;
                }
            }
        }
    }
    best
}
