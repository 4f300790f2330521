//! Reference values for `log det f` when the group is `ℤ^d`.
//!
//! For abelian `G = ℤ^d` the Fuglede–Kadison determinant of `f` is the Mahler
//! measure of the Laurent polynomial `F(z) = Σ f_s z^s`:
//! `log det f = ∫_{𝕋^d} log |F(e^{2πiθ})| dθ`. Two independent routes are
//! provided: Jensen's formula through the roots of `F` (rank 1), and a
//! uniform periodic-trapezoid quadrature on the torus (any rank). The
//! torus certificate checks that `F` has no zero on `𝕋^d`, which for abelian
//! `G` is the same as invertibility of `f` in `C*(G)`.

use std::f64::consts::TAU;

use nalgebra::{Complex, DMatrix, Schur};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{GroupElement, GroupRingElement};

/// Highest polynomial degree handed to the root finder.
pub const MAX_DEGREE: usize = 64;
/// Largest number of torus points evaluated by one call.
pub const MAX_GRID_POINTS: u64 = 1 << 26;
/// Grid values below this abort quadrature.
pub const QUADRATURE_ZERO: f64 = 1e-14;
/// Grid values below this make the certificate report a suspected zero.
pub const SUSPECTED_ZERO: f64 = 1e-10;
/// Subtracted from the grid minimum to absorb floating-point evaluation error.
pub const SAFETY_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("the zero polynomial has no Mahler measure")]
    ZeroPolynomial,
    #[error("Jensen's formula needs a rank-1 polynomial, got rank {0}")]
    NotRankOne(usize),
    #[error("torus methods need a lattice polynomial (rank 1-4), got rank {0}")]
    UnsupportedRank(usize),
    #[error("degree {0} exceeds the root-finder cap {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("grid must have at least 2 points per axis, got {0}")]
    GridTooSmall(usize),
    #[error("grid of {points} points exceeds the cap {MAX_GRID_POINTS}")]
    GridTooLarge { points: u128 },
    #[error("|F| = {value_abs:e} at torus point {point:?}: possibly not invertible")]
    NearZero { point: Vec<f64>, value_abs: f64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MahlerMethod {
    Jensen,
    Quadrature { grid: usize },
}

/// An estimate of `log M(F) = log det f`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MahlerEstimate {
    pub value: f64,
    pub error_bound: f64,
    pub method: MahlerMethod,
    pub evaluations: u64,
}

/// Mahler measure of a rank-1 polynomial from its roots:
/// `log|a_D| + Σ log max(1, |rᵢ|)`.
///
/// Roots are the eigenvalues of the companion matrix, each refined by one
/// Newton step. The error bound sums the size of the final Newton
/// correction over all roots (`log⁺|·|` is 1-Lipschitz) plus a rounding
/// floor.
pub fn mahler_jensen(f: &GroupRingElement) -> Result<MahlerEstimate, SpectralError> {
    if f.rank() != 1 {
        return Err(SpectralError::NotRankOne(f.rank()));
    }
    if f.is_zero() {
        return Err(SpectralError::ZeroPolynomial);
    }
    let coeffs = dense_coefficients(f);
    let degree = coeffs.len() - 1;
    if degree > MAX_DEGREE {
        return Err(SpectralError::DegreeTooLarge(degree));
    }
    let lead = coeffs[degree];
    let mut value = lead.abs().ln();
    let mut error = 0.0;
    for root in polynomial_roots(&coeffs) {
        let (r, delta) = polish(&coeffs, root);
        value += r.norm().ln().max(0.0);
        error += delta;
    }
    error += 4.0 * f64::EPSILON * (degree as f64 + 1.0) * (1.0 + value.abs());
    Ok(MahlerEstimate {
        value,
        error_bound: error,
        method: MahlerMethod::Jensen,
        evaluations: degree as u64,
    })
}

/// Coefficients `c₀..c_D` of `z^{-e_min} F(z)`.
fn dense_coefficients(f: &GroupRingElement) -> Vec<f64> {
    let exps: Vec<(i64, i64)> = f
        .terms()
        .iter()
        .map(|(s, &c)| match s {
            GroupElement::Lattice(v) => (v[0], c),
            GroupElement::Word(_) => unreachable!("rank checked by caller"),
        })
        .collect();
    let lo = exps.iter().map(|e| e.0).min().expect("nonzero polynomial");
    let hi = exps.iter().map(|e| e.0).max().expect("nonzero polynomial");
    let mut coeffs = vec![0.0; (hi - lo) as usize + 1];
    for (e, c) in exps {
        coeffs[(e - lo) as usize] = c as f64;
    }
    coeffs
}

fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex<f64>> {
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Vec::new();
    }
    let lead = coeffs[degree];
    let companion = DMatrix::from_fn(degree, degree, |i, j| {
        if j == degree - 1 {
            -coeffs[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    // Unshifted-symmetric companions (e.g. z^6 + 3) can stall the QR
    // iteration indefinitely, so it runs under a cap.
    match Schur::try_new(companion, f64::EPSILON, 200 * degree) {
        Some(schur) => schur.complex_eigenvalues().iter().copied().collect(),
        None => aberth_roots(coeffs),
    }
}

/// Aberth–Ehrlich simultaneous iteration from starts spread on the Cauchy
/// radius circle.
fn aberth_roots(coeffs: &[f64]) -> Vec<Complex<f64>> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    let radius = 1.0
        + coeffs[..degree]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex<f64>> = (0..degree)
        .map(|k| Complex::from_polar(radius, TAU * (k as f64 + 0.25) / degree as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for k in 0..degree {
            let (p, dp) = horner(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex<f64> = (0..degree)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex::new(1.0, 0.0) - ratio * repulsion);
            z[k] -= step;
            moved = moved.max(step.norm() / (1.0 + z[k].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// `(P(z), P'(z))` by Horner's rule.
fn horner(coeffs: &[f64], z: Complex<f64>) -> (Complex<f64>, Complex<f64>) {
    let mut p = Complex::new(0.0, 0.0);
    let mut dp = Complex::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// One Newton step, kept only if it lowers the residual. Returns the root
/// and an estimate of its distance to the true root.
fn polish(coeffs: &[f64], root: Complex<f64>) -> (Complex<f64>, f64) {
    let (p, dp) = horner(coeffs, root);
    let mut best = root;
    let mut residual = p;
    let mut slope = dp;
    if dp.norm() > 0.0 {
        let candidate = root - p / dp;
        let (pc, dpc) = horner(coeffs, candidate);
        if pc.norm() <= p.norm() {
            best = candidate;
            residual = pc;
            slope = dpc;
        }
    }
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree].abs();
    // |P(z)| ≥ |a_D| dist^D bounds the distance to the nearest root; it is the
    // fallback when the derivative vanishes (clustered roots).
    let nearest = (residual.norm() / lead).powf(1.0 / degree as f64);
    let newton = if slope.norm() > 1e-8 * lead {
        residual.norm() / slope.norm()
    } else {
        f64::INFINITY
    };
    (best, newton.min(nearest))
}

/// Evaluates `F` on the uniform grid `{j/N}^d` of the torus.
struct TorusGrid {
    rank: usize,
    n: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
    terms: Vec<(Vec<i64>, f64)>,
}

impl TorusGrid {
    fn new(f: &GroupRingElement, n: usize) -> Result<Self, SpectralError> {
        let rank = f.rank();
        if !(1..=4).contains(&rank) {
            return Err(SpectralError::UnsupportedRank(rank));
        }
        if n < 2 {
            return Err(SpectralError::GridTooSmall(n));
        }
        let points = (n as u128).pow(rank as u32);
        if points > MAX_GRID_POINTS as u128 {
            return Err(SpectralError::GridTooLarge { points });
        }
        let (cos, sin) = (0..n)
            .map(|k| {
                let angle = TAU * k as f64 / n as f64;
                (angle.cos(), angle.sin())
            })
            .unzip();
        let terms = f
            .terms()
            .iter()
            .map(|(s, &c)| match s {
                GroupElement::Lattice(v) => (v.clone(), c as f64),
                GroupElement::Word(_) => unreachable!("lattice rank checked"),
            })
            .collect();
        Ok(TorusGrid {
            rank,
            n,
            cos,
            sin,
            terms,
        })
    }

    fn points(&self) -> usize {
        self.n.pow(self.rank as u32)
    }

    fn coords(&self, mut index: usize) -> Vec<usize> {
        let mut j = vec![0; self.rank];
        for slot in j.iter_mut().rev() {
            *slot = index % self.n;
            index /= self.n;
        }
        j
    }

    fn theta(&self, index: usize) -> Vec<f64> {
        self.coords(index)
            .into_iter()
            .map(|j| j as f64 / self.n as f64)
            .collect()
    }

    fn abs_at(&self, index: usize) -> f64 {
        let j = self.coords(index);
        let n = self.n as i64;
        let (mut re, mut im) = (0.0, 0.0);
        for (exps, c) in &self.terms {
            let phase = exps.iter().zip(&j).fold(0i64, |acc, (&e, &ji)| {
                (acc + e.rem_euclid(n) * ji as i64) % n
            }) as usize;
            re += c * self.cos[phase];
            im += c * self.sin[phase];
        }
        re.hypot(im)
    }

    /// `|F|` at every grid point, in lexicographic point order.
    fn abs_values(&self) -> Vec<f64> {
        (0..self.points())
            .into_par_iter()
            .map(|i| self.abs_at(i))
            .collect()
    }
}

/// Sum with a fixed pairwise reduction tree.
fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 32 {
        v.iter().sum()
    } else {
        let mid = v.len() / 2;
        pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
    }
}

fn mean_log_abs(grid: &TorusGrid) -> Result<(f64, Vec<f64>), SpectralError> {
    let abs = grid.abs_values();
    if let Some((i, &a)) = abs.iter().enumerate().find(|(_, &a)| a < QUADRATURE_ZERO) {
        return Err(SpectralError::NearZero {
            point: grid.theta(i),
            value_abs: a,
        });
    }
    let logs: Vec<f64> = abs.iter().map(|a| a.ln()).collect();
    Ok((pairwise_sum(&logs) / logs.len() as f64, logs))
}

/// Mean of `log|F|` over the uniform `grid^d` torus grid.
///
/// The error estimate is the change from the half-resolution grid (a
/// sub-grid when `grid` is even) plus a summation rounding floor.
pub fn mahler_quadrature(
    f: &GroupRingElement,
    grid: usize,
) -> Result<MahlerEstimate, SpectralError> {
    let fine = TorusGrid::new(f, grid)?;
    let (value, logs) = mean_log_abs(&fine)?;
    let mut evaluations = logs.len() as u64;

    let coarse_n = (grid / 2).max(1);
    let coarse = if grid.is_multiple_of(2) {
        let sub: Vec<f64> = logs
            .iter()
            .enumerate()
            .filter(|(i, _)| fine.coords(*i).iter().all(|j| j % 2 == 0))
            .map(|(_, &l)| l)
            .collect();
        pairwise_sum(&sub) / sub.len() as f64
    } else if coarse_n >= 2 {
        let g = TorusGrid::new(f, coarse_n)?;
        let (v, l) = mean_log_abs(&g)?;
        evaluations += l.len() as u64;
        v
    } else {
        // A single point: no refinement information.
        logs[0]
    };
    let magnitude =
        pairwise_sum(&logs.iter().map(|l| l.abs()).collect::<Vec<_>>()) / logs.len() as f64;
    let rounding = 4.0 * f64::EPSILON * (logs.len() as f64).log2().max(1.0) * (1.0 + magnitude);
    Ok(MahlerEstimate {
        value,
        error_bound: (value - coarse).abs() + rounding,
        method: MahlerMethod::Quadrature { grid },
        evaluations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    CertifiedInvertible { min_abs_lower_bound: f64 },
    NotInvertible { witness: Vec<f64>, value_abs: f64 },
    Unknown,
}

/// Outcome of a torus non-vanishing check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvertibilityCertificate {
    pub verdict: Verdict,
    pub grid: usize,
    pub lipschitz_bound: f64,
    pub grid_min_abs: f64,
}

/// Checks that `F` has no zero on the torus.
///
/// With `m` the grid minimum of `|F|` and `L = 2π Σ |f_s| ‖s‖₁` a Lipschitz
/// constant for `F` in the sup metric on `θ`, every torus point is within
/// `h/2 · √d` of a grid point (`h = 1/grid`), so `m − L·h/2·√d > 0` proves
/// `|F| > 0` everywhere. A grid value below `1e-10` is reported as a
/// suspected zero; anything else is inconclusive.
pub fn certify_invertible_torus(
    f: &GroupRingElement,
    grid: usize,
) -> Result<InvertibilityCertificate, SpectralError> {
    let g = TorusGrid::new(f, grid)?;
    let lipschitz_bound = TAU
        * f.terms()
            .iter()
            .map(|(s, &c)| c.unsigned_abs() as f64 * s.l1_norm() as f64)
            .sum::<f64>();
    let abs = g.abs_values();
    let (argmin, min_abs) =
        abs.iter()
            .copied()
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |best, (i, a)| if a < best.1 { (i, a) } else { best },
            );
    let radius = lipschitz_bound * (0.5 / grid as f64) * (g.rank as f64).sqrt();
    let margin = min_abs - SAFETY_MARGIN - radius;
    let verdict = if margin > 0.0 {
        Verdict::CertifiedInvertible {
            min_abs_lower_bound: margin,
        }
    } else if min_abs < SUSPECTED_ZERO {
        Verdict::NotInvertible {
            witness: g.theta(argmin),
            value_abs: min_abs,
        }
    } else {
        Verdict::Unknown
    };
    Ok(InvertibilityCertificate {
        verdict,
        grid,
        lipschitz_bound,
        grid_min_abs: min_abs,
    })
}

/// Jensen for rank 1, quadrature otherwise.
pub fn reference_log_det(
    f: &GroupRingElement,
    grid: usize,
) -> Result<MahlerEstimate, SpectralError> {
    if f.rank() == 1 {
        mahler_jensen(f)
    } else {
        mahler_quadrature(f, grid)
    }
}
