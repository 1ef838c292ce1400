//! The zero-dimensional mapping and its fixed-point iteration.
//!
//! With every momentum and loop integral collapsed, the equations of motion
//! close over a plain sequence of reals `H^{n+1}` and the mapping becomes
//!
//! ```text
//!   H²  ↦ 1 − Λ H⁴
//!   H⁴  ↦ −δ₃' (H²')³,            δ₃' = 6Λ / (1 + D₃)
//!   H^{n+1} ↦ δ_n' C^{n+1}' / (3Λ n(n−1)),  δ_n' = 3Λ n(n−1) / (1 + D_n)
//! ```
//!
//! with `D₃ = 6Λ H² (3/2 − |H⁶| / 6|H⁴||H²|)` and
//! `D_n = (|B^{n+1}| − |A^{n+1}|) / |H^{n+1}|`. The ratios `D_n` are taken
//! from the input state; the tree term `C'` is assembled from already-updated
//! lower orders, exactly as the defining equations nest their primes.
//!
//! This module doubles as the calibration oracle for the partition weights:
//! the assembled `B⁴` must reproduce `−9Λ H⁴ H²`, the value forced by the
//! `D₃` closed form.

use serde::Serialize;

use crate::combinatorics::{pair_partitions, triple_partitions};
use crate::splitting::{
    self, default_d0, renorm_bound_constants, Mode, RenormBoundConstants, SplittingBounds,
};
use crate::{Error, Result};

/// How the top truncation order closes the A-term, which would otherwise
/// reach two orders past `n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClosureRule {
    /// Extrapolate `H^{n_max+3}` through the tree formula with the upper
    /// splitting bound `δ_{n_max+2,max}`.
    TreeExtrapolation,
    /// Set `D_{n_max} = n_max(n_max−1) d₀`, the large-order limit of the
    /// ratio (equivalently `3Λn(n−1)/δ_∞`).
    AsymptoticRatio,
}

/// Truncated sequence of zero-dimensional Green's-function values.
/// `h[k]` holds `H^{n+1}` for order `n = 2k+1`.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroDimSequence {
    pub lambda: f64,
    pub n_max: i64,
    pub h: Vec<f64>,
}

impl ZeroDimSequence {
    /// The free solution: `H² = 1`, every higher order zero.
    pub fn free(lambda: f64, n_max: i64) -> Self {
        let len = ((n_max - 1) / 2 + 1) as usize;
        let mut h = vec![0.0; len];
        h[0] = 1.0;
        ZeroDimSequence { lambda, n_max, h }
    }

    /// Value of `H^{n+1}` for odd `n ≤ n_max`.
    pub fn value(&self, n: i64) -> f64 {
        self.h[((n - 1) / 2) as usize]
    }

    /// `H^{n+1} = (−1)^{(n−1)/2} |H^{n+1}|` for every stored order, with
    /// `H² > 0`.
    pub fn signs_ok(&self) -> bool {
        if self.h[0] <= 0.0 {
            return false;
        }
        self.h.iter().enumerate().all(|(k, &v)| {
            let want = if k % 2 == 0 { 1.0 } else { -1.0 };
            v == 0.0 || (v * want) > 0.0
        })
    }
}

/// Convergence diagnostics of the zero-dimensional iteration.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroDimDiagnostics {
    pub converged: bool,
    pub iterations: usize,
    /// Weighted sup distances `d_ν` between consecutive iterates.
    pub distances: Vec<f64>,
    /// Empirical contraction ratios `r_ν = d_ν / d_{ν−1}`.
    pub ratios: Vec<f64>,
    pub residual: f64,
}

/// The zero-dimensional mapping at fixed coupling and truncation.
#[derive(Debug, Clone)]
pub struct ZeroDimMap {
    pub lambda: f64,
    pub n_max: i64,
    pub closure: ClosureRule,
    consts: RenormBoundConstants,
    d0: f64,
}

impl ZeroDimMap {
    pub fn new(lambda: f64, n_max: i64, closure: ClosureRule) -> Result<Self> {
        if n_max < 5 || n_max % 2 == 0 {
            return Err(Error::InvalidOrder(n_max, "n_max must be odd and ≥ 5"));
        }
        if !(0.0..=0.05).contains(&lambda) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: format!("must lie in [0, 0.05], got {lambda}"),
            });
        }
        Ok(ZeroDimMap {
            lambda,
            n_max,
            closure,
            consts: renorm_bound_constants(lambda, Mode::ZeroDim, None)?,
            d0: default_d0(lambda),
        })
    }

    /// Tree term `C^{n+1}` assembled from the given order values
    /// (`values[k] = H^{2k+2}`). All partition parts stay below `n`.
    fn c_term(&self, values: &[f64], n: i64) -> Result<f64> {
        let mut sum = 0.0;
        for p in triple_partitions(n)? {
            let (i1, i2, i3) = p.parts;
            let prod = values[((i1 - 1) / 2) as usize]
                * values[((i2 - 1) / 2) as usize]
                * values[((i3 - 1) / 2) as usize];
            sum += p.weight_f64() * prod;
        }
        Ok(-6.0 * self.lambda * sum)
    }

    /// One-loop global term `B^{n+1}` (all kernels unity in zero dimensions).
    fn b_term(&self, values: &[f64], n: i64) -> Result<f64> {
        let mut sum = 0.0;
        for p in pair_partitions(n)? {
            let (j1, j2) = p.parts;
            let bubble = values[(j2 / 2) as usize]; // order j2+1
            let leg = values[((j1 - 1) / 2) as usize]; // order j1
            sum += p.weight_f64() * bubble * leg;
        }
        Ok(-3.0 * self.lambda * sum)
    }

    /// Two-loop global term `A^{n+1} = −Λ H^{n+3}`, closing past the
    /// truncation when needed.
    fn a_term(&self, values: &[f64], n: i64) -> Result<f64> {
        let order = n + 2;
        if order <= self.n_max {
            return Ok(-self.lambda * values[((order - 1) / 2) as usize]);
        }
        match self.closure {
            ClosureRule::TreeExtrapolation => {
                let c = self.c_term(values, order)?;
                let (_, dmax) = splitting::delta_bounds(order, self.lambda, &self.consts, self.d0)?;
                let nn = (order * (order - 1)) as f64;
                Ok(-self.lambda * dmax * c / (3.0 * self.lambda * nn))
            }
            // handled in d_n directly
            ClosureRule::AsymptoticRatio => unreachable!("closure branch resolved in d_n"),
        }
    }

    /// Denominator ratio `D_n` for `n ≥ 5` read off the input state.
    fn d_n(&self, values: &[f64], n: i64) -> Result<f64> {
        if n == self.n_max && self.closure == ClosureRule::AsymptoticRatio {
            return Ok((n * (n - 1)) as f64 * self.d0);
        }
        let h = values[((n - 1) / 2) as usize];
        let b = self.b_term(values, n)?;
        let a = self.a_term(values, n)?;
        if h == 0.0 {
            // free-start orders: both global terms vanish with the order
            if b == 0.0 && a == 0.0 {
                return Ok(0.0);
            }
            return Err(Error::ZeroDenominator("D_n with vanishing H^{n+1}"));
        }
        Ok((b.abs() - a.abs()) / h.abs())
    }

    /// `D₃` has its own closed form.
    fn d_3(&self, values: &[f64]) -> Result<f64> {
        let h2 = values[0];
        let h4 = values[1];
        let h6 = if values.len() > 2 { values[2] } else { 0.0 };
        let ratio = if h6 == 0.0 {
            0.0
        } else if h4 == 0.0 {
            return Err(Error::ZeroDenominator("D₃ with H⁴ = 0 and H⁶ ≠ 0"));
        } else {
            h6.abs() / (6.0 * h4.abs() * h2.abs())
        };
        Ok(6.0 * self.lambda * h2 * (1.5 - ratio))
    }

    /// One application of the mapping.
    pub fn apply(&self, state: &ZeroDimSequence) -> Result<ZeroDimSequence> {
        let lambda = self.lambda;
        let old = &state.h;
        let mut new = vec![0.0; old.len()];

        new[0] = 1.0 - lambda * old[1];

        let d3 = self.d_3(old)?;
        if 1.0 + d3 <= 0.0 {
            return Err(Error::Iteration(format!("1 + D₃ = {} ≤ 0", 1.0 + d3)));
        }
        let delta3 = 6.0 * lambda / (1.0 + d3);
        new[1] = -delta3 * new[0].powi(3);

        let mut n = 5;
        while n <= self.n_max {
            let dn = self.d_n(old, n)?;
            if 1.0 + dn <= 0.0 {
                return Err(Error::Iteration(format!("1 + D_{n} = {} ≤ 0", 1.0 + dn)));
            }
            // δ_n' C'/(3Λ n(n−1)) with δ_n' = 3Λ n(n−1)/(1+D_n)
            let c_primed = self.c_term(&new, n)?;
            let h_new = c_primed / (1.0 + dn);
            if h_new != 0.0 && h_new.abs() < 1e-300 {
                return Err(Error::Iteration(format!(
                    "|H^{}| underflowed; truncation too aggressive for Λ = {lambda}",
                    n + 1
                )));
            }
            new[((n - 1) / 2) as usize] = h_new;
            n += 2;
        }
        Ok(ZeroDimSequence { lambda, n_max: state.n_max, h: new })
    }

    /// Splitting values of a state: `δ₃ = −H⁴/(H²)³` and for `n ≥ 5`
    /// `δ_n = 3Λ n(n−1) H^{n+1} / C^{n+1}`, the factorization the mapping
    /// itself preserves.
    pub fn extract_splitting(&self, state: &ZeroDimSequence) -> Result<Vec<(i64, f64)>> {
        let h2 = state.h[0];
        let h4 = state.h[1];
        if h4 == 0.0 || h2 == 0.0 {
            return Err(Error::ZeroDenominator("splitting extraction on degenerate state"));
        }
        let mut out = vec![(3, -h4 / h2.powi(3))];
        let mut n = 5;
        while n <= self.n_max {
            let c = self.c_term(&state.h, n)?;
            if c == 0.0 {
                return Err(Error::ZeroDenominator("splitting extraction with C = 0"));
            }
            let nn = (n * (n - 1)) as f64;
            out.push((n, 3.0 * self.lambda * nn * state.value(n) / c));
            n += 2;
        }
        Ok(out)
    }

    /// Weighted sup distance between two states. Weights follow the norm
    /// recursion collapsed to zero momenta.
    pub fn distance(&self, a: &ZeroDimSequence, b: &ZeroDimSequence) -> f64 {
        let w = self.weights();
        a.h.iter()
            .zip(&b.h)
            .zip(&w)
            .map(|((&x, &y), &wn)| {
                let d = (x - y).abs();
                if d == 0.0 {
                    0.0
                } else {
                    d / wn
                }
            })
            .fold(0.0, f64::max)
    }

    /// Zero-momentum weight table `M_n(0)`.
    fn weights(&self) -> Vec<f64> {
        let len = ((self.n_max - 1) / 2 + 1) as usize;
        let m1 = 7.0 * splitting::gamma_max(self.lambda);
        let mut w = vec![1.0; len];
        w[0] = m1;
        if len > 1 {
            w[1] = (6.0 * self.lambda * m1.powi(3)).max(f64::MIN_POSITIVE);
        }
        for k in 2..len {
            let n = (2 * k + 1) as i64;
            let dmax = splitting::delta_bounds(n, self.lambda, &self.consts, self.d0)
                .map(|(_, hi)| hi)
                .unwrap_or(1.0);
            w[k] = ((n * (n - 1)) as f64 * dmax * w[k - 2] * m1 * m1).max(f64::MIN_POSITIVE);
        }
        w
    }

    pub fn bounds(&self) -> Result<SplittingBounds> {
        SplittingBounds::build(self.lambda, self.n_max, &self.consts, self.d0)
    }
}

/// Iterate the mapping from the free solution until the weighted distance
/// drops below `tol` or `max_iter` is exhausted.
pub fn solve_zerodim(
    lambda: f64,
    n_max: i64,
    tol: f64,
    max_iter: usize,
    closure: ClosureRule,
) -> Result<(ZeroDimSequence, ZeroDimDiagnostics)> {
    if tol <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "tol",
            reason: format!("must be > 0, got {tol}"),
        });
    }
    let map = ZeroDimMap::new(lambda, n_max, closure)?;
    let mut state = ZeroDimSequence::free(lambda, n_max);
    let mut distances = Vec::new();
    let mut converged = false;
    for _ in 0..max_iter {
        let next = map.apply(&state)?;
        let d = map.distance(&next, &state);
        distances.push(d);
        state = next;
        if d < tol {
            converged = true;
            break;
        }
    }
    let ratios: Vec<f64> = distances
        .windows(2)
        .map(|w| if w[0] == 0.0 { 0.0 } else { w[1] / w[0] })
        .collect();
    let residual = map.distance(&map.apply(&state)?, &state);
    let iterations = distances.len();
    if !converged {
        let last = ratios.last().copied().unwrap_or(f64::NAN);
        return Err(Error::Iteration(format!(
            "no convergence after {iterations} steps (last ratio {last:.3})"
        )));
    }
    Ok((
        state,
        ZeroDimDiagnostics { converged, iterations, distances, ratios, residual },
    ))
}
