//! Closed-form lower/upper bounds for the splitting sequences and the bound
//! constants for the renormalization parameters.
//!
//! Everything here is elementary arithmetic in the coupling; the only
//! external inputs are the two reference loop values (two-loop value and
//! slope at the subtraction point), which the zero-dimensional mode replaces
//! by fixed constants.

use serde::Serialize;

use crate::{Error, Result};

/// Reference loop values entering the bound constants. Magnitudes only; the
/// sign conventions are fixed here, matching the appendix usage where every
/// occurrence is `Λ|a₀|`-style.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LoopRefValues {
    /// |[N₃ṽ]| at the subtraction point (regulated value, see loops module).
    pub n3_value: f64,
    /// |∂/∂q² [N₃ṽ]| at the subtraction point.
    pub n3_slope: f64,
}

impl LoopRefValues {
    /// Zero-dimensional reference: the tilde integrals collapse to a bare
    /// product of unit propagators.
    pub fn zero_dim() -> Self {
        LoopRefValues { n3_value: 1.0, n3_slope: 0.0 }
    }
}

/// Which reference values feed the bound constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    ZeroDim,
    FourDim,
}

/// Minimal (`γ₀, a₀, ρ₀`) and maximal (`γ_max, ρ_max, a_max`) renormalization
/// constants as functions of the coupling.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RenormBoundConstants {
    pub lambda: f64,
    pub gamma0: f64,
    pub a0: f64,
    pub rho0: f64,
    pub gamma_max: f64,
    pub rho_max: f64,
    pub a_max: f64,
}

/// `γ_max(Λ) = 1 + 9Λ(1 + 6Λ²)`.
pub fn gamma_max(lambda: f64) -> f64 {
    1.0 + 9.0 * lambda * (1.0 + 6.0 * lambda * lambda)
}

/// `δ_{3,min}(Λ) = 6Λ / γ_max(Λ)`.
pub fn delta3_min(lambda: f64) -> f64 {
    6.0 * lambda / gamma_max(lambda)
}

/// Default denominator constant `d₀ = 3Λ·10⁻²`.
pub fn default_d0(lambda: f64) -> f64 {
    3.0 * lambda * 1e-2
}

/// Populate the six bound constants for the requested mode. Four-dimensional
/// mode requires the reference loop values.
pub fn renorm_bound_constants(
    lambda: f64,
    mode: Mode,
    loop_values: Option<LoopRefValues>,
) -> Result<RenormBoundConstants> {
    if lambda < 0.0 {
        return Err(Error::InvalidParameter {
            name: "lambda",
            reason: format!("must be ≥ 0, got {lambda}"),
        });
    }
    let lv = match mode {
        Mode::ZeroDim => LoopRefValues::zero_dim(),
        Mode::FourDim => loop_values.ok_or(Error::InvalidParameter {
            name: "loop_values",
            reason: "four-dimensional mode needs the reference loop values".into(),
        })?,
    };
    let d3min = delta3_min(lambda);
    Ok(RenormBoundConstants {
        lambda,
        gamma0: 1.0,
        a0: -d3min * lv.n3_value,
        rho0: lambda * d3min * lv.n3_slope,
        gamma_max: gamma_max(lambda),
        rho_max: 6.0 * lambda * lambda * lv.n3_slope,
        a_max: 6.0 * lambda * lv.n3_value,
    })
}

/// Lower/upper splitting bounds `(δ_{n,min}, δ_{n,max})` for odd `n ≥ 3`.
///
/// The third order is special-cased: its tree normalization carries `6Λ`
/// where every higher order carries `3Λn(n−1)`.
pub fn delta_bounds(
    n: i64,
    lambda: f64,
    consts: &RenormBoundConstants,
    d0: f64,
) -> Result<(f64, f64)> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidOrder(n, "splitting bounds need odd n ≥ 3"));
    }
    if lambda == 0.0 {
        return Ok((0.0, 0.0));
    }
    let (min, max) = if n == 3 {
        let den_max = consts.gamma0 + consts.rho0 + lambda * consts.a0.abs() + 6.0 * d0;
        let den_min = gamma_max(lambda);
        (6.0 * lambda / den_min, 6.0 * lambda / den_max)
    } else {
        let nn = (n * (n - 1)) as f64;
        let den_max = consts.gamma0 + consts.rho0 + lambda * consts.a0.abs() + nn * d0;
        let den_min =
            consts.gamma_max + consts.rho_max + lambda * consts.a_max.abs() + 3.0 * lambda * nn;
        (3.0 * lambda * nn / den_min, 3.0 * lambda * nn / den_max)
    };
    if min <= 0.0 || max <= 0.0 {
        return Err(Error::ZeroDenominator("delta_bounds"));
    }
    Ok((min, max))
}

/// Uniform limit of the upper bounds: `δ_∞ = 3Λ/d₀`.
pub fn delta_infinity(lambda: f64, d0: f64) -> Result<f64> {
    if d0 <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "d0",
            reason: format!("must be > 0, got {d0}"),
        });
    }
    Ok(3.0 * lambda / d0)
}

/// Per-order table of splitting bounds plus the uniform limit.
#[derive(Debug, Clone, Serialize)]
pub struct SplittingBounds {
    pub lambda: f64,
    pub d0: f64,
    pub delta_inf: f64,
    /// `(n, δ_{n,min}, δ_{n,max})` for odd n up to `n_max`.
    pub table: Vec<(i64, f64, f64)>,
}

impl SplittingBounds {
    pub fn build(
        lambda: f64,
        n_max: i64,
        consts: &RenormBoundConstants,
        d0: f64,
    ) -> Result<Self> {
        let mut table = Vec::new();
        let mut n = 3;
        while n <= n_max {
            let (lo, hi) = delta_bounds(n, lambda, consts, d0)?;
            table.push((n, lo, hi));
            n += 2;
        }
        Ok(SplittingBounds {
            lambda,
            d0,
            delta_inf: delta_infinity(lambda, d0)?,
            table,
        })
    }

    pub fn min_for(&self, n: i64) -> Option<f64> {
        self.table.iter().find(|e| e.0 == n).map(|e| e.1)
    }

    pub fn max_for(&self, n: i64) -> Option<f64> {
        self.table.iter().find(|e| e.0 == n).map(|e| e.2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn consts0(lambda: f64) -> RenormBoundConstants {
        renorm_bound_constants(lambda, Mode::ZeroDim, None).unwrap()
    }

    #[test]
    fn delta3_min_spot_value() {
        // 0.3 / (1 + 0.45·1.015)
        let c = consts0(0.05);
        let (lo, _) = delta_bounds(3, 0.05, &c, default_d0(0.05)).unwrap();
        assert_relative_eq!(lo, 0.3 / 1.45675, max_relative = 1e-12);
        assert_relative_eq!(lo, 0.20594, max_relative = 1e-4);
    }

    #[test]
    fn delta3_min_over_lambda_limit() {
        let lambda = 1e-6;
        let c = consts0(lambda);
        let (lo, _) = delta_bounds(3, lambda, &c, default_d0(lambda)).unwrap();
        assert_relative_eq!(lo / lambda, 6.0, max_relative = 1e-4);
    }

    #[test]
    fn free_theory_bounds_vanish() {
        let c = consts0(0.0);
        let (lo, hi) = delta_bounds(3, 0.0, &c, 0.01).unwrap();
        assert_eq!((lo, hi), (0.0, 0.0));
    }

    #[test]
    fn delta_infinity_values() {
        let lambda = 0.03;
        assert_relative_eq!(
            delta_infinity(lambda, default_d0(lambda)).unwrap(),
            100.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(delta_infinity(0.05, 0.15).unwrap(), 1.0);
        assert!(delta_infinity(0.05, 0.0).is_err());
    }

    #[test]
    fn upper_bound_approaches_limit() {
        let lambda = 0.05;
        let d0 = 0.15;
        let c = consts0(lambda);
        let (_, hi) = delta_bounds(199, lambda, &c, d0).unwrap();
        let inf = delta_infinity(lambda, d0).unwrap();
        assert!((hi - inf).abs() / inf < 0.05, "hi = {hi}, inf = {inf}");
    }

    #[test]
    fn min_over_lambda_limit_higher_orders() {
        let lambda = 1e-6;
        let c = consts0(lambda);
        for n in [5i64, 9, 21] {
            let (lo, _) = delta_bounds(n, lambda, &c, default_d0(lambda)).unwrap();
            let expect = 3.0 * (n * (n - 1)) as f64;
            assert_relative_eq!(lo / lambda, expect, max_relative = 1e-3);
        }
    }

    #[test]
    fn ordering_and_monotonicity_over_grid() {
        for &lambda in &[0.005, 0.01, 0.02, 0.03, 0.04, 0.05] {
            let c = consts0(lambda);
            let d0 = default_d0(lambda);
            let bounds = SplittingBounds::build(lambda, 199, &c, d0).unwrap();
            let mut prev: Option<(f64, f64)> = None;
            for &(n, lo, hi) in &bounds.table {
                assert!(lo > 0.0 && lo < hi, "order {n}: {lo} !< {hi}");
                assert!(hi < bounds.delta_inf);
                if let Some((plo, phi)) = prev {
                    assert!(lo > plo, "δ_min not increasing at n = {n}");
                    assert!(hi > phi, "δ_max not increasing at n = {n}");
                }
                prev = Some((lo, hi));
            }
        }
    }

    #[test]
    fn gamma_max_spot_value() {
        assert_relative_eq!(gamma_max(0.05), 1.45675, max_relative = 1e-12);
        let c = consts0(0.3);
        assert_eq!(c.gamma0, 1.0);
    }

    #[test]
    fn four_dim_mode_requires_loop_values() {
        assert!(renorm_bound_constants(0.05, Mode::FourDim, None).is_err());
        let lv = LoopRefValues { n3_value: 0.4, n3_slope: 0.2 };
        let c = renorm_bound_constants(0.05, Mode::FourDim, Some(lv)).unwrap();
        assert!(c.rho0 > 0.0);
        assert!(c.a0 < 0.0);
        assert_relative_eq!(c.a_max, 6.0 * 0.05 * 0.4);
        assert_relative_eq!(c.rho_max, 6.0 * 0.0025 * 0.2);
    }

    #[test]
    fn rejects_even_order() {
        let c = consts0(0.02);
        assert!(delta_bounds(4, 0.02, &c, 0.01).is_err());
        assert!(delta_bounds(1, 0.02, &c, 0.01).is_err());
    }
}
