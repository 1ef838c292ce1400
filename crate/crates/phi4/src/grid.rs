//! Shared evaluation grids. The grids are part of the certified
//! configuration: all suprema over continuous momenta are taken as maxima
//! over these points, so results are reproducible given the configuration
//! hash.

/// Geometric radial grid in `q²`, 64 points spanning `[1e−4, 1e6]`, with the
/// origin prepended.
pub fn radial_q2(points: usize) -> Vec<f64> {
    let lo: f64 = 1e-4;
    let hi: f64 = 1e6;
    let mut g = Vec::with_capacity(points + 1);
    g.push(0.0);
    let step = (hi / lo).powf(1.0 / (points.saturating_sub(1)) as f64);
    let mut x = lo;
    for _ in 0..points {
        g.push(x);
        x *= step;
    }
    g
}

/// Points approaching the analytic continuation boundary `q² + m² = 0`
/// from inside, in units of `m = 1`.
pub fn near_mass_shell() -> Vec<f64> {
    vec![-1.0 + 1e-2, -1.0 + 1e-4, -1.0 + 1e-6]
}

/// Default 64-point grid.
pub fn standard_radial() -> Vec<f64> {
    radial_q2(64)
}

/// Scale values `t` for the symmetric momentum configurations of the higher
/// orders: 8 points, zero first, then geometric up to `t_max`.
pub fn scale_grid(points: usize, t_max: f64) -> Vec<f64> {
    assert!(points >= 2 && t_max > 0.0);
    let mut g = Vec::with_capacity(points);
    g.push(0.0);
    let lo = t_max / 2f64.powi(points as i32 - 2);
    let mut t = lo;
    for _ in 1..points {
        g.push(t);
        t *= 2.0;
    }
    g.truncate(points);
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_grid_shape() {
        let g = standard_radial();
        assert_eq!(g.len(), 65);
        assert_eq!(g[0], 0.0);
        assert!((g[1] - 1e-4).abs() < 1e-18);
        assert!((g[64] - 1e6).abs() / 1e6 < 1e-12);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn scale_grid_shape() {
        let g = scale_grid(8, 3.0);
        assert_eq!(g.len(), 8);
        assert_eq!(g[0], 0.0);
        assert!((g[7] - 3.0).abs() < 1e-12);
    }
}
