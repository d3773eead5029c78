//! The parameter chain `x → (g(x), β, p, w(β), bound)` for Matroid Split and Grow.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_X: f64 = 0.9;

/// Range of `β` for which the Split guarantee holds.
pub const BETA_RANGE: (f64, f64) = (0.2, 0.8);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub x: f64,
    pub g_x: f64,
    pub beta: f64,
    /// Split probability derived from `beta`.
    pub p: f64,
    pub w_beta: f64,
    /// Approximation ratio certified for this `x`.
    pub bound: f64,
}

/// `g(x) = x - x²/2`
pub fn g(x: f64) -> f64 {
    x - x * x / 2.0
}

/// `w(β) = (2/3)(1 - √((1-β)β))`, the Split guarantee coefficient.
pub fn split_coefficient(beta: f64) -> f64 {
    2.0 / 3.0 * (1.0 - ((1.0 - beta) * beta).sqrt())
}

/// `p = β / (β + √((1-β)β))`, valid for `β ∈ [1/5, 4/5]`.
pub fn split_probability(beta: f64) -> Result<f64> {
    let (lo, hi) = BETA_RANGE;
    if !(lo..=hi).contains(&beta) {
        return Err(Error::invalid(format!(
            "beta = {beta} outside [1/5, 4/5], where the Split guarantee holds"
        )));
    }
    Ok(beta / (beta + ((1.0 - beta) * beta).sqrt()))
}

pub fn parameters(x: f64) -> Result<Parameters> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::invalid(format!(
            "x must lie in [0, 1), got {x} (beta is 0/0 at x = 1)"
        )));
    }
    let g_x = g(x);
    let denom = 4.0 - 3.0 * x - 2.0 * g_x;
    let beta = (2.0 - x - 2.0 * g_x) / denom;
    let p = split_probability(beta)?;
    let w_beta = split_coefficient(beta);
    let bound = (1.0 + g_x + denom * w_beta) / (5.0 - 2.0 * x);
    Ok(Parameters {
        x,
        g_x,
        beta,
        p,
        w_beta,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_x() {
        let p = parameters(0.9).unwrap();
        assert!((p.g_x - 0.495).abs() < 1e-12);
        // 0.11 / 0.31
        assert!((p.beta - 11.0 / 31.0).abs() < 1e-12);
        assert!((p.beta - 0.354839).abs() < 1e-6);
        assert!((p.p - 0.425822).abs() < 1e-6);
        assert!((p.bound - 0.500870).abs() < 1e-6);
        assert!(p.bound > 0.5008);
    }

    #[test]
    fn x_zero() {
        let p = parameters(0.0).unwrap();
        assert_eq!(p.g_x, 0.0);
        assert_eq!(p.beta, 0.5);
        assert_eq!(p.p, 0.5);
        assert!((p.bound - (1.0 + 4.0 / 3.0) / 5.0).abs() < 1e-12);
    }

    #[test]
    fn x_one_and_out_of_range() {
        assert!(parameters(1.0).is_err());
        assert!(parameters(-0.1).is_err());
        assert!(parameters(f64::NAN).is_err());
    }

    #[test]
    fn split_probability_range() {
        assert!(split_probability(0.19).is_err());
        assert!(split_probability(0.81).is_err());
        assert_eq!(split_probability(0.5).unwrap(), 0.5);
        assert!((split_probability(0.2).unwrap() - 0.2 / 0.6).abs() < 1e-12);
    }

    #[test]
    fn beta_stays_in_range_on_x_grid() {
        for i in 0..100 {
            let x = i as f64 / 100.0;
            let p = parameters(x).unwrap();
            assert!((0.2..=0.8).contains(&p.beta), "x = {x}");
            assert!(p.bound <= 0.51);
        }
    }
}
