use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BsParams {
    pub strike: f64,
    pub rate: f64,
    pub sigma: f64,
    pub horizon: f64,
}

impl BsParams {
    pub fn new(strike: f64, rate: f64, sigma: f64, horizon: f64) -> Result<Self> {
        let p = BsParams { strike, rate, sigma, horizon };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.strike > 0.0
            && self.rate >= 0.0
            && self.sigma > 0.0
            && self.horizon > 0.0
            && [self.strike, self.rate, self.sigma, self.horizon].iter().all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "need K > 0, r >= 0, sigma > 0, T > 0; got K={}, r={}, sigma={}, T={}",
                self.strike, self.rate, self.sigma, self.horizon
            )))
        }
    }

    pub fn payoff(&self, x: f64) -> f64 {
        (x - self.strike).max(0.0)
    }
}

/// Standard normal distribution function, `½ erfc(-x/√2)`.
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

pub fn norm_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// `d₁(t, x)` for `t < T`, `x > 0`.
pub fn bs_d1(p: &BsParams, t: f64, x: f64) -> f64 {
    let tau = p.horizon - t;
    ((x / p.strike).ln() + (p.rate + 0.5 * p.sigma * p.sigma) * tau) / (p.sigma * tau.sqrt())
}

pub fn bs_d2(p: &BsParams, t: f64, x: f64) -> f64 {
    bs_d1(p, t, x) - p.sigma * (p.horizon - t).sqrt()
}

/// Call price `φ(t, x)`, with `φ(T, x) = max(0, x - K)` and `φ(t, 0) = 0`.
pub fn bs_price(p: &BsParams, t: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if t >= p.horizon {
        return p.payoff(x);
    }
    let d1 = bs_d1(p, t, x);
    let d2 = d1 - p.sigma * (p.horizon - t).sqrt();
    x * norm_cdf(d1) - p.strike * (-p.rate * (p.horizon - t)).exp() * norm_cdf(d2)
}

/// `φ_x = N(d₁)` on `[0, T) × (0, ∞)`.
pub fn bs_delta(p: &BsParams, t: f64, x: f64) -> f64 {
    norm_cdf(bs_d1(p, t, x))
}

/// `φ_xx = N'(d₁) / (σ x √(T - t))`.
pub fn bs_gamma(p: &BsParams, t: f64, x: f64) -> f64 {
    norm_pdf(bs_d1(p, t, x)) / (p.sigma * x * (p.horizon - t).sqrt())
}

/// `φ_t = -σ x N'(d₁) / (2√(T - t)) - r K e^{-r(T-t)} N(d₂)`.
pub fn bs_theta(p: &BsParams, t: f64, x: f64) -> f64 {
    let tau = p.horizon - t;
    let d1 = bs_d1(p, t, x);
    let d2 = d1 - p.sigma * tau.sqrt();
    -p.sigma * x * norm_pdf(d1) / (2.0 * tau.sqrt())
        - p.rate * p.strike * (-p.rate * tau).exp() * norm_cdf(d2)
}

/// `φ_t + ½σ²x²φ_xx + r x φ_x - r φ` from the closed-form derivatives.
pub fn bs_pde_residual(p: &BsParams, t: f64, x: f64) -> f64 {
    let s2 = p.sigma * p.sigma;
    bs_theta(p, t, x) + 0.5 * s2 * x * x * bs_gamma(p, t, x) + p.rate * x * bs_delta(p, t, x)
        - p.rate * bs_price(p, t, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> BsParams {
        BsParams::new(1.0, 0.05, 0.4, 1.0).unwrap()
    }

    #[test]
    fn cdf_reference_values() {
        assert_eq!(norm_cdf(0.0), 0.5);
        assert!((norm_cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-15);
        assert!((norm_cdf(-1.0) - 0.158_655_253_931_457_05).abs() < 1e-15);
        assert!((norm_cdf(-8.0) - 6.220_960_574_271_785e-16).abs() < 1e-28);
    }

    #[test]
    fn branches() {
        let p = params();
        assert!((bs_price(&p, 1.0, 1.2) - 0.2).abs() < 1e-15);
        assert_eq!(bs_price(&p, 1.0, 0.8), 0.0);
        assert_eq!(bs_price(&p, 0.3, 0.0), 0.0);
    }

    #[test]
    fn lower_bound_and_monotone_in_x() {
        let p = params();
        for i in 0..20 {
            let t = i as f64 * 0.05;
            let mut prev = 0.0;
            for j in 1..60 {
                let x = j as f64 * 0.05;
                let v = bs_price(&p, t, x);
                let lb = (x - p.strike * (-p.rate * (1.0 - t)).exp()).max(0.0);
                assert!(v >= lb - 1e-14);
                assert!(v >= prev - 1e-15);
                prev = v;
            }
        }
    }

    #[test]
    fn pde_holds_at_the_money() {
        let p = params();
        assert!(bs_pde_residual(&p, 0.5, 1.0).abs() < 1e-9);
        assert!(bs_pde_residual(&p, 0.5, 30.0).abs() < 1e-9);
    }

    #[test]
    fn validation() {
        assert!(BsParams::new(0.0, 0.05, 0.4, 1.0).is_err());
        assert!(BsParams::new(1.0, -0.1, 0.4, 1.0).is_err());
        assert!(BsParams::new(1.0, 0.0, 0.0, 1.0).is_err());
    }
}
