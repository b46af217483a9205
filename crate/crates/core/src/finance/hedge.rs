use super::bs::{bs_delta, bs_price, BsParams};
use crate::error::{Error, Result};
use crate::path::{PartitionSequence, SampledPath};
use crate::stieltjes::{improper_lc_tail, IntegralEstimate};
use crate::variation::quadratic_variation;

/// Delta hedge of a European call along one price path, with a bond
/// `Q(t) = e^{rt}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HedgeReport {
    pub grid: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub value: Vec<f64>,
    pub gain: Vec<f64>,
    /// `V(t) - V(0) - G(t)`.
    pub residual: Vec<f64>,
    pub terminal_payoff_gap: f64,
    pub sup_residual: f64,
    /// `[P](T) / (σ² ∫ P² ds)`.
    pub bracket_ratio: f64,
}

const BRACKET_TOLERANCE: f64 = 0.05;

fn check_price(p: &BsParams, price: &SampledPath, lambda: &PartitionSequence) -> Result<Vec<f64>> {
    p.validate()?;
    if (lambda.end() - p.horizon).abs() > 1e-12 * p.horizon || lambda.start() != 0.0 {
        return Err(Error::invalid(format!(
            "partition sequence covers [{}, {}], horizon is {}",
            lambda.start(),
            lambda.end(),
            p.horizon
        )));
    }
    if price.has_jumps() {
        return Err(Error::InvalidPrice("price path must be continuous".into()));
    }
    let v = price.values_on(lambda.finest())?;
    if (v[0] - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidPrice(format!("price must start at 1, got {}", v[0])));
    }
    if let Some(i) = v.iter().position(|&x| !(x > 0.0)) {
        return Err(Error::InvalidPrice(format!(
            "price touches 0 at t = {}",
            lambda.finest().points()[i]
        )));
    }
    Ok(v)
}

/// `β = N(d₁(t, P(t)))` on the finest grid, with `β(T) = 0`.
pub fn delta_path(p: &BsParams, price: &SampledPath, lambda: &PartitionSequence) -> Result<SampledPath> {
    let v = check_price(p, price, lambda)?;
    let t = lambda.finest().points();
    let n = v.len() - 1;
    let beta = (0..=n).map(|i| if i < n { bs_delta(p, t[i], v[i]) } else { 0.0 }).collect();
    SampledPath::continuous(lambda.finest().clone(), beta)
}

pub fn hedge(p: &BsParams, price: &SampledPath, lambda: &PartitionSequence) -> Result<HedgeReport> {
    let v = check_price(p, price, lambda)?;
    let t = lambda.finest().points();
    let n = v.len() - 1;

    let bracket = quadratic_variation(price, lambda)?.value();
    let s2 = p.sigma * p.sigma;
    let expected: f64 = (1..=n)
        .map(|i| 0.5 * s2 * (v[i - 1] * v[i - 1] + v[i] * v[i]) * (t[i] - t[i - 1]))
        .sum();
    let bracket_ratio = bracket / expected;
    if !((bracket_ratio - 1.0).abs() <= BRACKET_TOLERANCE) {
        return Err(Error::InvalidPrice(format!(
            "price bracket {bracket} is not within 5% of sigma^2 * int P^2 = {expected}"
        )));
    }

    let q: Vec<f64> = t.iter().map(|&s| (p.rate * s).exp()).collect();
    let mut alpha = vec![0.0; n + 1];
    let mut beta = vec![0.0; n + 1];
    let mut value = vec![0.0; n + 1];
    for i in 0..=n {
        let phi = bs_price(p, t[i], v[i]);
        beta[i] = if i < n { bs_delta(p, t[i], v[i]) } else { 0.0 };
        alpha[i] = (phi - v[i] * beta[i]) / q[i];
        value[i] = alpha[i] * q[i] + beta[i] * v[i];
    }

    // α jumps at T, so the last bond interval uses α(t_{n-1}) alone.
    let mut gain = vec![0.0; n + 1];
    for i in 1..=n {
        let a = if i < n { 0.5 * (alpha[i - 1] + alpha[i]) } else { alpha[n - 1] };
        gain[i] = gain[i - 1] + a * (q[i] - q[i - 1]) + beta[i - 1] * (v[i] - v[i - 1]);
    }
    let residual: Vec<f64> = (0..=n).map(|i| value[i] - value[0] - gain[i]).collect();
    let sup_residual = residual.iter().fold(0.0_f64, |m, r| m.max(r.abs()));
    Ok(HedgeReport {
        grid: t.to_vec(),
        terminal_payoff_gap: (value[n] - p.payoff(v[n])).abs(),
        alpha,
        beta,
        value,
        gain,
        residual,
        sup_residual,
        bracket_ratio,
    })
}

/// `(LC)∫_0^{u} β d_λP` for `u` the last point of each level before `T`.
/// `β` need not have a limit at `T`.
pub fn gain_tail(p: &BsParams, price: &SampledPath, lambda: &PartitionSequence) -> Result<IntegralEstimate> {
    let beta = delta_path(p, price, lambda)?;
    improper_lc_tail(&beta, price, lambda, p.horizon)
}
