use super::cauchy::Side;
use crate::error::{Error, Result};
use crate::path::{Partition, PartitionSequence, SampledPath};
use crate::variation::BracketResult;

/// A bounded-variation integrator split into its continuous part and its
/// one-sided jumps, all on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BvIntegrator {
    pub grid: Partition,
    /// `V^c(t_i) - V^c(t_0)`.
    pub continuous: Vec<f64>,
    /// `Δ⁻V(t_i)`.
    pub minus: Vec<f64>,
    /// `Δ⁺V(t_i)`.
    pub plus: Vec<f64>,
}

impl BvIntegrator {
    pub fn new(grid: Partition, continuous: Vec<f64>, minus: Vec<f64>, plus: Vec<f64>) -> Result<Self> {
        let n = grid.len();
        if continuous.len() != n || minus.len() != n || plus.len() != n {
            return Err(Error::invalid("integrator parts must match the grid length"));
        }
        Ok(BvIntegrator { grid, continuous, minus, plus })
    }

    /// Reads a path as `V^c` plus jumps: the continuous part accumulates
    /// `V(t_i-) - V(t_{i-1}+)`.
    pub fn from_path(v: &SampledPath) -> Self {
        let n = v.len();
        let (l, r) = (v.left_limits(), v.right_limits());
        let mut continuous = vec![0.0; n];
        for i in 1..n {
            continuous[i] = continuous[i - 1] + (l[i] - r[i - 1]);
        }
        let (mut minus, mut plus) = (vec![0.0; n], vec![0.0; n]);
        for i in 0..n {
            (minus[i], plus[i]) = v.jumps_at(i);
        }
        BvIntegrator { grid: v.grid().clone(), continuous, minus, plus }
    }

    /// `V(t_n) - V(t_0)`.
    pub fn total_increment(&self) -> f64 {
        self.continuous.last().unwrap() + self.minus[1..].iter().sum::<f64>()
            + self.plus[..self.plus.len() - 1].iter().sum::<f64>()
    }
}

impl From<&BracketResult> for BvIntegrator {
    fn from(b: &BracketResult) -> Self {
        BvIntegrator {
            grid: b.grid.clone(),
            continuous: b.continuous_part.clone(),
            minus: b.jump_minus.clone(),
            plus: b.jump_plus.clone(),
        }
    }
}

/// Riemann–Stieltjes sum against `V^c` with midpoint tags.
fn rs_continuous(psi: &SampledPath, v: &BvIntegrator) -> f64 {
    let pts = v.grid.points();
    (1..pts.len())
        .map(|i| psi.eval(0.5 * (pts[i - 1] + pts[i])) * (v.continuous[i] - v.continuous[i - 1]))
        .sum()
}

/// `(LY)∫ψ dV = (RS)∫ψ dV^c + Σ ψ(t-) Δ⁻V(t) + Σ ψ(t) Δ⁺V(t)`.
pub fn ly_integral_bv(psi: &SampledPath, v: &BvIntegrator) -> Result<f64> {
    psi.check_within(&v.grid)?;
    let pts = v.grid.points();
    let n = pts.len();
    let mut s = rs_continuous(psi, v);
    for i in 0..n {
        if i > 0 && v.minus[i] != 0.0 {
            s += psi.left_limit(pts[i]) * v.minus[i];
        }
        if i + 1 < n && v.plus[i] != 0.0 {
            s += psi.eval(pts[i]) * v.plus[i];
        }
    }
    Ok(s)
}

/// `(RY)∫ψ dV = (RS)∫ψ dV^c + Σ ψ(t) Δ⁻V(t) + Σ ψ(t+) Δ⁺V(t)`.
pub fn ry_integral_bv(psi: &SampledPath, v: &BvIntegrator) -> Result<f64> {
    psi.check_within(&v.grid)?;
    let pts = v.grid.points();
    let n = pts.len();
    let mut s = rs_continuous(psi, v);
    for i in 0..n {
        if i > 0 && v.minus[i] != 0.0 {
            s += psi.eval(pts[i]) * v.minus[i];
        }
        if i + 1 < n && v.plus[i] != 0.0 {
            s += psi.right_limit(pts[i]) * v.plus[i];
        }
    }
    Ok(s)
}

/// `Σ h(x_{i-1}) (Δ_i f)²` (left) or `Σ h(x_i) (Δ_i f)²` (right) on `λ_m`.
pub fn weighted_quadratic_sum(
    h: &SampledPath,
    f: &SampledPath,
    lambda: &PartitionSequence,
    m: usize,
    side: Side,
) -> Result<f64> {
    if m == 0 || m > lambda.depth() {
        return Err(Error::invalid(format!("level {m} outside 1..={}", lambda.depth())));
    }
    let kappa = lambda.level(m);
    let hv = h.values_on(kappa)?;
    let fv = f.values_on(kappa)?;
    let off = usize::from(side == Side::Right);
    Ok((1..fv.len())
        .map(|i| {
            let d = fv[i] - fv[i - 1];
            hv[i - 1 + off] * d * d
        })
        .sum())
}
