use crate::convergence::Tolerance;
use crate::error::{Error, Result};
use crate::path::{Partition, PartitionSequence, SampledPath};
use crate::variation::check_accessible;

/// Running product kept as sign and log-magnitude. A zero factor pins the
/// product at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct LogProduct {
    pub sign: f64,
    pub log_abs: f64,
}

impl LogProduct {
    pub const ONE: LogProduct = LogProduct { sign: 1.0, log_abs: 0.0 };

    /// Multiply by `1 + d`, scaled by `exp(shift)`.
    pub fn mul_one_plus(&mut self, d: f64, shift: f64) {
        let x = 1.0 + d;
        if x == 0.0 {
            self.sign = 0.0;
        } else if x < 0.0 {
            self.sign = -self.sign;
            self.log_abs += (-x).ln() + shift;
        } else {
            self.log_abs += d.ln_1p() + shift;
        }
    }

    pub fn value(&self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.log_abs.exp()
        }
    }

    /// `value() · exp(extra)`, when the extra exponent is kept apart.
    pub fn value_times_exp(&self, extra: f64) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * (self.log_abs + extra).exp()
        }
    }
}

fn product_of_increments(v: &[f64]) -> f64 {
    let incs = v.windows(2).map(|w| w[1] - w[0]);
    if incs.clone().all(|d| d > -1.0) {
        incs.map(f64::ln_1p).sum::<f64>().exp()
    } else {
        incs.map(|d| 1.0 + d).product()
    }
}

/// `P(f; κ) = Π (1 + f(t_i) - f(t_{i-1}))`.
pub fn partition_product(f: &SampledPath, kappa: &Partition) -> Result<f64> {
    Ok(product_of_increments(&f.values_on(kappa)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductEstimate {
    pub per_level: Vec<(usize, f64)>,
    pub value: f64,
    pub converged: bool,
    pub interval: (f64, f64),
}

pub fn product_lambda_integral(
    f: &SampledPath,
    lambda: &PartitionSequence,
    s: f64,
    t: f64,
) -> Result<ProductEstimate> {
    product_lambda_integral_with(f, lambda, s, t, &Tolerance::default())
}

pub(crate) fn check_nondegenerate(f: &SampledPath) -> Result<()> {
    for e in f.jump_set().entries() {
        if e.minus == -1.0 || e.plus == -1.0 {
            return Err(Error::DegenerateProduct { time: e.time });
        }
    }
    Ok(())
}

/// Product λ-integral `𝔜_s^t (1 + d_λ f)` from products over the traces
/// `λ_m ⋒ [s, t]`.
pub fn product_lambda_integral_with(
    f: &SampledPath,
    lambda: &PartitionSequence,
    s: f64,
    t: f64,
    tol: &Tolerance,
) -> Result<ProductEstimate> {
    check_accessible(f, lambda)?;
    check_nondegenerate(f)?;
    let mut per_level = Vec::with_capacity(lambda.depth());
    for (k, level) in lambda.levels().iter().enumerate() {
        let p = partition_product(f, &level.trace(s, t)?)?;
        if !p.is_finite() {
            return Err(Error::Numeric(format!("product overflows at level {}", k + 1)));
        }
        per_level.push((k + 1, p));
    }
    let values: Vec<f64> = per_level.iter().map(|&(_, v)| v).collect();
    Ok(ProductEstimate {
        value: *values.last().unwrap(),
        converged: tol.cauchy_tail(&values),
        per_level,
        interval: (s, t),
    })
}

/// `Π_{(s,t]} (1+Δ⁻f) e^{-Δ⁻f} · Π_{[s,t)} (1+Δ⁺f) e^{-Δ⁺f}`.
pub fn jump_product(f: &SampledPath, s: f64, t: f64) -> f64 {
    let mut p = LogProduct::ONE;
    for e in f.jump_set().entries() {
        if e.time > s && e.time <= t && e.minus != 0.0 {
            p.mul_one_plus(e.minus, -e.minus);
        }
        if e.time >= s && e.time < t && e.plus != 0.0 {
            p.mul_one_plus(e.plus, -e.plus);
        }
    }
    p.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::Decoration;
    use proptest::prelude::*;

    fn grid(n: usize) -> Partition {
        Partition::uniform(0.0, 1.0, n).unwrap()
    }

    #[test]
    fn partition_product_examples() {
        let c = SampledPath::continuous(grid(3), vec![2.0; 4]).unwrap();
        assert_eq!(partition_product(&c, c.grid()).unwrap(), 1.0);
        let z = SampledPath::continuous(grid(1), vec![0.0, -1.0]).unwrap();
        assert_eq!(partition_product(&z, z.grid()).unwrap(), 0.0);
        let h = SampledPath::continuous(grid(2), vec![0.0, 0.5, 1.0]).unwrap();
        assert!((partition_product(&h, h.grid()).unwrap() - 2.25).abs() < 1e-15);
        let neg = SampledPath::continuous(grid(2), vec![0.0, -3.0, -2.0]).unwrap();
        assert_eq!(partition_product(&neg, neg.grid()).unwrap(), -4.0);
    }

    #[test]
    fn jump_product_examples() {
        let c = SampledPath::continuous(grid(2), vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(jump_product(&c, 0.0, 1.0), 1.0);
        let one = SampledPath::step(grid(2), vec![0.0, 1.0, 1.0]).unwrap();
        assert!((jump_product(&one, 0.0, 1.0) - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        let two = SampledPath::step(grid(2), vec![0.0, 1.0, 0.5]).unwrap();
        let want = 2.0 * (-1.0f64).exp() * 0.5 * 0.5f64.exp();
        assert!((jump_product(&two, 0.0, 1.0) - want).abs() < 1e-15);
        // The jump at 0.5 lies outside (0.5, 1].
        assert!((jump_product(&two, 0.5, 1.0) - 0.5 * 0.5f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn pure_jump_product_integral_is_exact() {
        let lam = PartitionSequence::dyadic(1.0, 2, 3).unwrap();
        let f = SampledPath::step(lam.finest().clone(), vec![0., 0., 0.5, 0.5, 0.5, 0.3, 0.3, 0.3, 0.3]).unwrap();
        let p = product_lambda_integral(&f, &lam, 0.0, 1.0).unwrap();
        // Oracle: (1 + .5)(1 - .2).
        assert!((p.value - 1.5 * 0.8).abs() < 1e-12);
        assert_eq!(p.interval, (0.0, 1.0));
    }

    #[test]
    fn minus_one_jump_is_degenerate() {
        let lam = PartitionSequence::dyadic(1.0, 2, 2).unwrap();
        let d = Decoration { time: 0.5, left: 1.0, right: 0.0 };
        let f = SampledPath::regulated(lam.finest().clone(), vec![0.0, 0.5, 1.0, 0.2, 0.0], &[d]).unwrap();
        assert_eq!(
            product_lambda_integral(&f, &lam, 0.0, 1.0).unwrap_err(),
            Error::DegenerateProduct { time: 0.5 }
        );
    }

    proptest! {
        #[test]
        fn multiplicative_over_adjacent_intervals(
            v in prop::collection::vec(-0.4f64..0.4, 17), cut in 1usize..16,
        ) {
            let lam = PartitionSequence::dyadic(1.0, 2, 4).unwrap();
            let f = SampledPath::continuous(lam.finest().clone(), v).unwrap();
            let u = cut as f64 / 16.0;
            let a = product_lambda_integral(&f, &lam, 0.0, u).unwrap();
            let b = product_lambda_integral(&f, &lam, u, 1.0).unwrap();
            let w = product_lambda_integral(&f, &lam, 0.0, 1.0).unwrap();
            for m in 0..4 {
                if lam.level(m + 1).contains(u) {
                    let (x, y, z) = (a.per_level[m].1, b.per_level[m].1, w.per_level[m].1);
                    prop_assert!((x * y - z).abs() <= 1e-12 * z.abs().max(1.0));
                }
            }
        }
    }
}
