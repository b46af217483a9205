use crate::error::{Error, Result};
use crate::path::{Partition, PartitionSequence, SampledPath};

#[inline]
pub(crate) fn abs_pow(x: f64, p: f64) -> f64 {
    if p == 2.0 {
        x * x
    } else if p == 1.0 {
        x.abs()
    } else {
        x.abs().powf(p)
    }
}

/// `s_p(f; κ) = Σ |f(t_i) - f(t_{i-1})|^p`.
pub fn sp_sum(f: &SampledPath, kappa: &Partition, p: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::invalid(format!("p must be positive, got {p}")));
    }
    let v = f.values_on(kappa)?;
    Ok(v.windows(2).map(|w| abs_pow(w[1] - w[0], p)).sum())
}

/// Cross-increment sum `C(f, g; κ) = Σ Δf Δg`.
pub fn covariation_sum(f: &SampledPath, g: &SampledPath, kappa: &Partition) -> Result<f64> {
    let a = f.values_on(kappa)?;
    let b = g.values_on(kappa)?;
    Ok(a.windows(2)
        .zip(b.windows(2))
        .map(|(x, y)| (x[1] - x[0]) * (y[1] - y[0]))
        .sum())
}

/// `s_2(f; λ_m ⋒ [s, t])`.
pub fn level_s2(f: &SampledPath, lambda: &PartitionSequence, m: usize, s: f64, t: f64) -> Result<f64> {
    if m == 0 || m > lambda.depth() {
        return Err(Error::invalid(format!("level {m} outside 1..={}", lambda.depth())));
    }
    sp_sum(f, &lambda.level(m).trace(s, t)?, 2.0)
}

/// `σ_p(f) = Σ |Δ⁻f|^p + |Δ⁺f|^p` over all jumps.
///
/// The path has finitely many jumps, so the unconditional sum is the plain
/// time-ordered sum of absolute values.
pub fn sigma_p(f: &SampledPath, p: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::invalid(format!("p must be positive, got {p}")));
    }
    Ok(f.jump_set()
        .entries()
        .iter()
        .map(|e| abs_pow(e.minus, p) + abs_pow(e.plus, p))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::Partition;

    fn grid(n: usize) -> Partition {
        Partition::uniform(0.0, 1.0, n).unwrap()
    }

    #[test]
    fn sp_sum_examples() {
        let c = SampledPath::continuous(grid(4), vec![3.0; 5]).unwrap();
        assert_eq!(sp_sum(&c, c.grid(), 2.0).unwrap(), 0.0);

        let f = SampledPath::continuous(grid(2), vec![0.0, 1.0, 0.5]).unwrap();
        assert_eq!(sp_sum(&f, f.grid(), 2.0).unwrap(), 1.25);

        let mono = SampledPath::continuous(grid(4), vec![0.0, 0.1, 0.4, 0.45, 2.0]).unwrap();
        let k = Partition::new(vec![0.0, 0.3, 0.6, 1.0]).unwrap();
        assert!((sp_sum(&mono, &k, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!(sp_sum(&mono, &k, 0.0).is_err());
    }

    #[test]
    fn sigma_p_examples() {
        let c = SampledPath::continuous(grid(4), vec![0.0, 1.0, 2.0, 1.0, 0.0]).unwrap();
        assert_eq!(sigma_p(&c, 2.0).unwrap(), 0.0);

        let s = SampledPath::step(grid(4), vec![0.0, 1.0, 1.0, 0.5, 0.5]).unwrap();
        assert_eq!(sigma_p(&s, 2.0).unwrap(), 1.25);

        let vals: Vec<f64> = (0..=10).map(|i| 0.1 * i as f64).collect();
        let ten = SampledPath::step(grid(10), vals).unwrap();
        assert!((sigma_p(&ten, 1.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn covariation_sum_is_symmetric_and_reduces_to_s2() {
        let f = SampledPath::continuous(grid(3), vec![0.0, 1.0, -1.0, 2.0]).unwrap();
        let g = SampledPath::continuous(grid(3), vec![1.0, 0.0, 0.5, 0.5]).unwrap();
        let k = f.grid();
        assert_eq!(covariation_sum(&f, &g, k).unwrap(), covariation_sum(&g, &f, k).unwrap());
        assert_eq!(covariation_sum(&f, &f, k).unwrap(), sp_sum(&f, k, 2.0).unwrap());
    }
}
