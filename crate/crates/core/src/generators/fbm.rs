use super::{normals, Seeded};
use crate::error::{Error, Result};
use crate::path::{Partition, SampledPath};
use rayon::prelude::*;

/// Fractional Brownian motion on the uniform grid `k T / N`, sampled through
/// a dense Cholesky factor of the exact covariance. The factor is computed
/// once and reused across seeds.
#[derive(Debug, Clone)]
pub struct FbmSampler {
    hurst: f64,
    n: usize,
    t_end: f64,
    /// Row `i` holds `L[i][0..=i]`.
    rows: Vec<Vec<f64>>,
}

const JITTER: f64 = 1e-12;
pub const MAX_FBM_POINTS: usize = 4096;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0; 4];
    let (ca, cb) = (a.chunks_exact(4), b.chunks_exact(4));
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        for k in 0..4 {
            acc[k] += x[k] * y[k];
        }
    }
    let tail: f64 = ra.iter().zip(rb).map(|(x, y)| x * y).sum();
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

impl FbmSampler {
    pub fn new(hurst: f64, n: usize, t_end: f64) -> Result<Self> {
        if !(hurst > 0.0 && hurst < 1.0) {
            return Err(Error::invalid(format!("Hurst index must lie in (0, 1), got {hurst}")));
        }
        if n == 0 || n > MAX_FBM_POINTS {
            return Err(Error::invalid(format!("N must lie in 1..={MAX_FBM_POINTS}, got {n}")));
        }
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::invalid(format!("T must be positive, got {t_end}")));
        }
        let h2 = 2.0 * hurst;
        let times: Vec<f64> = (1..=n).map(|k| k as f64 * t_end / n as f64).collect();
        let cov = |i: usize, j: usize| {
            let (t, s) = (times[i], times[j]);
            0.5 * (t.powf(h2) + s.powf(h2) - (t - s).abs().powf(h2))
        };
        let mut rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..=i).map(|j| cov(i, j) + if i == j { JITTER } else { 0.0 }).collect())
            .collect();
        for j in 0..n {
            let (done, rest) = rows.split_at_mut(j + 1);
            let rj = &mut done[j];
            let d = rj[j] - dot(&rj[..j], &rj[..j]);
            if !(d > 0.0) {
                return Err(Error::Numeric(format!("covariance not positive definite at row {j}")));
            }
            rj[j] = d.sqrt();
            let rj = &done[j];
            rest.par_iter_mut().for_each(|ri| {
                ri[j] = (ri[j] - dot(&ri[..j], &rj[..j])) / rj[j];
            });
        }
        Ok(FbmSampler { hurst, n, t_end, rows })
    }

    pub fn hurst(&self) -> f64 {
        self.hurst
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sample(&self, seed: u64) -> SampledPath {
        let z = normals(&mut Seeded::new(seed).rng(), self.n);
        let mut v = Vec::with_capacity(self.n + 1);
        v.push(0.0);
        v.extend(self.rows.iter().map(|r| dot(r, &z[..r.len()])));
        let grid = Partition::uniform(0.0, self.t_end, self.n).expect("validated grid");
        SampledPath::continuous(grid, v).expect("finite samples")
    }
}

/// One fBm sample with `N` intervals on `[0, T]`.
pub fn fbm_cholesky(hurst: f64, n: usize, t_end: f64, seed: u64) -> Result<SampledPath> {
    Ok(FbmSampler::new(hurst, n, t_end)?.sample(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_reproduces_covariance() {
        let s = FbmSampler::new(0.7, 32, 1.0).unwrap();
        let h2 = 1.4;
        for i in [0usize, 5, 31] {
            for j in [0usize, 17, 31] {
                let (a, b) = (s.rows[i].as_slice(), s.rows[j].as_slice());
                let k = i.min(j) + 1;
                let got = dot(&a[..k], &b[..k]);
                let (t, u) = ((i + 1) as f64 / 32.0, (j + 1) as f64 / 32.0);
                let want = 0.5 * (t.powf(h2) + u.powf(h2) - (t - u).abs().powf(h2));
                assert!((got - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn half_is_brownian_covariance() {
        let s = FbmSampler::new(0.5, 8, 1.0).unwrap();
        // min(t, s) has the factor L[i][j] = √(1/8).
        for r in &s.rows {
            for &x in r {
                assert!((x - (0.125f64).sqrt()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn empirical_covariance() {
        let s = FbmSampler::new(0.3, 16, 1.0).unwrap();
        let reps = 500;
        let paths: Vec<SampledPath> = (0..reps).map(|k| s.sample(k)).collect();
        for (i, j) in [(4usize, 4usize), (8, 16), (16, 16)] {
            let emp: f64 = paths.iter().map(|p| p.values()[i] * p.values()[j]).sum::<f64>() / reps as f64;
            let (t, u) = (i as f64 / 16.0, j as f64 / 16.0);
            let want = 0.5 * (t.powf(0.6) + u.powf(0.6) - (t - u).abs().powf(0.6));
            // Standard error of a product of two unit-scale Gaussians is at most √2/√reps.
            assert!((emp - want).abs() < 4.0 * (2.0f64 / reps as f64).sqrt(), "{i} {j} {emp} {want}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(FbmSampler::new(0.0, 8, 1.0).is_err());
        assert!(FbmSampler::new(0.5, 5000, 1.0).is_err());
        assert!(FbmSampler::new(0.5, 8, 0.0).is_err());
    }

    #[test]
    fn sample_starts_at_zero_and_is_reproducible() {
        let s = FbmSampler::new(0.6, 64, 2.0).unwrap();
        let p = s.sample(9);
        assert_eq!(p.first(), 0.0);
        assert_eq!(p.len(), 65);
        assert_eq!(p, s.sample(9));
    }
}
