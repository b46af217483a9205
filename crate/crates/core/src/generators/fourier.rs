use super::{normals, Seeded};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Conjugate Gaussian Fourier pair
/// `X = (1/2π) Σ (ξ_k s_k - η_k c_k)/k`, `Y = (1/2π) Σ (η_k s_k + ξ_k c_k)/k`
/// with `s_k = √2 sin 2πkt`, `c_k = √2 cos 2πkt`, truncated at `k_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourierPairSpec {
    pub n: usize,
    pub k_max: usize,
    pub seed: u64,
}

impl FourierPairSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.k_max < self.n {
            return Err(Error::invalid(format!(
                "need n >= 2 and k_max >= n, got n = {}, k_max = {}",
                self.n, self.k_max
            )));
        }
        Ok(())
    }
}

/// The coefficients `ξ_1..ξ_K, η_1..η_K`, drawn in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierPairCoefficients {
    pub xi: Vec<f64>,
    pub eta: Vec<f64>,
}

impl FourierPairCoefficients {
    pub fn draw(k_max: usize, seed: u64) -> Self {
        let mut rng = Seeded::new(seed).rng();
        let xi = normals(&mut rng, k_max);
        let eta = normals(&mut rng, k_max);
        FourierPairCoefficients { xi, eta }
    }

    pub fn k_max(&self) -> usize {
        self.xi.len()
    }

    /// `(X(t), Y(t))` of the truncated series.
    pub fn eval(&self, t: f64) -> (f64, f64) {
        let (mut x, mut y) = (0.0, 0.0);
        for k in 1..=self.k_max() {
            let (s, c) = (2.0 * PI * k as f64 * t).sin_cos();
            let (a, b) = (self.xi[k - 1], self.eta[k - 1]);
            x += (a * s - b * c) / k as f64;
            y += (b * s + a * c) / k as f64;
        }
        let w = std::f64::consts::SQRT_2 / (2.0 * PI);
        (w * x, w * y)
    }

    /// `G_n` and `F_n` from residue-class sums
    /// `A_r = Σ_{k ≡ r} ξ_k / k`, `B_r = Σ_{k ≡ r} η_k / k`:
    /// `G_n = n/4π² Σ_r sin(2πr/n) (A_r² + B_r²)` and
    /// `F_n = n/4π² Σ_r (1 - cos(2πr/n)) (A_{-r} B_r + B_{-r} A_r)`.
    pub fn sums(&self, n: usize) -> (f64, f64) {
        let mut a = vec![0.0; n];
        let mut b = vec![0.0; n];
        for k in 1..=self.k_max() {
            a[k % n] += self.xi[k - 1] / k as f64;
            b[k % n] += self.eta[k - 1] / k as f64;
        }
        let (mut g, mut f) = (0.0, 0.0);
        for r in 1..n {
            let neg = n - r;
            let (sin, cos) = residue_sin_cos(r, n);
            g += sin * (a[r] * a[r] + b[r] * b[r]);
            f += (1.0 - cos) * (a[neg] * b[r] + b[neg] * a[r]);
        }
        let c = n as f64 / (4.0 * PI * PI);
        (c * g, c * f)
    }
}

/// `sin(2πr/n)` and `cos(2πr/n)`, with the sine exactly zero at `r = 0`
/// and `2r = n`.
fn residue_sin_cos(r: usize, n: usize) -> (f64, f64) {
    let r = r % n;
    if r == 0 {
        return (0.0, 1.0);
    }
    if 2 * r == n {
        return (0.0, -1.0);
    }
    (2.0 * PI * r as f64 / n as f64).sin_cos()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierPairSums {
    pub n: usize,
    pub g: f64,
    pub f: f64,
    /// `S_LC(Y, X; κ_n) = G_n + F_n`.
    pub z_lc: f64,
    /// `S_RC(Y, X; κ_n) = G_n - F_n`.
    pub z_rc: f64,
    /// `E Z_n = n/2π² Σ_{k≤K} sin(2πk/n)/k²` of the truncated series.
    pub exact_mean: f64,
}

pub fn exact_truncated_mean(n: usize, k_max: usize) -> f64 {
    let s: f64 = (1..=k_max)
        .map(|k| residue_sin_cos(k, n).0 / (k as f64 * k as f64))
        .sum();
    n as f64 / (2.0 * PI * PI) * s
}

pub fn fourier_pair_sums(spec: &FourierPairSpec) -> Result<FourierPairSums> {
    spec.validate()?;
    Ok(fourier_pair_sums_multi(&[spec.n], spec.k_max, spec.seed)?[0])
}

/// Sums for several `n` from one draw of the coefficients.
pub fn fourier_pair_sums_multi(ns: &[usize], k_max: usize, seed: u64) -> Result<Vec<FourierPairSums>> {
    for &n in ns {
        FourierPairSpec { n, k_max, seed }.validate()?;
    }
    let coef = FourierPairCoefficients::draw(k_max, seed);
    Ok(ns
        .iter()
        .map(|&n| {
            let (g, f) = coef.sums(n);
            FourierPairSums {
                n,
                g,
                f,
                z_lc: g + f,
                z_rc: g - f,
                exact_mean: exact_truncated_mean(n, k_max),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: the left and right Cauchy sums of Y against X on κ_n, from
    /// direct evaluation of the truncated series.
    fn direct(coef: &FourierPairCoefficients, n: usize) -> (f64, f64) {
        let pts: Vec<(f64, f64)> = (0..=n).map(|i| coef.eval(i as f64 / n as f64)).collect();
        let (mut lc, mut rc) = (0.0, 0.0);
        for i in 1..=n {
            let dx = pts[i].0 - pts[i - 1].0;
            lc += pts[i - 1].1 * dx;
            rc += pts[i].1 * dx;
        }
        (lc, rc)
    }

    /// Oracle: the index-set sums over C₋(n) ∪ C₊(n) and C(n), visited pair
    /// by pair.
    fn sparse(coef: &FourierPairCoefficients, n: usize) -> (f64, f64) {
        let kmax = coef.k_max();
        let (xi, eta) = (&coef.xi, &coef.eta);
        let sin = |j: usize| residue_sin_cos(j, n).0;
        let cos = |j: usize| residue_sin_cos(j, n).1;
        let (mut g, mut f) = (0.0, 0.0);
        for k in 1..=kmax {
            for l in 1..=kmax {
                let diff = (k as i64 - l as i64).rem_euclid(n as i64) == 0;
                let sum = (k + l) % n == 0;
                let kl = (k * l) as f64;
                if diff != sum {
                    g += xi[k - 1] * xi[l - 1] / kl * sin(l) + eta[k - 1] * eta[l - 1] / kl * sin(k);
                }
                if sum {
                    f += (xi[k - 1] * eta[l - 1] + eta[k - 1] * xi[l - 1]) / kl * (1.0 - cos(l));
                }
            }
        }
        let c = n as f64 / (4.0 * PI * PI);
        (c * g, c * f)
    }

    #[test]
    fn factored_sums_match_both_oracles() {
        for (n, kmax, seed) in [(2usize, 17usize, 1u64), (5, 40, 2), (8, 64, 3), (16, 48, 4)] {
            let coef = FourierPairCoefficients::draw(kmax, seed);
            let (g, f) = coef.sums(n);
            let (gs, fs) = sparse(&coef, n);
            assert!((g - gs).abs() < 1e-12 && (f - fs).abs() < 1e-12, "n={n}");
            let (lc, rc) = direct(&coef, n);
            assert!((g + f - lc).abs() < 1e-10, "n={n} {} {lc}", g + f);
            assert!((g - f - rc).abs() < 1e-10, "n={n} {} {rc}", g - f);
        }
    }

    #[test]
    fn mean_examples() {
        assert_eq!(exact_truncated_mean(2, 1000), 0.0);
        let m = exact_truncated_mean(8, 4096);
        assert!(m > 0.0);
        assert!(m >= 2.0 / (PI * PI) * (8f64.ln() - 1.0));
    }

    #[test]
    fn sample_mean_matches_exact_mean() {
        let reps = 400;
        let n = 16;
        let zs: Vec<f64> = (0..reps)
            .map(|s| fourier_pair_sums(&FourierPairSpec { n, k_max: 256, seed: s }).unwrap().z_lc)
            .collect();
        let mean = zs.iter().sum::<f64>() / reps as f64;
        let var = zs.iter().map(|z| (z - mean).powi(2)).sum::<f64>() / (reps - 1) as f64;
        let want = exact_truncated_mean(n, 256);
        assert!((mean - want).abs() < 4.0 * (var / reps as f64).sqrt(), "{mean} {want}");
        assert!(var <= PI * PI * 1.2);
    }

    #[test]
    fn spec_is_validated() {
        assert!(fourier_pair_sums(&FourierPairSpec { n: 1, k_max: 8, seed: 0 }).is_err());
        assert!(fourier_pair_sums(&FourierPairSpec { n: 16, k_max: 8, seed: 0 }).is_err());
    }
}
