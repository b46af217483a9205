use super::{normals, Seeded};
use crate::error::{Error, Result};
use crate::path::{PartitionSequence, SampledPath};

/// A Brownian sample on a dyadic grid together with its partition sequence.
/// Level `m` of the sequence reads the same path at `2^m + 1` points.
#[derive(Debug, Clone, PartialEq)]
pub struct BrownianSample {
    pub path: SampledPath,
    pub sequence: PartitionSequence,
}

impl BrownianSample {
    /// Values on each level, coarsest first.
    pub fn tower(&self) -> Vec<Vec<f64>> {
        self.sequence
            .levels()
            .iter()
            .map(|l| self.path.values_on(l).expect("levels lie in the domain"))
            .collect()
    }
}

/// Lévy midpoint construction: `B(T) ~ N(0, T)`, then each midpoint gets
/// the mean of its neighbours plus noise of variance `length / 4`.
pub fn brownian_dyadic(t_end: f64, depth: u32, seed: u64) -> Result<BrownianSample> {
    if depth == 0 || depth > 24 {
        return Err(Error::invalid(format!("depth must lie in 1..=24, got {depth}")));
    }
    let sequence = PartitionSequence::dyadic(t_end, 2, depth)?;
    let n = 1usize << depth;
    let mut rng = Seeded::new(seed).rng();
    let mut v = vec![0.0; n + 1];
    v[n] = t_end.sqrt() * normals(&mut rng, 1)[0];
    let mut half = n / 2;
    let mut len = t_end;
    while half >= 1 {
        let sd = (0.25 * len).sqrt();
        let z = normals(&mut rng, n / (2 * half));
        for (k, zk) in z.iter().enumerate() {
            let mid = (2 * k + 1) * half;
            v[mid] = 0.5 * (v[mid - half] + v[mid + half]) + sd * zk;
        }
        half /= 2;
        len *= 0.5;
    }
    let path = SampledPath::continuous(sequence.finest().clone(), v)?;
    Ok(BrownianSample { path, sequence })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_and_anchor() {
        let b = brownian_dyadic(1.0, 2, 7).unwrap();
        assert_eq!(b.path.len(), 5);
        assert_eq!(b.path.first(), 0.0);
    }

    #[test]
    fn refinement_is_consistent() {
        let a = brownian_dyadic(1.0, 8, 3).unwrap();
        let tower = a.tower();
        for m in 1..tower.len() {
            let coarse = &tower[m - 1];
            let fine = &tower[m];
            for (i, c) in coarse.iter().enumerate() {
                assert_eq!(*c, fine[2 * i]);
            }
        }
    }

    #[test]
    fn reproducible() {
        assert_eq!(brownian_dyadic(1.0, 10, 42).unwrap(), brownian_dyadic(1.0, 10, 42).unwrap());
        assert_ne!(brownian_dyadic(1.0, 10, 42).unwrap(), brownian_dyadic(1.0, 10, 43).unwrap());
    }

    #[test]
    fn endpoint_law() {
        let n = 1000;
        let ends: Vec<f64> = (0..n).map(|s| brownian_dyadic(1.0, 3, s).unwrap().path.last()).collect();
        let mean = ends.iter().sum::<f64>() / n as f64;
        let var = ends.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        // Three standard errors: 3/√n for the mean, 3·√(2/n) for the variance.
        assert!(mean.abs() < 3.0 / (n as f64).sqrt());
        assert!((var - 1.0).abs() < 3.0 * (2.0 / n as f64).sqrt());
    }

    #[test]
    fn finest_increment_variance() {
        let b = brownian_dyadic(2.0, 12, 1).unwrap();
        let v = b.path.values();
        let s2: f64 = v.windows(2).map(|w| (w[1] - w[0]).powi(2)).sum();
        assert!((s2 - 2.0).abs() < 0.15);
    }

    #[test]
    fn depth_bounds() {
        assert!(brownian_dyadic(1.0, 0, 0).is_err());
        assert!(brownian_dyadic(1.0, 25, 0).is_err());
    }
}
