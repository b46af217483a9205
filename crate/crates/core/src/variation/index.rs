use super::sums::sp_sum;
use crate::error::{Error, Result};
use crate::path::{PartitionSequence, SampledPath};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelIndex {
    pub level: usize,
    pub intervals: usize,
    pub s2: f64,
    /// `1/2 - ln s_2 / (2 ln N)`; `None` when `s_2 = 0` or `N = 1`.
    pub estimate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexEstimate {
    pub per_level: Vec<LevelIndex>,
    /// `1/2` minus the least-squares slope of `ln √s_2` against `ln N`
    /// over the last `window` levels.
    pub fitted: f64,
    pub window: usize,
}

/// Gladyshev-type Hölder index estimate along λ.
pub fn gladyshev_index(
    f: &SampledPath,
    lambda: &PartitionSequence,
    window: usize,
) -> Result<IndexEstimate> {
    if window < 2 || window > lambda.depth() {
        return Err(Error::invalid(format!(
            "window {window} must lie in 2..={}",
            lambda.depth()
        )));
    }
    let mut per_level = Vec::with_capacity(lambda.depth());
    for (k, level) in lambda.levels().iter().enumerate() {
        let s2 = sp_sum(f, level, 2.0)?;
        let n = level.intervals();
        let estimate =
            (s2 > 0.0 && n > 1).then(|| 0.5 - s2.ln() / (2.0 * (n as f64).ln()));
        per_level.push(LevelIndex {
            level: k + 1,
            intervals: n,
            s2,
            estimate,
        });
    }
    let used = &per_level[per_level.len() - window..];
    if let Some(l) = used.iter().find(|l| l.s2 == 0.0) {
        return Err(Error::DegeneratePath(format!(
            "s_2 vanishes at level {}",
            l.level
        )));
    }
    let xs: Vec<f64> = used.iter().map(|l| (l.intervals as f64).ln()).collect();
    let ys: Vec<f64> = used.iter().map(|l| 0.5 * l.s2.ln()).collect();
    let slope = ols_slope(&xs, &ys)
        .ok_or_else(|| Error::DegeneratePath("levels in the window share one size".into()))?;
    Ok(IndexEstimate {
        per_level,
        fitted: 0.5 - slope,
        window,
    })
}

fn ols_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::Partition;

    #[test]
    fn ols_recovers_a_line() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| 0.5 - 0.25 * v).collect();
        assert!((ols_slope(&x, &y).unwrap() + 0.25).abs() < 1e-15);
    }

    #[test]
    fn identity_path_has_index_one() {
        let lam = PartitionSequence::dyadic(1.0, 2, 8).unwrap();
        let f = SampledPath::continuous(lam.finest().clone(), lam.finest().points().to_vec())
            .unwrap();
        let est = gladyshev_index(&f, &lam, 4).unwrap();
        // s_2 = 1/N, so each estimate is 1/2 + 1/2.
        for l in &est.per_level {
            assert!((l.estimate.unwrap() - 1.0).abs() < 1e-12);
        }
        assert!((est.fitted - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_path_is_degenerate() {
        let lam = PartitionSequence::dyadic(1.0, 2, 4).unwrap();
        let f = SampledPath::continuous(lam.finest().clone(), vec![1.0; 17]).unwrap();
        assert!(matches!(
            gladyshev_index(&f, &lam, 2),
            Err(Error::DegeneratePath(_))
        ));
    }

    #[test]
    fn window_is_validated() {
        let lam = PartitionSequence::dyadic(1.0, 2, 3).unwrap();
        let f = SampledPath::continuous(Partition::uniform(0.0, 1.0, 8).unwrap(), vec![0.0; 9])
            .unwrap();
        assert!(gladyshev_index(&f, &lam, 1).is_err());
        assert!(gladyshev_index(&f, &lam, 4).is_err());
    }
}
