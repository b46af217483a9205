use super::sums::sp_sum;
use crate::convergence::Tolerance;
use crate::error::Result;
use crate::path::{PartitionSequence, SampledPath};

/// Whether `s_2(f; λ_m)` settles at `σ_2(f)`, as it must for a path of
/// bounded 2-variation in the Wiener class.
#[derive(Debug, Clone, PartialEq)]
pub struct WienerReport {
    pub sigma2: f64,
    pub per_level_s2: Vec<f64>,
    pub consistent: bool,
}

pub fn wiener_diagnostic(f: &SampledPath, lambda: &PartitionSequence) -> Result<WienerReport> {
    wiener_diagnostic_with(f, lambda, &Tolerance::default())
}

/// The last three levels (or all, if fewer) must match `σ_2` within `tol`.
pub fn wiener_diagnostic_with(
    f: &SampledPath,
    lambda: &PartitionSequence,
    tol: &Tolerance,
) -> Result<WienerReport> {
    let sigma2 = super::sigma_p(f, 2.0)?;
    let per_level_s2 = lambda
        .levels()
        .iter()
        .map(|l| sp_sum(f, l, 2.0))
        .collect::<Result<Vec<_>>>()?;
    let tail = &per_level_s2[per_level_s2.len().saturating_sub(3)..];
    let consistent = tail
        .iter()
        .all(|&s| tol.accepts((s - sigma2).abs(), s.max(sigma2)));
    Ok(WienerReport {
        sigma2,
        per_level_s2,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_path_is_consistent_and_smooth_path_with_jump_is_too() {
        let lam = PartitionSequence::dyadic(1.0, 2, 10).unwrap();
        let grid = lam.finest().clone();
        let vals: Vec<f64> = grid.points().iter().map(|&t| if t >= 0.5 { 1.0 } else { 0.0 }).collect();
        let s = SampledPath::step(grid.clone(), vals).unwrap();
        let r = wiener_diagnostic(&s, &lam).unwrap();
        assert_eq!(r.sigma2, 1.0);
        assert!(r.consistent);
    }

    #[test]
    fn rough_path_without_jumps_is_not_consistent() {
        let lam = PartitionSequence::dyadic(1.0, 2, 6).unwrap();
        let vals: Vec<f64> = (0..=64).map(|i| if i % 2 == 0 { 0.0 } else { 0.125 }).collect();
        let f = SampledPath::continuous(lam.finest().clone(), vals).unwrap();
        let r = wiener_diagnostic(&f, &lam).unwrap();
        assert_eq!(r.sigma2, 0.0);
        assert!(!r.consistent);
    }
}
