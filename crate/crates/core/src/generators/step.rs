use crate::error::{Error, Result};
use crate::path::{Partition, SampledPath};

/// Cadlag step path on `grid`, zero at the start, jumping by `Δ⁻` at each
/// listed time.
pub fn step_path(grid: &Partition, jumps: &[(f64, f64)]) -> Result<SampledPath> {
    let mut delta = vec![0.0; grid.len()];
    let mut seen = vec![false; grid.len()];
    for &(t, d) in jumps {
        let i = grid
            .index_of(t)
            .ok_or_else(|| Error::invalid(format!("jump time {t} is not a grid point")))?;
        if i == 0 {
            return Err(Error::invalid(format!("no left jump at the start time {t}")));
        }
        if seen[i] {
            return Err(Error::invalid(format!("duplicate jump time {t}")));
        }
        if !d.is_finite() {
            return Err(Error::invalid(format!("non-finite jump at {t}")));
        }
        seen[i] = true;
        delta[i] = d;
    }
    let mut acc = 0.0;
    let values = delta
        .iter()
        .map(|d| {
            acc += d;
            acc
        })
        .collect();
    SampledPath::step(grid.clone(), values)
}
