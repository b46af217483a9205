use super::sums::abs_pow;
use crate::error::{Error, Result};
use crate::path::SampledPath;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PVarMethod {
    /// Exact supremum over sub-partitions of the grid.
    Dynamic,
    /// `p < 1`: the supremum over sub-partitions is attained by the finest
    /// partition, so the value is `s_p` on the full grid.
    FinestGrid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PVariation {
    pub value: f64,
    pub method: PVarMethod,
}

/// `v_p(f)` over sub-partitions of the sampling grid.
///
/// One-sided limits at decorated jumps are part of the sampled sequence,
/// since real partitions can approach them.
pub fn p_variation(f: &SampledPath, p: f64) -> Result<PVariation> {
    let mut seq = Vec::with_capacity(f.len());
    for i in 0..f.len() {
        let (l, v, r) = (f.left_limits()[i], f.values()[i], f.right_limits()[i]);
        if l != v {
            seq.push(l);
        }
        seq.push(v);
        if r != v {
            seq.push(r);
        }
    }
    p_variation_of_values(&seq, p)
}

/// p-variation of a finite sequence, treated as a path through its points.
pub fn p_variation_of_values(values: &[f64], p: f64) -> Result<PVariation> {
    if !(p > 0.0) {
        return Err(Error::invalid(format!("p must be positive, got {p}")));
    }
    if values.is_empty() {
        return Err(Error::invalid("empty sequence"));
    }
    if p < 1.0 {
        let value = values.windows(2).map(|w| abs_pow(w[1] - w[0], p)).sum();
        return Ok(PVariation {
            value,
            method: PVarMethod::FinestGrid,
        });
    }
    let pts = extrema(values);
    // best[j]: largest left-to-right sum over partitions of pts[..=j] that
    // end at j. Floating-point addition is monotone, so the recursion finds
    // the maximum of exactly these sums.
    let mut best = vec![0.0_f64; pts.len()];
    for j in 1..pts.len() {
        let xj = pts[j];
        let mut m = f64::NEG_INFINITY;
        for i in 0..j {
            let c = best[i] + abs_pow(xj - pts[i], p);
            if c > m {
                m = c;
            }
        }
        best[j] = m;
    }
    Ok(PVariation {
        value: best[pts.len() - 1],
        method: PVarMethod::Dynamic,
    })
}

/// Endpoints plus strict local extrema. For `p >= 1`,
/// `|a+b|^p >= |a|^p + |b|^p` when `a` and `b` share a sign, so monotone runs
/// collapse to their ends.
fn extrema(values: &[f64]) -> Vec<f64> {
    let mut dedup: Vec<f64> = Vec::with_capacity(values.len());
    for &v in values {
        if dedup.last() != Some(&v) {
            dedup.push(v);
        }
    }
    if dedup.len() <= 2 {
        if dedup.len() == 1 {
            // constant sequence: keep both ends so the sum is an empty 0
            return vec![dedup[0], dedup[0]];
        }
        return dedup;
    }
    let mut out = Vec::with_capacity(dedup.len());
    out.push(dedup[0]);
    for w in dedup.windows(3) {
        if (w[1] - w[0]) * (w[2] - w[1]) < 0.0 {
            out.push(w[1]);
        }
    }
    out.push(dedup[dedup.len() - 1]);
    out
}
