use crate::error::{Error, Result};
use crate::path::{PartitionSequence, SampledPath};
use serde::{Deserialize, Serialize};

/// Self-affine function determined by a ±1 sequence `x` of length `base`
/// with `Σ x(k) = base^hurst`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KonoSpec {
    pub base: u32,
    pub hurst: f64,
    pub x: Vec<i8>,
    pub depth: u32,
}

impl KonoSpec {
    /// `base = 4`, `hurst = 1/2`, `x = (1, 1, 1, -1)`.
    pub fn standard(depth: u32) -> Self {
        KonoSpec {
            base: 4,
            hurst: 0.5,
            x: vec![1, 1, 1, -1],
            depth,
        }
    }

    /// `q = base^hurst`, which must be an integer.
    pub fn validate(&self) -> Result<i64> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if self.base < 4 {
            return bad(format!("base must be at least 4, got {}", self.base));
        }
        if !(self.hurst > 0.0 && self.hurst < 1.0) {
            return bad(format!("scale must lie in (0, 1), got {}", self.hurst));
        }
        if self.x.len() != self.base as usize {
            return bad(format!("sequence has {} entries, base is {}", self.x.len(), self.base));
        }
        if self.x.iter().any(|&v| v != 1 && v != -1) {
            return bad("sequence entries must be ±1".into());
        }
        if self.depth == 0 {
            return bad("depth must be at least 1".into());
        }
        let q = (self.base as f64).powf(self.hurst);
        let sum: i64 = self.x.iter().map(|&v| v as i64).sum();
        if (q - q.round()).abs() > 1e-9 || sum != q.round() as i64 {
            return bad(format!("Σx = {sum} must equal base^scale = {q}"));
        }
        let points = (self.base as f64).powi(self.depth as i32);
        if points > (1u64 << 26) as f64 {
            return bad(format!("base^depth = {points} exceeds the grid limit"));
        }
        Ok(sum)
    }
}

/// `w(i r^{-d}) = Σ_{n=1}^{d} y_{n-1} s(δ_n) q^{-n}` over the base-r digits
/// `δ_n` of `i`, with `s(j) = Σ_{k<j} x(k)`, `y_n = Π_{k≤n} x(δ_k)` and
/// `w(1) = 1`. Returns the path with its base-r partition sequence.
pub fn kono_path(spec: &KonoSpec) -> Result<(SampledPath, PartitionSequence)> {
    let q = spec.validate()? as f64;
    let r = spec.base as usize;
    let mut partial = vec![0.0; r];
    for j in 1..r {
        partial[j] = partial[j - 1] + spec.x[j - 1] as f64;
    }
    let mut w = vec![0.0];
    let mut y = vec![1.0];
    let mut scale = 1.0;
    for _ in 0..spec.depth {
        scale /= q;
        let mut nw = Vec::with_capacity(w.len() * r);
        let mut ny = Vec::with_capacity(w.len() * r);
        for (wi, yi) in w.iter().zip(&y) {
            for j in 0..r {
                nw.push(wi + yi * partial[j] * scale);
                ny.push(yi * spec.x[j] as f64);
            }
        }
        w = nw;
        y = ny;
    }
    w.push(1.0);
    let seq = PartitionSequence::dyadic(1.0, spec.base, spec.depth)?;
    let path = SampledPath::continuous(seq.finest().clone(), w)?;
    Ok((path, seq))
}
