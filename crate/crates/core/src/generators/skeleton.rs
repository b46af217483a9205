use crate::error::{Error, Result};
use crate::path::SampledPath;

/// First-passage skeleton of a continuous path at level `m`: the times
/// `τ(k)` at which the path has moved `2^{-m}` away from its value at
/// `τ(k-1)`, and the walk `W(k) = B(0) + S(k) 2^{-m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Skeleton {
    pub level: u32,
    /// `τ(0) = a, τ(1), ...`.
    pub times: Vec<f64>,
    /// Integer walk `S(k)`, `S(0) = 0`.
    pub steps: Vec<i64>,
    /// `W(k) = B(0) + S(k) 2^{-m}`.
    pub values: Vec<f64>,
    /// No crossing happened before the end of the path.
    pub empty: bool,
}

impl Skeleton {
    pub fn len(&self) -> usize {
        self.times.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// `max_k |τ(k) - k 2^{-2m}|` over the recorded steps.
    pub fn clock_error(&self) -> f64 {
        let dt = 4f64.powi(-(self.level as i32));
        self.times
            .iter()
            .enumerate()
            .fold(0.0, |m, (k, &t)| m.max((t - self.times[0] - k as f64 * dt).abs()))
    }
}

/// Scans the linear interpolant of `b` for successive crossings. The grid
/// mesh must be at most `2^{-2m-4}`.
pub fn first_passage_skeleton(b: &SampledPath, m: u32) -> Result<Skeleton> {
    if b.has_jumps() {
        return Err(Error::invalid("skeleton needs a continuous path"));
    }
    let h = 2f64.powi(-(m as i32));
    let resolution = 2f64.powi(-(2 * m as i32) - 4);
    if b.grid().mesh() > resolution * (1.0 + 1e-12) {
        return Err(Error::invalid(format!(
            "grid mesh {} is coarser than 2^(-2m-4) = {resolution}",
            b.grid().mesh()
        )));
    }
    let (t, v) = (b.times(), b.values());
    let b0 = v[0];
    let mut s: i64 = 0;
    let mut times = vec![t[0]];
    let mut steps = vec![0];
    for j in 1..t.len() {
        let (mut ta, mut va) = (t[j - 1], v[j - 1]);
        let (tb, vb) = (t[j], v[j]);
        loop {
            let up = b0 + (s + 1) as f64 * h;
            let dn = b0 + (s - 1) as f64 * h;
            let (target, ds) = if vb >= up {
                (up, 1)
            } else if vb <= dn {
                (dn, -1)
            } else {
                break;
            };
            let tc = (ta + (target - va) / (vb - va) * (tb - ta)).clamp(ta, tb);
            s += ds;
            times.push(tc);
            steps.push(s);
            ta = tc;
            va = target;
        }
    }
    let values = steps.iter().map(|&k| b0 + k as f64 * h).collect();
    let empty = times.len() == 1;
    Ok(Skeleton { level: m, times, steps, values, empty })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::brownian_dyadic;
    use crate::path::Partition;

    #[test]
    fn ramp_crossings() {
        let g = Partition::uniform(0.0, 1.0, 64).unwrap();
        let ramp = SampledPath::continuous(g.clone(), g.points().to_vec()).unwrap();
        let sk = first_passage_skeleton(&ramp, 1).unwrap();
        assert_eq!(sk.times, vec![0.0, 0.5, 1.0]);
        assert_eq!(sk.values, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn steps_have_unit_size_and_hit_the_path() {
        let b = brownian_dyadic(1.0, 14, 5).unwrap().path;
        let sk = first_passage_skeleton(&b, 4).unwrap();
        assert!(!sk.is_empty());
        assert!(sk.steps.windows(2).all(|w| (w[1] - w[0]).abs() == 1));
        for (&tk, &wk) in sk.times.iter().zip(&sk.values).skip(1) {
            assert!((b.eval(tk) - wk).abs() < 1e-12);
        }
    }

    #[test]
    fn flat_path_is_empty_and_coarse_grid_is_rejected() {
        let g = Partition::uniform(0.0, 1.0, 64).unwrap();
        let flat = SampledPath::continuous(g.clone(), vec![0.0; 65]).unwrap();
        assert!(first_passage_skeleton(&flat, 1).unwrap().is_empty());
        assert!(first_passage_skeleton(&flat, 2).is_err());
    }

    #[test]
    fn clock_error_shrinks() {
        let mean = |m: u32| -> f64 {
            (0..20)
                .map(|s| {
                    let b = brownian_dyadic(2.0, 2 * m + 5, s).unwrap().path;
                    let sk = first_passage_skeleton(&b, m).unwrap();
                    let k = sk.times.partition_point(|&t| t <= 1.0);
                    let trimmed = Skeleton { times: sk.times[..k].to_vec(), ..sk };
                    trimmed.clock_error()
                })
                .sum::<f64>()
                / 20.0
        };
        assert!(mean(6) < mean(2));
    }
}
