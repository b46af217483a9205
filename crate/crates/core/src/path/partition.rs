use crate::error::{Error, Result};

/// A finite, strictly increasing set of times `a = x_0 < x_1 < ... < x_n = b`.
///
/// A one-point partition is allowed and stands for the degenerate interval
/// `[a, a]`; every partition sum over it is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    points: Vec<f64>,
}

impl Partition {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("partition needs at least one point"));
        }
        if let Some(bad) = points.iter().find(|t| !t.is_finite()) {
            return Err(Error::invalid(format!("non-finite partition point {bad}")));
        }
        if let Some(w) = points.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "partition points must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(Partition { points })
    }

    /// `n` equal intervals of `[a, b]`, with points computed as `a + i(b-a)/n`.
    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        if n == 0 || !(b > a) {
            return Err(Error::invalid("uniform partition needs b > a and n >= 1"));
        }
        let len = b - a;
        let points = (0..=n)
            .map(|i| {
                if i == n {
                    b
                } else {
                    a + (i as f64) * len / (n as f64)
                }
            })
            .collect();
        Partition::new(points)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of intervals.
    pub fn intervals(&self) -> usize {
        self.points.len() - 1
    }

    pub fn start(&self) -> f64 {
        self.points[0]
    }

    pub fn end(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    pub fn is_degenerate(&self) -> bool {
        self.points.len() == 1
    }

    pub fn mesh(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    /// Index of `t` if it is (exactly) a point of the partition.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        self.points
            .binary_search_by(|p| p.partial_cmp(&t).expect("finite points"))
            .ok()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.index_of(t).is_some()
    }

    pub fn covers(&self, t: f64) -> bool {
        t >= self.start() && t <= self.end()
    }

    pub fn is_subset_of(&self, other: &Partition) -> bool {
        let mut j = 0;
        let theirs = other.points();
        for &t in &self.points {
            while j < theirs.len() && theirs[j] < t {
                j += 1;
            }
            if j == theirs.len() || theirs[j] != t {
                return false;
            }
        }
        true
    }

    /// The trace partition `{s} ∪ (κ ∩ (s,t)) ∪ {t}`.
    pub fn trace(&self, s: f64, t: f64) -> Result<Partition> {
        trace_partition(self, s, t)
    }
}

/// Trace of `kappa` on `[s, t]`: `{s} ∪ (κ ∩ (s,t)) ∪ {t}`.
///
/// For `s == t` the result is the one-point partition `{s}`.
pub fn trace_partition(kappa: &Partition, s: f64, t: f64) -> Result<Partition> {
    if !(s <= t) {
        return Err(Error::invalid(format!("trace needs s <= t, got s={s}, t={t}")));
    }
    if !kappa.covers(s) || !kappa.covers(t) {
        return Err(Error::invalid(format!(
            "trace endpoints [{s}, {t}] leave [{}, {}]",
            kappa.start(),
            kappa.end()
        )));
    }
    if s == t {
        return Ok(Partition { points: vec![s] });
    }
    let pts = kappa.points();
    let lo = pts.partition_point(|&p| p <= s);
    let hi = pts.partition_point(|&p| p < t);
    let mut points = Vec::with_capacity(hi.saturating_sub(lo) + 2);
    points.push(s);
    points.extend_from_slice(&pts[lo..hi]);
    points.push(t);
    Ok(Partition { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[f64]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_unsorted_and_empty() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![0.0, 0.0]).is_err());
        assert!(Partition::new(vec![0.0, 1.0, 0.5]).is_err());
        assert!(Partition::new(vec![0.0, f64::NAN]).is_err());
    }

    #[test]
    fn trace_examples() {
        let k = p(&[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(trace_partition(&k, 0.3, 0.8).unwrap().points(), &[0.3, 0.5, 0.75, 0.8]);
        let k = p(&[0.0, 0.5, 1.0]);
        assert_eq!(trace_partition(&k, 0.0, 1.0).unwrap().points(), &[0.0, 0.5, 1.0]);
        assert_eq!(trace_partition(&k, 0.6, 0.9).unwrap().points(), &[0.6, 0.9]);
    }

    #[test]
    fn trace_degenerate_and_errors() {
        let k = p(&[0.0, 0.5, 1.0]);
        let d = trace_partition(&k, 0.5, 0.5).unwrap();
        assert!(d.is_degenerate());
        assert_eq!(d.intervals(), 0);
        assert!(trace_partition(&k, 0.7, 0.2).is_err());
        assert!(trace_partition(&k, -0.1, 0.2).is_err());
    }

    #[test]
    fn subset() {
        assert!(p(&[0.0, 1.0]).is_subset_of(&p(&[0.0, 0.5, 1.0])));
        assert!(!p(&[0.0, 0.3, 1.0]).is_subset_of(&p(&[0.0, 0.5, 1.0])));
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::btree_set(0u32..1000, 2..40).prop_map(|s| {
            Partition::new(s.into_iter().map(|i| i as f64 / 1000.0).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn trace_is_idempotent(k in arb_partition(), a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let (lo, hi) = (k.start(), k.end());
            let s = lo + (hi - lo) * a.min(b);
            let t = lo + (hi - lo) * a.max(b);
            let once = trace_partition(&k, s, t).unwrap();
            let twice = trace_partition(&once, s, t).unwrap();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn trace_is_additive(k in arb_partition(), a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..1.0) {
            let (lo, hi) = (k.start(), k.end());
            let u = k.points()[((k.len() - 1) as f64 * c) as usize];
            let s = lo + (u - lo) * a;
            let t = u + (hi - u) * b;
            let left = trace_partition(&k, s, u).unwrap();
            let right = trace_partition(&k, u, t).unwrap();
            let whole = trace_partition(&k, s, t).unwrap();
            let mut joined = left.points().to_vec();
            joined.extend_from_slice(&right.points()[1..]);
            prop_assert_eq!(joined.as_slice(), whole.points());
        }
    }
}
