//! Numerical proxy for "the limit along λ exists".

use serde::{Deserialize, Serialize};

/// Mixed relative/absolute tolerance.
///
/// A gap is accepted when `gap <= abs + rel * scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-2,
            abs: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Self {
        Tolerance { rel, abs }
    }

    pub fn accepts(&self, gap: f64, scale: f64) -> bool {
        gap <= self.abs + self.rel * scale.abs()
    }

    /// Cauchy criterion over the last three entries of a per-level sequence.
    ///
    /// Fewer than two levels can never be declared convergent.
    pub fn cauchy_tail(&self, values: &[f64]) -> bool {
        if values.len() < 2 || values.iter().any(|v| !v.is_finite()) {
            return false;
        }
        let tail = &values[values.len().saturating_sub(3)..];
        let scale = tail.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let gap = max_pairwise_gap(tail);
        self.accepts(gap, scale)
    }
}

pub fn max_pairwise_gap(values: &[f64]) -> f64 {
    let mut gap = 0.0_f64;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            gap = gap.max((a - b).abs());
        }
    }
    gap
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cauchy_needs_two_levels() {
        let tol = Tolerance::default();
        assert!(!tol.cauchy_tail(&[]));
        assert!(!tol.cauchy_tail(&[1.0]));
        assert!(tol.cauchy_tail(&[1.0, 1.0]));
    }

    #[test]
    fn cauchy_uses_only_last_three() {
        let tol = Tolerance::default();
        assert!(tol.cauchy_tail(&[100.0, -3.0, 1.0, 1.001, 1.002]));
        assert!(!tol.cauchy_tail(&[1.0, 1.0, 1.2]));
        assert!(!tol.cauchy_tail(&[1.0, f64::NAN]));
    }
}
