use super::partition::Partition;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    /// `λ_m = {i T base^{-m}}`.
    Dyadic { base: u32 },
    Explicit,
}

/// Nested partitions `λ_1 ⊂ λ_2 ⊂ ... ⊂ λ_depth` of a common interval.
///
/// Levels are 1-based in the accessors, matching the usual `λ_m` indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionSequence {
    levels: Vec<Partition>,
    kind: SequenceKind,
}

/// `depth` base-`base` levels of `[0, T]`.
pub fn make_dyadic_sequence(t_end: f64, base: u32, depth: u32) -> Result<PartitionSequence> {
    PartitionSequence::dyadic(t_end, base, depth)
}

impl PartitionSequence {
    pub fn dyadic(t_end: f64, base: u32, depth: u32) -> Result<Self> {
        if !(t_end > 0.0) || !t_end.is_finite() {
            return Err(Error::invalid(format!("T must be positive, got {t_end}")));
        }
        if base < 2 {
            return Err(Error::invalid(format!("base must be >= 2, got {base}")));
        }
        if depth == 0 {
            return Err(Error::invalid("depth must be >= 1"));
        }
        let n = (base as u64)
            .checked_pow(depth)
            .filter(|&n| n <= 1 << 26)
            .ok_or_else(|| Error::invalid(format!("{base}^{depth} grid points is too many")))?;
        // Every level is read off the finest grid so nesting holds exactly even
        // when base^-m is not a dyadic rational.
        let finest: Vec<f64> = (0..=n)
            .map(|i| if i == n { t_end } else { i as f64 * t_end / n as f64 })
            .collect();
        let mut levels = Vec::with_capacity(depth as usize);
        for m in 1..=depth {
            let stride = (base as u64).pow(depth - m) as usize;
            let pts = finest.iter().step_by(stride).copied().collect();
            levels.push(Partition::new(pts)?);
        }
        Ok(PartitionSequence {
            levels,
            kind: SequenceKind::Dyadic { base },
        })
    }

    pub fn explicit(levels: Vec<Partition>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::invalid("partition sequence needs at least one level"));
        }
        let (a, b) = (levels[0].start(), levels[0].end());
        for (m, lvl) in levels.iter().enumerate() {
            if lvl.is_degenerate() {
                return Err(Error::invalid(format!("level {} is degenerate", m + 1)));
            }
            if lvl.start() != a || lvl.end() != b {
                return Err(Error::invalid(format!(
                    "level {} does not span [{a}, {b}]",
                    m + 1
                )));
            }
        }
        for (m, w) in levels.windows(2).enumerate() {
            if !w[0].is_subset_of(&w[1]) {
                return Err(Error::invalid(format!(
                    "level {} is not contained in level {}",
                    m + 1,
                    m + 2
                )));
            }
        }
        Ok(PartitionSequence {
            levels,
            kind: SequenceKind::Explicit,
        })
    }

    /// Recognise a uniform grid with `base^depth` intervals and build its
    /// dyadic sequence.
    pub fn infer_dyadic(grid: &Partition, base: u32) -> Result<Self> {
        let n = grid.intervals() as u64;
        let mut depth = 0u32;
        let mut k = 1u64;
        while k < n {
            k *= base as u64;
            depth += 1;
        }
        if k != n || depth == 0 || grid.start() != 0.0 {
            return Err(Error::invalid(format!(
                "grid with {n} intervals on [{}, {}] is not a base-{base} grid from 0",
                grid.start(),
                grid.end()
            )));
        }
        let seq = Self::dyadic(grid.end(), base, depth)?;
        if seq.finest() != grid {
            return Err(Error::invalid(format!(
                "grid points do not match i*T/{base}^{depth}"
            )));
        }
        Ok(seq)
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn base(&self) -> Option<u32> {
        match self.kind {
            SequenceKind::Dyadic { base } => Some(base),
            SequenceKind::Explicit => None,
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Level `m`, 1-based.
    pub fn level(&self, m: usize) -> &Partition {
        &self.levels[m - 1]
    }

    pub fn levels(&self) -> &[Partition] {
        &self.levels
    }

    pub fn finest(&self) -> &Partition {
        self.levels.last().expect("nonempty")
    }

    pub fn start(&self) -> f64 {
        self.finest().start()
    }

    pub fn end(&self) -> f64 {
        self.finest().end()
    }

    /// The first `depth` levels.
    pub fn truncated(&self, depth: usize) -> Result<Self> {
        if depth == 0 || depth > self.depth() {
            return Err(Error::invalid(format!(
                "cannot truncate depth {} sequence to {depth}",
                self.depth()
            )));
        }
        Ok(PartitionSequence {
            levels: self.levels[..depth].to_vec(),
            kind: self.kind,
        })
    }

    pub fn is_nested(&self) -> bool {
        self.levels.windows(2).all(|w| w[0].is_subset_of(&w[1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_examples() {
        let s = make_dyadic_sequence(1.0, 2, 2).unwrap();
        assert_eq!(s.level(1).points(), &[0.0, 0.5, 1.0]);
        assert_eq!(s.level(2).points(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        let s = make_dyadic_sequence(1.0, 4, 1).unwrap();
        assert_eq!(s.level(1).points(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        let s = make_dyadic_sequence(2.0, 2, 1).unwrap();
        assert_eq!(s.level(1).points(), &[0.0, 1.0, 2.0]);
    }

    #[test]
    fn dyadic_errors() {
        assert!(make_dyadic_sequence(0.0, 2, 3).is_err());
        assert!(make_dyadic_sequence(-1.0, 2, 3).is_err());
        assert!(make_dyadic_sequence(1.0, 2, 0).is_err());
        assert!(make_dyadic_sequence(1.0, 1, 3).is_err());
    }

    #[test]
    fn dyadic_levels_are_nested_and_sized() {
        for base in [2u32, 3, 4, 5] {
            let s = make_dyadic_sequence(1.7, base, 5).unwrap();
            assert!(s.is_nested());
            for m in 1..=5 {
                assert_eq!(s.level(m).len(), base.pow(m as u32) as usize + 1);
            }
        }
    }

    #[test]
    fn power_of_two_levels_match_direct_formula() {
        let s = make_dyadic_sequence(3.0, 4, 4).unwrap();
        for m in 1..=4usize {
            let n = 4f64.powi(m as i32);
            for (i, &t) in s.level(m).points().iter().enumerate() {
                assert_eq!(t, i as f64 * 3.0 / n);
            }
        }
    }

    #[test]
    fn explicit_rejects_non_nested() {
        let a = Partition::new(vec![0.0, 0.3, 1.0]).unwrap();
        let b = Partition::new(vec![0.0, 0.5, 1.0]).unwrap();
        assert!(PartitionSequence::explicit(vec![a.clone(), b]).is_err());
        let c = Partition::new(vec![0.0, 0.3, 0.6, 1.0]).unwrap();
        assert!(PartitionSequence::explicit(vec![a, c]).is_ok());
    }

    #[test]
    fn infer_dyadic_roundtrip() {
        let s = make_dyadic_sequence(1.0, 4, 3).unwrap();
        let again = PartitionSequence::infer_dyadic(s.finest(), 4).unwrap();
        assert_eq!(s, again);
        assert!(PartitionSequence::infer_dyadic(s.finest(), 3).is_err());
    }
}
