use crate::convergence::Tolerance;
use crate::error::{Error, Result};
use crate::path::{Partition, PartitionSequence, SampledPath};

/// Cumulative partition sums along one level of λ.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSums {
    pub level: usize,
    pub intervals: usize,
    /// Running sum at each point of the level, starting at 0.
    pub cumulative: Vec<f64>,
}

impl LevelSums {
    pub fn total(&self) -> f64 {
        *self.cumulative.last().unwrap_or(&0.0)
    }
}

/// Bracket `[f]` (or covariation `[f, g]`) on the finest level of λ.
///
/// Each finest increment is split into the right jump at its left end, the
/// continuous piece `f(t_i-) - f(t_{i-1}+)`, and the left jump at its right
/// end. The continuous part accumulates squares (products) of the middle
/// pieces; the jump part accumulates the one-sided jumps. On paths without
/// jumps `total` is the finest-level partition sum.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketResult {
    pub grid: Partition,
    pub total: Vec<f64>,
    pub continuous_part: Vec<f64>,
    pub jump_part: Vec<f64>,
    /// `(Δ⁻f)² ` (or `Δ⁻f Δ⁻g`) at each grid point.
    pub jump_minus: Vec<f64>,
    /// `(Δ⁺f)²` (or `Δ⁺f Δ⁺g`) at each grid point.
    pub jump_plus: Vec<f64>,
    pub per_level: Vec<LevelSums>,
    pub converged: bool,
}

pub type CovariationResult = BracketResult;

impl BracketResult {
    pub fn value(&self) -> f64 {
        *self.total.last().unwrap()
    }

    pub fn continuous_value(&self) -> f64 {
        *self.continuous_part.last().unwrap()
    }

    pub fn jump_value(&self) -> f64 {
        *self.jump_part.last().unwrap()
    }

    /// `[f](t)` for a finest-level point `t`.
    pub fn at(&self, t: f64) -> Option<f64> {
        self.grid.index_of(t).map(|i| self.total[i])
    }

    pub fn level_totals(&self) -> Vec<f64> {
        self.per_level.iter().map(LevelSums::total).collect()
    }
}

pub fn quadratic_variation(f: &SampledPath, lambda: &PartitionSequence) -> Result<BracketResult> {
    quadratic_variation_with(f, lambda, &Tolerance::default())
}

pub fn quadratic_variation_with(
    f: &SampledPath,
    lambda: &PartitionSequence,
    tol: &Tolerance,
) -> Result<BracketResult> {
    bilinear(f, f, lambda, tol)
}

/// `[f, g]` along λ, which agrees with `([f+g] - [f-g]) / 4`.
pub fn quadratic_covariation(
    f: &SampledPath,
    g: &SampledPath,
    lambda: &PartitionSequence,
) -> Result<CovariationResult> {
    quadratic_covariation_with(f, g, lambda, &Tolerance::default())
}

pub fn quadratic_covariation_with(
    f: &SampledPath,
    g: &SampledPath,
    lambda: &PartitionSequence,
    tol: &Tolerance,
) -> Result<CovariationResult> {
    bilinear(f, g, lambda, tol)
}

/// Jumps must sit on `∪λ_m`, which for nested sequences is the finest level.
pub(crate) fn check_accessible(f: &SampledPath, lambda: &PartitionSequence) -> Result<()> {
    let fine = lambda.finest();
    for e in f.jump_set().entries() {
        if e.time < fine.start() || e.time > fine.end() {
            continue;
        }
        if !fine.contains(e.time) {
            return Err(Error::AccessibilityViolation { time: e.time });
        }
    }
    Ok(())
}

/// `(f(t-), f(t), f(t+))` at every point of `kappa`.
pub(crate) fn limits_on(f: &SampledPath, kappa: &Partition) -> Result<Vec<(f64, f64, f64)>> {
    f.check_within(kappa)?;
    Ok(kappa
        .points()
        .iter()
        .map(|&t| (f.left_limit(t), f.eval(t), f.right_limit(t)))
        .collect())
}

fn bilinear(
    f: &SampledPath,
    g: &SampledPath,
    lambda: &PartitionSequence,
    tol: &Tolerance,
) -> Result<BracketResult> {
    check_accessible(f, lambda)?;
    check_accessible(g, lambda)?;
    let grid = lambda.finest().clone();
    let a = limits_on(f, &grid)?;
    let b = limits_on(g, &grid)?;
    let n = grid.len();

    let mut jump_minus = vec![0.0; n];
    let mut jump_plus = vec![0.0; n];
    for i in 0..n {
        let (la, va, ra) = a[i];
        let (lb, vb, rb) = b[i];
        if i > 0 {
            jump_minus[i] = (va - la) * (vb - lb);
        }
        if i + 1 < n {
            jump_plus[i] = (ra - va) * (rb - vb);
        }
    }

    let mut continuous_part = vec![0.0; n];
    let mut jump_part = vec![0.0; n];
    let mut total = vec![0.0; n];
    for i in 1..n {
        let c = (a[i].0 - a[i - 1].2) * (b[i].0 - b[i - 1].2);
        continuous_part[i] = continuous_part[i - 1] + c;
        jump_part[i] = jump_part[i - 1] + jump_plus[i - 1] + jump_minus[i];
        total[i] = continuous_part[i] + jump_part[i];
    }

    let mut per_level = Vec::with_capacity(lambda.depth());
    for (k, level) in lambda.levels().iter().enumerate() {
        let x = f.values_on(level)?;
        let y = g.values_on(level)?;
        let mut cumulative = Vec::with_capacity(level.len());
        let mut s = 0.0;
        cumulative.push(0.0);
        for i in 1..level.len() {
            s += (x[i] - x[i - 1]) * (y[i] - y[i - 1]);
            cumulative.push(s);
        }
        per_level.push(LevelSums {
            level: k + 1,
            intervals: level.intervals(),
            cumulative,
        });
    }
    let totals: Vec<f64> = per_level.iter().map(LevelSums::total).collect();
    let converged = tol.cauchy_tail(&totals);

    Ok(BracketResult {
        grid,
        total,
        continuous_part,
        jump_part,
        jump_minus,
        jump_plus,
        per_level,
        converged,
    })
}
