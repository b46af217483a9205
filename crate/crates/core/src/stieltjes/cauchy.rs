use crate::convergence::Tolerance;
use crate::error::{Error, Result};
use crate::path::{Partition, PartitionSequence, SampledPath, Style};
use crate::variation::{check_accessible, limits_on};
use serde::{Deserialize, Serialize};

/// Which endpoint tags the increments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[serde(rename = "lc")]
    Left,
    #[serde(rename = "rc")]
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpSide {
    Minus,
    Plus,
}

/// Jump of the indefinite integral at a jump of the integrator, against the
/// value the λ-integral must produce there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpCheck {
    pub time: f64,
    pub side: JumpSide,
    pub expected: f64,
    pub observed: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralEstimate {
    pub side: Side,
    /// `(level, sum)` pairs.
    pub per_level: Vec<(usize, f64)>,
    pub value: f64,
    pub converged: bool,
    pub jump_checks: Vec<JumpCheck>,
}

impl IntegralEstimate {
    pub fn level_values(&self) -> Vec<f64> {
        self.per_level.iter().map(|&(_, v)| v).collect()
    }

    /// Largest `|observed - expected|` over the jump checks.
    pub fn jump_defect(&self) -> f64 {
        self.jump_checks
            .iter()
            .fold(0.0, |m, c| m.max((c.observed - c.expected).abs()))
    }
}

fn tagged_sum(phi: &[f64], g: &[f64], side: Side) -> f64 {
    let off = match side {
        Side::Left => 0,
        Side::Right => 1,
    };
    (1..g.len()).map(|i| phi[i - 1 + off] * (g[i] - g[i - 1])).sum()
}

/// `S_LC(φ, g; κ) = Σ φ(x_{i-1}) (g(x_i) - g(x_{i-1}))`.
pub fn lc_sum(phi: &SampledPath, g: &SampledPath, kappa: &Partition) -> Result<f64> {
    Ok(tagged_sum(&phi.values_on(kappa)?, &g.values_on(kappa)?, Side::Left))
}

/// `S_RC(φ, g; κ) = Σ φ(x_i) (g(x_i) - g(x_{i-1}))`.
pub fn rc_sum(phi: &SampledPath, g: &SampledPath, kappa: &Partition) -> Result<f64> {
    Ok(tagged_sum(&phi.values_on(kappa)?, &g.values_on(kappa)?, Side::Right))
}

pub fn lambda_integral(
    phi: &SampledPath,
    g: &SampledPath,
    lambda: &PartitionSequence,
    side: Side,
) -> Result<IntegralEstimate> {
    lambda_integral_on(phi, g, lambda, side, lambda.start(), lambda.end())
}

pub fn lambda_integral_on(
    phi: &SampledPath,
    g: &SampledPath,
    lambda: &PartitionSequence,
    side: Side,
    s: f64,
    t: f64,
) -> Result<IntegralEstimate> {
    lambda_integral_with(phi, g, lambda, side, s, t, &Tolerance::default())
}

/// Cauchy λ-integral of `φ` against `g` over `[s, t]`, level by level on the
/// trace partitions `λ_m ⋒ [s, t]`.
pub fn lambda_integral_with(
    phi: &SampledPath,
    g: &SampledPath,
    lambda: &PartitionSequence,
    side: Side,
    s: f64,
    t: f64,
    tol: &Tolerance,
) -> Result<IntegralEstimate> {
    check_accessible(phi, lambda)?;
    check_accessible(g, lambda)?;
    let mut per_level = Vec::with_capacity(lambda.depth());
    for (k, level) in lambda.levels().iter().enumerate() {
        let kappa = level.trace(s, t)?;
        let v = tagged_sum(&phi.values_on(&kappa)?, &g.values_on(&kappa)?, side);
        per_level.push((k + 1, v));
    }
    let values: Vec<f64> = per_level.iter().map(|&(_, v)| v).collect();
    let jump_checks = jump_checks(phi, g, &lambda.finest().trace(s, t)?, side)?;
    Ok(IntegralEstimate {
        side,
        value: *values.last().unwrap(),
        converged: tol.cauchy_tail(&values),
        per_level,
        jump_checks,
    })
}

struct Indefinite {
    values: Vec<f64>,
    left: Vec<f64>,
    right: Vec<f64>,
}

/// Finest-level indefinite sums with one-sided limits. The limit `Φ(v-)` is
/// the sum over the trace on `[s, v-)`, whose last point is approached from
/// the left; `Φ(u+)` likewise from the right.
fn indefinite(phi: &SampledPath, g: &SampledPath, kappa: &Partition, side: Side) -> Result<Indefinite> {
    let a = limits_on(phi, kappa)?;
    let b = limits_on(g, kappa)?;
    let n = kappa.len();
    let mut values = vec![0.0; n];
    let mut left = vec![0.0; n];
    let mut right = vec![0.0; n];
    for i in 0..n {
        if i > 0 {
            let (gl, gv) = (b[i].0, b[i].1);
            let g0 = b[i - 1].1;
            let tag = match side {
                Side::Left => a[i - 1].1,
                Side::Right => a[i].1,
            };
            values[i] = values[i - 1] + tag * (gv - g0);
            let tag_minus = match side {
                Side::Left => a[i - 1].1,
                Side::Right => a[i].0,
            };
            left[i] = values[i - 1] + tag_minus * (gl - g0);
        } else {
            left[i] = 0.0;
        }
        right[i] = if i + 1 < n {
            let tag_plus = match side {
                Side::Left => a[i].1,
                Side::Right => a[i].2,
            };
            values[i] + tag_plus * (b[i].2 - b[i].1)
        } else {
            values[i]
        };
    }
    Ok(Indefinite { values, left, right })
}

fn jump_checks(phi: &SampledPath, g: &SampledPath, kappa: &Partition, side: Side) -> Result<Vec<JumpCheck>> {
    if !g.has_jumps() {
        return Ok(Vec::new());
    }
    let ind = indefinite(phi, g, kappa, side)?;
    let pts = kappa.points();
    let mut out = Vec::new();
    for e in g.jump_set().entries() {
        let Some(i) = kappa.index_of(e.time) else { continue };
        if i > 0 && e.minus != 0.0 {
            let weight = match side {
                Side::Left => phi.left_limit(e.time),
                Side::Right => phi.eval(e.time),
            };
            out.push(JumpCheck {
                time: pts[i],
                side: JumpSide::Minus,
                expected: weight * e.minus,
                observed: ind.values[i] - ind.left[i],
            });
        }
        if i + 1 < pts.len() && e.plus != 0.0 {
            let weight = match side {
                Side::Left => phi.eval(e.time),
                Side::Right => phi.right_limit(e.time),
            };
            out.push(JumpCheck {
                time: pts[i],
                side: JumpSide::Plus,
                expected: weight * e.plus,
                observed: ind.right[i] - ind.values[i],
            });
        }
    }
    Ok(out)
}

/// `t ↦ ∫_a^t φ d_λ g` at the finest level of λ, as a path on that grid.
pub fn indefinite_integral(
    phi: &SampledPath,
    g: &SampledPath,
    lambda: &PartitionSequence,
    side: Side,
) -> Result<SampledPath> {
    check_accessible(phi, lambda)?;
    check_accessible(g, lambda)?;
    let grid = lambda.finest().clone();
    let ind = indefinite(phi, g, &grid, side)?;
    let path = SampledPath::from_parts(grid, ind.values, ind.left, ind.right, Style::Regulated);
    Ok(if path.has_jumps() {
        path
    } else {
        SampledPath::continuous(path.grid().clone(), path.values().to_vec())?
    })
}

pub fn improper_lc_tail(
    phi: &SampledPath,
    g: &SampledPath,
    lambda: &PartitionSequence,
    t_end: f64,
) -> Result<IntegralEstimate> {
    improper_lc_tail_with(phi, g, lambda, t_end, &Tolerance::default())
}

/// `(LC)∫_a^{u_m} φ d_λ g` at the finest level for `u_m` the last point of
/// `λ_m` before `t_end`, `m = 1, 2, ...`. `φ` is never evaluated at
/// `t_end`, so it may lack a left limit there.
pub fn improper_lc_tail_with(
    phi: &SampledPath,
    g: &SampledPath,
    lambda: &PartitionSequence,
    t_end: f64,
    tol: &Tolerance,
) -> Result<IntegralEstimate> {
    check_accessible(g, lambda)?;
    let fine = lambda.finest();
    if !(t_end > fine.start()) || t_end > fine.end() {
        return Err(Error::invalid(format!("tail end {t_end} outside ({}, {}]", fine.start(), fine.end())));
    }
    let ind = indefinite(phi, g, fine, Side::Left)?;
    let mut per_level = Vec::with_capacity(lambda.depth());
    for (k, level) in lambda.levels().iter().enumerate() {
        let pts = level.points();
        let j = pts.partition_point(|&p| p < t_end);
        if j == 0 {
            continue;
        }
        let u = pts[j - 1];
        let i = fine
            .index_of(u)
            .ok_or_else(|| Error::invalid("partition sequence is not nested"))?;
        per_level.push((k + 1, ind.values[i] - ind.values[0]));
    }
    let mut values: Vec<f64> = per_level.iter().map(|&(_, v)| v).collect();
    values.dedup();
    let value = per_level.last().map(|&(_, v)| v).unwrap_or(0.0);
    Ok(IntegralEstimate {
        side: Side::Left,
        value,
        converged: tol.cauchy_tail(&values),
        per_level,
        jump_checks: Vec::new(),
    })
}
