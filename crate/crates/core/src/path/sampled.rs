use super::partition::Partition;
use crate::error::{Error, Result};

/// How a path is read between grid points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// Continuous, linear between grid values. Carries no jumps.
    ContinuousInterpolant,
    /// Right-continuous step function: constant on `[t_i, t_{i+1})`, so the
    /// left limit at `t_i` is the previous grid value.
    CadlagStep,
    /// Two-sided jumps at decorated grid points, linear from `f(t_i+)` to
    /// `f(t_{i+1}-)` in between.
    Regulated,
}

/// A jump decoration: the left and right limits at a grid time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decoration {
    pub time: f64,
    pub left: f64,
    pub right: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpEntry {
    pub time: f64,
    /// `Δ⁻f(t) = f(t) - f(t-)`.
    pub minus: f64,
    /// `Δ⁺f(t) = f(t+) - f(t)`.
    pub plus: f64,
}

/// Jumps of a path: at most one entry per time, none with both deltas zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct JumpSet {
    entries: Vec<JumpEntry>,
}

impl JumpSet {
    pub fn entries(&self) -> &[JumpEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.time)
    }
}

/// A regulated function on `[a, b]`, known through its values on a grid and
/// its one-sided limits at grid points.
///
/// Jumps live only at grid points. `left[i]` is `f(t_i-)` and `right[i]` is
/// `f(t_i+)`; by convention `left[0] = values[0]` and `right[n] = values[n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPath {
    grid: Partition,
    values: Vec<f64>,
    left: Vec<f64>,
    right: Vec<f64>,
    style: Style,
}

impl SampledPath {
    pub fn continuous(grid: Partition, values: Vec<f64>) -> Result<Self> {
        check_values(&grid, &values)?;
        Ok(SampledPath {
            grid,
            left: values.clone(),
            right: values.clone(),
            values,
            style: Style::ContinuousInterpolant,
        })
    }

    /// Cadlag step path holding `values[i]` on `[t_i, t_{i+1})`.
    pub fn step(grid: Partition, values: Vec<f64>) -> Result<Self> {
        check_values(&grid, &values)?;
        let mut left = Vec::with_capacity(values.len());
        left.push(values[0]);
        left.extend_from_slice(&values[..values.len() - 1]);
        Ok(SampledPath {
            grid,
            right: values.clone(),
            values,
            left,
            style: Style::CadlagStep,
        })
    }

    /// A path with explicit two-sided jump decorations at grid times.
    pub fn regulated(grid: Partition, values: Vec<f64>, jumps: &[Decoration]) -> Result<Self> {
        check_values(&grid, &values)?;
        let mut left = values.clone();
        let mut right = values.clone();
        let mut seen = vec![false; values.len()];
        let last = values.len() - 1;
        for d in jumps {
            let i = grid.index_of(d.time).ok_or_else(|| {
                Error::invalid(format!("jump decoration at t = {} is not a grid point", d.time))
            })?;
            if !d.left.is_finite() || !d.right.is_finite() {
                return Err(Error::invalid(format!("non-finite decoration at t = {}", d.time)));
            }
            if seen[i] {
                return Err(Error::invalid(format!("duplicate decoration at t = {}", d.time)));
            }
            seen[i] = true;
            if i > 0 {
                left[i] = d.left;
            }
            if i < last {
                right[i] = d.right;
            }
        }
        Ok(SampledPath {
            grid,
            values,
            left,
            right,
            style: Style::Regulated,
        })
    }

    pub(crate) fn from_parts(
        grid: Partition,
        values: Vec<f64>,
        left: Vec<f64>,
        right: Vec<f64>,
        style: Style,
    ) -> Self {
        debug_assert_eq!(grid.len(), values.len());
        debug_assert_eq!(left.len(), values.len());
        debug_assert_eq!(right.len(), values.len());
        SampledPath {
            grid,
            values,
            left,
            right,
            style,
        }
    }

    pub fn grid(&self) -> &Partition {
        &self.grid
    }

    pub fn times(&self) -> &[f64] {
        self.grid.points()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn left_limits(&self) -> &[f64] {
        &self.left
    }

    pub fn right_limits(&self) -> &[f64] {
        &self.right
    }

    pub fn style(&self) -> Style {
        self.style
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn start(&self) -> f64 {
        self.grid.start()
    }

    pub fn end(&self) -> f64 {
        self.grid.end()
    }

    pub fn first(&self) -> f64 {
        self.values[0]
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Decorations at every grid point where a one-sided limit differs from
    /// the value.
    pub fn decorations(&self) -> Vec<Decoration> {
        (0..self.len())
            .filter(|&i| self.left[i] != self.values[i] || self.right[i] != self.values[i])
            .map(|i| Decoration {
                time: self.grid.points()[i],
                left: self.left[i],
                right: self.right[i],
            })
            .collect()
    }

    /// `Δ⁻f(t_i)` and `Δ⁺f(t_i)` at grid index `i`.
    pub fn jumps_at(&self, i: usize) -> (f64, f64) {
        (self.values[i] - self.left[i], self.right[i] - self.values[i])
    }

    pub fn jump_set(&self) -> JumpSet {
        let entries = (0..self.len())
            .filter_map(|i| {
                let (minus, plus) = self.jumps_at(i);
                (minus != 0.0 || plus != 0.0).then(|| JumpEntry {
                    time: self.grid.points()[i],
                    minus,
                    plus,
                })
            })
            .collect();
        JumpSet { entries }
    }

    pub fn has_jumps(&self) -> bool {
        (0..self.len()).any(|i| self.left[i] != self.values[i] || self.right[i] != self.values[i])
    }

    /// Locate `t`: `Ok(i)` when `t` is grid point `i`, `Err(i)` when
    /// `t_{i-1} < t < t_i`. Times outside the grid are clamped.
    fn locate(&self, t: f64) -> std::result::Result<usize, usize> {
        let pts = self.grid.points();
        if t <= pts[0] {
            return Ok(0);
        }
        if t >= pts[pts.len() - 1] {
            return Ok(pts.len() - 1);
        }
        let j = pts.partition_point(|&p| p < t);
        if pts[j] == t {
            Ok(j)
        } else {
            Err(j)
        }
    }

    fn between(&self, j: usize, t: f64) -> f64 {
        // t_{j-1} < t < t_j
        let pts = self.grid.points();
        let from = self.right[j - 1];
        match self.style {
            Style::CadlagStep => from,
            _ => {
                let to = self.left[j];
                let w = (t - pts[j - 1]) / (pts[j] - pts[j - 1]);
                from + (to - from) * w
            }
        }
    }

    /// `f(t)`; grid values are returned exactly. Clamped outside the domain.
    pub fn eval(&self, t: f64) -> f64 {
        match self.locate(t) {
            Ok(i) => self.values[i],
            Err(j) => self.between(j, t),
        }
    }

    pub fn left_limit(&self, t: f64) -> f64 {
        match self.locate(t) {
            Ok(i) => self.left[i],
            Err(j) => self.between(j, t),
        }
    }

    pub fn right_limit(&self, t: f64) -> f64 {
        match self.locate(t) {
            Ok(i) => self.right[i],
            Err(j) => self.between(j, t),
        }
    }

    /// Values at the points of `kappa`, which must lie in the domain.
    pub fn values_on(&self, kappa: &Partition) -> Result<Vec<f64>> {
        self.check_within(kappa)?;
        let pts = self.grid.points();
        let mut out = Vec::with_capacity(kappa.len());
        let mut j = 0;
        for &t in kappa.points() {
            while pts[j] < t {
                j += 1;
            }
            out.push(if pts[j] == t { self.values[j] } else { self.between(j, t) });
        }
        Ok(out)
    }

    pub(crate) fn check_within(&self, kappa: &Partition) -> Result<()> {
        if kappa.start() < self.start() || kappa.end() > self.end() {
            return Err(Error::invalid(format!(
                "partition [{}, {}] leaves the path domain [{}, {}]",
                kappa.start(),
                kappa.end(),
                self.start(),
                self.end()
            )));
        }
        Ok(())
    }

    fn same_grid(&self, other: &SampledPath) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::invalid("paths are sampled on different grids"));
        }
        Ok(())
    }

    fn combined_style(a: Style, b: Style) -> Style {
        use Style::*;
        match (a, b) {
            (ContinuousInterpolant, ContinuousInterpolant) => ContinuousInterpolant,
            (CadlagStep, CadlagStep) => CadlagStep,
            _ => Regulated,
        }
    }

    /// Pointwise `op(f, g)` on values and on both one-sided limits.
    pub fn zip_with(&self, other: &SampledPath, op: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.same_grid(other)?;
        let zip = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect();
        let mut style = Self::combined_style(self.style, other.style);
        let values: Vec<f64> = zip(&self.values, &other.values);
        let left = zip(&self.left, &other.left);
        let right = zip(&self.right, &other.right);
        let out = SampledPath::from_parts(self.grid.clone(), values, left, right, style);
        if style == Style::Regulated && !out.has_jumps() {
            style = Style::ContinuousInterpolant;
        }
        Ok(SampledPath { style, ..out })
    }

    /// Pointwise `op(f)`. The interpolation style is kept, which reads the
    /// image of a linear interpolant as linear in between grid points.
    pub fn map(&self, op: impl Fn(f64) -> f64) -> Self {
        let m = |a: &[f64]| a.iter().map(|&x| op(x)).collect();
        SampledPath::from_parts(
            self.grid.clone(),
            m(&self.values),
            m(&self.left),
            m(&self.right),
            self.style,
        )
    }

    pub fn add(&self, other: &SampledPath) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SampledPath) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &SampledPath) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|x| c * x)
    }

    /// `a f + b g`.
    pub fn linear_combination(&self, a: f64, other: &SampledPath, b: f64) -> Result<Self> {
        self.zip_with(other, |x, y| a * x + b * y)
    }

    pub fn inf_abs(&self) -> f64 {
        self.values
            .iter()
            .chain(&self.left)
            .chain(&self.right)
            .fold(f64::INFINITY, |m, v| m.min(v.abs()))
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

fn check_values(grid: &Partition, values: &[f64]) -> Result<()> {
    if grid.len() != values.len() {
        return Err(Error::invalid(format!(
            "{} values for a grid of {} points",
            values.len(),
            grid.len()
        )));
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::invalid(format!(
            "non-finite value at t = {}",
            grid.points()[i]
        )));
    }
    Ok(())
}
