use super::products::LogProduct;
use crate::error::Result;
use crate::path::{PartitionSequence, SampledPath, Style};
use crate::stieltjes::{indefinite_integral, Side};
use crate::variation::{limits_on, quadratic_variation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `E(a) = 1`, solving `E = 1 + (LC)∫E d_λf`.
    Forward,
    /// `E(b) = 1`.
    Backward,
}

/// Doléans exponential of `base` on the finest level of λ.
#[derive(Debug, Clone, PartialEq)]
pub struct DoleansPath {
    pub base: SampledPath,
    pub direction: Direction,
    pub values: Vec<f64>,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    /// Jump product `γ` entering `values` at each grid point.
    pub jump_product_part: Vec<f64>,
    pub bracket_converged: bool,
    path: SampledPath,
}

impl DoleansPath {
    pub fn to_path(&self) -> SampledPath {
        self.path.clone()
    }

    pub fn as_path(&self) -> &SampledPath {
        &self.path
    }
}

/// `E(t) = exp{f(t) - f(a) - ½[f]^c(t)} γ(a, t)` (forward) or
/// `exp{f(b) - f(t) - ½([f]^c(b) - [f]^c(t))} γ(t, b)` (backward).
pub fn doleans(f: &SampledPath, lambda: &PartitionSequence, direction: Direction) -> Result<DoleansPath> {
    let bracket = quadratic_variation(f, lambda)?;
    let grid = bracket.grid.clone();
    let a = limits_on(f, &grid)?;
    let c = &bracket.continuous_part;
    let n = grid.len();
    let mut values = vec![0.0; n];
    let mut left = vec![0.0; n];
    let mut right = vec![0.0; n];
    let mut gamma = vec![0.0; n];

    let minus = |i: usize| a[i].1 - a[i].0;
    let plus = |i: usize| a[i].2 - a[i].1;
    match direction {
        Direction::Forward => {
            let (f0, mut acc) = (a[0].1, LogProduct::ONE);
            for i in 0..n {
                // acc holds γ over (a, t_i) ∪ plus jumps on [a, t_i).
                let expo = |x: f64| x - f0 - 0.5 * c[i];
                left[i] = acc.value_times_exp(expo(a[i].0));
                if i > 0 {
                    acc.mul_one_plus(minus(i), -minus(i));
                }
                values[i] = acc.value_times_exp(expo(a[i].1));
                gamma[i] = acc.value();
                let mut after = acc;
                if i + 1 < n {
                    after.mul_one_plus(plus(i), -plus(i));
                }
                right[i] = after.value_times_exp(expo(a[i].2));
                acc = after;
            }
            left[0] = values[0];
            right[n - 1] = values[n - 1];
        }
        Direction::Backward => {
            let (ft, ct, mut acc) = (a[n - 1].1, c[n - 1], LogProduct::ONE);
            for i in (0..n).rev() {
                // acc holds γ over minus jumps on (t_i, b] and plus on (t_i, b).
                let expo = |x: f64| ft - x - 0.5 * (ct - c[i]);
                right[i] = acc.value_times_exp(expo(a[i].2));
                if i + 1 < n {
                    acc.mul_one_plus(plus(i), -plus(i));
                }
                values[i] = acc.value_times_exp(expo(a[i].1));
                gamma[i] = acc.value();
                let mut before = acc;
                if i > 0 {
                    before.mul_one_plus(minus(i), -minus(i));
                }
                left[i] = before.value_times_exp(expo(a[i].0));
                acc = before;
            }
            left[0] = values[0];
            right[n - 1] = values[n - 1];
        }
    }
    let path = SampledPath::from_parts(grid.clone(), values.clone(), left.clone(), right.clone(), Style::Regulated);
    let path = if path.has_jumps() {
        path
    } else {
        SampledPath::continuous(grid, values.clone())?
    };
    Ok(DoleansPath {
        base: f.clone(),
        direction,
        values,
        left,
        right,
        jump_product_part: gamma,
        bracket_converged: bracket.converged,
        path,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquationResidual {
    pub grid: Vec<f64>,
    /// `E(t) - 1 - (LC)∫_a^t E d_λf` at each finest point.
    pub values: Vec<f64>,
    pub sup: f64,
}

/// Residual of the linear λ-integral equation for the forward exponential.
pub fn linear_equation_residual(f: &SampledPath, lambda: &PartitionSequence) -> Result<EquationResidual> {
    let e = doleans(f, lambda, Direction::Forward)?;
    let integral = indefinite_integral(e.as_path(), f, lambda, Side::Left)?;
    let values: Vec<f64> = e
        .values
        .iter()
        .zip(integral.values())
        .map(|(&ev, &iv)| ev - 1.0 - iv)
        .collect();
    let sup = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    Ok(EquationResidual {
        grid: lambda.finest().points().to_vec(),
        values,
        sup,
    })
}
