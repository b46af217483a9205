use super::cauchy::{lambda_integral_on, IntegralEstimate, Side};
use crate::error::{Error, Result};
use crate::path::{PartitionSequence, SampledPath};
use crate::variation::{limits_on, quadratic_variation};

/// A twice differentiable scalar map given by evaluators.
pub trait C2Map {
    fn value(&self, x: f64) -> f64;
    fn first(&self, x: f64) -> f64;
    fn second(&self, x: f64) -> f64;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Square;

impl C2Map for Square {
    fn value(&self, x: f64) -> f64 {
        x * x
    }
    fn first(&self, x: f64) -> f64 {
        2.0 * x
    }
    fn second(&self, _: f64) -> f64 {
        2.0
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Exp;

impl C2Map for Exp {
    fn value(&self, x: f64) -> f64 {
        x.exp()
    }
    fn first(&self, x: f64) -> f64 {
        x.exp()
    }
    fn second(&self, x: f64) -> f64 {
        x.exp()
    }
}

/// Natural logarithm; only defined for positive arguments.
#[derive(Debug, Clone, Copy, Default)]
pub struct Log;

impl C2Map for Log {
    fn value(&self, x: f64) -> f64 {
        if x > 0.0 {
            x.ln()
        } else {
            f64::NAN
        }
    }
    fn first(&self, x: f64) -> f64 {
        if x > 0.0 {
            1.0 / x
        } else {
            f64::NAN
        }
    }
    fn second(&self, x: f64) -> f64 {
        if x > 0.0 {
            -1.0 / (x * x)
        } else {
            f64::NAN
        }
    }
}

/// Three closures.
pub struct FnMap<F, G, H> {
    pub value: F,
    pub first: G,
    pub second: H,
}

impl<F, G, H> C2Map for FnMap<F, G, H>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
    H: Fn(f64) -> f64,
{
    fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }
    fn first(&self, x: f64) -> f64 {
        (self.first)(x)
    }
    fn second(&self, x: f64) -> f64 {
        (self.second)(x)
    }
}

/// Central differences of a value evaluator. The first derivative uses step
/// `1e-5 · scale · max(1, |x|)`, the second a step ten times larger to keep
/// cancellation error down.
pub struct FiniteDifference<F> {
    pub value: F,
    pub scale: f64,
}

impl<F: Fn(f64) -> f64> FiniteDifference<F> {
    pub fn new(value: F) -> Self {
        FiniteDifference { value, scale: 1.0 }
    }

    fn step(&self, x: f64) -> f64 {
        1e-5 * self.scale * x.abs().max(1.0)
    }
}

impl<F: Fn(f64) -> f64> C2Map for FiniteDifference<F> {
    fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }
    fn first(&self, x: f64) -> f64 {
        let h = self.step(x);
        ((self.value)(x + h) - (self.value)(x - h)) / (2.0 * h)
    }
    fn second(&self, x: f64) -> f64 {
        let h = 10.0 * self.step(x);
        ((self.value)(x + h) - 2.0 * (self.value)(x) + (self.value)(x - h)) / (h * h)
    }
}

/// Both sides of the pathwise Itô formula over `[z, y]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainRuleReport {
    pub side: Side,
    /// `φ(f(y)) - φ(f(z))`.
    pub lhs: f64,
    /// Finest-level Cauchy sum of `φ'∘f` against `f`.
    pub integral_term: f64,
    /// `±½ (RS)∫ φ''∘f d[f]^c`, with `+` for the left variant.
    pub bracket_term: f64,
    /// The two jump sums.
    pub jump_correction: f64,
    pub residual: f64,
    pub integral: IntegralEstimate,
    pub bracket_converged: bool,
}

struct Terms {
    lhs: Vec<f64>,
    integral: Vec<f64>,
    bracket: Vec<f64>,
    jumps: Vec<f64>,
    bracket_converged: bool,
}

fn finite(x: f64, what: &str, t: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Numeric(format!("{what} is not finite at t = {t}")))
    }
}

/// Cumulative terms at every finest point, from the start of λ.
fn terms<M: C2Map + ?Sized>(phi: &M, f: &SampledPath, lambda: &PartitionSequence, side: Side) -> Result<Terms> {
    let bracket = quadratic_variation(f, lambda)?;
    let grid = lambda.finest();
    let pts = grid.points();
    let a = limits_on(f, grid)?;
    let n = pts.len();
    let sign = match side {
        Side::Left => 0.5,
        Side::Right => -0.5,
    };
    let mut out = Terms {
        lhs: vec![0.0; n],
        integral: vec![0.0; n],
        bracket: vec![0.0; n],
        jumps: vec![0.0; n],
        bracket_converged: bracket.converged,
    };
    let v0 = finite(phi.value(a[0].1), "φ(f)", pts[0])?;
    let plus_term = |i: usize| -> f64 {
        let (_, v, r) = a[i];
        if r == v {
            return 0.0;
        }
        let w = match side {
            Side::Left => phi.first(v),
            Side::Right => phi.first(r),
        };
        phi.value(r) - phi.value(v) - w * (r - v)
    };
    for i in 1..n {
        let (l, v, _) = a[i];
        let prev = a[i - 1].1;
        out.lhs[i] = finite(phi.value(v), "φ(f)", pts[i])? - v0;
        let tag = match side {
            Side::Left => phi.first(prev),
            Side::Right => phi.first(v),
        };
        out.integral[i] = out.integral[i - 1] + finite(tag, "φ'(f)", pts[i])? * (v - prev);
        let mid = f.eval(0.5 * (pts[i - 1] + pts[i]));
        let dc = bracket.continuous_part[i] - bracket.continuous_part[i - 1];
        out.bracket[i] = out.bracket[i - 1] + sign * finite(phi.second(mid), "φ''(f)", pts[i])? * dc;
        let minus = if l == v {
            0.0
        } else {
            let w = match side {
                Side::Left => phi.first(l),
                Side::Right => phi.first(v),
            };
            phi.value(v) - phi.value(l) - w * (v - l)
        };
        out.jumps[i] = out.jumps[i - 1] + finite(plus_term(i - 1) + minus, "jump term", pts[i])?;
    }
    Ok(out)
}

/// Chain rule on `[z, y]`; both times must be finest-level points.
pub fn chain_rule<M: C2Map + ?Sized>(
    phi: &M,
    f: &SampledPath,
    lambda: &PartitionSequence,
    z: f64,
    y: f64,
    side: Side,
) -> Result<ChainRuleReport> {
    let grid = lambda.finest();
    let (iz, iy) = match (grid.index_of(z), grid.index_of(y)) {
        (Some(a), Some(b)) if a <= b => (a, b),
        _ => {
            return Err(Error::invalid(format!(
                "chain rule needs finest-level points z <= y, got z={z}, y={y}"
            )))
        }
    };
    let t = terms(phi, f, lambda, side)?;
    let dphi = f.map(|x| phi.first(x));
    let integral = lambda_integral_on(&dphi, f, lambda, side, z, y)?;
    let lhs = t.lhs[iy] - t.lhs[iz];
    let bracket_term = t.bracket[iy] - t.bracket[iz];
    let jump_correction = t.jumps[iy] - t.jumps[iz];
    let integral_term = integral.value;
    Ok(ChainRuleReport {
        side,
        lhs,
        integral_term,
        bracket_term,
        jump_correction,
        residual: lhs - (integral_term + bracket_term + jump_correction),
        integral,
        bracket_converged: t.bracket_converged,
    })
}

/// Residual of the chain rule on `[a, t]` at every finest point `t`.
pub fn chain_rule_trace<M: C2Map + ?Sized>(
    phi: &M,
    f: &SampledPath,
    lambda: &PartitionSequence,
    side: Side,
) -> Result<Vec<f64>> {
    let t = terms(phi, f, lambda, side)?;
    Ok((0..t.lhs.len())
        .map(|i| t.lhs[i] - (t.integral[i] + t.bracket[i] + t.jumps[i]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::{Decoration, Partition};
    use crate::stieltjes::lc_sum;
    use crate::variation::sp_sum;

    fn wiggle(depth: u32) -> (PartitionSequence, SampledPath) {
        let lam = PartitionSequence::dyadic(1.0, 2, depth).unwrap();
        let vals = lam.finest().points().iter().map(|t| (13.0 * t).sin() + 0.3 * (40.0 * t).cos()).collect();
        let f = SampledPath::continuous(lam.finest().clone(), vals).unwrap();
        (lam, f)
    }

    #[test]
    fn identity_map_has_zero_residual() {
        let (lam, f) = wiggle(6);
        let id = FnMap { value: |x: f64| x, first: |_: f64| 1.0, second: |_: f64| 0.0 };
        for side in [Side::Left, Side::Right] {
            let r = chain_rule(&id, &f, &lam, 0.0, 1.0, side).unwrap();
            assert!(r.residual.abs() < 1e-14);
        }
    }

    #[test]
    fn square_matches_direct_expansion() {
        let (lam, f) = wiggle(8);
        let r = chain_rule(&Square, &f, &lam, 0.0, 1.0, Side::Left).unwrap();
        // Oracle: f(1)² - f(0)² = 2 S_LC(f, f) + s_2.
        let k = lam.finest();
        let direct = f.last().powi(2) - f.first().powi(2)
            - 2.0 * lc_sum(&f, &f, k).unwrap()
            - sp_sum(&f, k, 2.0).unwrap();
        assert!(direct.abs() < 1e-12);
        assert!(r.residual.abs() < 1e-12);
        let rr = chain_rule(&Square, &f, &lam, 0.25, 0.75, Side::Right).unwrap();
        assert!(rr.residual.abs() < 1e-12);
        assert!(rr.bracket_term < 0.0);
    }

    #[test]
    fn jumps_enter_the_correction() {
        let lam = PartitionSequence::dyadic(1.0, 2, 3).unwrap();
        let g = lam.finest().clone();
        let d = Decoration { time: 0.5, left: 0.2, right: 0.9 };
        let f = SampledPath::regulated(g, vec![0.0, 0.1, 0.1, 0.2, 0.5, 0.9, 0.8, 0.7, 0.75], &[d]).unwrap();
        for side in [Side::Left, Side::Right] {
            let trace = chain_rule_trace(&Exp, &f, &lam, side).unwrap();
            let r = chain_rule(&Exp, &f, &lam, 0.0, 1.0, side).unwrap();
            assert!(r.jump_correction != 0.0);
            assert!((trace.last().unwrap() - r.residual).abs() < 1e-12);
        }
    }

    #[test]
    fn finite_differences_track_closed_forms() {
        let fd = FiniteDifference::new(f64::exp);
        for x in [-2.0, 0.0, 0.7, 3.0] {
            assert!((fd.first(x) - x.exp()).abs() < 1e-8 * x.exp().max(1.0));
            assert!((fd.second(x) - x.exp()).abs() < 1e-5 * x.exp().max(1.0));
        }
        let fd = FiniteDifference::new(|x: f64| x.ln());
        assert!((fd.second(2.0) - Log.second(2.0)).abs() < 1e-6);
    }

    #[test]
    fn log_of_nonpositive_path_fails() {
        let f = SampledPath::continuous(Partition::uniform(0.0, 1.0, 2).unwrap(), vec![1.0, -1.0, 1.0]).unwrap();
        let lam = PartitionSequence::dyadic(1.0, 2, 1).unwrap();
        assert!(matches!(chain_rule(&Log, &f, &lam, 0.0, 1.0, Side::Left), Err(Error::Numeric(_))));
    }
}
