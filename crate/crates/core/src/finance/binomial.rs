use crate::error::{Error, Result};
use crate::path::{Partition, SampledPath};

/// `P_m(k 2^{-2m}) = Π_{j≤k} (1 + W(j) - W(j-1))` as a cadlag step path on
/// `[0, T]`, from skeleton values `W(0), W(1), ...`.
pub fn binomial_price(walk: &[f64], m: u32, t_end: f64) -> Result<SampledPath> {
    let dt = 4f64.powi(-(m as i32));
    let steps = (t_end / dt).round();
    if !(t_end > 0.0) || ((steps * dt - t_end).abs() > 1e-9 * t_end) {
        return Err(Error::invalid(format!("T = {t_end} is not a multiple of 4^-{m}")));
    }
    let steps = steps as usize;
    if walk.len() < steps + 1 {
        return Err(Error::invalid(format!(
            "skeleton has {} steps, {steps} needed to reach T = {t_end}",
            walk.len().saturating_sub(1)
        )));
    }
    let h = 2f64.powi(-(m as i32));
    let mut values = Vec::with_capacity(steps + 1);
    let mut p = 1.0;
    values.push(p);
    for k in 1..=steps {
        let d = walk[k] - walk[k - 1];
        if ((d.abs() - h).abs()) > 1e-12 * h.max(1.0) {
            return Err(Error::invalid(format!("skeleton increment {d} at step {k} is not ±2^-{m}")));
        }
        p *= 1.0 + d;
        values.push(p);
    }
    SampledPath::step(Partition::uniform(0.0, t_end, steps)?, values)
}

/// `sup |P_m(t) - exp{B(t) - t/2}|` over the grid points of `b` in `[0, T]`, `T` the end of `pm`.
pub fn lognormal_gap(pm: &SampledPath, b: &SampledPath) -> f64 {
    let t_end = pm.end();
    let b0 = b.first();
    b.times()
        .iter()
        .zip(b.values())
        .take_while(|(&t, _)| t <= t_end)
        .fold(0.0_f64, |m, (&t, &x)| m.max((pm.eval(t) - (x - b0 - 0.5 * t).exp()).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_up_moves() {
        let m = 2;
        let walk: Vec<f64> = (0..=16).map(|k| k as f64 * 0.25).collect();
        let p = binomial_price(&walk, m, 1.0).unwrap();
        assert!((p.last() - 1.25f64.powi(16)).abs() < 1e-12);
    }

    #[test]
    fn up_then_down() {
        let p = binomial_price(&[0.0, 0.5, 0.0, 0.5, 1.0], 1, 0.5).unwrap();
        assert_eq!(p.values(), &[1.0, 1.5, 0.75]);
        assert!(p.values().iter().all(|&v| v > 0.0));
    }

    #[test]
    fn rejects_short_or_malformed_walks() {
        assert!(binomial_price(&[0.0, 0.5], 1, 1.0).is_err());
        assert!(binomial_price(&[0.0, 0.4, 0.9, 0.4, 0.9], 1, 1.0).is_err());
        assert!(binomial_price(&[0.0, 0.5, 1.0], 1, 0.3).is_err());
    }
}
