use super::doleans::{doleans, Direction};
use crate::error::{Error, Result};
use crate::path::{PartitionSequence, SampledPath};
use crate::stieltjes::{indefinite_integral, Side};

/// `L_λ U₀ = (LC)∫ U₀⁻¹ d_λ U₀` on the finest grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorPath {
    pub source: SampledPath,
    pub values: Vec<f64>,
    /// `(level, Σ [U₀(x_i)/U₀(x_{i-1}) - 1])` over the whole domain.
    pub evolution_sums: Vec<(usize, f64)>,
    path: SampledPath,
}

impl GeneratorPath {
    pub fn as_path(&self) -> &SampledPath {
        &self.path
    }
}

fn check_evolution(u: &SampledPath) -> Result<()> {
    let (v, l, r, t) = (u.values(), u.left_limits(), u.right_limits(), u.times());
    if (v[0] - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(format!("distribution path must start at 1, got {}", v[0])));
    }
    for i in 0..u.len() {
        if v[i] == 0.0 || l[i] == 0.0 || r[i] == 0.0 {
            return Err(Error::NotAnEvolution { time: t[i] });
        }
        // A linear piece between opposite signs passes through 0.
        if i > 0 && r[i - 1].signum() != l[i].signum() && u.style() != crate::path::Style::CadlagStep {
            return Err(Error::NotAnEvolution { time: t[i] });
        }
    }
    Ok(())
}

pub fn lambda_generator(u0: &SampledPath, lambda: &PartitionSequence) -> Result<GeneratorPath> {
    check_evolution(u0)?;
    let inv = u0.map(f64::recip);
    let path = indefinite_integral(&inv, u0, lambda, Side::Left)?;
    let mut evolution_sums = Vec::with_capacity(lambda.depth());
    for (k, level) in lambda.levels().iter().enumerate() {
        let v = u0.values_on(level)?;
        evolution_sums.push((k + 1, v.windows(2).map(|w| w[1] / w[0] - 1.0).sum()));
    }
    Ok(GeneratorPath {
        source: u0.clone(),
        values: path.values().to_vec(),
        evolution_sums,
        path,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityReport {
    /// `sup |L_λ(E(g)) - (g - g(a))|`.
    pub generator_gap: f64,
    /// `sup |Π(1 + ΔL_λ(E(g))) - E(g)/E(g)(a)|`.
    pub product_gap: f64,
}

/// `sup_t |𝔜_a^t(1 + d_λ L_λ f) - f(t)/f(a)|` at the finest level.
pub fn product_of_generator_gap(f: &SampledPath, lambda: &PartitionSequence) -> Result<f64> {
    let f0 = f.values()[0];
    if f0 == 0.0 {
        return Err(Error::NotAnEvolution { time: f.start() });
    }
    let u = f.scale(1.0 / f0);
    let gen = lambda_generator(&u, lambda)?;
    let ratio = f.values_on(lambda.finest())?;
    let mut prod = 1.0;
    let mut gap = 0.0_f64;
    for i in 1..gen.values.len() {
        prod *= 1.0 + (gen.values[i] - gen.values[i - 1]);
        gap = gap.max((prod - ratio[i] / f0).abs());
    }
    Ok(gap)
}

pub fn duality_roundtrip(g: &SampledPath, lambda: &PartitionSequence) -> Result<DualityReport> {
    let e = doleans(g, lambda, Direction::Forward)?;
    let gen = lambda_generator(e.as_path(), lambda)?;
    let gv = g.values_on(lambda.finest())?;
    let generator_gap = gen
        .values
        .iter()
        .zip(&gv)
        .fold(0.0_f64, |m, (l, x)| m.max((l - (x - gv[0])).abs()));
    let product_gap = product_of_generator_gap(e.as_path(), lambda)?;
    Ok(DualityReport {
        generator_gap,
        product_gap,
    })
}
