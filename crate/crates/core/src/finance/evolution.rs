use crate::error::{Error, Result};
use crate::path::{PartitionSequence, SampledPath};
use crate::product::{doleans, lambda_generator, linear_equation_residual, Direction};
use rayon::prelude::*;

/// Returns together with their prices `E(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionarySystem {
    pub returns: Vec<SampledPath>,
    pub prices: Vec<SampledPath>,
    pub lambda: PartitionSequence,
}

impl EvolutionarySystem {
    pub fn new(returns: Vec<SampledPath>, lambda: PartitionSequence) -> Result<Self> {
        let prices = returns
            .par_iter()
            .map(|g| {
                let e = doleans(g, &lambda, Direction::Forward)?.to_path();
                let lows = e.values().iter().chain(e.left_limits()).chain(e.right_limits());
                if lows.clone().any(|&v| !(v > 0.0)) {
                    return Err(Error::InvalidPrice("a return jumps by -1 or less".into()));
                }
                Ok(e)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EvolutionarySystem { returns, prices, lambda })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflexivityGaps {
    /// `sup |f - 1 - (LC)∫ f d_λg|`.
    pub equation_gap: f64,
    /// `sup |L_λ f - (g - g(0))|`.
    pub generator_gap: f64,
}

pub fn reflexivity_check(sys: &EvolutionarySystem) -> Result<Vec<ReflexivityGaps>> {
    sys.returns
        .par_iter()
        .zip(&sys.prices)
        .map(|(g, f)| {
            let equation_gap = linear_equation_residual(g, &sys.lambda)?.sup;
            let gen = lambda_generator(f, &sys.lambda)?;
            let gv = g.values_on(sys.lambda.finest())?;
            let generator_gap = gen
                .values
                .iter()
                .zip(&gv)
                .fold(0.0_f64, |m, (l, x)| m.max((l - (x - gv[0])).abs()));
            Ok(ReflexivityGaps { equation_gap, generator_gap })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{brownian_dyadic, step_path};

    #[test]
    fn zero_and_pure_jump_returns_are_exact() {
        let lam = PartitionSequence::dyadic(1.0, 2, 4).unwrap();
        let zero = SampledPath::continuous(lam.finest().clone(), vec![0.0; 17]).unwrap();
        let jumps = step_path(lam.finest(), &[(0.25, 0.3), (0.5, -0.4), (0.875, 0.1)]).unwrap();
        let sys = EvolutionarySystem::new(vec![zero, jumps], lam).unwrap();
        let gaps = reflexivity_check(&sys).unwrap();
        assert_eq!(gaps[0], ReflexivityGaps { equation_gap: 0.0, generator_gap: 0.0 });
        assert!(gaps[1].equation_gap < 1e-12 && gaps[1].generator_gap < 1e-12);
    }

    #[test]
    fn brownian_returns_have_small_gaps() {
        let b = brownian_dyadic(1.0, 12, 11).unwrap();
        let sys = EvolutionarySystem::new(vec![b.path], b.sequence).unwrap();
        let g = reflexivity_check(&sys).unwrap()[0];
        assert!(g.equation_gap < 0.02 && g.generator_gap < 0.05, "{g:?}");
        assert!(sys.prices[0].first() == 1.0);
    }

    #[test]
    fn ruinous_jump_is_rejected() {
        let lam = PartitionSequence::dyadic(1.0, 2, 2).unwrap();
        let g = step_path(lam.finest(), &[(0.5, -1.5)]).unwrap();
        assert!(matches!(EvolutionarySystem::new(vec![g], lam), Err(Error::InvalidPrice(_))));
    }
}
