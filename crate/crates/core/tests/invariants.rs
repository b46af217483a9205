use pathcalc_core::finance::{binomial_price, bs_price, BsParams};
use pathcalc_core::path::Decoration;
use pathcalc_core::product::{doleans, Direction};
use pathcalc_core::stieltjes::{lambda_integral, ly_integral_bv, weighted_quadratic_sum, BvIntegrator, Side};
use pathcalc_core::variation::{
    covariation_sum, p_variation, quadratic_variation, sigma_p, sp_sum,
};
use pathcalc_core::{Partition, PartitionSequence, SampledPath};
use proptest::prelude::*;

fn dyadic(depth: u32) -> PartitionSequence {
    PartitionSequence::dyadic(1.0, 2, depth).unwrap()
}

/// Continuous, step or decorated path on the depth-4 dyadic grid.
fn path_on_16() -> impl Strategy<Value = SampledPath> {
    (
        prop::collection::vec(-2.0f64..2.0, 17),
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0, any::<bool>()), 17),
        0u8..3,
    )
        .prop_map(|(v, jumps, kind)| {
            let grid = dyadic(4).finest().clone();
            match kind {
                0 => SampledPath::continuous(grid, v).unwrap(),
                1 => SampledPath::step(grid, v).unwrap(),
                _ => {
                    let decs: Vec<Decoration> = (0..17)
                        .filter(|&i| jumps[i].2)
                        .map(|i| Decoration {
                            time: grid.points()[i],
                            left: if i == 0 { v[i] } else { v[i] + jumps[i].0 },
                            right: if i == 16 { v[i] } else { v[i] + jumps[i].1 },
                        })
                        .collect();
                    SampledPath::regulated(grid, v, &decs).unwrap()
                }
            }
        })
}

proptest! {
    #[test]
    fn dyadic_sequences_are_nested(t_end in 0.1f64..10.0, base in 2u32..6, depth in 1u32..6) {
        let lam = PartitionSequence::dyadic(t_end, base, depth).unwrap();
        prop_assert!(lam.is_nested());
        for (m, level) in lam.levels().iter().enumerate() {
            prop_assert_eq!(level.intervals(), (base as usize).pow(m as u32 + 1));
        }
    }

    #[test]
    fn trace_is_additive(a in 0usize..16, b in 0usize..16, c in 0usize..16) {
        let mut idx = [a, b, c];
        idx.sort_unstable();
        let k = dyadic(4).finest().clone();
        let p = k.points();
        let (s, u, t) = (p[idx[0]], p[idx[1]], p[idx[2]]);
        let left = k.trace(s, u).unwrap();
        let right = k.trace(u, t).unwrap();
        let mut joined = left.points().to_vec();
        joined.extend_from_slice(&right.points()[1..]);
        prop_assert_eq!(joined, k.trace(s, t).unwrap().points().to_vec());
    }

    #[test]
    fn pvar_dominates_every_subpartition(f in path_on_16(), mask in any::<u16>(), p in 1.0f64..3.0) {
        let grid = f.grid().points();
        let mut pts = vec![grid[0]];
        pts.extend((1..16).filter(|i| mask & (1 << i) != 0).map(|i| grid[i]));
        pts.push(grid[16]);
        let kappa = Partition::new(pts).unwrap();
        let v = p_variation(&f, p).unwrap().value;
        prop_assert!(v >= sp_sum(&f, &kappa, p).unwrap() * (1.0 - 1e-12));
    }

    #[test]
    fn jump_sum_below_p_variation(f in path_on_16(), p in 1.0f64..3.0) {
        prop_assert!(sigma_p(&f, p).unwrap() <= p_variation(&f, p).unwrap().value * (1.0 + 1e-12));
    }

    #[test]
    fn bracket_jump_law(f in path_on_16()) {
        let b = quadratic_variation(&f, &dyadic(4)).unwrap();
        for i in 0..f.len() {
            let (minus, plus) = f.jumps_at(i);
            prop_assert!((b.jump_minus[i] - minus * minus).abs() <= 1e-9);
            prop_assert!((b.jump_plus[i] - plus * plus).abs() <= 1e-9);
            if i > 0 {
                let (l, r) = (f.left_limits()[i], f.right_limits()[i - 1]);
                let step = b.total[i] - b.total[i - 1];
                let want = b.jump_plus[i - 1] + (l - r) * (l - r) + b.jump_minus[i];
                prop_assert!((step - want).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn covariation_sums_are_bilinear(
        f1 in path_on_16(), f2 in path_on_16(), g in path_on_16(),
        a in -3.0f64..3.0, c in -3.0f64..3.0, m in 1usize..=4,
    ) {
        let kappa = dyadic(4).level(m).clone();
        let lhs = covariation_sum(&f1.linear_combination(a, &f2, c).unwrap(), &g, &kappa).unwrap();
        let rhs = a * covariation_sum(&f1, &g, &kappa).unwrap() + c * covariation_sum(&f2, &g, &kappa).unwrap();
        let scale = 1.0 + (a.abs() + c.abs()) * 16.0 * 16.0;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
    }

    #[test]
    fn unit_weight_quadratic_sum_is_s2(f in path_on_16(), m in 1usize..=4) {
        let lam = dyadic(4);
        let one = SampledPath::continuous(lam.finest().clone(), vec![1.0; 17]).unwrap();
        for side in [Side::Left, Side::Right] {
            prop_assert_eq!(
                weighted_quadratic_sum(&one, &f, &lam, m, side).unwrap(),
                sp_sum(&f, lam.level(m), 2.0).unwrap()
            );
        }
    }

    #[test]
    fn step_integrator_matches_young_integral(
        phi in prop::collection::vec(-2.0f64..2.0, 17),
        v in prop::collection::vec(-2.0f64..2.0, 17),
    ) {
        let lam = dyadic(4);
        let grid = lam.finest().clone();
        let psi = SampledPath::step(grid.clone(), phi).unwrap();
        let steps = SampledPath::step(grid, v).unwrap();
        let lc = lambda_integral(&psi, &steps, &lam, Side::Left).unwrap().value;
        let ly = ly_integral_bv(&psi, &BvIntegrator::from_path(&steps)).unwrap();
        prop_assert!((lc - ly).abs() <= 1e-12 * (1.0 + lc.abs()));
    }

    #[test]
    fn doleans_jump_law_and_positivity(
        base in prop::collection::vec(-0.3f64..0.3, 17),
        jumps in prop::collection::vec((-0.5f64..0.5, any::<bool>()), 17),
    ) {
        let lam = dyadic(4);
        let grid = lam.finest().clone();
        let decs: Vec<Decoration> = (1..17)
            .filter(|&i| jumps[i].1)
            .map(|i| Decoration { time: grid.points()[i], left: base[i] - jumps[i].0, right: base[i] })
            .collect();
        let f = SampledPath::regulated(grid, base, &decs).unwrap();
        let e = doleans(&f, &lam, Direction::Forward).unwrap();
        for i in 1..17 {
            let (minus, _) = f.jumps_at(i);
            if minus != 0.0 {
                prop_assert!((e.values[i] / e.left[i] - (1.0 + minus)).abs() <= 1e-9);
            }
        }
        prop_assert!(e.values.iter().chain(&e.left).chain(&e.right).all(|&x| x > 0.0));
    }

    #[test]
    fn backward_exponential_closed_form(v in prop::collection::vec(-1.0f64..1.0, 17)) {
        let lam = dyadic(4);
        let f = SampledPath::continuous(lam.finest().clone(), v).unwrap();
        let e = doleans(&f, &lam, Direction::Backward).unwrap();
        let c = quadratic_variation(&f, &lam).unwrap().continuous_part;
        let (fv, n) = (f.values(), 16);
        for i in 0..=n {
            let want = ((fv[n] - fv[i]) - 0.5 * (c[n] - c[i])).exp();
            prop_assert!((e.values[i] - want).abs() <= 1e-9 * want.max(1.0));
        }
    }

    #[test]
    fn call_price_monotone(t in 0.0f64..0.99, x in 0.01f64..4.0, dx in 0.0f64..0.5) {
        let p = BsParams::new(1.1, 0.05, 0.4, 1.0).unwrap();
        prop_assert!(bs_price(&p, t, x + dx) >= bs_price(&p, t, x) - 1e-12);
        // The time value decays toward the payoff.
        prop_assert!(bs_price(&p, t, x) >= p.payoff(x) - 1e-12);
    }

    #[test]
    fn binomial_prices_stay_positive(steps in prop::collection::vec(any::<bool>(), 16), m in 1u32..3) {
        let h = 2f64.powi(-(m as i32));
        let n = 4usize.pow(m);
        let mut walk = vec![0.0];
        for k in 0..n {
            let up = steps[k % steps.len()];
            walk.push(walk[k] + if up { h } else { -h });
        }
        let p = binomial_price(&walk, m, 1.0).unwrap();
        prop_assert!(p.values().iter().all(|&x| x > 0.0));
    }
}

#[test]
fn call_price_approaches_payoff_in_time() {
    let p = BsParams::new(1.0, 0.05, 0.3, 1.0).unwrap();
    for &x in &[0.5, 0.9, 1.2, 2.0] {
        let gaps: Vec<f64> = [0.0, 0.5, 0.9, 0.99, 1.0]
            .iter()
            .map(|&t| bs_price(&p, t, x) - p.payoff(x))
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] <= w[0] + 1e-12), "x = {x}: {gaps:?}");
        assert_eq!(*gaps.last().unwrap(), 0.0);
    }
}
