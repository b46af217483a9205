//! Cauchy and Riemann–Stieltjes sums, λ-integrals, Young integrals against
//! bounded-variation integrators, and the pathwise chain rule.

mod cauchy;
mod chain;
mod young;

pub use cauchy::{
    improper_lc_tail, improper_lc_tail_with, indefinite_integral, lambda_integral,
    lambda_integral_on, lambda_integral_with, lc_sum, rc_sum, IntegralEstimate, JumpCheck,
    JumpSide, Side,
};
pub use chain::{
    chain_rule, chain_rule_trace, C2Map, ChainRuleReport, Exp, FiniteDifference, FnMap, Log,
    Square,
};
pub use young::{ly_integral_bv, ry_integral_bv, weighted_quadratic_sum, BvIntegrator};
