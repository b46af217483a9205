//! Black–Scholes pricing and hedging along a single price path, binomial
//! prices from random-walk skeletons, and evolutionary price systems.

mod binomial;
mod bs;
mod evolution;
mod hedge;

pub use binomial::{binomial_price, lognormal_gap};
pub use bs::{
    bs_d1, bs_d2, bs_delta, bs_gamma, bs_pde_residual, bs_price, bs_theta, norm_cdf, norm_pdf,
    BsParams,
};
pub use evolution::{reflexivity_check, EvolutionarySystem, ReflexivityGaps};
pub use hedge::{delta_path, gain_tail, hedge, HedgeReport};
