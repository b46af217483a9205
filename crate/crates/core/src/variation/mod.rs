//! Partition sums, p-variation, jump sums, brackets and covariations,
//! Wiener-class diagnostics and the Gladyshev index estimator.

mod bracket;
pub(crate) use bracket::{check_accessible, limits_on};
mod index;
mod pvar;
mod sums;
mod wiener;

pub use bracket::{
    quadratic_covariation, quadratic_covariation_with, quadratic_variation,
    quadratic_variation_with, BracketResult, CovariationResult, LevelSums,
};
pub use index::{gladyshev_index, IndexEstimate, LevelIndex};
pub use pvar::{p_variation, p_variation_of_values, PVarMethod, PVariation};
pub use sums::{covariation_sum, level_s2, sigma_p, sp_sum};
pub use wiener::{wiener_diagnostic, wiener_diagnostic_with, WienerReport};
