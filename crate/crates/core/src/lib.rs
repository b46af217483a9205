//! Pathwise quadratic-variation calculus on sampled paths.
//!
//! Every construction here is a limit along a nested sequence of partitions
//! `λ = {λ_m}`. Paths are stored on the finest level of such a sequence and
//! the crate computes, level by level, the partition sums whose limits define
//! p-variation, the quadratic λ-variation (bracket), Left/Right Cauchy
//! λ-integrals, product λ-integrals and Doléans exponentials. Convergence is
//! never assumed: every λ-quantity is returned with its per-level values and
//! a Cauchy-in-level verdict.
//!
//! Module map:
//!
//! - [`path`]: partitions, partition sequences, sampled regulated paths, jump
//!   bookkeeping, and the CSV/JSON interchange formats.
//! - [`variation`]: `s_p` sums, exact p-variation, jump sums, brackets and
//!   covariations, Wiener-class diagnostics, the Gladyshev index estimator.
//! - [`stieltjes`]: Left/Right Cauchy sums and λ-integrals, Young integrals
//!   against bounded-variation integrators, the pathwise chain rule.
//! - [`product`]: partition products, product λ-integrals, Doléans
//!   exponentials, the linear λ-integral equation and the λ-generator.
//! - [`generators`]: Brownian, fractional Brownian, Kôno self-affine and
//!   step paths, first-passage skeletons, and the conjugate Fourier pair.
//! - [`finance`]: Black–Scholes pricing and pathwise hedging, binomial
//!   prices, and evolutionary-system reflexivity checks.

pub mod convergence;
pub mod error;
pub mod finance;
pub mod generators;
pub mod path;
pub mod product;
pub mod stieltjes;
pub mod variation;

pub use convergence::Tolerance;
pub use error::{Error, Result};
pub use path::{
    JumpEntry, JumpSet, Partition, PartitionSequence, SampledPath, SequenceKind, Style,
};
