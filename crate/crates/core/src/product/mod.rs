//! Partition products, product λ-integrals, Doléans exponentials, the
//! linear λ-integral equation, and λ-generators of evolutions.

mod doleans;
mod generator;
mod products;

pub use doleans::{doleans, linear_equation_residual, Direction, DoleansPath, EquationResidual};
pub use generator::{
    duality_roundtrip, lambda_generator, product_of_generator_gap, DualityReport, GeneratorPath,
};
pub use products::{
    jump_product, partition_product, product_lambda_integral, product_lambda_integral_with,
    ProductEstimate,
};
