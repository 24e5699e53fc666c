//! The n-dimensional bicomplex Hankel transform and its quadrature engine.

pub mod function;
pub mod operators;
pub mod quadrature;
pub mod transform;

pub use function::{builtin, power_gaussian, SampledFunction, BUILTINS};
pub use operators::{op_m, op_n, operational_identity, operational_identity_residual, Identity};
pub use quadrature::{integrate_semi_infinite, Integral, QuadratureConfig};
pub use transform::{
    hankel_forward, hankel_forward_many, hankel_inverse, hankel_inverse_many, transformed, TransformConfig,
    TransformResult,
};
