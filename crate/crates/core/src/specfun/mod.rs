pub mod asymptotic;
pub mod bessel;
pub mod bessel_k;
pub mod gamma;
pub mod identities;
pub mod integral_reps;

pub use bessel::{bessel_j, bessel_j_negative_integer, jv, SeriesResult};
pub use gamma::{bicomplex_gamma, complex_gamma};
