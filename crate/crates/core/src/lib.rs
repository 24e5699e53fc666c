//! Bicomplex Bessel functions, the n-dimensional bicomplex Hankel transform,
//! transform solutions of generalized wave and heat equations, and bicomplex
//! generalized coherent states.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision, clippy::manual_is_multiple_of)]

pub mod bicomplex;
mod dd;
pub mod error;
pub mod specfun;

pub use bicomplex::{Bicomplex, Hyperbolic, HyperbolicOrdering};
pub use error::{Error, Result};
pub mod coherent;
pub mod hankel;
pub mod pde;
pub mod verify;
