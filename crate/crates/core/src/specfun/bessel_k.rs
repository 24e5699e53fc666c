//! Modified Bessel function of the second kind for real order and positive
//! real argument, backed by the Amos algorithms in `complex-bessel`.

use num_complex::Complex64;

use crate::error::{Error, Result};

fn check(nu: f64, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("K_ν(x) needs x > 0, got {x}")));
    }
    if !nu.is_finite() {
        return Err(Error::Domain(format!("K_ν(x) needs a finite order, got {nu}")));
    }
    Ok(())
}

fn map_err(nu: f64, x: f64, e: complex_bessel::Error) -> Error {
    Error::Domain(format!("K_{nu}({x}) could not be evaluated: {e:?}"))
}

/// `K_ν(x)` for real `ν` and `x > 0`.
pub fn bessel_k_real(nu: f64, x: f64) -> Result<f64> {
    check(nu, x)?;
    complex_bessel::besselk(nu.abs(), Complex64::new(x, 0.0)).map(|v| v.re).map_err(|e| map_err(nu, x, e))
}

/// `e^x K_ν(x)`, finite well past the point where `K_ν(x)` underflows.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    check(nu, x)?;
    complex_bessel::besselk_scaled(nu.abs(), Complex64::new(x, 0.0)).map(|v| v.re).map_err(|e| map_err(nu, x, e))
}
