//! Bessel functions of the first kind with complex order, and their bicomplex
//! extension `J_V(Z) = J_{ν1}(z1) e1 + J_{ν2}(z2) e2`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::gamma::{is_gamma_pole, recip_gamma};
use crate::bicomplex::{cpow, Bicomplex, Hyperbolic};
use crate::dd::{Dd, DdComplex};
use crate::error::{Error, Result};

/// Largest component modulus accepted by the power series.
pub const SERIES_DOMAIN: f64 = 60.0;
pub const DEFAULT_TOL: f64 = 1e-17;
pub const DEFAULT_MAX_TERMS: usize = 500;

/// Above this modulus the transform kernel switches to the large-argument expansion.
const ASYMPTOTIC_SWITCH: f64 = 25.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult {
    pub value: Bicomplex,
    pub terms_used: usize,
    pub tail_estimate: Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentSeries {
    pub value: Complex64,
    pub terms: usize,
    pub tail: f64,
}

/// Returns `l` when `nu = −l` for a positive integer `l`.
pub fn negative_integer(nu: Complex64) -> Option<u32> {
    if is_gamma_pole(nu + 1.0) {
        Some((-nu.re) as u32)
    } else {
        None
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Complex `J_ν(z)` by its power series, summed in double-double arithmetic.
///
/// Stops once three consecutive terms of the series (normalised so that its
/// leading term is 1) fall below `tol · (1 + |partial sum|)`, after at least
/// `max(15, ⌈|z|⌉)` terms.
pub fn bessel_j_series(nu: Complex64, z: Complex64, tol: f64, max_terms: usize) -> Result<ComponentSeries> {
    check_tol(tol)?;
    if !(z.norm() <= SERIES_DOMAIN) {
        return Err(Error::Domain(format!("|z| = {} exceeds the series domain {SERIES_DOMAIN}", z.norm())));
    }
    if let Some(l) = negative_integer(nu) {
        let r = bessel_j_series(Complex64::new(l as f64, 0.0), z, tol, max_terms)?;
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(ComponentSeries { value: r.value * sign, ..r });
    }
    let zero = Complex64::new(0.0, 0.0);
    if z == zero {
        let v = if nu == zero {
            Complex64::new(1.0, 0.0)
        } else if nu.re > 0.0 {
            zero
        } else {
            return Err(Error::ZeroDivisor(format!("J_{nu}(0) is unbounded")));
        };
        return Ok(ComponentSeries { value: v, terms: 1, tail: 0.0 });
    }
    let half = z * 0.5;
    let prefactor = cpow(half, nu)? * recip_gamma(nu + 1.0);
    let h = DdComplex::from_c64(half);
    let q = -(h * h);
    let q_abs = q.abs_f64();
    let nu_re = Dd::from_f64(nu.re);
    let nu_im = Dd::from_f64(nu.im);

    let floor = 15usize.max(z.norm().ceil() as usize);
    let mut term = DdComplex::one();
    let mut sum = DdComplex::ZERO;
    let mut small = 0;
    let mut s = 0usize;
    loop {
        sum = sum + term;
        let t_abs = term.abs_f64();
        if t_abs < tol * (1.0 + sum.abs_f64()) {
            small += 1;
        } else {
            small = 0;
        }
        if small >= 3 && s + 1 >= floor {
            break;
        }
        if s + 1 >= max_terms {
            return Err(Error::NonConvergence(format!(
                "Bessel series for order {nu}, argument {z} not converged after {max_terms} terms"
            )));
        }
        // t_{s+1} = t_s · q / ((s+1)(ν+s+1))
        let k = Dd::from_f64((s + 1) as f64);
        let denom = DdComplex { re: (nu_re + k) * k, im: nu_im * k };
        term = (term * q).div(denom);
        s += 1;
    }
    let last = term.abs_f64();
    let ratio = q_abs / ((s + 2) as f64 * (nu + (s + 2) as f64).norm());
    let tail_rel = if ratio < 1.0 { last * ratio / (1.0 - ratio) } else { last };
    Ok(ComponentSeries { value: prefactor * sum.to_c64(), terms: s + 1, tail: prefactor.norm() * tail_rel })
}

/// `J_V(Z)` evaluated componentwise by the power series.
pub fn bessel_j(v: &Bicomplex, z: &Bicomplex, tol: f64) -> Result<SeriesResult> {
    bessel_j_with(v, z, tol, DEFAULT_MAX_TERMS)
}

pub fn bessel_j_with(v: &Bicomplex, z: &Bicomplex, tol: f64, max_terms: usize) -> Result<SeriesResult> {
    let a = bessel_j_series(v.e1, z.e1, tol, max_terms)?;
    let b = bessel_j_series(v.e2, z.e2, tol, max_terms)?;
    Ok(SeriesResult {
        value: Bicomplex::new(a.value, b.value),
        terms_used: a.terms.max(b.terms),
        tail_estimate: Hyperbolic::new(a.tail, b.tail),
    })
}

/// Value-only shorthand with the default tolerance.
pub fn jv(v: &Bicomplex, z: &Bicomplex) -> Result<Bicomplex> {
    Ok(bessel_j(v, z, DEFAULT_TOL)?.value)
}

/// `J_{−L}(Z)` through `(−1)^{l} J_{l}` in each component.
pub fn bessel_j_negative_integer(l: &Bicomplex, z: &Bicomplex, tol: f64) -> Result<SeriesResult> {
    let mut parts = [0u32; 2];
    for (i, c) in [l.e1, l.e2].into_iter().enumerate() {
        if c.im != 0.0 || c.re < 0.0 || c.re.fract() != 0.0 {
            return Err(Error::NonInteger(format!("component {c} is not a nonnegative integer")));
        }
        parts[i] = c.re as u32;
    }
    let r = bessel_j(l, z, tol)?;
    let sign = |k: u32| if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok(SeriesResult { value: Bicomplex::new(r.value.e1 * sign(parts[0]), r.value.e2 * sign(parts[1])), ..r })
}

/// Classical large-argument expansion of `J_ν(z)`, valid for `|arg z| < π`.
///
/// Returns `None` when the smallest term is not below double precision.
pub fn bessel_j_large_argument(nu: Complex64, z: Complex64) -> Option<Complex64> {
    let mu = 4.0 * nu * nu;
    let zi = z.inv();
    let mut a = Complex64::new(1.0, 0.0);
    let mut p = Complex64::new(1.0, 0.0);
    let mut q = Complex64::new(0.0, 0.0);
    let mut prev = f64::INFINITY;
    let mut converged = false;
    for k in 1..80usize {
        let odd = (2 * k - 1) as f64;
        a = a * (mu - odd * odd) * zi / (8.0 * k as f64);
        let mag = a.norm();
        if mag > prev {
            break;
        }
        prev = mag;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += a * sign;
        } else {
            q += a * sign;
        }
        if mag < 1e-17 * p.norm().max(q.norm()) {
            converged = true;
            break;
        }
        if a == Complex64::new(0.0, 0.0) {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    let chi = z - (nu * 0.5 + 0.25) * PI;
    Some((2.0 / (PI * z)).sqrt() * (p * chi.cos() - q * chi.sin()))
}

/// `J_ν(z)` choosing the series for moderate arguments and the large-argument
/// expansion beyond `|z| = 25` when it converges to double precision.
pub fn bessel_j_auto(nu: Complex64, z: Complex64) -> Result<Complex64> {
    if z.norm() > ASYMPTOTIC_SWITCH {
        if z.im == 0.0 && z.re < 0.0 {
            if negative_integer(nu).is_none() && (nu.im != 0.0 || nu.re.fract() != 0.0) {
                return Err(Error::Branch(format!("J_{nu} on the negative real axis")));
            }
            // Integer order: J_n(−x) = (−1)^n J_n(x).
            let sign = if (nu.re as i64) % 2 == 0 { 1.0 } else { -1.0 };
            return Ok(bessel_j_auto(nu, -z)? * sign);
        }
        if let Some(v) = bessel_j_large_argument(nu, z) {
            return Ok(v);
        }
    }
    Ok(bessel_j_series(nu, z, DEFAULT_TOL, DEFAULT_MAX_TERMS)?.value)
}
