//! Quadrature evaluation of the integral representations of `J_V(Z)`.
//!
//! Each representation is an infinite series whose terms contain an integral.
//! The series is truncated with the same rule as the power series and every
//! integral is computed numerically, so agreement with [`super::bessel_j`] is
//! a genuine cross-check.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bessel::{jv, DEFAULT_MAX_TERMS};
use super::gamma::recip_gamma;
use crate::bicomplex::{cpow, Bicomplex, Hyperbolic};
use crate::error::{Error, Result};
use crate::hankel::quadrature::{integrate_semi_infinite, tanh_sinh, QuadratureConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "form")]
pub enum IntegralForm {
    /// `J_V = 1/Γ(V) Σ (−1)^s/(s!)² (Z/2)^{V+2s} ∫_0^1 t^s (1−t)^{V−1} dt`.
    Beta,
    /// `J_V = Z^V/(2^{V−1}√π Γ(V+½)) Σ (−1)^s/Γ(2s+1) ∫_0^{π/2} cos^{2V}t (Z sin t)^{2s} dt`.
    Cosine,
    /// `J_{V+δ} = (Z/2)^{V+δ}/(Γ(V)Γ(δ)) Σ Z^{2s}/(4^s (s!)²) ∫∫ u^{V−1}(1−u)^{δ+s} v^{δ−1}(v−1)^s du dv`.
    Double { delta: Bicomplex },
    /// `J_V = 2^V/√π Σ (−1)^s Z^{V+2s}/(s! Γ(2V+2s+1)) ∫_0^∞ e^{−t} t^{V+s−½} dt`.
    GammaContour,
}

const OUTER_TOL: f64 = 1e-15;

fn cexp_pow(base: f64, nu: Complex64) -> Complex64 {
    // base^ν for base > 0, written to stay finite at tiny bases
    (nu * base.ln()).exp()
}

/// Sums `term(s)` with the stopping rule of the power series.
fn outer_series(z: Complex64, mut term: impl FnMut(usize) -> Result<Complex64>) -> Result<Complex64> {
    let floor = 15usize.max(z.norm().ceil() as usize);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut small = 0;
    for s in 0..DEFAULT_MAX_TERMS {
        let t = term(s)?;
        sum += t;
        if t.norm() < OUTER_TOL * (1.0 + sum.norm()) {
            small += 1;
        } else {
            small = 0;
        }
        if small >= 3 && s + 1 >= floor {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence("integral-representation series did not converge".into()))
}

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg.into()))
    }
}

fn inner_tol(q: &QuadratureConfig) -> (f64, f64) {
    (q.abs_tol * 1e-2, q.rel_tol * 1e-2)
}

fn beta_component(nu: Complex64, z: Complex64, q: &QuadratureConfig) -> Result<Complex64> {
    require(nu.re > 0.0, format!("beta form needs Re ν > 0 in every component, got {nu}"))?;
    let (at, rt) = inner_tol(q);
    let half = z * 0.5;
    let pre = recip_gamma(nu);
    let mut fact = 1.0;
    outer_series(z, |s| {
        if s > 0 {
            fact *= s as f64;
        }
        let integral = tanh_sinh(
            |_, dl, dr| Ok(cexp_pow(dl, Complex64::new(s as f64, 0.0)) * cexp_pow(dr, nu - 1.0)),
            0.0,
            1.0,
            at,
            rt,
        )?
        .value;
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        Ok(pre * sign / (fact * fact) * cpow(half, nu + 2.0 * s as f64)? * integral)
    })
}

fn cosine_component(nu: Complex64, z: Complex64, q: &QuadratureConfig) -> Result<Complex64> {
    require(nu.re > -0.5, format!("cosine form needs Re ν > −1/2 in every component, got {nu}"))?;
    let (at, rt) = inner_tol(q);
    let pre = cpow(z, nu)? * recip_gamma(nu + 0.5) / (cexp_pow(2.0, nu - 1.0) * PI.sqrt());
    outer_series(z, |s| {
        let integral = tanh_sinh(
            |t, _, dr| {
                let cos_t = dr.sin();
                let sz = (z * t.sin()).powi(2 * s as i32);
                Ok(cexp_pow(cos_t, 2.0 * nu) * sz)
            },
            0.0,
            FRAC_PI_2,
            at,
            rt,
        )?
        .value;
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        Ok(pre * sign * recip_gamma(Complex64::new(2.0 * s as f64 + 1.0, 0.0)) * integral)
    })
}

fn double_component(nu: Complex64, delta: Complex64, z: Complex64, q: &QuadratureConfig) -> Result<Complex64> {
    require(nu.re > 0.0, format!("double form needs Re ν > 0 in every component, got {nu}"))?;
    require(delta.re > 0.0, format!("double form needs Re δ > 0 in every component, got {delta}"))?;
    let (at, rt) = inner_tol(q);
    let pre = cpow(z * 0.5, nu + delta)? * recip_gamma(nu) * recip_gamma(delta);
    let z2 = z * z;
    let mut fact = 1.0;
    outer_series(z, |s| {
        if s > 0 {
            fact *= s as f64;
        }
        let sc = Complex64::new(s as f64, 0.0);
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        // iterated tensor quadrature: outer in v, inner in u
        let integral = tanh_sinh(
            |_, vl, vr| {
                let inner =
                    tanh_sinh(|_, ul, ur| Ok(cexp_pow(ul, nu - 1.0) * cexp_pow(ur, delta + sc)), 0.0, 1.0, at, rt)?
                        .value;
                // (v − 1)^s = (−1)^s (1 − v)^s
                Ok(inner * cexp_pow(vl, delta - 1.0) * cexp_pow(vr, sc) * sign)
            },
            0.0,
            1.0,
            at,
            rt,
        )?
        .value;
        Ok(pre * z2.powi(s as i32) / (4f64.powi(s as i32) * fact * fact) * integral)
    })
}

fn gamma_contour_component(nu: Complex64, z: Complex64, q: &QuadratureConfig) -> Result<Complex64> {
    require(nu.re > -0.5, format!("gamma-contour form needs Re ν > −1/2 in every component, got {nu}"))?;
    let cfg = QuadratureConfig { panel_length: Some(1.0), ..*q };
    // 2^ν is taken per component, as in the derivation.
    let pre = cexp_pow(2.0, nu) / PI.sqrt();
    let mut fact = 1.0;
    outer_series(z, |s| {
        if s > 0 {
            fact *= s as f64;
        }
        let p = nu + s as f64 - 0.5;
        let integral = integrate_semi_infinite(
            |t| Ok(if t == 0.0 { Complex64::new(0.0, 0.0) } else { (-t).exp() * cexp_pow(t, p) }),
            None,
            &cfg,
        )?
        .value;
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        Ok(pre * sign * cpow(z, nu + 2.0 * s as f64)? * recip_gamma(2.0 * nu + 2.0 * s as f64 + 1.0) / fact * integral)
    })
}

/// Value of the chosen integral representation. For [`IntegralForm::Double`]
/// this is `J_{V+δ}(Z)`.
pub fn integral_representation(
    form: IntegralForm,
    v: &Bicomplex,
    z: &Bicomplex,
    q: &QuadratureConfig,
) -> Result<Bicomplex> {
    q.validate()?;
    let comp = |l: usize| -> Result<Complex64> {
        let (nu, zl) = (v.component(l), z.component(l));
        match form {
            IntegralForm::Beta => beta_component(nu, zl, q),
            IntegralForm::Cosine => cosine_component(nu, zl, q),
            IntegralForm::Double { delta } => double_component(nu, delta.component(l), zl, q),
            IntegralForm::GammaContour => gamma_contour_component(nu, zl, q),
        }
    };
    Ok(Bicomplex::new(comp(0)?, comp(1)?))
}

/// `|integral form − J|_h`, with `J` from the power series.
pub fn integral_representation_check(
    form: IntegralForm,
    v: &Bicomplex,
    z: &Bicomplex,
    q: &QuadratureConfig,
) -> Result<Hyperbolic> {
    let value = integral_representation(form, v, z, q)?;
    let order = match form {
        IntegralForm::Double { delta } => *v + delta,
        _ => *v,
    };
    Ok((value - jv(&order, z)?).hyperbolic_norm())
}
