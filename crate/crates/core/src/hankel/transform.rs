//! Forward and inverse n-dimensional bicomplex Hankel transforms.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::function::SampledFunction;
use super::quadrature::{integrate_from, Integral, QuadratureConfig};
use crate::bicomplex::{Bicomplex, Hyperbolic};
use crate::error::{Error, Result};
use crate::specfun::bessel::bessel_j_auto;

pub const MAX_DIM: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct TransformConfig {
    #[serde(flatten)]
    pub quadrature: QuadratureConfig,
    /// Half-width `ϱ` of the strip `|Im z_l| < ϱ`; `None` only excludes `(−∞, 0]`.
    pub strip_rho: Option<f64>,
}

impl From<QuadratureConfig> for TransformConfig {
    fn from(quadrature: QuadratureConfig) -> Self {
        TransformConfig { quadrature, strip_rho: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransformResult {
    pub value: Bicomplex,
    pub panels_used: usize,
    pub error_estimate: Hyperbolic,
}

impl From<Integral<Bicomplex>> for TransformResult {
    fn from(i: Integral<Bicomplex>) -> Self {
        TransformResult { value: i.value, panels_used: i.panels_used, error_estimate: i.error_estimate }
    }
}

/// `√x J_ν(x)`, the one-dimensional transform kernel for one component.
pub fn kernel(nu: Complex64, x: Complex64) -> Result<Complex64> {
    let c = FRAC_2_PI.sqrt();
    if nu == Complex64::new(-0.5, 0.0) {
        return Ok(x.cos() * c);
    }
    if nu == Complex64::new(0.5, 0.0) {
        return Ok(x.sin() * c);
    }
    if x == Complex64::new(0.0, 0.0) {
        let p = nu.re + 0.5;
        return if p > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::Domain(format!("kernel of order {nu} is singular at 0")))
        };
    }
    Ok(x.sqrt() * bessel_j_auto(nu, x)?)
}

/// Componentwise kernel `√(ωZ) J_V(ωZ)`.
pub fn bicomplex_kernel(v: &Bicomplex, w: f64, z: &Bicomplex) -> Result<Bicomplex> {
    Ok(Bicomplex::new(kernel(v.e1, z.e1 * w)?, kernel(v.e2, z.e2 * w)?))
}

/// Membership in the strip: no component on `(−∞, 0]` and `|Im z_l| < ϱ`.
pub fn check_strip(z: &Bicomplex, rho: Option<f64>) -> Result<()> {
    for (l, c) in [z.e1, z.e2].into_iter().enumerate() {
        if c.im == 0.0 && c.re <= 0.0 {
            return Err(Error::Strip(format!("component e{} = {c} lies on (−∞, 0]", l + 1)));
        }
        if !c.is_finite() {
            return Err(Error::Strip(format!("component e{} = {c} is not finite", l + 1)));
        }
        if let Some(r) = rho {
            if c.im.abs() >= r {
                return Err(Error::Strip(format!("component e{} = {c} has |Im| ≥ ϱ = {r}", l + 1)));
            }
        }
    }
    Ok(())
}

/// `L = π / max(1, |Re z_l|)` over both components.
pub fn panel_length(z: &Bicomplex) -> f64 {
    PI / 1f64.max(z.e1.re.abs()).max(z.e2.re.abs())
}

fn nested(
    v: &Bicomplex,
    f: &SampledFunction,
    args: &[Bicomplex],
    prefix: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Integral<Bicomplex>> {
    let level = prefix.len();
    let z = args[level];
    let l = cfg.panel_length.unwrap_or_else(|| panel_length(&z));
    let last = level + 1 == args.len();
    let mut inner_err = Hyperbolic::ZERO;
    let mut inner_panels = 0usize;
    let mut coords = prefix.to_vec();
    coords.push(0.0);
    let r = integrate_from(
        |w| {
            let k = bicomplex_kernel(v, w, &z)?;
            if k.is_zero() {
                return Ok(Bicomplex::ZERO);
            }
            coords[level] = w;
            let inner = if last {
                f.eval(&coords)?
            } else {
                let i = nested(v, f, args, &coords[..=level], cfg)?;
                inner_err = inner_err.sup(&(i.error_estimate.zip(&k.hyperbolic_norm(), |a, b| a * b)));
                inner_panels = inner_panels.max(i.panels_used);
                i.value
            };
            Ok(k * inner)
        },
        0.0,
        f.support_of(level),
        l,
        cfg,
    )?;
    Ok(Integral {
        value: r.value,
        panels_used: r.panels_used + inner_panels,
        error_estimate: r.error_estimate + inner_err * f.support_of(level).unwrap_or(r.panels_used as f64 * l),
    })
}

fn check_dims(f: &SampledFunction, n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::Precondition(format!("transforms are supported for 1 ≤ n ≤ {MAX_DIM}, got {n}")));
    }
    if f.dim() != n {
        return Err(Error::Precondition(format!("function has {} coordinates but {n} points were given", f.dim())));
    }
    Ok(())
}

/// `η(Z) = ∫…∫ f(ω) Π_k √(ω_k Z_k) J_V(ω_k Z_k) dω` at one point `Z = (Z_1, …, Z_n)`.
pub fn hankel_forward(
    v: &Bicomplex,
    f: &SampledFunction,
    z: &[Bicomplex],
    cfg: &TransformConfig,
) -> Result<TransformResult> {
    check_dims(f, z.len())?;
    for zk in z {
        check_strip(zk, cfg.strip_rho)?;
    }
    Ok(nested(v, f, z, &[], &cfg.quadrature)?.into())
}

/// [`hankel_forward`] at many points, evaluated in parallel; results keep the input order.
pub fn hankel_forward_many(
    v: &Bicomplex,
    f: &SampledFunction,
    points: &[Vec<Bicomplex>],
    cfg: &TransformConfig,
) -> Vec<Result<TransformResult>> {
    points.par_iter().map(|z| hankel_forward(v, f, z, cfg)).collect()
}

/// Inverse transform at a real point `ω` with nonnegative coordinates; the
/// kernel is the same as for the forward transform.
pub fn hankel_inverse(
    v: &Bicomplex,
    eta: &SampledFunction,
    omega: &[f64],
    cfg: &TransformConfig,
) -> Result<TransformResult> {
    check_dims(eta, omega.len())?;
    if let Some(w) = omega.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
        return Err(Error::Domain(format!("inverse transform is evaluated at ω ≥ 0, got {w}")));
    }
    let args: Vec<Bicomplex> = omega.iter().map(|&w| Bicomplex::from_real(w)).collect();
    Ok(nested(v, eta, &args, &[], &cfg.quadrature)?.into())
}

/// Parallel [`hankel_inverse`] preserving input order.
pub fn hankel_inverse_many(
    v: &Bicomplex,
    eta: &SampledFunction,
    points: &[Vec<f64>],
    cfg: &TransformConfig,
) -> Vec<Result<TransformResult>> {
    points.par_iter().map(|w| hankel_inverse(v, eta, w, cfg)).collect()
}

/// The transform `H_V f` as a function on `(0, ∞)^n`, evaluated on demand.
pub fn transformed(v: &Bicomplex, f: &SampledFunction, cfg: &TransformConfig) -> SampledFunction {
    let (v, f, cfg) = (*v, f.clone(), *cfg);
    let n = f.dim();
    SampledFunction::multivariate(n, move |z: &[f64]| {
        let pts: Vec<Bicomplex> = z.iter().map(|&x| Bicomplex::from_real(x)).collect();
        Ok(hankel_forward(&v, &f, &pts, &cfg)?.value)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hankel::function::builtin;

    #[test]
    fn kernel_fast_paths_match_series() {
        for x in [0.3, 2.0, 7.5] {
            let x = Complex64::new(x, 0.1);
            let a = kernel(Complex64::new(-0.5, 0.0), x).unwrap();
            let b = x.sqrt() * bessel_j_auto(Complex64::new(-0.5, 0.0), x).unwrap();
            assert!((a - b).norm() < 1e-13);
            let a = kernel(Complex64::new(0.5, 0.0), x).unwrap();
            let b = x.sqrt() * bessel_j_auto(Complex64::new(0.5, 0.0), x).unwrap();
            assert!((a - b).norm() < 1e-13);
        }
        assert!(kernel(Complex64::new(-0.7, 0.0), Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn indicator_closed_form() {
        let v = Bicomplex::from_real(-0.5);
        let f = builtin("indicator", &v).unwrap();
        let z = Bicomplex::new(Complex64::new(2.0, 0.3), Complex64::new(0.7, -0.2));
        let r = hankel_forward(&v, &f, &[z], &TransformConfig::default()).unwrap();
        let exact = z.map(|c| c.sin() / c * FRAC_2_PI.sqrt());
        assert!((r.value - exact).hyperbolic_norm().max_component() < 1e-12, "{r:?}");
    }

    #[test]
    fn strip_rejections() {
        let v = Bicomplex::from_real(-0.5);
        let f = builtin("indicator", &v).unwrap();
        let cfg = TransformConfig { strip_rho: Some(0.5), ..Default::default() };
        for z in [
            Bicomplex::from_reals(1.0, -1.0),
            Bicomplex::from_reals(0.0, 1.0),
            Bicomplex::new(Complex64::new(1.0, 0.6), Complex64::new(1.0, 0.0)),
        ] {
            assert!(matches!(hankel_forward(&v, &f, &[z], &cfg), Err(Error::Strip(_))));
        }
    }

    #[test]
    fn dimension_mismatch() {
        let v = Bicomplex::ZERO;
        let f = builtin("indicator", &v).unwrap();
        let z = Bicomplex::ONE;
        assert!(matches!(hankel_forward(&v, &f, &[z, z], &TransformConfig::default()), Err(Error::Precondition(_))));
    }
}
