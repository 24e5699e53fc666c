//! Recurrences, differential relations, the Bessel differential equation, the
//! generating function and holomorphy checks for `J_V(Z)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::bessel::jv;
use crate::bicomplex::{Bicomplex, Hyperbolic};
use crate::error::{Error, Result};

/// Absolute residual of an identity together with the magnitude of the
/// largest term that entered it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub absolute: Hyperbolic,
    pub scale: Hyperbolic,
}

impl Residual {
    fn from_terms(lhs: Bicomplex, rhs: Bicomplex, terms: &[Bicomplex]) -> Residual {
        let scale = terms.iter().fold(Hyperbolic::ZERO, |acc, t| acc.sup(&t.hyperbolic_norm()));
        Residual { absolute: (lhs - rhs).hyperbolic_norm(), scale }
    }

    /// `absolute / (1 + scale)` componentwise.
    pub fn scaled(&self) -> Hyperbolic {
        self.absolute.zip(&self.scale, |a, s| a / (1.0 + s))
    }
}

fn shift(v: &Bicomplex, k: f64) -> Bicomplex {
    *v + k
}

fn require_invertible(z: &Bicomplex) -> Result<()> {
    if z.is_singular() {
        return Err(Error::ZeroDivisor(format!("{z} lies in O_2 ∪ {{0}}")));
    }
    Ok(())
}

/// Residuals of the three recurrences
///
/// * `Z J_V = 2(V+1) J_{V+1} − Z J_{V+2}`
/// * `Z² J_V = 4(V+1)(V+2) J_{V+2} − 4Z(V+2) J_{V+3} + Z² J_{V+4}`
/// * `J_{V+M} + J_{V+M̄} = J_{V+m} + J_{V+n}` with `M = m e1 + n e2`.
pub fn recurrence_residuals(v: &Bicomplex, z: &Bicomplex, m: u32, n: u32) -> Result<[Residual; 3]> {
    let j: Vec<Bicomplex> = (0..5).map(|k| jv(&shift(v, k as f64), z)).collect::<Result<_>>()?;
    let z2 = *z * *z;

    let a = *z * j[0];
    let b = 2.0 * (*v + 1.0) * j[1];
    let c = *z * j[2];
    let r1 = Residual::from_terms(a, b - c, &[a, b, c]);

    let a = z2 * j[0];
    let b = 4.0 * (*v + 1.0) * (*v + 2.0) * j[2];
    let c = 4.0 * *z * (*v + 2.0) * j[3];
    let d = z2 * j[4];
    let r2 = Residual::from_terms(a, b - c + d, &[a, b, c, d]);

    let (mf, nf) = (m as f64, n as f64);
    let big_m = Bicomplex::from_reals(mf, nf);
    let big_m_bar = Bicomplex::from_reals(nf, mf);
    let a = jv(&(*v + big_m), z)?;
    let b = jv(&(*v + big_m_bar), z)?;
    let c = jv(&shift(v, mf), z)?;
    let d = jv(&shift(v, nf), z)?;
    let r3 = Residual::from_terms(a + b, c + d, &[a, b, c, d]);
    Ok([r1, r2, r3])
}

/// `J'_V(Z) = J_{V−1}(Z) − (V/Z) J_V(Z)`.
pub fn bessel_j_derivative(v: &Bicomplex, z: &Bicomplex) -> Result<Bicomplex> {
    require_invertible(z)?;
    let lower = jv(&shift(v, -1.0), z)?;
    let j = jv(v, z)?;
    Ok(lower - v.div(z)? * j)
}

/// Difference between the two differential relations
/// `J'_V = J_{V−1} − (V/Z)J_V` and `J'_V = (V/Z)J_V − J_{V+1}`.
pub fn derivative_residual(v: &Bicomplex, z: &Bicomplex) -> Result<Residual> {
    require_invertible(z)?;
    let lower = jv(&shift(v, -1.0), z)?;
    let upper = jv(&shift(v, 1.0), z)?;
    let vj = v.div(z)? * jv(v, z)?;
    Ok(Residual::from_terms(lower - vj, vj - upper, &[lower, upper, vj]))
}

/// Second derivative obtained by differentiating the first relation once more.
pub fn bessel_j_second_derivative(v: &Bicomplex, z: &Bicomplex) -> Result<Bicomplex> {
    require_invertible(z)?;
    let vm1 = shift(v, -1.0);
    let d_lower = bessel_j_derivative(&vm1, z)?;
    let d = bessel_j_derivative(v, z)?;
    let j = jv(v, z)?;
    let zi = z.recip()?;
    Ok(d_lower - *v * zi * d + *v * zi * zi * j)
}

/// `Z² J'' + Z J' + (Z² − V²) J`.
pub fn ode_residual(v: &Bicomplex, z: &Bicomplex) -> Result<Residual> {
    let j = jv(v, z)?;
    let d = bessel_j_derivative(v, z)?;
    let dd = bessel_j_second_derivative(v, z)?;
    let z2 = *z * *z;
    let a = z2 * dd;
    let b = *z * d;
    let c = z2 * j;
    let e = *v * *v * j;
    Ok(Residual::from_terms(a + b + c, e, &[a, b, c, e]))
}

/// `G(Z, W) = exp(Z/2 · (W − 1/W))`.
pub fn generating_function(z: &Bicomplex, w: &Bicomplex) -> Result<Bicomplex> {
    let wi = w.recip()?;
    Ok((*z * 0.5 * (*w - wi)).exp())
}

/// `Σ_{n=−N}^{N} J_n(Z) Wⁿ`.
pub fn generating_truncation(z: &Bicomplex, w: &Bicomplex, n_max: u32) -> Result<Bicomplex> {
    require_invertible(w)?;
    let mut sum = Bicomplex::ZERO;
    for n in -(n_max as i32)..=(n_max as i32) {
        sum += jv(&Bicomplex::from_real(n as f64), z)? * w.powi(n);
    }
    Ok(sum)
}

/// `(1/2πi) ∮ W^{−n−1} G(Z, W) dW` over the unit circle, by the trapezoid rule.
pub fn laurent_coefficient(n: i32, z: &Bicomplex, contour_samples: usize) -> Result<Bicomplex> {
    if contour_samples < 64 {
        return Err(Error::Precondition(format!("contour_samples must be at least 64, got {contour_samples}")));
    }
    let m = contour_samples as f64;
    let mut sum = Bicomplex::ZERO;
    for k in 0..contour_samples {
        let theta = 2.0 * PI * k as f64 / m;
        let w = Complex64::from_polar(1.0, theta);
        let g = generating_function(z, &Bicomplex::from_complex(w))?;
        sum += g * Complex64::from_polar(1.0, -(n as f64) * theta);
    }
    Ok(sum.scale(1.0 / m))
}

/// Central difference of `f` at `x` in the two real directions of the
/// canonical coordinates `(λ1, λ2)` of `x`.
fn canonical_gradient(
    x: &Bicomplex,
    h: f64,
    f: impl Fn(&Bicomplex) -> Result<Bicomplex>,
) -> Result<[(Complex64, Complex64); 2]> {
    let (l1, l2) = x.to_canonical();
    let hc = Complex64::new(h, 0.0);
    let diff = |p: Bicomplex, m: Bicomplex| -> Result<(Complex64, Complex64)> {
        let d = (f(&p)? - f(&m)?).scale(1.0 / (2.0 * h));
        Ok(d.to_canonical())
    };
    let d1 = diff(Bicomplex::from_canonical(l1 + hc, l2), Bicomplex::from_canonical(l1 - hc, l2))?;
    let d2 = diff(Bicomplex::from_canonical(l1, l2 + hc), Bicomplex::from_canonical(l1, l2 - hc))?;
    Ok([d1, d2])
}

fn cauchy_riemann(grad: [(Complex64, Complex64); 2]) -> [f64; 2] {
    let [(g1_a1, g2_a1), (g1_a2, g2_a2)] = grad;
    [(g1_a1 - g2_a2).norm(), (g1_a2 + g2_a1).norm()]
}

/// Cauchy–Riemann residuals of `V ↦ J_V(Z)` with `V = α1 + jα2` and
/// `J = g1 + j g2`: `|∂g1/∂α1 − ∂g2/∂α2|` and `|∂g1/∂α2 + ∂g2/∂α1|`.
pub fn holomorphy_residual(v: &Bicomplex, z: &Bicomplex, h: f64) -> Result<[f64; 2]> {
    if z.is_singular() {
        return Err(Error::Domain(format!("{z} lies in O_2 ∪ {{0}}")));
    }
    Ok(cauchy_riemann(canonical_gradient(v, h, |vv| jv(vv, z))?))
}

/// Cauchy–Riemann residuals of `Z ↦ J_V(Z)` in the canonical coordinates of `Z`.
pub fn holomorphy_residual_argument(v: &Bicomplex, z: &Bicomplex, h: f64) -> Result<[f64; 2]> {
    if z.is_singular() {
        return Err(Error::Domain(format!("{z} lies in O_2 ∪ {{0}}")));
    }
    Ok(cauchy_riemann(canonical_gradient(z, h, |zz| jv(v, zz))?))
}
