//! The large-|Z| expansion for hyperbolic-positive arguments `Z = |Z|_h`,
//! evaluated term by term together with its remainder estimate.
//!
//! The expansion is reproduced as stated; it is not expected to agree with
//! [`super::bessel_j`] numerically.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::bessel::SeriesResult;
use super::gamma::{complex_gamma, pochhammer, recip_gamma};
use crate::bicomplex::{Bicomplex, Hyperbolic};
use crate::error::{Error, Result};
use crate::hankel::quadrature::{integrate_from, QuadratureConfig};

pub const MAX_TERMS: usize = 8;

fn check_x(x: &Hyperbolic) -> Result<()> {
    if !(x.e1 > 0.0 && x.e2 > 0.0) {
        return Err(Error::Domain(format!("argument must be positive hyperbolic, got {x}")));
    }
    Ok(())
}

fn prefactor_component(nu: Complex64, x: f64) -> Result<Complex64> {
    let e = (Complex64::new(x, -x)).exp();
    let two_nu = (nu * 2f64.ln()).exp();
    let g = complex_gamma(2.0 * nu + 1.0)?;
    let h = recip_gamma(nu + 0.5);
    Ok(e / (two_nu * x.sqrt()) * recip_gamma(nu + 1.0) * g * h * h)
}

/// `exp((1−i)x) / (2^V x^{½} Γ_b(V+1)) · Γ_b(2V+1) / Γ_b(V+½)²`.
pub fn asymptotic_prefactor(v: &Bicomplex, x: &Hyperbolic) -> Result<Bicomplex> {
    check_x(x)?;
    Ok(Bicomplex::new(prefactor_component(v.e1, x.e1)?, prefactor_component(v.e2, x.e2)?))
}

/// `(½−ν)_k Γ(ν+k+½) / (k! x^k)`.
fn bracket_term(nu: Complex64, x: f64, k: usize) -> Result<Complex64> {
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    Ok(pochhammer(0.5 - nu, k as u32) * complex_gamma(nu + k as f64 + 0.5)? / (fact * x.powi(k as i32)))
}

/// The expansion truncated after `n_terms` terms; the tail estimate is the
/// magnitude of the first omitted term.
pub fn asymptotic_j(v: &Bicomplex, x: &Hyperbolic, n_terms: usize) -> Result<SeriesResult> {
    check_x(x)?;
    if n_terms == 0 || n_terms > MAX_TERMS {
        return Err(Error::Precondition(format!("n_terms must be in 1..={MAX_TERMS}, got {n_terms}")));
    }
    let pre = asymptotic_prefactor(v, x)?;
    let comp = |nu: Complex64, xl: f64, p: Complex64| -> Result<(Complex64, f64)> {
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..n_terms {
            sum += bracket_term(nu, xl, k)?;
        }
        let omitted = bracket_term(nu, xl, n_terms)?;
        Ok((p * sum, (p * omitted).norm()))
    };
    let (a, ta) = comp(v.e1, x.e1, pre.e1)?;
    let (b, tb) = comp(v.e2, x.e2, pre.e2)?;
    Ok(SeriesResult { value: Bicomplex::new(a, b), terms_used: n_terms, tail_estimate: Hyperbolic::new(ta, tb) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemainderCheck {
    /// `|R_n|_h` computed from the defining integral.
    pub remainder: Hyperbolic,
    /// `|(½−V)_n Γ_b(V+n+½) / (n! x^n)|_h`.
    pub bound: Hyperbolic,
}

impl RemainderCheck {
    pub fn holds(&self) -> bool {
        self.remainder.lt_h(&self.bound)
    }
}

/// `∫_0^∞ s^{ν−½} (1 − s/x)^{ν−½} e^{−s} ds` with the principal branch for `s > x`.
fn bracket_integral(nu: Complex64, x: f64) -> Result<Complex64> {
    let a = nu - 0.5;
    let cfg = QuadratureConfig { abs_tol: 1e-15, rel_tol: 1e-14, ..QuadratureConfig::default() };
    let near = integrate_from(
        |s: f64| {
            if s <= 0.0 || s >= x {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok((a * (s * (1.0 - s / x)).ln()).exp() * (-s).exp())
        },
        0.0,
        Some(x),
        1.0,
        &cfg,
    )?;
    let phase = (Complex64::new(0.0, PI) * a).exp();
    let far = integrate_from(
        |s: f64| {
            if s <= x {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok((a * (s * (s / x - 1.0)).ln()).exp() * (-s).exp() * phase)
        },
        x,
        None,
        1.0,
        &cfg,
    )?;
    Ok(near.value + far.value)
}

/// Evaluates `R_n = ∫ s^{V−½}(1−s/x)^{V−½} e^{−s} ds − Σ_{k<n} (½−V)_k Γ_b(V+k+½)/(k! x^k)`
/// and the bound it is claimed to satisfy when `Re ν_l > n + ½`.
pub fn asymptotic_remainder(v: &Bicomplex, x: &Hyperbolic, n: usize) -> Result<RemainderCheck> {
    check_x(x)?;
    let comp = |nu: Complex64, xl: f64| -> Result<(f64, f64)> {
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..n {
            sum += bracket_term(nu, xl, k)?;
        }
        let r = bracket_integral(nu, xl)? - sum;
        Ok((r.norm(), bracket_term(nu, xl, n)?.norm()))
    };
    let (r1, b1) = comp(v.e1, x.e1)?;
    let (r2, b2) = comp(v.e2, x.e2)?;
    Ok(RemainderCheck { remainder: Hyperbolic::new(r1, r2), bound: Hyperbolic::new(b1, b2) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_constant() {
        let x = 30.0;
        let r = asymptotic_j(&Bicomplex::ZERO, &Hyperbolic::splat(x), 1).unwrap();
        let expected = Complex64::new(x, -x).exp() / (x * PI).sqrt();
        assert!((r.value.e1 - expected).norm() < 1e-14 * expected.norm());
        let p = asymptotic_prefactor(&Bicomplex::ZERO, &Hyperbolic::splat(x)).unwrap();
        let c = p.e1 * x.sqrt() / Complex64::new(x, -x).exp();
        assert!((c - 1.0 / PI).norm() < 1e-15);
    }

    #[test]
    fn remainder_bound_under_hypothesis() {
        for (v, n) in [(Bicomplex::from_reals(3.0, 3.5), 2), (Bicomplex::from_reals(5.0, 6.0), 4)] {
            for x in [20.0, 50.0] {
                let r = asymptotic_remainder(&v, &Hyperbolic::splat(x), n).unwrap();
                assert!(r.holds(), "{v} n={n} x={x}: {r:?}");
            }
        }
        // values cross-checked against an independent 30-digit evaluation
        let r = asymptotic_remainder(&Bicomplex::from_real(3.0), &Hyperbolic::splat(20.0), 2).unwrap();
        assert!((r.remainder.e1 - 0.233_591).abs() < 1e-6);
        assert!((r.bound.e1 - 0.245_357).abs() < 1e-6);
    }

    #[test]
    fn term_ratio_below_one() {
        let x = 50.0;
        let nu = Complex64::new(2.3, 0.4);
        for k in 0..6 {
            let a = bracket_term(nu, x, k).unwrap().norm();
            let b = bracket_term(nu, x, k + 1).unwrap().norm();
            assert!(b < a);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(asymptotic_j(&Bicomplex::ZERO, &Hyperbolic::new(1.0, -1.0), 2), Err(Error::Domain(_))));
        assert!(matches!(asymptotic_j(&Bicomplex::ZERO, &Hyperbolic::splat(10.0), 9), Err(Error::Precondition(_))));
    }
}
