//! Bicomplex generalized coherent states built on the bicomplex Bessel function.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bicomplex::{Bicomplex, Hyperbolic};
use crate::error::{Error, Result};
use crate::hankel::quadrature::{integrate_semi_infinite, QuadratureConfig};
use crate::specfun::bessel::jv;
use crate::specfun::bessel_k::bessel_k_scaled;
use crate::specfun::gamma::{bicomplex_gamma, ln_gamma_real};

/// `ρ(n)` is formed by the recurrence up to this `n` and from logarithms beyond.
pub const LOG_SPACE_ABOVE: usize = 120;
pub const DEFAULT_TRUNCATION: usize = 200;
/// Largest admissible relative tail `Σ_{n>N} |Z|^{2n}/ρ(n) / N_V(|Z|²)`.
pub const TAIL_TOLERANCE: f64 = 1e-14;
const SERIES_MAX_TERMS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherentParams {
    pub order: Hyperbolic,
    pub z: Bicomplex,
    pub truncation: usize,
}

impl CoherentParams {
    pub fn new(order: Hyperbolic, z: Bicomplex, truncation: usize) -> Self {
        CoherentParams { order, z, truncation }
    }

    pub fn validate(&self) -> Result<()> {
        check_order(&self.order)?;
        if self.truncation < 1 {
            return Err(Error::Precondition("truncation N must be at least 1".into()));
        }
        if !self.z.is_finite() {
            return Err(Error::Domain(format!("label Z = {} is not finite", self.z)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncatedFockState {
    /// Normalized amplitudes `Z^n / √(ρ(n) N_V(|Z|²))`, `n = 0..=N`.
    pub coefficients: Vec<Bicomplex>,
    /// `N_V(|Z|²)`.
    pub norm_used: Hyperbolic,
    /// Dropped weight `Σ_{n>N} |c_n|²` after normalization.
    pub tail: Hyperbolic,
}

fn check_order(v: &Hyperbolic) -> Result<()> {
    if !(v.e1 > -1.0 && v.e2 > -1.0 && v.e1.is_finite() && v.e2.is_finite()) {
        return Err(Error::Domain(format!("order V = {v} must have components > −1")));
    }
    Ok(())
}

fn components(h: &Hyperbolic) -> [f64; 2] {
    [h.e1, h.e2]
}

fn from_components(c: [f64; 2]) -> Hyperbolic {
    Hyperbolic::new(c[0], c[1])
}

fn ln_rho_component(n: usize, nu: f64) -> f64 {
    let n = n as f64;
    2.0 * n * LN_2 + ln_gamma_real(n + 1.0) + ln_gamma_real(nu + n + 1.0) - ln_gamma_real(nu + 1.0)
}

fn rho_component(n: usize, nu: f64) -> f64 {
    if n > LOG_SPACE_ABOVE {
        return ln_rho_component(n, nu).exp();
    }
    (0..n).fold(1.0, |r, k| r * 4.0 * (k as f64 + 1.0) * (nu + k as f64 + 1.0))
}

/// `ρ(n) = Π_{k<n} 4(k+1)(V+k+1)`, componentwise `4ⁿ n! Γ(ν+n+1)/Γ(ν+1)`.
pub fn rho(n: usize, v: &Hyperbolic) -> Result<Hyperbolic> {
    check_order(v)?;
    Ok(v.map(|nu| rho_component(n, nu)))
}

/// `ln ρ(n)`, finite where `ρ(n)` overflows.
pub fn ln_rho(n: usize, v: &Hyperbolic) -> Result<Hyperbolic> {
    check_order(v)?;
    Ok(v.map(|nu| ln_rho_component(n, nu)))
}

/// `f(r) = √(4(r+1)(V+r+1))`, the ladder coefficient.
pub fn ladder_coefficient(r: usize, v: &Hyperbolic) -> Hyperbolic {
    v.map(|nu| (4.0 * (r as f64 + 1.0) * (nu + r as f64 + 1.0)).sqrt())
}

/// `Σ_n yⁿ/ρ(n)` in one component for complex `y`.
fn normalization_component(y: Complex64, nu: f64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..SERIES_MAX_TERMS {
        term *= y / (4.0 * (n as f64 + 1.0) * (nu + n as f64 + 1.0));
        sum += term;
        let past_peak = (n as f64 + 1.0) * (nu + n as f64 + 1.0) * 4.0 > y.norm();
        if past_peak && term.norm() <= 1e-17 * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(format!("normalization series for y = {y} not converged")))
}

/// `N_V(W) = Σ Γ(V+1) Wⁿ / (4ⁿ n! Γ(V+n+1))` for a bicomplex argument.
pub fn normalization_series(w: &Bicomplex, v: &Hyperbolic) -> Result<Bicomplex> {
    check_order(v)?;
    Ok(Bicomplex::new(normalization_component(w.e1, v.e1)?, normalization_component(w.e2, v.e2)?))
}

/// `N_V(Y)` for `Y` in the positive cone.
pub fn normalization(y: &Hyperbolic, v: &Hyperbolic) -> Result<Hyperbolic> {
    if !(y.e1 >= 0.0 && y.e2 >= 0.0 && y.e1.is_finite() && y.e2.is_finite()) {
        return Err(Error::Domain(format!("normalization needs Y ≥ 0 componentwise, got {y}")));
    }
    let n = normalization_series(&y.to_bicomplex(), v)?;
    Ok(Hyperbolic::new(n.e1.re, n.e2.re))
}

/// `(−Y/4)^{−V/2} Γ_b(V+1) J_V(i√Y)`, principal branch `−Y/4 = (Y/4)e^{iπ}`.
pub fn normalization_bessel_form(y: &Hyperbolic, v: &Hyperbolic) -> Result<Hyperbolic> {
    check_order(v)?;
    if !(y.e1 > 0.0 && y.e2 > 0.0) {
        return Err(Error::Domain(format!("Bessel form needs Y > 0 componentwise, got {y}")));
    }
    let vb = v.to_bicomplex();
    let arg = Bicomplex::new(Complex64::new(0.0, y.e1.sqrt()), Complex64::new(0.0, y.e2.sqrt()));
    let j = jv(&vb, &arg)?;
    let g = bicomplex_gamma(&(vb + Bicomplex::ONE))?;
    let pre = |yl: f64, nu: f64| Complex64::from_polar((yl / 4.0).powf(-nu / 2.0), -PI * nu / 2.0);
    let out = Bicomplex::new(pre(y.e1, v.e1), pre(y.e2, v.e2)) * g * j;
    Ok(Hyperbolic::new(out.e1.re, out.e2.re))
}

/// Amplitudes `Zⁿ/√ρ(n)` for `n = 0..=N` through `c_{n+1} = c_n Z / f(n)`.
fn raw_amplitudes(z: &Bicomplex, v: &Hyperbolic, n: usize) -> Vec<Bicomplex> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = Bicomplex::ONE;
    for k in 0..=n {
        out.push(c);
        let f = ladder_coefficient(k, v);
        c = Bicomplex::new(c.e1 * z.e1 / f.e1, c.e2 * z.e2 / f.e2);
    }
    out
}

/// Ratio-test estimate of `Σ_{n>N} |Z|^{2n}/ρ(n)`; `∞` if the ratio at `N+1` is not below 1.
pub fn truncation_tail(z: &Bicomplex, v: &Hyperbolic, n: usize) -> Result<Hyperbolic> {
    check_order(v)?;
    let m = z.hyperbolic_norm();
    let out = [0, 1].map(|l| {
        let (zl, nu) = (components(&m)[l], components(v)[l]);
        let ln_first = 2.0 * (n as f64 + 1.0) * zl.ln() - ln_rho_component(n + 1, nu);
        if zl == 0.0 {
            return 0.0;
        }
        let ratio = zl * zl / (4.0 * (n as f64 + 2.0) * (nu + n as f64 + 2.0));
        if ratio >= 1.0 {
            f64::INFINITY
        } else {
            ln_first.exp() / (1.0 - ratio)
        }
    });
    Ok(from_components(out))
}

/// `|Z⟩` truncated at `N`, normalized by `N_V(|Z|²)`.
pub fn coherent_state(params: &CoherentParams) -> Result<TruncatedFockState> {
    params.validate()?;
    let (z, v, n) = (params.z, params.order, params.truncation);
    let m = z.hyperbolic_norm();
    let norm = normalization(&(m * m), &v)?;
    let tail = truncation_tail(&z, &v, n)?.zip(&norm, |t, nv| t / nv);
    if !(tail.e1 < TAIL_TOLERANCE && tail.e2 < TAIL_TOLERANCE) {
        return Err(Error::Truncation(format!(
            "N = {n} leaves a relative tail {tail} ≥ {TAIL_TOLERANCE} for Z = {z}; increase the truncation"
        )));
    }
    let s = Bicomplex::from_reals(norm.e1.sqrt().recip(), norm.e2.sqrt().recip());
    let coefficients = raw_amplitudes(&z, &v, n).into_iter().map(|c| c * s).collect();
    Ok(TruncatedFockState { coefficients, norm_used: norm, tail })
}

/// `Σ_n c_n(a)* c_n(b)` componentwise.
pub fn inner_product(a: &[Bicomplex], b: &[Bicomplex]) -> Bicomplex {
    a.iter().zip(b).fold(Bicomplex::ZERO, |acc, (x, y)| acc + x.star() * *y)
}

/// Componentwise Euclidean distance between two state vectors.
pub fn state_distance(a: &[Bicomplex], b: &[Bicomplex]) -> Hyperbolic {
    let mut s = Hyperbolic::ZERO;
    let len = a.len().max(b.len());
    for k in 0..len {
        let d = a.get(k).copied().unwrap_or(Bicomplex::ZERO) - b.get(k).copied().unwrap_or(Bicomplex::ZERO);
        let h = d.hyperbolic_norm();
        s = s + h * h;
    }
    s.map(f64::sqrt)
}

/// Closed form `⟨Z|Z′⟩ = N_V(Z* Z′) / √(N_V(|Z|²) N_V(|Z′|²))`.
pub fn overlap(z: &Bicomplex, zp: &Bicomplex, v: &Hyperbolic) -> Result<Bicomplex> {
    let (m, mp) = (z.hyperbolic_norm(), zp.hyperbolic_norm());
    let num = normalization_series(&(z.star() * *zp), v)?;
    let den = normalization(&(m * m), v)?.zip(&normalization(&(mp * mp), v)?, |a, b| (a * b).sqrt());
    Ok(Bicomplex::new(num.e1 / den.e1, num.e2 / den.e2))
}

/// `⟨Z|Z′⟩` from the truncated state vectors.
pub fn overlap_truncated(z: &Bicomplex, zp: &Bicomplex, v: &Hyperbolic, n: usize) -> Result<Bicomplex> {
    let a = coherent_state(&CoherentParams::new(*v, *z, n))?;
    let b = coherent_state(&CoherentParams::new(*v, *zp, n))?;
    Ok(inner_product(&a.coefficients, &b.coefficients))
}

pub type Matrix = Vec<Vec<Bicomplex>>;

/// Truncated lowering and raising operators on `span{|0⟩, …, |N⟩}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ladder {
    pub lower: Matrix,
    pub raise: Matrix,
}

/// `A₋ = Σ f(n)|n⟩⟨n+1|` and `A₊ = Σ f(n)|n+1⟩⟨n|`.
pub fn ladder_matrices(v: &Hyperbolic, n: usize) -> Result<Ladder> {
    check_order(v)?;
    let mut lower = vec![vec![Bicomplex::ZERO; n + 1]; n + 1];
    let mut raise = lower.clone();
    for r in 0..n {
        let f = ladder_coefficient(r, v).to_bicomplex();
        lower[r][r + 1] = f;
        raise[r + 1][r] = f;
    }
    Ok(Ladder { lower, raise })
}

pub fn mat_vec(m: &Matrix, x: &[Bicomplex]) -> Vec<Bicomplex> {
    m.iter().map(|row| row.iter().zip(x).fold(Bicomplex::ZERO, |a, (r, c)| a + *r * *c)).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).fold(Bicomplex::ZERO, |s, (x, br)| s + *x * br[j])).collect())
        .collect()
}

/// `[A₋, A₊] = A₋A₊ − A₊A₋`.
pub fn commutator(l: &Ladder) -> Matrix {
    let (ab, ba) = (mat_mul(&l.lower, &l.raise), mat_mul(&l.raise, &l.lower));
    ab.iter().zip(&ba).map(|(x, y)| x.iter().zip(y).map(|(p, q)| *p - *q).collect()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenCheck {
    /// `‖A₋|Z⟩ − Z|Z⟩‖` componentwise.
    pub residual: Hyperbolic,
    /// `|Z| ((Σ_{n≥N} |c_n|²)^{1/2} + 2ε√(N+1))`: the weight the truncation cuts
    /// from `A₋|Z⟩` plus a rounding allowance for the matrix-vector product.
    pub bound: Hyperbolic,
}

impl EigenCheck {
    pub fn holds(&self, factor: f64) -> bool {
        self.residual.leq_h(&(self.bound * factor))
    }
}

/// Residual of the eigenvalue equation `A₋|Z⟩ = Z|Z⟩` for the truncated state.
pub fn eigen_residual(params: &CoherentParams) -> Result<EigenCheck> {
    let state = coherent_state(params)?;
    let ladder = ladder_matrices(&params.order, params.truncation)?;
    let lowered = mat_vec(&ladder.lower, &state.coefficients);
    let scaled: Vec<Bicomplex> = state.coefficients.iter().map(|c| params.z * *c).collect();
    let residual = state_distance(&lowered, &scaled);
    let last = state.coefficients[params.truncation].hyperbolic_norm();
    let m = params.z.hyperbolic_norm();
    let rounding = 2.0 * f64::EPSILON * ((params.truncation + 1) as f64).sqrt();
    let bound = (last * last + state.tail).map(|t| t.sqrt() + rounding) * m;
    Ok(EigenCheck { residual, bound })
}

/// `ln K_ν(x)`, using the leading small-argument behaviour where `K_ν` overflows.
fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    let a = nu.abs();
    if x < 1e-30 {
        return Ok(if a == 0.0 {
            (-(x / 2.0).ln() - 0.577_215_664_901_532_9).ln()
        } else {
            ln_gamma_real(a) - LN_2 + a * (2.0 / x).ln()
        });
    }
    Ok(bessel_k_scaled(nu, x)?.ln() - x)
}

fn weight_component(y: f64, nu: f64) -> Result<f64> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("weight function needs y > 0, got {y}")));
    }
    Ok((ln_bessel_k(nu, y.sqrt())? + 0.5 * nu * (y / 4.0).ln() - LN_2 - ln_gamma_real(nu + 1.0)).exp())
}

/// `W_l(y) = (y/4)^{ν/2} K_ν(√y) / (2Γ(ν+1))`, the Meijer `G^{2,0}_{0,2}` weight in Bessel form.
pub fn weight_function(y: &Hyperbolic, v: &Hyperbolic) -> Result<Hyperbolic> {
    check_order(v)?;
    Ok(Hyperbolic::new(weight_component(y.e1, v.e1)?, weight_component(y.e2, v.e2)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentCheck {
    pub n: usize,
    pub nu: f64,
    pub numeric: f64,
    pub closed_form: f64,
    pub rel_err: f64,
}

pub const MAX_MOMENT: usize = 8;

/// `∫_0^∞ yⁿ W(y) dy` by quadrature (substituting `y = u²`) against `4ⁿ n! Γ(ν+n+1)/Γ(ν+1)`.
pub fn moment_check(n: usize, nu: f64, cfg: &QuadratureConfig) -> Result<MomentCheck> {
    if n > MAX_MOMENT {
        return Err(Error::Precondition(format!("moments are checked for n ≤ {MAX_MOMENT}, got {n}")));
    }
    check_order(&Hyperbolic::splat(nu))?;
    let closed_form = ln_rho_component(n, nu).exp();
    let p = 2.0 * n as f64 + 1.0 + nu;
    let c = -nu * LN_2 - ln_gamma_real(nu + 1.0);
    let cfg = QuadratureConfig { panel_length: Some(cfg.panel_length.unwrap_or(2.0)), ..*cfg };
    let r = integrate_semi_infinite(
        |u: f64| {
            if u == 0.0 {
                return Ok(0.0);
            }
            Ok((p * u.ln() + c + ln_bessel_k(nu, u)?).exp())
        },
        None,
        &cfg,
    )?;
    let numeric = r.value;
    Ok(MomentCheck { n, nu, numeric, closed_form, rel_err: (numeric - closed_form).abs() / closed_form })
}

/// [`moment_check`] over all pairs, in parallel, in row-major `(n, ν)` order.
pub fn moment_suite(ns: &[usize], nus: &[f64], cfg: &QuadratureConfig) -> Result<Vec<MomentCheck>> {
    let pairs: Vec<(usize, f64)> = ns.iter().flat_map(|&n| nus.iter().map(move |&nu| (n, nu))).collect();
    pairs.par_iter().map(|&(n, nu)| moment_check(n, nu, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        let v = Hyperbolic::new(0.0, 0.0);
        assert_eq!(rho(0, &v).unwrap(), Hyperbolic::new(1.0, 1.0));
        assert_eq!(rho(1, &v).unwrap(), Hyperbolic::new(4.0, 4.0));
        let v = Hyperbolic::new(0.5, 1.0);
        let r = rho(3, &v).unwrap();
        for (got, nu) in [(r.e1, 0.5), (r.e2, 1.0)] {
            let exact = ln_rho_component(3, nu).exp();
            assert!((got - exact).abs() <= 1e-14 * exact);
        }
        assert!(rho(0, &Hyperbolic::new(-1.0, 0.0)).is_err());
    }

    #[test]
    fn log_space_continues_recurrence() {
        let v = Hyperbolic::new(0.3, 2.0);
        let a = ln_rho(LOG_SPACE_ABOVE, &v).unwrap();
        let b = ln_rho(LOG_SPACE_ABOVE + 1, &v).unwrap();
        let f = ladder_coefficient(LOG_SPACE_ABOVE, &v);
        assert!((b.e1 - a.e1 - 2.0 * f.e1.ln()).abs() < 1e-10);
        assert!((b.e2 - a.e2 - 2.0 * f.e2.ln()).abs() < 1e-10);
        for n in 0..=50 {
            let r = rho(n, &v).unwrap();
            let l = ln_rho(n, &v).unwrap();
            assert!((r.e1.ln() - l.e1).abs() < 1e-12 * l.e1.abs().max(1.0), "n={n}");
            assert!((r.e2.ln() - l.e2).abs() < 1e-12 * l.e2.abs().max(1.0), "n={n}");
        }
    }

    #[test]
    fn vacuum_state() {
        let s = coherent_state(&CoherentParams::new(Hyperbolic::new(0.5, 1.0), Bicomplex::ZERO, 10)).unwrap();
        assert_eq!(s.coefficients[0], Bicomplex::ONE);
        assert!(s.coefficients[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn truncation_error() {
        let p = CoherentParams::new(Hyperbolic::new(0.0, 0.0), Bicomplex::from_reals(30.0, 1.0), 20);
        assert!(matches!(coherent_state(&p), Err(Error::Truncation(_))));
    }

    #[test]
    fn ladder_on_vacuum() {
        let v = Hyperbolic::new(0.5, 2.0);
        let l = ladder_matrices(&v, 5).unwrap();
        let mut vac = vec![Bicomplex::ZERO; 6];
        vac[0] = Bicomplex::ONE;
        assert!(mat_vec(&l.lower, &vac).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn moment_orders() {
        assert!(moment_check(9, 0.0, &QuadratureConfig::default()).is_err());
        let m = moment_check(0, 0.0, &QuadratureConfig::default()).unwrap();
        assert!((m.closed_form - 1.0).abs() < 1e-15);
        assert!(m.rel_err < 1e-6, "{m:?}");
    }
}
