//! The differential operators `N_μ = ω^{μ+½} d/dω ω^{−μ−½}` and
//! `M_μ = ω^{−μ−½} d/dω ω^{μ+½}`, and the operational rules of the transform.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::function::SampledFunction;
use super::transform::{hankel_forward, TransformConfig};
use crate::bicomplex::{Bicomplex, Hyperbolic};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    /// `H_{μ+1}(N_μ f) = (−1)ⁿ [Z] H_μ f`.
    I,
    /// `H_μ(M_μ f) = [Z] H_{μ+1} f`.
    Ii,
    /// `H_μ(M_μ N_μ f) = (−1)ⁿ [Z]² H_μ f`.
    Iii,
}

impl std::str::FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" => Ok(Identity::I),
            "ii" => Ok(Identity::Ii),
            "iii" => Ok(Identity::Iii),
            other => Err(Error::Precondition(format!("unknown identity '{other}', expected i, ii or iii"))),
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `f' + s·c·f/ω` and its derivatives by the Leibniz rule, with `s = ±1`.
fn first_order(mu: &Bicomplex, f: &SampledFunction, sign: f64) -> Result<SampledFunction> {
    if let Some(factors) = f.factors() {
        let mapped = factors.iter().map(|g| first_order(mu, g, sign)).collect::<Result<Vec<_>>>()?;
        return SampledFunction::separable(mapped);
    }
    if f.dim() != 1 {
        return Err(Error::Precondition("operators on n-dimensional functions need a separable function".into()));
    }
    if !f.has_analytic_derivatives() && !f.uses_numeric_derivative() {
        return Err(Error::Precondition(
            "operator needs an analytic derivative or explicitly enabled numerical differentiation".into(),
        ));
    }
    let c = (*mu + Bicomplex::from_real(0.5)) * sign;
    let g = f.clone();
    let derivs = move |w: f64, k: usize| -> Result<Vec<Bicomplex>> {
        if !(w > 0.0) {
            return Err(Error::Domain(format!("operators act on (0, ∞), got ω = {w}")));
        }
        let d = g.derivatives(w, k + 1)?;
        let mut out = Vec::with_capacity(k + 1);
        for j in 0..=k {
            // (f/ω)^{(j)} = Σ_i C(j,i) f^{(j−i)} (−1)^i i! / ω^{i+1}
            let mut q = Bicomplex::ZERO;
            for i in 0..=j {
                let s = if i % 2 == 0 { 1.0 } else { -1.0 };
                if d[j - i].is_zero() {
                    continue;
                }
                let mut t = d[j - i] * (binomial(j, i) * s * factorial(i));
                for _ in 0..=i {
                    t = t * (1.0 / w);
                }
                q += t;
            }
            out.push(d[j + 1] + c * q);
        }
        Ok(out)
    };
    let numeric = f.uses_numeric_derivative();
    let out = if f.has_analytic_derivatives() {
        SampledFunction::with_derivatives(derivs)
    } else {
        let d = Arc::new(derivs);
        SampledFunction::new(move |w| Ok(d(w, 0)?[0])).with_numeric_derivative(numeric)
    };
    Ok(match f.support() {
        Some(eps) => out.with_support(eps),
        None => out,
    })
}

/// `N_μ f = f' − (μ+½) f/ω`, coordinatewise for separable functions.
pub fn op_n(mu: &Bicomplex, f: &SampledFunction) -> Result<SampledFunction> {
    first_order(mu, f, -1.0)
}

/// `M_μ f = f' + (μ+½) f/ω`, coordinatewise for separable functions.
pub fn op_m(mu: &Bicomplex, f: &SampledFunction) -> Result<SampledFunction> {
    first_order(mu, f, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityResidual {
    pub lhs: Bicomplex,
    pub rhs: Bicomplex,
    pub residual: Hyperbolic,
}

/// Both sides of one operational rule at `Z = (Z_1, …, Z_n)` with `μ = V + σ`.
pub fn operational_identity(
    which: Identity,
    v: &Bicomplex,
    sigma: &Bicomplex,
    f: &SampledFunction,
    z: &[Bicomplex],
    cfg: &TransformConfig,
) -> Result<IdentityResidual> {
    let n = z.len();
    if !(n == 1 || n == 2) {
        return Err(Error::Precondition(format!("operational rules are checked for n = 1 or 2, got {n}")));
    }
    let mu = *v + *sigma;
    let mu1 = mu + Bicomplex::ONE;
    let bracket: Bicomplex = z.iter().fold(Bicomplex::ONE, |acc, x| acc * *x);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let (lhs, rhs) = match which {
        Identity::I => {
            let l = hankel_forward(&mu1, &op_n(&mu, f)?, z, cfg)?.value;
            (l, bracket * hankel_forward(&mu, f, z, cfg)?.value * sign)
        }
        Identity::Ii => {
            let l = hankel_forward(&mu, &op_m(&mu, f)?, z, cfg)?.value;
            (l, bracket * hankel_forward(&mu1, f, z, cfg)?.value)
        }
        Identity::Iii => {
            let l = hankel_forward(&mu, &op_m(&mu, &op_n(&mu, f)?)?, z, cfg)?.value;
            (l, bracket * bracket * hankel_forward(&mu, f, z, cfg)?.value * sign)
        }
    };
    Ok(IdentityResidual { lhs, rhs, residual: (lhs - rhs).hyperbolic_norm() })
}

/// `|lhs − rhs|_h` of [`operational_identity`].
pub fn operational_identity_residual(
    which: Identity,
    v: &Bicomplex,
    sigma: &Bicomplex,
    f: &SampledFunction,
    z: &[Bicomplex],
    cfg: &TransformConfig,
) -> Result<Hyperbolic> {
    Ok(operational_identity(which, v, sigma, f, z, cfg)?.residual)
}
