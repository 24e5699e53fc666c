//! Functions on `(0, ∞)^n` with bicomplex values, as consumed by the transform.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::bicomplex::Bicomplex;
use crate::error::{Error, Result};

type Eval = Arc<dyn Fn(&[f64]) -> Result<Bicomplex> + Send + Sync>;
/// `(ω, k) ↦ [f(ω), f'(ω), …, f^{(k)}(ω)]`.
type Derivs = Arc<dyn Fn(f64, usize) -> Result<Vec<Bicomplex>> + Send + Sync>;

/// Names accepted by [`builtin`].
pub const BUILTINS: [&str; 3] = ["indicator", "gaussian-monomial", "cutoff-polynomial"];

#[derive(Clone)]
pub struct SampledFunction {
    dim: usize,
    eval: Eval,
    derivs: Option<Derivs>,
    factors: Option<Vec<SampledFunction>>,
    supports: Vec<Option<f64>>,
    numeric_derivative: bool,
}

impl fmt::Debug for SampledFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledFunction")
            .field("dim", &self.dim)
            .field("supports", &self.supports)
            .field("analytic_derivatives", &self.derivs.is_some())
            .field("separable", &self.factors.is_some())
            .field("numeric_derivative", &self.numeric_derivative)
            .finish()
    }
}

impl SampledFunction {
    /// A one-dimensional function without derivative information.
    pub fn new(f: impl Fn(f64) -> Result<Bicomplex> + Send + Sync + 'static) -> Self {
        SampledFunction {
            dim: 1,
            eval: Arc::new(move |w: &[f64]| f(w[0])),
            derivs: None,
            factors: None,
            supports: vec![None],
            numeric_derivative: false,
        }
    }

    /// A one-dimensional function together with its derivatives: `d(ω, k)`
    /// returns `[f(ω), …, f^{(k)}(ω)]`.
    pub fn with_derivatives(d: impl Fn(f64, usize) -> Result<Vec<Bicomplex>> + Send + Sync + 'static) -> Self {
        let d: Derivs = Arc::new(d);
        let d2 = d.clone();
        SampledFunction {
            dim: 1,
            eval: Arc::new(move |w: &[f64]| Ok(d2(w[0], 0)?[0])),
            derivs: Some(d),
            factors: None,
            supports: vec![None],
            numeric_derivative: false,
        }
    }

    /// A general function of `dim` coordinates.
    pub fn multivariate(dim: usize, f: impl Fn(&[f64]) -> Result<Bicomplex> + Send + Sync + 'static) -> Self {
        SampledFunction {
            dim,
            eval: Arc::new(f),
            derivs: None,
            factors: None,
            supports: vec![None; dim],
            numeric_derivative: false,
        }
    }

    /// `f(ω_1, …, ω_n) = Π f_k(ω_k)`.
    pub fn separable(factors: Vec<SampledFunction>) -> Result<Self> {
        if factors.is_empty() || factors.iter().any(|f| f.dim != 1) {
            return Err(Error::Precondition("separable functions need one-dimensional factors".into()));
        }
        let dim = factors.len();
        let fs = factors.clone();
        let supports = factors.iter().map(|f| f.supports[0]).collect();
        Ok(SampledFunction {
            dim,
            eval: Arc::new(move |w: &[f64]| {
                let mut p = Bicomplex::ONE;
                for (f, &x) in fs.iter().zip(w) {
                    p *= (f.eval)(&[x])?;
                }
                Ok(p)
            }),
            derivs: None,
            factors: Some(factors),
            supports,
            numeric_derivative: false,
        })
    }

    /// Declares that the function vanishes once any coordinate exceeds `eps`.
    pub fn with_support(mut self, eps: f64) -> Self {
        self.supports = vec![Some(eps); self.dim];
        self
    }

    /// Allows fourth-order central differences when no analytic derivative is available.
    pub fn with_numeric_derivative(mut self, enabled: bool) -> Self {
        self.numeric_derivative = enabled;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Common support bound, present when every coordinate has one.
    pub fn support(&self) -> Option<f64> {
        self.supports.iter().try_fold(0.0f64, |acc, s| s.map(|s| acc.max(s)))
    }

    /// Support bound of coordinate `k`.
    pub fn support_of(&self, k: usize) -> Option<f64> {
        self.supports.get(k).copied().flatten()
    }

    pub fn factors(&self) -> Option<&[SampledFunction]> {
        self.factors.as_deref()
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        self.derivs.is_some()
    }

    pub fn uses_numeric_derivative(&self) -> bool {
        self.derivs.is_none() && self.numeric_derivative
    }

    pub fn eval(&self, w: &[f64]) -> Result<Bicomplex> {
        if w.len() != self.dim {
            return Err(Error::Precondition(format!("expected {} coordinates, got {}", self.dim, w.len())));
        }
        if w.iter().zip(&self.supports).any(|(&x, s)| s.is_some_and(|e| x > e)) {
            return Ok(Bicomplex::ZERO);
        }
        (self.eval)(w)
    }

    pub fn eval1(&self, w: f64) -> Result<Bicomplex> {
        self.eval(&[w])
    }

    /// Like [`Self::eval1`] but rejects points outside `(0, ∞)`.
    pub fn try_eval(&self, w: f64) -> Result<Bicomplex> {
        if !(w > 0.0) {
            return Err(Error::Domain(format!("functions are defined on (0, ∞), got ω = {w}")));
        }
        self.eval1(w)
    }

    /// `[f(ω), …, f^{(k)}(ω)]` for a one-dimensional function.
    pub fn derivatives(&self, w: f64, k: usize) -> Result<Vec<Bicomplex>> {
        if self.dim != 1 {
            return Err(Error::Precondition("derivatives are available for one-dimensional functions only".into()));
        }
        if let Some(eps) = self.supports[0] {
            if w > eps {
                return Ok(vec![Bicomplex::ZERO; k + 1]);
            }
        }
        if let Some(d) = &self.derivs {
            return d(w, k);
        }
        if !self.numeric_derivative {
            return Err(Error::Precondition(
                "function has no analytic derivative and numerical differentiation is not enabled".into(),
            ));
        }
        if k > 1 {
            return Err(Error::Precondition("numerical differentiation provides first derivatives only".into()));
        }
        let f0 = self.eval1(w)?;
        if k == 0 {
            return Ok(vec![f0]);
        }
        Ok(vec![f0, self.numeric_first_derivative(w)?])
    }

    fn numeric_first_derivative(&self, w: f64) -> Result<Bicomplex> {
        let mut h = 1e-4 * (1.0 + w);
        if w - 2.0 * h <= 0.0 {
            h = w / 3.0;
        }
        let f = |x: f64| self.eval1(x);
        Ok((f(w - 2.0 * h)? - f(w - h)? * 8.0 + f(w + h)? * 8.0 - f(w + 2.0 * h)?) * (1.0 / (12.0 * h)))
    }
}

/// `Σ_j c_j ω^{a_0 + j}` times `e^{−b ω²}`; closed under differentiation.
#[derive(Debug, Clone)]
struct PowerGaussian {
    base: Complex64,
    coeffs: Vec<(i32, Complex64)>,
    b: f64,
}

impl PowerGaussian {
    fn derivative(&self) -> PowerGaussian {
        let mut out: Vec<(i32, Complex64)> = Vec::new();
        let mut push = |e: i32, c: Complex64| {
            if c == Complex64::new(0.0, 0.0) {
                return;
            }
            match out.iter_mut().find(|(x, _)| *x == e) {
                Some(slot) => slot.1 += c,
                None => out.push((e, c)),
            }
        };
        for &(e, c) in &self.coeffs {
            push(e - 1, c * (self.base + e as f64));
            push(e + 1, c * (-2.0 * self.b));
        }
        PowerGaussian { base: self.base, coeffs: out, b: self.b }
    }

    fn eval(&self, w: f64) -> Complex64 {
        let g = (-self.b * w * w).exp();
        let lw = w.ln();
        self.coeffs.iter().map(|&(e, c)| c * ((self.base + e as f64) * lw).exp()).sum::<Complex64>() * g
    }
}

/// `ω^A e^{−b ω²}` with a per-component exponent `A`, analytic derivatives to any order.
pub fn power_gaussian(a: Bicomplex, b: f64) -> SampledFunction {
    let mk = |base: Complex64| PowerGaussian { base, coeffs: vec![(0, Complex64::new(1.0, 0.0))], b };
    let (p1, p2) = (mk(a.e1), mk(a.e2));
    SampledFunction::with_derivatives(move |w, k| {
        if !(w > 0.0) {
            return Err(Error::Domain(format!("ω^A e^(-bω²) is evaluated on (0, ∞), got ω = {w}")));
        }
        let (mut q1, mut q2) = (p1.clone(), p2.clone());
        let mut out = Vec::with_capacity(k + 1);
        for i in 0..=k {
            out.push(Bicomplex::new(q1.eval(w), q2.eval(w)));
            if i < k {
                q1 = q1.derivative();
                q2 = q2.derivative();
            }
        }
        Ok(out)
    })
}

/// `Σ c_j ω^j` restricted to `[0, eps]`.
pub fn polynomial(coeffs: Vec<f64>, eps: f64) -> SampledFunction {
    SampledFunction::with_derivatives(move |w, k| {
        let mut c = coeffs.clone();
        let mut out = Vec::with_capacity(k + 1);
        for _ in 0..=k {
            let v = if w > eps { 0.0 } else { c.iter().rev().fold(0.0, |acc, &x| acc * w + x) };
            out.push(Bicomplex::from_real(v));
            c = c.iter().enumerate().skip(1).map(|(j, &x)| x * j as f64).collect();
        }
        Ok(out)
    })
    .with_support(eps)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Named test functions.
///
/// * `indicator`: `1` on `(0, 1)`.
/// * `gaussian-monomial`: `ω^{V+½} e^{−ω²/2}`, its own transform of order `V`.
/// * `cutoff-polynomial`: `ω⁴ (1 − ω/3)⁴` on `(0, 3)`, zero beyond.
pub fn builtin(name: &str, order: &Bicomplex) -> Result<SampledFunction> {
    match name {
        "indicator" => Ok(SampledFunction::with_derivatives(|w, k| {
            let mut out = vec![Bicomplex::ZERO; k + 1];
            if w < 1.0 {
                out[0] = Bicomplex::ONE;
            }
            Ok(out)
        })
        .with_support(1.0)),
        "gaussian-monomial" => Ok(power_gaussian(*order + Bicomplex::from_real(0.5), 0.5)),
        "cutoff-polynomial" => {
            // ω⁴ (1 − ω/3)⁴ expanded
            let coeffs: Vec<f64> = (0..=8)
                .map(|j| if j < 4 { 0.0 } else { binomial(4, j - 4) * (-1.0f64 / 3.0).powi((j - 4) as i32) })
                .collect();
            Ok(polynomial(coeffs, 3.0))
        }
        other => Err(Error::Precondition(format!("unknown function '{other}', expected one of {BUILTINS:?}"))),
    }
}
