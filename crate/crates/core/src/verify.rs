//! Seeded verification suites over the identities the library implements.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bicomplex::{Bicomplex, Hyperbolic};
use crate::coherent::{eigen_residual, ladder_coefficient, moment_check, rho, CoherentParams};
use crate::error::{Error, Result};
use crate::hankel::{builtin, hankel_forward, QuadratureConfig, TransformConfig};
use crate::specfun::asymptotic::asymptotic_remainder;
use crate::specfun::bessel::{bessel_j_negative_integer, jv, DEFAULT_TOL};
use crate::specfun::identities::{
    derivative_residual, generating_function, generating_truncation, holomorphy_residual, holomorphy_residual_argument,
    laurent_coefficient, ode_residual, recurrence_residuals,
};
use crate::specfun::integral_reps::{integral_representation_check, IntegralForm};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Samples per randomized identity suite.
    pub samples: usize,
    pub seed: u64,
    /// Overrides every suite's pass threshold when set.
    pub tol: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { samples: DEFAULT_SAMPLES, seed: DEFAULT_SEED, tol: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub failures: usize,
    pub errors: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub tol: Option<f64>,
    pub suites: Vec<SuiteReport>,
    pub all_passed: bool,
}

type Sampler = fn(&mut ChaCha8Rng, usize) -> Vec<Box<dyn Fn() -> Result<f64> + Send + Sync>>;

struct Suite {
    name: &'static str,
    tolerance: f64,
    /// Fixed sample count, or `None` for the configured count.
    count: Option<usize>,
    cases: Sampler,
}

pub const SUITE_NAMES: [&str; 19] = [
    "recurrence-i",
    "recurrence-ii",
    "recurrence-iii",
    "differential",
    "ode",
    "negative-order",
    "generating-function",
    "laurent",
    "holomorphy-order",
    "holomorphy-argument",
    "integral-beta",
    "integral-cosine",
    "integral-double",
    "integral-gamma-contour",
    "asymptotic-remainder",
    "hankel-indicator",
    "coherent-moments",
    "coherent-eigen",
    "coherent-ladder",
];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Complex number with modulus at most `r`, uniform on the disc.
fn disc(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    let rho = r * rng.random::<f64>().sqrt();
    Complex64::from_polar(rho, 2.0 * PI * rng.random::<f64>())
}

fn rect(rng: &mut ChaCha8Rng, re: (f64, f64), im: (f64, f64)) -> Complex64 {
    c(rng.random_range(re.0..re.1), rng.random_range(im.0..im.1))
}

fn order(rng: &mut ChaCha8Rng) -> Bicomplex {
    Bicomplex::new(rect(rng, (-4.0, 4.0), (-2.0, 2.0)), rect(rng, (-4.0, 4.0), (-2.0, 2.0)))
}

fn argument(rng: &mut ChaCha8Rng, r: f64) -> Bicomplex {
    // away from O_2 ∪ {0}
    let mut z = || loop {
        let x = disc(rng, r);
        if x.norm() > 0.05 {
            return x;
        }
    };
    Bicomplex::new(z(), z())
}

macro_rules! cases {
    ($rng:ident, $n:ident, $body:expr) => {
        (0..$n).map(|_| -> Box<dyn Fn() -> Result<f64> + Send + Sync> { $body(&mut *$rng) }).collect()
    };
}

fn recurrence(which: usize) -> Sampler {
    match which {
        0 => |rng, n| {
            cases!(rng, n, |r: &mut ChaCha8Rng| {
                let (v, z) = (order(r), argument(r, 10.0));
                Box::new(move || Ok(recurrence_residuals(&v, &z, 0, 0)?[0].scaled().max_component()))
            })
        },
        1 => |rng, n| {
            cases!(rng, n, |r: &mut ChaCha8Rng| {
                let (v, z) = (order(r), argument(r, 10.0));
                Box::new(move || Ok(recurrence_residuals(&v, &z, 0, 0)?[1].scaled().max_component()))
            })
        },
        _ => |rng, n| {
            cases!(rng, n, |r: &mut ChaCha8Rng| {
                let (v, z) = (order(r), argument(r, 10.0));
                let (m, k) = (r.random_range(0..6u32), r.random_range(0..6u32));
                Box::new(move || Ok(recurrence_residuals(&v, &z, m, k)?[2].scaled().max_component()))
            })
        },
    }
}

fn suites() -> Vec<Suite> {
    vec![
        Suite { name: "recurrence-i", tolerance: 1e-9, count: None, cases: recurrence(0) },
        Suite { name: "recurrence-ii", tolerance: 1e-9, count: None, cases: recurrence(1) },
        Suite { name: "recurrence-iii", tolerance: 1e-9, count: None, cases: recurrence(2) },
        Suite {
            name: "differential",
            tolerance: 1e-9,
            count: None,
            cases: |rng, n| {
                cases!(rng, n, |r: &mut ChaCha8Rng| {
                    let (v, z) = (order(r), argument(r, 10.0));
                    Box::new(move || Ok(derivative_residual(&v, &z)?.scaled().max_component()))
                })
            },
        },
        Suite {
            name: "ode",
            tolerance: 1e-9,
            count: None,
            cases: |rng, n| {
                cases!(rng, n, |r: &mut ChaCha8Rng| {
                    let (v, z) = (order(r), argument(r, 10.0));
                    Box::new(move || Ok(ode_residual(&v, &z)?.scaled().max_component()))
                })
            },
        },
        Suite {
            name: "negative-order",
            tolerance: 1e-9,
            count: None,
            cases: |rng, n| {
                cases!(rng, n, |r: &mut ChaCha8Rng| {
                    let l = Bicomplex::from_reals(r.random_range(0..12u32) as f64, r.random_range(0..12u32) as f64);
                    let z = argument(r, 10.0);
                    Box::new(move || {
                        let direct = jv(&(-l), &z)?;
                        let sym = bessel_j_negative_integer(&l, &z, DEFAULT_TOL)?.value;
                        let s = direct.hyperbolic_norm().sup(&sym.hyperbolic_norm());
                        Ok((direct - sym).hyperbolic_norm().zip(&s, |a, s| a / (1.0 + s)).max_component())
                    })
                })
            },
        },
        Suite {
            name: "generating-function",
            tolerance: 1e-10,
            count: None,
            cases: |rng, n| {
                cases!(rng, n, |r: &mut ChaCha8Rng| {
                    let z = argument(r, 3.0);
                    let mut w = || Complex64::from_polar(r.random_range(0.7..1.4), r.random_range(0.0..2.0 * PI));
                    let w = Bicomplex::new(w(), w());
                    Box::new(move || {
                        let g = generating_function(&z, &w)?;
                        let s = generating_truncation(&z, &w, 25)?;
                        Ok((g - s).hyperbolic_norm().zip(&g.hyperbolic_norm(), |a, m| a / (1.0 + m)).max_component())
                    })
                })
            },
        },
        Suite {
            name: "laurent",
            tolerance: 1e-9,
            count: None,
            cases: |rng, n| {
                cases!(rng, n, |r: &mut ChaCha8Rng| {
                    let z = argument(r, 3.0);
                    let k = r.random_range(-5..=5i32);
                    Box::new(move || {
                        let a = laurent_coefficient(k, &z, 128)?;
                        let j = jv(&Bicomplex::from_real(k as f64), &z)?;
                        Ok((a - j).hyperbolic_norm().max_component())
                    })
                })
            },
        },
        Suite {
            name: "holomorphy-order",
            tolerance: 1e-7,
            count: Some(20),
            cases: |rng, n| {
                cases!(rng, n, |r: &mut ChaCha8Rng| {
                    let v = Bicomplex::new(rect(r, (0.0, 3.0), (-1.0, 1.0)), rect(r, (0.0, 3.0), (-1.0, 1.0)));
                    let z = argument(r, 3.0);
                    Box::new(move || Ok(holomorphy_residual(&v, &z, 1e-5)?.into_iter().fold(0.0, f64::max)))
                })
            },
        },
        Suite {
            name: "holomorphy-argument",
            tolerance: 1e-7,
            count: Some(20),
            cases: |rng, n| {
                cases!(rng, n, |r: &mut ChaCha8Rng| {
                    let v = Bicomplex::new(rect(r, (0.0, 3.0), (-1.0, 1.0)), rect(r, (0.0, 3.0), (-1.0, 1.0)));
                    let z = argument(r, 3.0);
                    Box::new(move || Ok(holomorphy_residual_argument(&v, &z, 1e-5)?.into_iter().fold(0.0, f64::max)))
                })
            },
        },
        Suite {
            name: "integral-beta",
            tolerance: 1e-6,
            count: Some(5),
            cases: |rng, n| integral_cases(rng, n, |_| IntegralForm::Beta),
        },
        Suite {
            name: "integral-cosine",
            tolerance: 1e-6,
            count: Some(5),
            cases: |rng, n| integral_cases(rng, n, |_| IntegralForm::Cosine),
        },
        Suite {
            name: "integral-double",
            tolerance: 1e-6,
            count: Some(5),
            cases: |rng, n| {
                integral_cases(rng, n, |r| IntegralForm::Double {
                    delta: Bicomplex::new(rect(r, (0.2, 2.0), (-0.5, 0.5)), rect(r, (0.2, 2.0), (-0.5, 0.5))),
                })
            },
        },
        Suite {
            name: "integral-gamma-contour",
            tolerance: 1e-6,
            count: Some(5),
            cases: |rng, n| integral_cases(rng, n, |_| IntegralForm::GammaContour),
        },
        Suite {
            name: "asymptotic-remainder",
            // |R_n| / bound, strictly below 1
            tolerance: 1.0,
            count: Some(4),
            cases: |_, _| {
                let mut out: Vec<Box<dyn Fn() -> Result<f64> + Send + Sync>> = Vec::new();
                for (n, v) in [(2usize, Bicomplex::from_reals(3.0, 3.5)), (4, Bicomplex::from_reals(5.0, 6.0))] {
                    for x in [20.0, 50.0] {
                        out.push(Box::new(move || {
                            let r = asymptotic_remainder(&v, &Hyperbolic::splat(x), n)?;
                            Ok(r.remainder.zip(&r.bound, |a, b| a / b).max_component())
                        }));
                    }
                }
                out
            },
        },
        Suite {
            name: "hankel-indicator",
            tolerance: 1e-6,
            count: Some(10),
            cases: |rng, n| {
                cases!(rng, n, |r: &mut ChaCha8Rng| {
                    let z = Bicomplex::new(rect(r, (0.2, 6.0), (-0.5, 0.5)), rect(r, (0.2, 6.0), (-0.5, 0.5)));
                    Box::new(move || {
                        let v = Bicomplex::from_real(-0.5);
                        let f = builtin("indicator", &v)?;
                        let got = hankel_forward(&v, &f, &[z], &TransformConfig::default())?.value;
                        let exact = z.map(|x| x.sin() / x * (2.0 / PI).sqrt());
                        Ok((got - exact).hyperbolic_norm().max_component())
                    })
                })
            },
        },
        Suite {
            name: "coherent-moments",
            tolerance: 1e-6,
            count: Some(35),
            cases: |_, _| {
                let mut out: Vec<Box<dyn Fn() -> Result<f64> + Send + Sync>> = Vec::new();
                for n in 0..=6usize {
                    for nu in [-0.5, 0.0, 0.5, 1.0, 2.0] {
                        out.push(Box::new(move || Ok(moment_check(n, nu, &QuadratureConfig::default())?.rel_err)));
                    }
                }
                out
            },
        },
        Suite {
            name: "coherent-eigen",
            tolerance: 1.0,
            count: Some(3),
            cases: |_, _| {
                // residual / (10 × tail bound)
                [150usize, 12, 6]
                    .map(|n| -> Box<dyn Fn() -> Result<f64> + Send + Sync> {
                        Box::new(move || {
                            let p = CoherentParams::new(
                                Hyperbolic::new(0.5, 0.5),
                                Bicomplex::new(c(0.5, 0.0), c(0.5, 0.2)),
                                n,
                            );
                            let e = eigen_residual(&p)?;
                            Ok(e.residual
                                .zip(&e.bound, |a, b| if a == 0.0 { 0.0 } else { a / (10.0 * b) })
                                .max_component())
                        })
                    })
                    .into()
            },
        },
        Suite {
            name: "coherent-ladder",
            tolerance: 1e-12,
            count: Some(1),
            cases: |_, _| {
                vec![Box::new(|| {
                    let v = Hyperbolic::new(0.5, 1.0);
                    let mut prod = Hyperbolic::new(1.0, 1.0);
                    let mut worst = 0.0f64;
                    for n in 0..=60 {
                        let r = rho(n, &v)?;
                        worst = worst.max((prod.e1 / r.e1.sqrt() - 1.0).abs()).max((prod.e2 / r.e2.sqrt() - 1.0).abs());
                        prod = prod * ladder_coefficient(n, &v);
                    }
                    Ok(worst)
                })]
            },
        },
    ]
}

fn integral_cases(
    rng: &mut ChaCha8Rng,
    n: usize,
    form: fn(&mut ChaCha8Rng) -> IntegralForm,
) -> Vec<Box<dyn Fn() -> Result<f64> + Send + Sync>> {
    cases!(rng, n, |r: &mut ChaCha8Rng| {
        let v = Bicomplex::new(rect(r, (0.2, 3.0), (-1.0, 1.0)), rect(r, (0.2, 3.0), (-1.0, 1.0)));
        let z = argument(r, 4.0);
        let f = form(r);
        Box::new(move || Ok(integral_representation_check(f, &v, &z, &QuadratureConfig::default())?.max_component()))
    })
}

fn seed_for(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64)
}

fn run(suite: &Suite, index: usize, cfg: &VerifyConfig) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(cfg.seed, index));
    let n = suite.count.unwrap_or(cfg.samples);
    let cases = (suite.cases)(&mut rng, n);
    let tolerance = cfg.tol.unwrap_or(suite.tolerance);
    let results: Vec<Result<f64>> = cases.par_iter().map(|f| f()).collect();
    let mut max_residual = 0.0f64;
    let mut failures = 0;
    let mut errors = Vec::new();
    for r in &results {
        match r {
            Ok(x) if x.is_finite() => {
                max_residual = max_residual.max(*x);
                if *x > tolerance || (suite.name == "asymptotic-remainder" && *x >= tolerance) {
                    failures += 1;
                }
            }
            Ok(x) => {
                failures += 1;
                errors.push(format!("non-finite residual {x}"));
            }
            Err(e) => {
                failures += 1;
                errors.push(e.to_string());
            }
        }
    }
    SuiteReport {
        name: suite.name,
        samples: results.len(),
        max_residual,
        tolerance,
        failures,
        errors,
        passed: failures == 0,
    }
}

/// Runs the named suite, or every suite for `"all"`.
pub fn run_suites(which: &str, cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.samples == 0 {
        return Err(Error::Precondition("samples must be positive".into()));
    }
    let all = suites();
    let chosen: Vec<(usize, &Suite)> =
        all.iter().enumerate().filter(|(_, s)| which == "all" || s.name == which).collect();
    if chosen.is_empty() {
        return Err(Error::Precondition(format!(
            "unknown suite '{which}', expected all or one of {}",
            SUITE_NAMES.join(", ")
        )));
    }
    let suites: Vec<SuiteReport> = chosen.into_iter().map(|(i, s)| run(s, i, cfg)).collect();
    let all_passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport { seed: cfg.seed, samples: cfg.samples, tol: cfg.tol, suites, all_passed })
}

pub fn run_all(cfg: &VerifyConfig) -> VerifyReport {
    run_suites("all", cfg).expect("the full suite list is never empty")
}
