use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bchankel::coherent::{self, CoherentParams};
use bchankel::hankel::{builtin, hankel_forward_many, QuadratureConfig, TransformConfig, BUILTINS};
use bchankel::pde::{self, Grid, PdeConfig, PdeKind, PdeProblem};
use bchankel::specfun::bessel::{bessel_j_with, DEFAULT_MAX_TERMS, DEFAULT_TOL};
use bchankel::specfun::gamma::bicomplex_gamma;
use bchankel::verify::{self, VerifyConfig};
use bchankel::{Bicomplex, Hyperbolic};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bchankel", version, about = "Bicomplex Bessel functions, Hankel transforms and applications")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Series / quadrature tolerance, or the verification threshold for `verify`.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for randomized verification suites.
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// J_V(Z) by the power series.
    Bessel {
        #[arg(long, allow_hyphen_values = true)]
        order: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max_terms: usize,
    },
    /// Γ_b(Z).
    Gamma {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Forward Hankel transform of a builtin function at a list of points.
    Hankel {
        #[arg(long, allow_hyphen_values = true)]
        order: String,
        /// JSON array of points; each point is a bicomplex number or an array of them.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long, allow_hyphen_values = true)]
        function: String,
        /// Quadrature settings as JSON.
        #[arg(long, allow_hyphen_values = true)]
        config: Option<String>,
    },
    /// Wave or heat equation on a grid.
    Solve {
        #[arg(value_enum)]
        equation: Equation,
        #[arg(long, allow_hyphen_values = true)]
        order: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value = "none")]
        g: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0:1:0.02")]
        omega: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0:2:0.05")]
        t: String,
        #[arg(long, default_value_t = 256.0)]
        spectral_cutoff: f64,
    },
    /// Coherent-state checks.
    Coherent {
        #[command(subcommand)]
        action: CoherentAction,
    },
    /// Seeded identity suites.
    Verify {
        /// Suite name or `all`.
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = verify::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Figure data for the wave or heat example.
    Figure {
        #[arg(value_enum)]
        which: Equation,
        #[arg(long, allow_hyphen_values = true, default_value = "0:1:0.02")]
        omega: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0:2:0.05")]
        t: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Equation {
    Wave,
    Heat,
}

impl From<Equation> for PdeKind {
    fn from(e: Equation) -> Self {
        match e {
            Equation::Wave => PdeKind::Wave,
            Equation::Heat => PdeKind::Heat,
        }
    }
}

#[derive(Subcommand)]
enum CoherentAction {
    /// Moment identity of the weight function for n = 0..=n_max.
    Moments {
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// ⟨Z|Z′⟩ in closed form and from truncated states.
    Overlap {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        zprime: String,
        #[arg(long, allow_hyphen_values = true)]
        order: String,
        #[arg(long, default_value_t = coherent::DEFAULT_TRUNCATION)]
        trunc: usize,
    },
    /// Residual of A₋|Z⟩ = Z|Z⟩ against the truncation bound.
    Eigencheck {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        order: String,
        #[arg(long, default_value_t = coherent::DEFAULT_TRUNCATION)]
        trunc: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(bchankel::Error),
    Io(io::Error),
    /// Computation finished but a check did not pass; the payload is still written.
    Check,
}

impl From<bchankel::Error> for Failure {
    fn from(e: bchankel::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

fn usage(flag: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("--{flag}: {msg}"))
}

fn parse_json(flag: &str, s: &str) -> Result<Value, Failure> {
    serde_json::from_str(s).map_err(|e| usage(flag, format!("invalid JSON ({e})")))
}

fn bicomplex_value(flag: &str, v: Value) -> Result<Bicomplex, Failure> {
    if let Some(x) = v.as_f64() {
        return Ok(Bicomplex::from_real(x));
    }
    serde_json::from_value(v).map_err(|e| usage(flag, format!("expected {{\"e1\": [re, im], \"e2\": [re, im]}} ({e})")))
}

fn bicomplex(flag: &str, s: &str) -> Result<Bicomplex, Failure> {
    bicomplex_value(flag, parse_json(flag, s)?)
}

fn hyperbolic(flag: &str, s: &str) -> Result<Hyperbolic, Failure> {
    let v = parse_json(flag, s)?;
    if let Some(x) = v.as_f64() {
        return Ok(Hyperbolic::splat(x));
    }
    serde_json::from_value(v).map_err(|e| usage(flag, format!("expected {{\"e1\": x, \"e2\": y}} ({e})")))
}

fn points(s: &str) -> Result<Vec<Vec<Bicomplex>>, Failure> {
    let v = parse_json("points", s)?;
    let items = match v {
        Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .map(|p| match p {
            Value::Array(coords) => coords.into_iter().map(|c| bicomplex_value("points", c)).collect(),
            single => Ok(vec![bicomplex_value("points", single)?]),
        })
        .collect()
}

fn range(flag: &str, s: &str) -> Result<Vec<f64>, Failure> {
    pde::parse_range(s).map_err(|e| usage(flag, e))
}

fn function(flag: &str, name: &str, order: &Bicomplex) -> Result<bchankel::hankel::SampledFunction, Failure> {
    if !BUILTINS.contains(&name) {
        return Err(usage(flag, format!("unknown function '{name}', expected one of {}", BUILTINS.join(", "))));
    }
    Ok(builtin(name, order)?)
}

fn quadrature(global: &Global, base: QuadratureConfig) -> QuadratureConfig {
    match global.tol {
        Some(t) => QuadratureConfig { abs_tol: t, rel_tol: t, ..base },
        None => base,
    }
}

fn sink(global: &Global) -> Result<Box<dyn Write>, Failure> {
    Ok(match &global.out {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn emit_json(global: &Global, payload: &Value) -> Outcome {
    let mut w = sink(global)?;
    serde_json::to_writer_pretty(&mut w, payload).map_err(io::Error::from)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn json_only(global: &Global, command: &str) -> Outcome {
    if global.format == Some(Format::Csv) {
        return Err(usage("format", format!("csv output is only available for solve and figure, not {command}")));
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library results serialize")
}

fn write_grid(global: &Global, sol: &pde::SolutionGrid, echo: Value) -> Outcome {
    match global.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let w = sink(global)?;
            pde::write_csv(sol, w)?;
            if let Some(p) = &global.out {
                // the CSV went to a file; report what was written on stdout
                let mut summary = echo;
                summary["out"] = json!(p);
                summary["rows"] = json!(sol.omega_grid.len() * sol.t_grid.len());
                summary["max_imaginary"] = json!(pde::max_imaginary(sol));
                println!("{}", serde_json::to_string_pretty(&summary).map_err(io::Error::from)?);
            }
            Ok(())
        }
        Format::Json => {
            let mut payload = echo;
            payload["solution"] = to_value(sol);
            payload["max_imaginary"] = json!(pde::max_imaginary(sol));
            emit_json(global, &payload)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    if let Some(t) = g.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(usage("tol", format!("must be positive, got {t}")));
        }
    }
    match cli.command {
        Command::Bessel { order, z, max_terms } => {
            json_only(g, "bessel")?;
            let (v, x) = (bicomplex("order", &order)?, bicomplex("z", &z)?);
            let tol = g.tol.unwrap_or(DEFAULT_TOL);
            let r = bessel_j_with(&v, &x, tol, max_terms)?;
            emit_json(
                g,
                &json!({"command": "bessel", "order": v, "z": x, "tol": tol, "max_terms": max_terms,
                        "value": r.value, "terms_used": r.terms_used, "tail_estimate": r.tail_estimate}),
            )
        }
        Command::Gamma { z } => {
            json_only(g, "gamma")?;
            let x = bicomplex("z", &z)?;
            emit_json(g, &json!({"command": "gamma", "z": x, "value": bicomplex_gamma(&x)?}))
        }
        Command::Hankel { order, points: pts, function: name, config } => {
            json_only(g, "hankel")?;
            let v = bicomplex("order", &order)?;
            let pts = points(&pts)?;
            let f = function("function", &name, &v)?;
            let mut cfg: TransformConfig = match config {
                Some(c) => {
                    serde_json::from_str(&c).map_err(|e| usage("config", format!("invalid quadrature JSON ({e})")))?
                }
                None => TransformConfig::default(),
            };
            cfg.quadrature = quadrature(g, cfg.quadrature);
            let results: Vec<Value> = hankel_forward_many(&v, &f, &pts, &cfg)
                .into_iter()
                .map(|r| r.map(|x| to_value(&x)))
                .collect::<bchankel::Result<_>>()?;
            emit_json(
                g,
                &json!({"command": "hankel", "order": v, "function": name, "points": pts, "config": cfg,
                        "tol": g.tol, "results": results}),
            )
        }
        Command::Solve { equation, order, lambda, f, g: vel, omega, t, spectral_cutoff } => {
            let v = bicomplex("order", &order)?;
            let lam = bicomplex("lambda", &lambda)?;
            let f_fn = function("f", &f, &v)?;
            let g_fn = if vel == "none" { None } else { Some(function("g", &vel, &v)?) };
            let grid = Grid::line(&range("omega", &omega)?, &range("t", &t)?);
            let problem = match equation {
                Equation::Wave => PdeProblem::wave(v, lam, f_fn, g_fn),
                Equation::Heat if g_fn.is_some() => {
                    return Err(usage("g", "the heat equation takes no initial velocity"))
                }
                Equation::Heat => PdeProblem::heat(v, lam, f_fn),
            };
            let mut cfg = PdeConfig { spectral_cutoff, ..PdeConfig::default() };
            cfg.transform.quadrature = quadrature(g, cfg.transform.quadrature);
            let sol = match equation {
                Equation::Wave => pde::solve_wave(&problem, &grid, &cfg)?,
                Equation::Heat => pde::solve_heat(&problem, &grid, &cfg)?,
            };
            let echo = json!({"command": "solve", "equation": PdeKind::from(equation), "order": v, "lambda": lam,
                              "f": f, "g": vel, "omega": omega, "t": t, "spectral_cutoff": spectral_cutoff, "tol": g.tol});
            write_grid(g, &sol, echo)
        }
        Command::Figure { which, omega, t } => {
            let grid = Grid::line(&range("omega", &omega)?, &range("t", &t)?);
            let mut cfg = PdeConfig::default();
            cfg.transform.quadrature = quadrature(g, cfg.transform.quadrature);
            let sol = pde::figure_data(which.into(), &grid, &cfg)?;
            let echo =
                json!({"command": "figure", "which": PdeKind::from(which), "omega": omega, "t": t, "tol": g.tol});
            write_grid(g, &sol, echo)
        }
        Command::Coherent { action } => {
            json_only(g, "coherent")?;
            match action {
                CoherentAction::Moments { nu, n_max } => {
                    let ns: Vec<usize> = (0..=n_max).collect();
                    let q = quadrature(g, QuadratureConfig::default());
                    let cases = coherent::moment_suite(&ns, &[nu], &q)?;
                    emit_json(
                        g,
                        &json!({"command": "coherent moments", "nu": nu, "n_max": n_max, "tol": g.tol, "cases": cases}),
                    )
                }
                CoherentAction::Overlap { z, zprime, order, trunc } => {
                    let (a, b, v) = (bicomplex("z", &z)?, bicomplex("zprime", &zprime)?, hyperbolic("order", &order)?);
                    let closed = coherent::overlap(&a, &b, &v)?;
                    let numeric = coherent::overlap_truncated(&a, &b, &v, trunc)?;
                    let rel = (closed - numeric).hyperbolic_norm().zip(&closed.hyperbolic_norm(), |d, m| d / m);
                    emit_json(
                        g,
                        &json!({"command": "coherent overlap", "z": a, "zprime": b, "order": v, "trunc": trunc,
                                "closed_form": closed, "numeric": numeric, "rel_err": rel}),
                    )
                }
                CoherentAction::Eigencheck { z, order, trunc } => {
                    let (a, v) = (bicomplex("z", &z)?, hyperbolic("order", &order)?);
                    let e = coherent::eigen_residual(&CoherentParams::new(v, a, trunc))?;
                    emit_json(
                        g,
                        &json!({"command": "coherent eigencheck", "z": a, "order": v, "trunc": trunc,
                                "residual": e.residual, "bound": e.bound, "holds": e.holds(10.0)}),
                    )?;
                    if e.holds(10.0) {
                        Ok(())
                    } else {
                        Err(Failure::Check)
                    }
                }
            }
        }
        Command::Verify { suite, samples } => {
            json_only(g, "verify")?;
            if samples == 0 {
                return Err(usage("samples", "must be positive"));
            }
            if suite != "all" && !verify::SUITE_NAMES.contains(&suite.as_str()) {
                return Err(usage(
                    "suite",
                    format!("unknown suite '{suite}', expected all or one of {}", verify::SUITE_NAMES.join(", ")),
                ));
            }
            let cfg = VerifyConfig { samples, seed: g.seed, tol: g.tol };
            let report = verify::run_suites(&suite, &cfg)?;
            let mut payload = to_value(&report);
            payload["command"] = json!("verify");
            payload["suite"] = json!(suite);
            emit_json(g, &payload)?;
            if report.all_passed {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("{}", json!({"error": "UsageError", "message": msg}));
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("{}", json!({"error": e.name(), "message": e.to_string()}));
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("{}", json!({"error": "IoError", "message": e.to_string()}));
            ExitCode::from(1)
        }
        Err(Failure::Check) => ExitCode::from(1),
    }
}
