//! Transform solutions of the generalized wave equation `M_V N_V u = λ² u_tt`
//! and heat equation `M_V N_V u = λ u_t`.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bicomplex::Bicomplex;
use crate::error::{Error, Result};
use crate::hankel::function::SampledFunction;
use crate::hankel::quadrature::{gauss_legendre, QuadratureConfig};
use crate::hankel::transform::{bicomplex_kernel, hankel_forward, hankel_inverse, TransformConfig, MAX_DIM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PdeKind {
    Wave,
    Heat,
}

impl std::str::FromStr for PdeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wave" => Ok(PdeKind::Wave),
            "heat" => Ok(PdeKind::Heat),
            other => Err(Error::Precondition(format!("unknown equation '{other}', expected wave or heat"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PdeProblem {
    pub kind: PdeKind,
    pub order: Bicomplex,
    pub lambda: Bicomplex,
    pub n: usize,
    pub f: SampledFunction,
    /// Initial velocity, wave equation only. Used exactly as printed, `G sin([Z]t/λ)`
    /// for odd `n`, so `∂u/∂t(·, 0) = g` is not guaranteed when `g ≠ 0`.
    pub g: Option<SampledFunction>,
}

impl PdeProblem {
    pub fn wave(order: Bicomplex, lambda: Bicomplex, f: SampledFunction, g: Option<SampledFunction>) -> Self {
        PdeProblem { kind: PdeKind::Wave, order, lambda, n: f.dim(), f, g }
    }

    pub fn heat(order: Bicomplex, lambda: Bicomplex, f: SampledFunction) -> Self {
        PdeProblem { kind: PdeKind::Heat, order, lambda, n: f.dim(), f, g: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_DIM {
            return Err(Error::Precondition(format!("dimension must be in 1..={MAX_DIM}, got {}", self.n)));
        }
        if self.f.dim() != self.n || self.g.as_ref().is_some_and(|g| g.dim() != self.n) {
            return Err(Error::Precondition("initial data must have n coordinates".into()));
        }
        if self.lambda.is_singular() {
            return Err(Error::ZeroDivisor(format!("λ = {} must have two nonzero components", self.lambda)));
        }
        if self.kind == PdeKind::Heat && self.g.is_some() {
            return Err(Error::Precondition("the heat equation takes no initial velocity".into()));
        }
        Ok(())
    }
}

/// Evaluation grid: points `ω ∈ [0, ∞)^n` and times `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub omega: Vec<Vec<f64>>,
    pub t: Vec<f64>,
}

impl Grid {
    pub fn line(omega: &[f64], t: &[f64]) -> Self {
        Grid { omega: omega.iter().map(|&w| vec![w]).collect(), t: t.to_vec() }
    }
}

/// `start, start + step, …` up to and including `stop` (within rounding).
pub fn range_inclusive(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && start.is_finite() && stop.is_finite()) || stop < start {
        return Err(Error::Precondition(format!("invalid range {start}:{stop}:{step}")));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| start + k as f64 * step).collect())
}

/// Parses `start:stop:step`.
pub fn parse_range(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::Precondition(format!("range '{s}' must look like start:stop:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let p: Vec<f64> = parts.iter().map(|x| x.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_>>()?;
    range_inclusive(p[0], p[1], p[2])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionGrid {
    pub omega_grid: Vec<Vec<f64>>,
    pub t_grid: Vec<f64>,
    /// `values[i][j] = u(ω_i, t_j)`.
    pub values: Vec<Vec<Bicomplex>>,
}

/// `U(Z, t)` in the transform domain given `F(Z)`, `G(Z)` and `[Z]`.
pub fn spectral_solution(
    kind: PdeKind,
    n: usize,
    lambda: &Bicomplex,
    bracket: &Bicomplex,
    f: Bicomplex,
    g: Option<Bicomplex>,
    t: f64,
) -> Result<Bicomplex> {
    let arg = bracket.div(lambda)? * t;
    match kind {
        PdeKind::Heat => {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            Ok(f * (*bracket * *bracket * t * sign).div(lambda)?.exp())
        }
        PdeKind::Wave if n % 2 == 1 => {
            let cos = arg.map(|c| c.cos());
            let sin = arg.map(|c| c.sin());
            Ok(f * cos + g.unwrap_or(Bicomplex::ZERO) * sin)
        }
        PdeKind::Wave => {
            // (F[Z] ± λG)/(2[Z]) e^{±[Z]t/λ}
            let lg = *lambda * g.unwrap_or(Bicomplex::ZERO);
            let two_z = *bracket * 2.0;
            let plus = (f * *bracket + lg).div(&two_z)? * arg.exp();
            let minus = (f * *bracket - lg).div(&two_z)? * (-arg).exp();
            Ok(plus + minus)
        }
    }
}

/// Solver settings: transform accuracy plus the spectral cutoff `A` of the
/// one-dimensional solver, whose window is 1 on `[0, A]` and 0 beyond `2A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PdeConfig {
    #[serde(flatten)]
    pub transform: TransformConfig,
    pub spectral_cutoff: f64,
}

impl Default for PdeConfig {
    fn default() -> Self {
        PdeConfig { transform: TransformConfig::default(), spectral_cutoff: 256.0 }
    }
}

impl From<TransformConfig> for PdeConfig {
    fn from(transform: TransformConfig) -> Self {
        PdeConfig { transform, ..Default::default() }
    }
}

/// Smooth step: 1 on `[0, 1]`, 0 on `[2, ∞)`, `C^∞` in between.
fn window(x: f64) -> f64 {
    let psi = |s: f64| if s > 0.0 { (-1.0 / s).exp() } else { 0.0 };
    if x <= 1.0 {
        1.0
    } else if x >= 2.0 {
        0.0
    } else {
        let (a, b) = (psi(2.0 - x), psi(x - 1.0));
        a / (a + b)
    }
}

/// Nodes and weights on `[0, 2A]`: Gauss–Legendre panels of length `L`, the first
/// panel refined geometrically towards 0, weights multiplied by the window.
fn spectral_nodes(l: f64, cutoff: f64, points: usize) -> Vec<(f64, f64)> {
    let rule = gauss_legendre(points);
    let mut edges = vec![0.0];
    edges.extend((0..40).rev().map(|k| l * 0.5f64.powi(k)));
    let panels = (2.0 * cutoff / l).ceil() as usize;
    edges.extend((2..=panels).map(|k| k as f64 * l));
    let mut out = Vec::with_capacity(edges.len() * points);
    for e in edges.windows(2) {
        let (a, b) = (e[0], e[1]);
        let (m, h) = ((a + b) / 2.0, (b - a) / 2.0);
        for &(x, w) in rule.iter() {
            let z = m + h * x;
            let c = w * h * window(z / cutoff);
            if c != 0.0 {
                out.push((z, c));
            }
        }
    }
    out
}

/// Panel length resolving half an oscillation of kernel × `F(Z)` × time factor.
fn common_panel_length(problem: &PdeProblem, grid: &Grid) -> f64 {
    let w_max = grid.omega.iter().flatten().fold(0.0f64, |a, w| a.max(w.abs()));
    let t_max = grid.t.iter().fold(0.0f64, |a, t| a.max(t.abs()));
    let lam_min = problem.lambda.e1.norm().min(problem.lambda.e2.norm());
    let spread = |h: &SampledFunction| h.support().unwrap_or(1.0);
    let s = problem.g.as_ref().map_or(spread(&problem.f), |g| spread(&problem.f).max(spread(g)));
    PI / 1f64.max(w_max + s + t_max / lam_min)
}

fn check(problem: &PdeProblem, grid: &Grid) -> Result<()> {
    problem.validate()?;
    if let Some(p) = grid.omega.iter().find(|p| p.len() != problem.n) {
        return Err(Error::Precondition(format!("grid point {p:?} does not have {} coordinates", problem.n)));
    }
    if let Some(w) = grid.omega.iter().flatten().find(|w| !(**w >= 0.0 && w.is_finite())) {
        return Err(Error::Domain(format!("solutions are evaluated at ω ≥ 0, got {w}")));
    }
    if let Some(t) = grid.t.iter().find(|t| !t.is_finite()) {
        return Err(Error::Precondition(format!("time {t} is not finite")));
    }
    if problem.kind == PdeKind::Heat {
        if let Some(t) = grid.t.iter().find(|t| **t < 0.0) {
            return Err(Error::Precondition(format!("heat solutions need t ≥ 0, got {t}")));
        }
    }
    Ok(())
}

/// One dimension: `u(ω, t) = Σ_k c_k φ(Z_k/A) √(ωZ_k) J_V(ωZ_k) U(Z_k, t)` on a
/// node set shared by every grid point.
fn solve_line(problem: &PdeProblem, grid: &Grid, cfg: &PdeConfig) -> Result<SolutionGrid> {
    if !(cfg.spectral_cutoff > 0.0 && cfg.spectral_cutoff.is_finite()) {
        return Err(Error::Precondition(format!("spectral cutoff must be positive, got {}", cfg.spectral_cutoff)));
    }
    let tcfg = cfg.transform;
    let l = tcfg.quadrature.panel_length.unwrap_or_else(|| common_panel_length(problem, grid));
    let mut nodes = spectral_nodes(l, cfg.spectral_cutoff, tcfg.quadrature.points_per_panel);
    if problem.kind == PdeKind::Heat {
        // drop nodes where exp(−Z² t/λ) < e^{−45} for every requested t
        let t_min = grid.t.iter().fold(f64::INFINITY, |a, t| a.min(*t));
        let rate = (Bicomplex::ONE.div(&problem.lambda)?.e1.re).min(Bicomplex::ONE.div(&problem.lambda)?.e2.re);
        if t_min > 0.0 && rate > 0.0 {
            let z_max = (45.0 / (t_min * rate)).sqrt();
            nodes.retain(|&(z, _)| z <= z_max);
        }
    }
    let fwd = TransformConfig { quadrature: QuadratureConfig { panel_length: None, ..tcfg.quadrature }, ..tcfg };
    let v = problem.order;
    let hat = |h: &SampledFunction| -> Result<Vec<Bicomplex>> {
        nodes.par_iter().map(|&(z, _)| Ok(hankel_forward(&v, h, &[Bicomplex::from_real(z)], &fwd)?.value)).collect()
    };
    let f_hat = hat(&problem.f)?;
    let g_hat = problem.g.as_ref().map(hat).transpose()?;

    let spectra: Vec<Vec<Bicomplex>> = grid
        .t
        .par_iter()
        .map(|&t| {
            nodes
                .iter()
                .enumerate()
                .map(|(k, &(z, c))| {
                    let u = spectral_solution(
                        problem.kind,
                        1,
                        &problem.lambda,
                        &Bicomplex::from_real(z),
                        f_hat[k],
                        g_hat.as_ref().map(|g| g[k]),
                        t,
                    )?;
                    Ok(u * c)
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let values = grid
        .omega
        .par_iter()
        .map(|p| {
            let kern: Vec<Bicomplex> = nodes
                .iter()
                .map(|&(z, _)| bicomplex_kernel(&v, p[0], &Bicomplex::from_real(z)))
                .collect::<Result<_>>()?;
            Ok(spectra.iter().map(|s| s.iter().zip(&kern).fold(Bicomplex::ZERO, |a, (u, k)| a + *u * *k)).collect())
        })
        .collect::<Result<_>>()?;
    Ok(SolutionGrid { omega_grid: grid.omega.clone(), t_grid: grid.t.clone(), values })
}

/// Several dimensions: nested inverse transforms of `U(·, t)` at each grid point.
fn solve_nested(problem: &PdeProblem, grid: &Grid, cfg: &PdeConfig) -> Result<SolutionGrid> {
    let tcfg = cfg.transform;
    let fwd = TransformConfig { quadrature: QuadratureConfig { panel_length: None, ..tcfg.quadrature }, ..tcfg };
    let n = problem.n;
    let etas: Vec<SampledFunction> = grid
        .t
        .iter()
        .map(|&t| {
            let (v, f, g, kind, lambda) =
                (problem.order, problem.f.clone(), problem.g.clone(), problem.kind, problem.lambda);
            SampledFunction::multivariate(n, move |z: &[f64]| {
                let pts: Vec<Bicomplex> = z.iter().map(|&x| Bicomplex::from_real(x)).collect();
                let bracket = Bicomplex::from_real(z.iter().product());
                let fz = hankel_forward(&v, &f, &pts, &fwd)?.value;
                let gz = g.as_ref().map(|g| hankel_forward(&v, g, &pts, &fwd).map(|r| r.value)).transpose()?;
                spectral_solution(kind, n, &lambda, &bracket, fz, gz, t)
            })
        })
        .collect();
    let jobs: Vec<(usize, usize)> =
        (0..grid.omega.len()).flat_map(|i| (0..grid.t.len()).map(move |j| (i, j))).collect();
    let results: Vec<Result<Bicomplex>> = jobs
        .par_iter()
        .map(|&(i, j)| Ok(hankel_inverse(&problem.order, &etas[j], &grid.omega[i], &tcfg)?.value))
        .collect();
    let mut values = vec![vec![Bicomplex::ZERO; grid.t.len()]; grid.omega.len()];
    for (&(i, j), r) in jobs.iter().zip(results) {
        values[i][j] = r?;
    }
    Ok(SolutionGrid { omega_grid: grid.omega.clone(), t_grid: grid.t.clone(), values })
}

fn solve(problem: &PdeProblem, grid: &Grid, cfg: &PdeConfig) -> Result<SolutionGrid> {
    check(problem, grid)?;
    if problem.n == 1 {
        solve_line(problem, grid, cfg)
    } else {
        solve_nested(problem, grid, cfg)
    }
}

/// Wave solution on a grid.
pub fn solve_wave(problem: &PdeProblem, grid: &Grid, cfg: &PdeConfig) -> Result<SolutionGrid> {
    if problem.kind != PdeKind::Wave {
        return Err(Error::Precondition("solve_wave needs a wave problem".into()));
    }
    solve(problem, grid, cfg)
}

/// Heat solution on a grid.
pub fn solve_heat(problem: &PdeProblem, grid: &Grid, cfg: &PdeConfig) -> Result<SolutionGrid> {
    if problem.kind != PdeKind::Heat {
        return Err(Error::Precondition("solve_heat needs a heat problem".into()));
    }
    solve(problem, grid, cfg)
}

/// The two figure problems: `V = −½`, `λ = 1`, `f` the indicator of `(0, 1)`, `g = 0`.
pub fn figure_problem(which: PdeKind) -> PdeProblem {
    let v = Bicomplex::from_real(-0.5);
    let f = crate::hankel::function::builtin("indicator", &v).expect("builtin exists");
    match which {
        PdeKind::Wave => PdeProblem::wave(v, Bicomplex::ONE, f, None),
        PdeKind::Heat => PdeProblem::heat(v, Bicomplex::ONE, f),
    }
}

/// Solves the figure problem on `grid`.
pub fn figure_data(which: PdeKind, grid: &Grid, cfg: &PdeConfig) -> Result<SolutionGrid> {
    solve(&figure_problem(which), grid, cfg)
}

/// Writes `grid` as CSV with columns `omega, t, u_e1_re, u_e1_im, u_e2_re, u_e2_im`
/// (`omega1, omega2, …` for `n > 1`).
pub fn write_csv<W: Write>(sol: &SolutionGrid, out: W) -> std::io::Result<()> {
    let n = sol.omega_grid.first().map_or(1, |p| p.len());
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> =
        if n == 1 { vec!["omega".into()] } else { (1..=n).map(|k| format!("omega{k}")).collect() };
    header.extend(["t", "u_e1_re", "u_e1_im", "u_e2_re", "u_e2_im"].map(String::from));
    w.write_record(&header)?;
    for (p, row) in sol.omega_grid.iter().zip(&sol.values) {
        for (t, u) in sol.t_grid.iter().zip(row) {
            let mut rec: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            rec.push(t.to_string());
            for x in [u.e1.re, u.e1.im, u.e2.re, u.e2.im] {
                rec.push(x.to_string());
            }
            w.write_record(&rec)?;
        }
    }
    w.flush()
}

/// Solves the figure problem and writes its CSV.
pub fn emit_figure_data<W: Write>(which: PdeKind, grid: &Grid, cfg: &PdeConfig, out: W) -> Result<SolutionGrid> {
    let sol = figure_data(which, grid, cfg)?;
    write_csv(&sol, out).map_err(|e| Error::Domain(format!("could not write CSV: {e}")))?;
    Ok(sol)
}

/// Largest imaginary part over both components.
pub fn max_imaginary(sol: &SolutionGrid) -> f64 {
    sol.values.iter().flatten().fold(0.0f64, |a, u| a.max(u.e1.im.abs()).max(u.e2.im.abs()))
}
