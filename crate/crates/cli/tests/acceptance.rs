use std::f64::consts::FRAC_2_PI;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use bchankel::coherent::{
    coherent_state, eigen_residual, inner_product, ladder_coefficient, moment_suite, rho, weight_function,
    CoherentParams,
};
use bchankel::hankel::{
    builtin, hankel_forward, hankel_inverse, operational_identity_residual, power_gaussian, transformed, Identity,
    QuadratureConfig, SampledFunction, TransformConfig,
};
use bchankel::pde::{parse_range, solve_heat, solve_wave, Grid, PdeConfig, PdeProblem};
use bchankel::specfun::asymptotic::asymptotic_j;
use bchankel::specfun::bessel::{bessel_j, DEFAULT_TOL};
use bchankel::specfun::gamma::complex_gamma;
use bchankel::verify::{run_suites, VerifyConfig};
use bchankel::{Bicomplex, Hyperbolic};
use num_complex::Complex64;
use serde_json::Value;
use statrs::function::erf::erf;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pair(v: &Value) -> Complex64 {
    c(v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn bicomplex(v: &Value) -> Bicomplex {
    Bicomplex::new(pair(&v[0]), pair(&v[1]))
}

fn suites(names: &[&str], samples: usize) -> (bool, String) {
    let cfg = VerifyConfig { samples, ..VerifyConfig::default() };
    let mut ok = true;
    let mut parts = Vec::new();
    for name in names {
        match run_suites(name, &cfg) {
            Ok(r) => {
                let s = &r.suites[0];
                ok &= s.passed;
                parts.push(format!("{} max {:.2e} (tol {:.0e}, n={})", s.name, s.max_residual, s.tolerance, s.samples));
                if !s.errors.is_empty() {
                    parts.push(format!("errors: {:?}", s.errors));
                }
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    (ok, parts.join("; "))
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    o.detail = format!("{} [{:.2} s]", o.detail, elapsed.as_secs_f64());
    if let Some(l) = limit {
        if elapsed > l {
            o.passed = false;
            o.detail = format!("{} exceeds {} s", o.detail, l.as_secs());
        }
    }
    o
}

fn criterion_1() -> Outcome {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/bessel_oracle.json");
    let rows: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    timed(Some(Duration::from_secs(5)), || {
        let mut worst = 0.0f64;
        let mut failed = 0;
        for row in &rows {
            let (v, z, want) = (bicomplex(&row["nu"]), bicomplex(&row["z"]), bicomplex(&row["j"]));
            match bessel_j(&v, &z, DEFAULT_TOL) {
                Ok(r) => {
                    let err = (r.value - want).hyperbolic_norm().zip(&want.hyperbolic_norm(), |d, m| d / m);
                    worst = worst.max(err.max_component());
                }
                Err(_) => failed += 1,
            }
        }
        outcome(
            failed == 0 && worst <= 1e-12,
            format!("{} samples, max relative error {worst:.2e}, {failed} errors", rows.len()),
        )
    })
}

fn criterion_2() -> Outcome {
    let (ok, d) = suites(
        &[
            "recurrence-i",
            "recurrence-ii",
            "recurrence-iii",
            "differential",
            "ode",
            "negative-order",
            "generating-function",
            "laurent",
        ],
        100,
    );
    outcome(ok, d)
}

fn criterion_3() -> Outcome {
    timed(Some(Duration::from_secs(30)), || {
        let (ok, d) = suites(&["integral-beta", "integral-cosine", "integral-double", "integral-gamma-contour"], 5);
        outcome(ok, d)
    })
}

fn criterion_4() -> Outcome {
    let (ok, d) = suites(&["holomorphy-order", "holomorphy-argument"], 20);
    outcome(ok, d)
}

fn criterion_5() -> Outcome {
    // leading term exp((1−i)x) Γ(2ν+1) / (2^ν √x Γ(ν+1) Γ(ν+½)), built here from scratch
    let mut worst = 0.0f64;
    for (v, x) in [
        (Bicomplex::new(c(0.3, 0.2), c(1.5, -0.4)), Hyperbolic::new(20.0, 50.0)),
        (Bicomplex::from_reals(3.0, 3.5), Hyperbolic::splat(20.0)),
    ] {
        let lead = |nu: Complex64, x: f64| {
            let g = |z: Complex64| complex_gamma(z).unwrap();
            c(x, -x).exp() * g(2.0 * nu + 1.0) / ((nu * 2f64.ln()).exp() * x.sqrt() * g(nu + 1.0) * g(nu + 0.5))
        };
        let want = Bicomplex::new(lead(v.e1, x.e1), lead(v.e2, x.e2));
        let got = asymptotic_j(&v, &x, 1).unwrap().value;
        worst = worst.max((got - want).hyperbolic_norm().zip(&want.hyperbolic_norm(), |d, m| d / m).max_component());
    }
    let (ok, d) = suites(&["asymptotic-remainder"], 4);
    outcome(ok && worst < 1e-13, format!("k=0 constant rel err {worst:.1e}; {d} (ratio strictly below 1)"))
}

fn criterion_6() -> Outcome {
    timed(Some(Duration::from_secs(60)), || {
        let cfg = TransformConfig::default();
        let mut ok = true;
        let mut parts = Vec::new();

        let v = Bicomplex::from_real(-0.5);
        let f = builtin("indicator", &v).unwrap();
        let mut a = 0.0f64;
        for k in 1..=10 {
            let z = Bicomplex::new(c(0.55 * k as f64, 0.03 * k as f64), c(0.45 * k as f64 + 0.2, -0.04 * k as f64));
            let got = hankel_forward(&v, &f, &[z], &cfg).unwrap().value;
            let exact = z.map(|x| x.sin() / x * FRAC_2_PI.sqrt());
            a = a.max((got - exact).hyperbolic_norm().max_component());
        }
        ok &= a <= 1e-6;
        parts.push(format!("(a) {a:.1e}"));

        let mut b = 0.0f64;
        for nu in [-0.5, 0.0, 0.5, 2.0] {
            let v = Bicomplex::from_real(nu);
            let f = builtin("gaussian-monomial", &v).unwrap();
            for z in [0.4, 1.0, 1.9, 3.2] {
                let got = hankel_forward(&v, &f, &[Bicomplex::from_real(z)], &cfg).unwrap().value;
                let exact = Bicomplex::from_real(z.powf(nu + 0.5) * (-z * z / 2.0).exp());
                b = b.max((got - exact).hyperbolic_norm().max_component());
            }
        }
        ok &= b <= 1e-6;
        parts.push(format!("(b) {b:.1e}"));

        let v = Bicomplex::from_reals(0.5, 1.5);
        let f = power_gaussian(v + Bicomplex::from_real(2.5), 0.5);
        let eta = transformed(&v, &f, &cfg);
        let mut rt = 0.0f64;
        for w in [0.25, 0.9, 1.6, 2.4, 3.1] {
            let back = hankel_inverse(&v, &eta, &[w], &cfg).unwrap().value;
            rt = rt.max((back - f.eval1(w).unwrap()).hyperbolic_norm().max_component());
        }
        ok &= rt <= 1e-4;
        parts.push(format!("(c) {rt:.1e}"));

        let (v, s) = (Bicomplex::ONE, Bicomplex::ONE);
        let g = power_gaussian(Bicomplex::from_real(4.0), 1.0);
        let g2 = SampledFunction::separable(vec![g.clone(), builtin("cutoff-polynomial", &v).unwrap()]).unwrap();
        let (mut d1, mut d2) = (0.0f64, 0.0f64);
        for which in [Identity::I, Identity::Ii, Identity::Iii] {
            for z in [0.8, 1.5, 2.3] {
                let r = operational_identity_residual(which, &v, &s, &g, &[Bicomplex::from_real(z)], &cfg).unwrap();
                d1 = d1.max(r.max_component());
            }
            let z2 = [Bicomplex::from_reals(1.2, 0.9), Bicomplex::from_reals(0.7, 1.1)];
            d2 = d2.max(operational_identity_residual(which, &v, &s, &g2, &z2, &cfg).unwrap().max_component());
        }
        ok &= d1 <= 1e-5 && d2 <= 1e-4;
        parts.push(format!("(d) n=1 {d1:.1e}, n=2 {d2:.1e}"));
        outcome(ok, parts.join(", "))
    })
}

fn bump(w: f64) -> f64 {
    let x = (w - 0.5) / 0.25;
    if x.abs() < 1.0 {
        (1.0 - 1.0 / (1.0 - x * x)).exp()
    } else {
        0.0
    }
}

fn heat_oracle(w: f64, tau: f64) -> f64 {
    let s = 2.0 * tau.sqrt();
    0.5 * (erf((1.0 - w) / s) + erf((1.0 + w) / s))
}

fn figure_csv(which: &str) -> Result<f64, String> {
    let out = std::env::temp_dir().join(format!("bchankel-acceptance-{which}-{}.csv", std::process::id()));
    let status = Command::new(env!("CARGO_BIN_EXE_bchankel"))
        .args(["figure", which, "--omega", "0:1:0.02", "--t", "0:2:0.05", "--out"])
        .arg(&out)
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(String::from_utf8_lossy(&status.stderr).into_owned());
    }
    let mut rdr = csv::Reader::from_path(&out).map_err(|e| e.to_string())?;
    let mut rows = 0;
    let mut imag = 0.0f64;
    for rec in rdr.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        let x = |i: usize| rec[i].parse::<f64>().unwrap();
        if !(0..6).all(|i| x(i).is_finite()) {
            return Err("non-finite entry".into());
        }
        imag = imag.max(x(3).abs()).max(x(5).abs());
        rows += 1;
    }
    let _ = std::fs::remove_file(&out);
    if rows != 51 * 41 {
        return Err(format!("{rows} rows"));
    }
    Ok(imag)
}

fn criterion_7() -> Outcome {
    let half = Bicomplex::from_real(-0.5);
    let cfg = PdeConfig::default();
    let mut ok = true;
    let mut parts = Vec::new();

    let lambda = Bicomplex::from_reals(1.0, 2.0);
    let f = SampledFunction::new(|w| Ok(Bicomplex::from_real(bump(w)))).with_support(0.75);
    let (ws, ts) = ([0.1, 0.3, 0.5, 0.65, 0.9], [0.0, 0.1, 0.25, 0.4, 0.6]);
    let sol = solve_wave(&PdeProblem::wave(half, lambda, f, None), &Grid::line(&ws, &ts), &cfg).unwrap();
    let mut wave = 0.0f64;
    for (i, &w) in ws.iter().enumerate() {
        for (j, &t) in ts.iter().enumerate() {
            let u = sol.values[i][j];
            for (lam, got) in [(1.0, u.e1), (2.0, u.e2)] {
                let s = t / lam;
                wave = wave.max((got.re - 0.5 * (bump((w - s).abs()) + bump(w + s))).abs());
            }
        }
    }
    ok &= wave <= 1e-3;
    parts.push(format!("wave {wave:.1e}"));

    // no comparison within 0.05 of the jump at ω = 1
    let lambda = Bicomplex::from_reals(1.0, 0.5);
    let f = builtin("indicator", &half).unwrap();
    let (ws, ts) = ([0.0, 0.25, 0.5, 0.8, 0.94, 1.06, 1.4], [0.05, 0.2, 0.6, 1.0, 2.0]);
    let sol = solve_heat(&PdeProblem::heat(half, lambda, f.clone()), &Grid::line(&ws, &ts), &cfg).unwrap();
    let mut heat = 0.0f64;
    for (i, &w) in ws.iter().enumerate() {
        for (j, &t) in ts.iter().enumerate() {
            let u = sol.values[i][j];
            for (lam, got) in [(1.0, u.e1), (0.5, u.e2)] {
                heat = heat.max((got.re - heat_oracle(w, t / lam)).abs());
            }
        }
    }
    ok &= heat <= 1e-3;
    parts.push(format!("heat {heat:.1e}"));

    let ts = parse_range("0.1:2:0.05").unwrap();
    let sol = solve_heat(&PdeProblem::heat(half, Bicomplex::ONE, f), &Grid::line(&[0.5], &ts), &cfg).unwrap();
    let row = &sol.values[0];
    let monotone = row.windows(2).all(|p| p[1].e1.re < p[0].e1.re && p[1].e2.re < p[0].e2.re);
    ok &= monotone;
    parts.push(format!("monotone decay {monotone}"));

    for which in ["wave", "heat"] {
        match figure_csv(which) {
            Ok(imag) => {
                ok &= imag <= 1e-8;
                parts.push(format!("{which} figure max |imag| {imag:.1e}"));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{which} figure failed: {e}"));
            }
        }
    }
    outcome(ok, parts.join(", "))
}

fn criterion_8() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();

    let v = Hyperbolic::new(0.5, 1.5);
    let mut norm = 0.0f64;
    for z in [Bicomplex::new(c(0.8, 0.3), c(1.5, -0.7)), Bicomplex::new(c(3.0, 1.0), c(-2.0, 2.5))] {
        let s = coherent_state(&CoherentParams::new(v, z, 200)).unwrap();
        let ip = inner_product(&s.coefficients, &s.coefficients);
        norm = norm.max((ip - Bicomplex::ONE).hyperbolic_norm().max_component());
    }
    ok &= norm <= 1e-10;
    parts.push(format!("norm {norm:.1e}"));

    let mut eig = 0.0f64;
    for n in [150usize, 12, 6] {
        let e = eigen_residual(&CoherentParams::new(
            Hyperbolic::new(0.5, 0.5),
            Bicomplex::new(c(0.5, 0.0), c(0.5, 0.2)),
            n,
        ))
        .unwrap();
        ok &= e.holds(10.0);
        eig = eig.max(e.residual.zip(&e.bound, |a, b| if a == 0.0 { 0.0 } else { a / b }).max_component());
    }
    parts.push(format!("eigen residual/bound {eig:.2}"));

    let v = Hyperbolic::new(-0.5, 2.0);
    let mut prod = Hyperbolic::new(1.0, 1.0);
    let mut ladder = 0.0f64;
    for n in 0..=60 {
        let r = rho(n, &v).unwrap();
        ladder = ladder.max((prod.e1 / r.e1.sqrt() - 1.0).abs()).max((prod.e2 / r.e2.sqrt() - 1.0).abs());
        prod = prod * ladder_coefficient(n, &v);
    }
    ok &= ladder <= 1e-12;
    parts.push(format!("Π f(r) vs √ρ(n) {ladder:.1e}"));

    let start = Instant::now();
    let ns: Vec<usize> = (0..=6).collect();
    match moment_suite(&ns, &[-0.5, 0.0, 0.5, 1.0, 2.0], &QuadratureConfig::default()) {
        Ok(cases) => {
            let worst = cases.iter().map(|m| m.rel_err).fold(0.0, f64::max);
            let secs = start.elapsed().as_secs_f64();
            ok &= cases.len() == 35 && worst <= 1e-6 && secs <= 30.0;
            parts.push(format!("{} moments max rel {worst:.1e} in {secs:.2} s", cases.len()));
        }
        Err(e) => {
            ok = false;
            parts.push(format!("moments: {e}"));
        }
    }

    let mut positive = true;
    let mut points = 0;
    for nu in [-0.5, 0.0, 0.5, 1.0, 2.0] {
        for k in 0..=60 {
            let y = 10f64.powf(-6.0 + k as f64 * 0.1);
            let w = weight_function(&Hyperbolic::splat(y), &Hyperbolic::splat(nu)).unwrap();
            positive &= w.e1 > 0.0 && w.e2 > 0.0 && w.e1.is_finite();
            points += 1;
        }
    }
    ok &= positive;
    parts.push(format!("weight positive on {points} points {positive}"));
    outcome(ok, parts.join(", "))
}

fn verify_run(threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bchankel"))
        .args(["verify", "all", "--seed", "42"])
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {:?}", out.status.code()));
    }
    Ok(out.stdout)
}

fn criterion_9() -> Outcome {
    let runs: Result<Vec<Vec<u8>>, String> = ["8", "8", "1"].into_iter().map(verify_run).collect();
    match runs {
        Ok(r) => {
            let repeat = r[0] == r[1];
            let threads = r[0] == r[2];
            outcome(repeat && threads, format!("repeat identical {repeat}, 1 vs 8 threads identical {threads}"))
        }
        Err(e) => outcome(false, e),
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("idempotent-equivalence oracle", criterion_1),
        ("identity suite", criterion_2),
        ("integral representations", criterion_3),
        ("holomorphy", criterion_4),
        ("asymptotic expansion", criterion_5),
        ("hankel transform", criterion_6),
        ("pde reductions", criterion_7),
        ("coherent states", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {} {name}: {} ({})", i + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail);
        if !o.passed {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
