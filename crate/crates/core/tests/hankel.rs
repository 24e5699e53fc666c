use std::f64::consts::FRAC_2_PI;

use bchankel::hankel::quadrature::integrate_from;
use bchankel::hankel::{
    builtin, hankel_forward, hankel_forward_many, hankel_inverse, operational_identity_residual, power_gaussian,
    transformed, Identity, QuadratureConfig, SampledFunction, TransformConfig,
};
use bchankel::{Bicomplex, Error};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Classical one-dimensional transform of a scalar function using the Amos `J_ν`.
fn scalar_oracle(nu: f64, z: Complex64, f: impl Fn(f64) -> f64, support: Option<f64>) -> Complex64 {
    let cfg = QuadratureConfig::default();
    let l = std::f64::consts::PI / z.re.abs().max(1.0);
    integrate_from(
        |w| {
            if w == 0.0 {
                return Ok(c(0.0, 0.0));
            }
            let x = z * w;
            Ok(x.sqrt() * complex_bessel::besselj(nu, x).unwrap() * f(w))
        },
        0.0,
        support,
        l,
        &cfg,
    )
    .unwrap()
    .value
}

#[test]
fn indicator_matches_closed_form() {
    let v = Bicomplex::from_real(-0.5);
    let f = builtin("indicator", &v).unwrap();
    for k in 1..=10 {
        let z = Bicomplex::new(c(0.4 * k as f64, 0.05 * k as f64), c(0.3 * k as f64 + 0.1, -0.02 * k as f64));
        let r = hankel_forward(&v, &f, &[z], &TransformConfig::default()).unwrap();
        let exact = z.map(|x| x.sin() / x * FRAC_2_PI.sqrt());
        assert!((r.value - exact).hyperbolic_norm().max_component() < 1e-10);
    }
}

#[test]
fn gaussian_monomial_self_reciprocal() {
    for nu in [-0.5, 0.0, 0.5, 2.0] {
        let v = Bicomplex::from_real(nu);
        let f = builtin("gaussian-monomial", &v).unwrap();
        for z in [0.5, 1.3, 2.7, 4.0] {
            let r = hankel_forward(&v, &f, &[Bicomplex::from_real(z)], &TransformConfig::default()).unwrap();
            let exact = z.powf(nu + 0.5) * (-z * z / 2.0).exp();
            assert!((r.value.e1.re - exact).abs() < 1e-9, "ν={nu} z={z}: {r:?}");
            assert!(r.value.e1.im.abs() < 1e-12);
        }
    }
}

#[test]
fn componentwise_factorization_against_scalar_oracle() {
    let v = Bicomplex::from_reals(0.3, 1.7);
    let f1 = |w: f64| w.powi(2) * (-w * w).exp();
    let f2 = |w: f64| (1.0 + w) * (-w * w / 2.0).exp();
    let f = SampledFunction::new(move |w| Ok(Bicomplex::from_reals(f1(w), f2(w))));
    let z = Bicomplex::new(c(1.4, 0.3), c(2.2, -0.4));
    let r = hankel_forward(&v, &f, &[z], &TransformConfig::default()).unwrap();
    let a = scalar_oracle(0.3, z.e1, f1, None);
    let b = scalar_oracle(1.7, z.e2, f2, None);
    assert!((r.value.e1 - a).norm() < 1e-8, "{} vs {a}", r.value.e1);
    assert!((r.value.e2 - b).norm() < 1e-8, "{} vs {b}", r.value.e2);
}

#[test]
fn linearity() {
    let v = Bicomplex::from_reals(0.5, 1.0);
    let f = builtin("gaussian-monomial", &v).unwrap();
    let g = power_gaussian(Bicomplex::from_reals(2.0, 3.0), 1.0);
    let (a, b) = (Bicomplex::new(c(0.7, -0.2), c(1.1, 0.4)), Bicomplex::new(c(-0.3, 0.9), c(0.2, 0.0)));
    let (f2, g2) = (f.clone(), g.clone());
    let h = SampledFunction::new(move |w| Ok(a * f2.eval1(w)? + b * g2.eval1(w)?));
    let z = [Bicomplex::new(c(1.1, 0.1), c(0.8, -0.1))];
    let cfg = TransformConfig::default();
    let lhs = hankel_forward(&v, &h, &z, &cfg).unwrap().value;
    let rhs = a * hankel_forward(&v, &f, &z, &cfg).unwrap().value + b * hankel_forward(&v, &g, &z, &cfg).unwrap().value;
    assert!((lhs - rhs).hyperbolic_norm().max_component() < 1e-10);
}

#[test]
fn separable_two_dimensional_transform() {
    let v = Bicomplex::from_real(0.5);
    let f1 = builtin("gaussian-monomial", &v).unwrap();
    let f2 = builtin("cutoff-polynomial", &v).unwrap();
    let f = SampledFunction::separable(vec![f1.clone(), f2.clone()]).unwrap();
    let (z1, z2) = (Bicomplex::from_real(1.2), Bicomplex::from_real(0.8));
    let cfg = TransformConfig::default();
    let both = hankel_forward(&v, &f, &[z1, z2], &cfg).unwrap().value;
    let prod =
        hankel_forward(&v, &f1, &[z1], &cfg).unwrap().value * hankel_forward(&v, &f2, &[z2], &cfg).unwrap().value;
    assert!((both - prod).hyperbolic_norm().max_component() < 1e-8);
}

#[test]
fn round_trip_non_eigenfunction() {
    // ω^{ν+5/2} e^{−ω²/2} is not its own transform
    let v = Bicomplex::from_reals(0.0, 1.0);
    let f = power_gaussian(v + Bicomplex::from_real(2.5), 0.5);
    let cfg = TransformConfig::default();
    let eta = transformed(&v, &f, &cfg);
    for w in [0.3, 0.8, 1.5, 2.2, 3.0] {
        let back = hankel_inverse(&v, &eta, &[w], &cfg).unwrap().value;
        let orig = f.eval1(w).unwrap();
        assert!((back - orig).hyperbolic_norm().max_component() < 1e-6, "ω={w}: {back} vs {orig}");
        let fw = hankel_forward(&v, &f, &[Bicomplex::from_real(w)], &cfg).unwrap().value;
        assert!((fw - orig).hyperbolic_norm().max_component() > 1e-3);
    }
}

#[test]
fn parallel_evaluation_is_ordered_and_deterministic() {
    let v = Bicomplex::from_reals(0.5, 2.0);
    let f = builtin("gaussian-monomial", &v).unwrap();
    let pts: Vec<Vec<Bicomplex>> =
        (1..=12).map(|k| vec![Bicomplex::from_reals(0.3 * k as f64, 0.25 * k as f64)]).collect();
    let cfg = TransformConfig::default();
    let par = hankel_forward_many(&v, &f, &pts, &cfg);
    for (p, r) in pts.iter().zip(par) {
        let s = hankel_forward(&v, &f, p, &cfg).unwrap();
        assert_eq!(r.unwrap(), s);
    }
}

#[test]
fn operational_rules_one_and_two_dimensions() {
    let v = Bicomplex::ONE;
    let s = Bicomplex::ONE;
    let f = power_gaussian(Bicomplex::from_real(4.0), 1.0);
    let cfg = TransformConfig::default();
    let z = Bicomplex::from_real(1.5);
    for which in [Identity::I, Identity::Ii, Identity::Iii] {
        let r = operational_identity_residual(which, &v, &s, &f, &[z], &cfg).unwrap();
        assert!(r.max_component() < 1e-8, "{which:?}: {r}");
    }
    let g = SampledFunction::separable(vec![f.clone(), builtin("cutoff-polynomial", &v).unwrap()]).unwrap();
    let z2 = [Bicomplex::from_reals(1.2, 0.9), Bicomplex::from_reals(0.7, 1.1)];
    for which in [Identity::I, Identity::Ii, Identity::Iii] {
        let r = operational_identity_residual(which, &v, &s, &g, &z2, &cfg).unwrap();
        assert!(r.max_component() < 1e-7, "{which:?}: {r}");
    }
}

#[test]
fn operators_reject_plain_multivariate() {
    let f = SampledFunction::multivariate(2, |w| Ok(Bicomplex::from_real(w[0] * w[1])));
    let r = operational_identity_residual(
        Identity::I,
        &Bicomplex::ONE,
        &Bicomplex::ONE,
        &f,
        &[Bicomplex::ONE, Bicomplex::ONE],
        &TransformConfig::default(),
    );
    assert!(matches!(r, Err(Error::Precondition(_))));
}
