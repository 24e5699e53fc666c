//! Complex and bicomplex gamma functions (Lanczos approximation with reflection).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bicomplex::Bicomplex;
use crate::error::{Components, Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// True when `z` is a pole of Γ (a nonpositive integer).
pub fn is_gamma_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// `sin(πz)` with the real part reduced by the nearest integer first.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = z.re - n;
    let (s, c) = (PI * r).sin_cos();
    let y = PI * z.im;
    let v = Complex64::new(s * y.cosh(), c * y.sinh());
    if (n as i64) % 2 == 0 {
        v
    } else {
        -v
    }
}

/// Lanczos sum and `t = z + g − ½` for `Re z ≥ ½`.
fn lanczos_parts(z: Complex64) -> (Complex64, Complex64) {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_P[0], 0.0);
    for (i, p) in LANCZOS_P.iter().enumerate().skip(1) {
        x += *p / (z + i as f64);
    }
    (x, z + LANCZOS_G + 0.5)
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let (x, t) = lanczos_parts(z);
    0.5 * (2.0 * PI).ln() + (z - 0.5) * t.ln() - t + x.ln()
}

pub fn complex_gamma(z: Complex64) -> Result<Complex64> {
    if is_gamma_pole(z) {
        return Err(Error::Pole(Components { e1: true, e2: true }));
    }
    if z.re < 0.5 {
        let g = complex_gamma(1.0 - z)?;
        return Ok(PI / (sin_pi(z) * g));
    }
    if z.im == 0.0 && z.re.fract() == 0.0 && z.re <= 171.0 {
        let mut f = 1.0;
        for k in 2..(z.re as u64) {
            f *= k as f64;
        }
        return Ok(Complex64::new(f, 0.0));
    }
    Ok(ln_gamma_right(z).exp())
}

/// `1/Γ(z)`, which is entire; returns exactly zero at the poles of Γ.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if is_gamma_pole(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        // 1/Γ(z) = sin(πz) Γ(1−z) / π
        return match complex_gamma(1.0 - z) {
            Ok(g) => sin_pi(z) * g / PI,
            Err(_) => Complex64::new(0.0, 0.0),
        };
    }
    (-ln_gamma_right(z)).exp()
}

/// A logarithm of Γ(z) (not necessarily the principal branch of `ln Γ`);
/// `exp(ln_gamma(z)) = Γ(z)`.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_gamma_pole(z) {
        return Err(Error::Pole(Components { e1: true, e2: true }));
    }
    if z.re < 0.5 {
        return Ok(Complex64::new(PI.ln(), 0.0) - sin_pi(z).ln() - ln_gamma_right(1.0 - z));
    }
    Ok(ln_gamma_right(z))
}

/// `ln Γ(x)` for real `x > 0`.
pub fn ln_gamma_real(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma_right(Complex64::new(1.0 - x, 0.0)).re;
    }
    ln_gamma_right(Complex64::new(x, 0.0)).re
}

pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(complex_gamma(Complex64::new(x, 0.0))?.re)
}

/// Γ_b(Z) = Γ(z1) e1 + Γ(z2) e2.
pub fn bicomplex_gamma(z: &Bicomplex) -> Result<Bicomplex> {
    let p1 = is_gamma_pole(z.e1);
    let p2 = is_gamma_pole(z.e2);
    if p1 || p2 {
        return Err(Error::Pole(Components { e1: p1, e2: p2 }));
    }
    Ok(Bicomplex::new(complex_gamma(z.e1)?, complex_gamma(z.e2)?))
}

pub fn bicomplex_recip_gamma(z: &Bicomplex) -> Bicomplex {
    z.map(recip_gamma)
}

/// Pochhammer symbol `(a)_k`.
pub fn pochhammer(a: Complex64, k: u32) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (a + j as f64))
}
