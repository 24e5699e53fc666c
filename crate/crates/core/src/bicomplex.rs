//! Bicomplex and hyperbolic numbers stored in idempotent form.
//!
//! A bicomplex number `Z = λ1 + j λ2` is kept as the pair `(z1, z2)` with
//! `Z = z1 e1 + z2 e2`, `z1 = λ1 − iλ2`, `z2 = λ1 + iλ2`. Every ring operation
//! then acts on the two complex components independently.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Bicomplex {
    pub e1: Complex64,
    pub e2: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Hyperbolic {
    pub e1: f64,
    pub e2: f64,
}

/// Result of comparing two hyperbolic numbers under the componentwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum HyperbolicOrdering {
    /// Both components strictly smaller.
    Less,
    /// Both components smaller or equal, at least one equal.
    LessOrEqual,
    /// Both components strictly larger.
    Greater,
    /// Both components larger or equal, at least one equal.
    GreaterOrEqual,
    Incomparable,
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    pub const ONE: Bicomplex = Bicomplex::new(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
    /// The idempotent `e1 = (1 + k)/2`.
    pub const E1: Bicomplex = Bicomplex::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    /// The idempotent `e2 = (1 − k)/2`.
    pub const E2: Bicomplex = Bicomplex::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    /// The hyperbolic unit `j = −i e1 + i e2`.
    pub const J: Bicomplex = Bicomplex::new(Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0));
    /// `k = e1 − e2`, so that `k² = 1`.
    pub const K: Bicomplex = Bicomplex::new(Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0));

    pub const fn new(e1: Complex64, e2: Complex64) -> Self {
        Bicomplex { e1, e2 }
    }

    pub fn from_reals(e1: f64, e2: f64) -> Self {
        Bicomplex::new(Complex64::new(e1, 0.0), Complex64::new(e2, 0.0))
    }

    pub fn from_real(x: f64) -> Self {
        Bicomplex::from_reals(x, x)
    }

    /// Embeds a complex number of `C(i)` as `c e1 + c e2`.
    pub fn from_complex(c: Complex64) -> Self {
        Bicomplex::new(c, c)
    }

    /// Builds `λ1 + j λ2`.
    pub fn from_canonical(l1: Complex64, l2: Complex64) -> Self {
        Bicomplex::new(l1 - I * l2, l1 + I * l2)
    }

    /// Returns `(λ1, λ2)` with `Z = λ1 + j λ2`.
    pub fn to_canonical(&self) -> (Complex64, Complex64) {
        ((self.e1 + self.e2) * 0.5, I * (self.e1 - self.e2) * 0.5)
    }

    /// Real coordinates `(a, b, c, d)` with `Z = a + ib + jc + kd`.
    pub fn to_real_coords(&self) -> [f64; 4] {
        let (l1, l2) = self.to_canonical();
        [l1.re, l1.im, l2.re, l2.im]
    }

    pub fn component(&self, l: usize) -> Complex64 {
        match l {
            0 => self.e1,
            1 => self.e2,
            _ => panic!("bicomplex component index {l} out of range"),
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Bicomplex {
        Bicomplex::new(f(self.e1), f(self.e2))
    }

    pub fn try_map(&self, f: impl Fn(Complex64) -> Result<Complex64>) -> Result<Bicomplex> {
        Ok(Bicomplex::new(f(self.e1)?, f(self.e2)?))
    }

    pub fn zip(&self, other: &Bicomplex, f: impl Fn(Complex64, Complex64) -> Complex64) -> Bicomplex {
        Bicomplex::new(f(self.e1, other.e1), f(self.e2, other.e2))
    }

    /// Returns `(Z̄, Z̃, Z*)`.
    ///
    /// With `Z = λ1 + jλ2`: `Z̄ = conj λ1 + j conj λ2`, `Z̃ = λ1 − jλ2`,
    /// `Z* = conj λ1 − j conj λ2`.
    pub fn conjugates(&self) -> (Bicomplex, Bicomplex, Bicomplex) {
        let (l1, l2) = self.to_canonical();
        (
            Bicomplex::from_canonical(l1.conj(), l2.conj()),
            Bicomplex::from_canonical(l1, -l2),
            Bicomplex::from_canonical(l1.conj(), -l2.conj()),
        )
    }

    /// The `*` conjugate, which conjugates each idempotent component in place.
    pub fn star(&self) -> Bicomplex {
        Bicomplex::new(self.e1.conj(), self.e2.conj())
    }

    pub fn hyperbolic_norm(&self) -> Hyperbolic {
        Hyperbolic::new(self.e1.norm(), self.e2.norm())
    }

    /// Euclidean norm of the four real coordinates.
    pub fn euclidean_norm(&self) -> f64 {
        ((self.e1.norm_sqr() + self.e2.norm_sqr()) / 2.0).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.e1 == Complex64::new(0.0, 0.0) && self.e2 == Complex64::new(0.0, 0.0)
    }

    pub fn is_zero_divisor(&self) -> bool {
        let z1 = self.e1 == Complex64::new(0.0, 0.0);
        let z2 = self.e2 == Complex64::new(0.0, 0.0);
        z1 != z2
    }

    /// True when `Z ∈ O_2 ∪ {0}`, i.e. `Z` has no inverse.
    pub fn is_singular(&self) -> bool {
        self.e1 == Complex64::new(0.0, 0.0) || self.e2 == Complex64::new(0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.e1.is_finite() && self.e2.is_finite()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.e1.im == 0.0 && self.e2.im == 0.0
    }

    pub fn recip(&self) -> Result<Bicomplex> {
        if self.is_singular() {
            return Err(Error::ZeroDivisor(format!("{self} has no inverse")));
        }
        Ok(Bicomplex::new(self.e1.inv(), self.e2.inv()))
    }

    pub fn div(&self, other: &Bicomplex) -> Result<Bicomplex> {
        if other.is_singular() {
            return Err(Error::ZeroDivisor(format!("division by {other}")));
        }
        Ok(Bicomplex::new(self.e1 / other.e1, self.e2 / other.e2))
    }

    pub fn scale(&self, s: f64) -> Bicomplex {
        Bicomplex::new(self.e1 * s, self.e2 * s)
    }

    pub fn exp(&self) -> Bicomplex {
        self.map(|z| z.exp())
    }

    /// Principal square root per component.
    pub fn sqrt(&self) -> Bicomplex {
        self.map(|z| z.sqrt())
    }

    pub fn powi(&self, n: i32) -> Bicomplex {
        self.map(|z| z.powi(n))
    }

    /// `Z^V` with the principal branch in each component.
    pub fn pow(&self, v: &Bicomplex) -> Result<Bicomplex> {
        Ok(Bicomplex::new(cpow(self.e1, v.e1)?, cpow(self.e2, v.e2)?))
    }

    /// Componentwise closeness: `|Z − W|_h <_h (eps, eps)` in the non-strict sense.
    pub fn approx_eq(&self, other: &Bicomplex, eps: f64) -> bool {
        let d = (*self - *other).hyperbolic_norm();
        d.e1 <= eps && d.e2 <= eps
    }
}

/// Principal power `z^ν` for complex scalars.
///
/// Integer exponents use repeated multiplication, so negative real bases are
/// allowed there. `0^ν` is `0` when `Re ν > 0` and `1` when `ν = 0`.
pub fn cpow(z: Complex64, nu: Complex64) -> Result<Complex64> {
    if nu == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if z == Complex64::new(0.0, 0.0) {
        if nu.re > 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Err(Error::ZeroDivisor(format!("0 raised to {nu} with non-positive real part")));
    }
    if nu.im == 0.0 && nu.re.fract() == 0.0 && nu.re.abs() <= i32::MAX as f64 {
        return Ok(z.powi(nu.re as i32));
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::Branch(format!("non-integer power {nu} of negative real {}", z.re)));
    }
    Ok((nu * z.ln()).exp())
}

impl Hyperbolic {
    pub const ZERO: Hyperbolic = Hyperbolic { e1: 0.0, e2: 0.0 };

    pub const fn new(e1: f64, e2: f64) -> Self {
        Hyperbolic { e1, e2 }
    }

    pub fn splat(x: f64) -> Self {
        Hyperbolic::new(x, x)
    }

    pub fn is_positive(&self) -> bool {
        self.e1 >= 0.0 && self.e2 >= 0.0
    }

    pub fn is_negative(&self) -> bool {
        self.e1 <= 0.0 && self.e2 <= 0.0
    }

    pub fn compare(&self, other: &Hyperbolic) -> HyperbolicOrdering {
        use std::cmp::Ordering::*;
        let o1 = self.e1.partial_cmp(&other.e1);
        let o2 = self.e2.partial_cmp(&other.e2);
        match (o1, o2) {
            (Some(Less), Some(Less)) => HyperbolicOrdering::Less,
            (Some(Greater), Some(Greater)) => HyperbolicOrdering::Greater,
            (Some(Less | Equal), Some(Less | Equal)) => HyperbolicOrdering::LessOrEqual,
            (Some(Greater | Equal), Some(Greater | Equal)) => HyperbolicOrdering::GreaterOrEqual,
            _ => HyperbolicOrdering::Incomparable,
        }
    }

    /// Non-strict order: `other − self ∈ D⁺`.
    pub fn leq_h(&self, other: &Hyperbolic) -> bool {
        self.e1 <= other.e1 && self.e2 <= other.e2
    }

    /// Strict order: both components strictly smaller.
    pub fn lt_h(&self, other: &Hyperbolic) -> bool {
        self.e1 < other.e1 && self.e2 < other.e2
    }

    pub fn max_component(&self) -> f64 {
        self.e1.max(self.e2)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Hyperbolic {
        Hyperbolic::new(f(self.e1), f(self.e2))
    }

    pub fn zip(&self, other: &Hyperbolic, f: impl Fn(f64, f64) -> f64) -> Hyperbolic {
        Hyperbolic::new(f(self.e1, other.e1), f(self.e2, other.e2))
    }

    /// Componentwise maximum.
    pub fn sup(&self, other: &Hyperbolic) -> Hyperbolic {
        self.zip(other, f64::max)
    }

    pub fn to_bicomplex(&self) -> Bicomplex {
        Bicomplex::from_reals(self.e1, self.e2)
    }
}

impl From<Hyperbolic> for Bicomplex {
    fn from(h: Hyperbolic) -> Self {
        h.to_bicomplex()
    }
}

impl From<f64> for Bicomplex {
    fn from(x: f64) -> Self {
        Bicomplex::from_real(x)
    }
}

impl From<Complex64> for Bicomplex {
    fn from(c: Complex64) -> Self {
        Bicomplex::from_complex(c)
    }
}

macro_rules! bc_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $op:tt) => {
        impl $tr for Bicomplex {
            type Output = Bicomplex;
            fn $m(self, rhs: Bicomplex) -> Bicomplex {
                Bicomplex::new(self.e1 $op rhs.e1, self.e2 $op rhs.e2)
            }
        }
        impl $tr<f64> for Bicomplex {
            type Output = Bicomplex;
            fn $m(self, rhs: f64) -> Bicomplex {
                Bicomplex::new(self.e1 $op rhs, self.e2 $op rhs)
            }
        }
        impl $tr<Complex64> for Bicomplex {
            type Output = Bicomplex;
            fn $m(self, rhs: Complex64) -> Bicomplex {
                Bicomplex::new(self.e1 $op rhs, self.e2 $op rhs)
            }
        }
        impl $atr for Bicomplex {
            fn $am(&mut self, rhs: Bicomplex) {
                *self = *self $op rhs;
            }
        }
    };
}

bc_binop!(Add, add, AddAssign, add_assign, +);
bc_binop!(Sub, sub, SubAssign, sub_assign, -);
bc_binop!(Mul, mul, MulAssign, mul_assign, *);

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        Bicomplex::new(-self.e1, -self.e2)
    }
}

impl Mul<Bicomplex> for f64 {
    type Output = Bicomplex;
    fn mul(self, rhs: Bicomplex) -> Bicomplex {
        rhs * self
    }
}

impl std::iter::Sum for Bicomplex {
    fn sum<It: Iterator<Item = Bicomplex>>(iter: It) -> Bicomplex {
        iter.fold(Bicomplex::ZERO, |a, b| a + b)
    }
}

impl Add for Hyperbolic {
    type Output = Hyperbolic;
    fn add(self, rhs: Hyperbolic) -> Hyperbolic {
        Hyperbolic::new(self.e1 + rhs.e1, self.e2 + rhs.e2)
    }
}

impl Sub for Hyperbolic {
    type Output = Hyperbolic;
    fn sub(self, rhs: Hyperbolic) -> Hyperbolic {
        Hyperbolic::new(self.e1 - rhs.e1, self.e2 - rhs.e2)
    }
}

impl Mul for Hyperbolic {
    type Output = Hyperbolic;
    fn mul(self, rhs: Hyperbolic) -> Hyperbolic {
        Hyperbolic::new(self.e1 * rhs.e1, self.e2 * rhs.e2)
    }
}

impl Mul<f64> for Hyperbolic {
    type Output = Hyperbolic;
    fn mul(self, rhs: f64) -> Hyperbolic {
        Hyperbolic::new(self.e1 * rhs, self.e2 * rhs)
    }
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})e1 + ({})e2", self.e1, self.e2)
    }
}

impl fmt::Display for Hyperbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}e1 + {}e2", self.e1, self.e2)
    }
}

#[derive(Serialize, Deserialize)]
struct BicomplexRepr {
    e1: [f64; 2],
    e2: [f64; 2],
}

impl Serialize for Bicomplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BicomplexRepr { e1: [self.e1.re, self.e1.im], e2: [self.e2.re, self.e2.im] }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bicomplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = BicomplexRepr::deserialize(d)?;
        Ok(Bicomplex::new(Complex64::new(r.e1[0], r.e1[1]), Complex64::new(r.e2[0], r.e2[1])))
    }
}

#[derive(Serialize, Deserialize)]
struct HyperbolicRepr {
    e1: f64,
    e2: f64,
}

impl Serialize for Hyperbolic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HyperbolicRepr { e1: self.e1, e2: self.e2 }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hyperbolic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = HyperbolicRepr::deserialize(d)?;
        Ok(Hyperbolic::new(r.e1, r.e2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(Bicomplex::from_canonical(c(1.0, 0.0), c(0.0, 0.0)), Bicomplex::ONE);
        assert_eq!(Bicomplex::from_canonical(c(0.0, 0.0), c(1.0, 0.0)), Bicomplex::J);
        let z = Bicomplex::from_canonical(c(2.0, 1.0), c(3.0, 0.0));
        assert_eq!(z, Bicomplex::new(c(2.0, -2.0), c(2.0, 4.0)));
        let (l1, l2) = z.to_canonical();
        assert_eq!((l1, l2), (c(2.0, 1.0), c(3.0, 0.0)));
    }

    #[test]
    fn idempotents() {
        let (e1, e2) = (Bicomplex::E1, Bicomplex::E2);
        assert_eq!(e1 * e1, e1);
        assert_eq!(e2 * e2, e2);
        assert_eq!(e1 + e2, Bicomplex::ONE);
        assert_eq!(e1 * e2, Bicomplex::ZERO);
        assert_eq!(Bicomplex::J * Bicomplex::J, Bicomplex::from_real(-1.0));
        assert_eq!(Bicomplex::K * Bicomplex::K, Bicomplex::ONE);
        assert!(e1.is_zero_divisor() && e2.is_zero_divisor());
        assert!(!Bicomplex::ZERO.is_zero_divisor());
    }

    #[test]
    fn division() {
        let a = Bicomplex::from_reals(6.0, 8.0);
        let b = Bicomplex::from_reals(3.0, 4.0);
        assert_eq!(a.div(&b).unwrap(), Bicomplex::from_reals(2.0, 2.0));
        let err = Bicomplex::ONE.div(&Bicomplex::from_reals(0.0, 1.0)).unwrap_err();
        assert!(matches!(err, Error::ZeroDivisor(_)));
    }

    #[test]
    fn conjugate_examples() {
        let r = Bicomplex::from_real(2.5);
        assert_eq!(r.conjugates(), (r, r, r));
        let (bar, tilde, star) = Bicomplex::J.conjugates();
        assert_eq!(bar, Bicomplex::J);
        assert_eq!(tilde, -Bicomplex::J);
        assert_eq!(star, -Bicomplex::J);
    }

    #[test]
    fn norm_and_order() {
        assert_eq!(Bicomplex::new(c(3.0, 4.0), c(1.0, 0.0)).hyperbolic_norm(), Hyperbolic::new(5.0, 1.0));
        let a = Hyperbolic::new(1.0, 1.0);
        assert_eq!(a.compare(&Hyperbolic::new(2.0, 2.0)), HyperbolicOrdering::Less);
        assert_eq!(Hyperbolic::new(1.0, 3.0).compare(&Hyperbolic::new(2.0, 2.0)), HyperbolicOrdering::Incomparable);
        assert_eq!(a.compare(&a), HyperbolicOrdering::LessOrEqual);
        assert!(a.leq_h(&a) && !a.lt_h(&a));
    }

    #[test]
    fn powers() {
        let z = Bicomplex::new(c(1.0, 2.0), c(-3.0, 0.5));
        assert_eq!(z.pow(&Bicomplex::ZERO).unwrap(), Bicomplex::ONE);
        assert_eq!(z.pow(&Bicomplex::ONE).unwrap(), z);
        let r = Bicomplex::from_reals(4.0, 9.0).pow(&Bicomplex::from_real(0.5)).unwrap();
        assert!(r.approx_eq(&Bicomplex::from_reals(2.0, 3.0), 1e-15));
        assert_eq!(Bicomplex::from_real(-2.0).powi(3), Bicomplex::from_real(-8.0));
        assert!(matches!(Bicomplex::from_real(-2.0).pow(&Bicomplex::from_real(0.5)), Err(Error::Branch(_))));
        assert!(matches!(Bicomplex::from_reals(0.0, 1.0).pow(&Bicomplex::from_real(-0.5)), Err(Error::ZeroDivisor(_))));
        assert_eq!(
            Bicomplex::from_reals(0.0, 4.0).pow(&Bicomplex::from_real(0.5)).unwrap(),
            Bicomplex::from_reals(0.0, 2.0)
        );
    }

    #[test]
    fn euler() {
        let z = Bicomplex::from_complex(c(0.0, std::f64::consts::PI));
        assert!(z.exp().approx_eq(&Bicomplex::from_real(-1.0), 1e-15));
        assert_eq!(Bicomplex::ZERO.exp(), Bicomplex::ONE);
    }

    #[test]
    fn json_round_trip() {
        let z = Bicomplex::new(c(1.0, -2.0), c(0.5, 3.0));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"e1":[1.0,-2.0],"e2":[0.5,3.0]}"#);
        assert_eq!(serde_json::from_str::<Bicomplex>(&s).unwrap(), z);
        let h: Hyperbolic = serde_json::from_str(r#"{"e1":1,"e2":2.5}"#).unwrap();
        assert_eq!(h, Hyperbolic::new(1.0, 2.5));
    }
}
