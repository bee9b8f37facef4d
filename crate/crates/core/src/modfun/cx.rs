//! Complex numbers over MPFR floats.

use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::Float;

use crate::cmfield::CmPoint;

#[derive(Debug, Clone, PartialEq)]
pub struct Cx {
    pub re: Float,
    pub im: Float,
}

impl Cx {
    pub fn new(re: Float, im: Float) -> Self {
        Cx { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Cx::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Cx::new(Float::with_val(prec, 1), Float::new(prec))
    }

    pub fn i(prec: u32) -> Self {
        Cx::new(Float::new(prec), Float::with_val(prec, 1))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Cx::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_real(x: Float) -> Self {
        let p = x.prec();
        Cx::new(x, Float::new(p))
    }

    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Self {
        Cx::from_real(Float::with_val(prec, num) / den)
    }

    /// `(-b + sqrt(d)) / (2a)` for `d < 0`.
    pub fn from_cm_point(p: &CmPoint, prec: u32) -> Self {
        let den = 2 * p.a;
        let re = Float::with_val(prec, -p.b) / den;
        let im = Float::with_val(prec, -p.d).sqrt() / den;
        Cx::new(re, im)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Cx::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }

    pub fn conj(&self) -> Self {
        Cx::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        Float::with_val(64, self.re.hypot_ref(&self.im)).to_f64()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn scale(&self, x: &Float) -> Self {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re * x), Float::with_val(p, &self.im * x))
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        Cx::new(self.re.clone() * k, self.im.clone() * k)
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Cx::new(Float::with_val(n.prec(), &self.re / &n), -Float::with_val(n.prec(), &self.im / &n))
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cx::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Cx::new(Float::with_val(p, &m * &c), Float::with_val(p, &m * &s))
    }

    /// `exp(2 pi i z)`.
    pub fn exp_2pi_i(&self) -> Self {
        let p = self.prec();
        let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
        let arg = Cx::new(-Float::with_val(p, &self.im * &two_pi), Float::with_val(p, &self.re * &two_pi));
        arg.exp()
    }

    /// `exp(2 pi i num/den)`, a root of unity.
    pub fn root_of_unity(num: i64, den: i64, prec: u32) -> Self {
        let k = num.rem_euclid(den);
        let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
        let ang = two_pi * k / den;
        let (s, c) = ang.sin_cos(Float::new(prec));
        Cx::new(c, s)
    }
}

impl<'a> Add<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn add(self, o: &Cx) -> Cx {
        let p = self.prec().max(o.prec());
        Cx::new(Float::with_val(p, &self.re + &o.re), Float::with_val(p, &self.im + &o.im))
    }
}

impl<'a> Sub<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn sub(self, o: &Cx) -> Cx {
        let p = self.prec().max(o.prec());
        Cx::new(Float::with_val(p, &self.re - &o.re), Float::with_val(p, &self.im - &o.im))
    }
}

impl<'a> Mul<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn mul(self, o: &Cx) -> Cx {
        let p = self.prec().max(o.prec());
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let ad = Float::with_val(p, &self.re * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        Cx::new(ac - bd, ad + bc)
    }
}

impl<'a> Div<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn div(self, o: &Cx) -> Cx {
        self * &o.recip()
    }
}

impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx::new(-self.re, -self.im)
    }
}

impl Add for Cx {
    type Output = Cx;
    fn add(self, o: Cx) -> Cx {
        &self + &o
    }
}

impl Sub for Cx {
    type Output = Cx;
    fn sub(self, o: Cx) -> Cx {
        &self - &o
    }
}

impl Mul for Cx {
    type Output = Cx;
    fn mul(self, o: Cx) -> Cx {
        &self * &o
    }
}

impl Div for Cx {
    type Output = Cx;
    fn div(self, o: Cx) -> Cx {
        &self / &o
    }
}

impl std::fmt::Display for Cx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let re = self.re.to_string_radix(10, Some(digits));
        let im = self.im.to_string_radix(10, Some(digits));
        match im.strip_prefix('-') {
            Some(mag) => write!(f, "{re} - {mag}i"),
            None => write!(f, "{re} + {im}i"),
        }
    }
}
