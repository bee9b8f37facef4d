use rug::Float;
use serde::Serialize;

use super::cx::Cx;
use crate::error::{Error, Result};

/// Precision of error bounds; they need range, not digits.
pub(crate) const ERR_PREC: u32 = 64;

/// Hard cap on q-series length.
pub(crate) const MAX_TERMS: usize = 200_000;

/// Precision budget shared by every evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EvalContext {
    /// Requested significant decimal digits.
    pub digits: u32,
    /// Multiplier on the series cutoff; 1 for normal use, 2 for self-checks.
    pub depth_factor: u32,
}

impl Default for EvalContext {
    fn default() -> Self {
        EvalContext { digits: 30, depth_factor: 1 }
    }
}

impl EvalContext {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < 15 {
            return Err(Error::Precision {
                reason: format!("{digits} digits requested; at least 15 are required"),
                achievable_digits: 15,
            });
        }
        Ok(EvalContext { digits, depth_factor: 1 })
    }

    pub fn with_digits(&self, digits: u32) -> Self {
        EvalContext { digits: digits.max(15), ..*self }
    }

    /// Same precision with twice the series depth.
    pub fn doubled(&self) -> Self {
        EvalContext { depth_factor: self.depth_factor * 2, ..*self }
    }

    /// Working precision in bits: the requested digits, ten guard digits,
    /// and 32 further bits against accumulated rounding.
    pub fn prec_bits(&self) -> u32 {
        ((self.digits as f64 + 10.0) * std::f64::consts::LOG2_10).ceil() as u32 + 32
    }

    /// Series cutoff `M = ceil((digits + 10) ln 10 / (2 pi Im tau)) + 8`.
    pub fn cutoff(&self, im_tau: f64) -> Result<usize> {
        let m = ((self.digits as f64 + 10.0) * std::f64::consts::LN_10
            / (2.0 * std::f64::consts::PI * im_tau))
            .ceil();
        let m = (m as usize + 8).saturating_mul(self.depth_factor as usize);
        if !im_tau.is_finite() || im_tau <= 0.0 || m > MAX_TERMS {
            return Err(Error::Precision {
                reason: format!("Im tau = {im_tau:e} is too close to the real axis"),
                achievable_digits: achievable_digits(im_tau),
            });
        }
        Ok(m)
    }
}

pub(crate) fn achievable_digits(im_tau: f64) -> u32 {
    if !(im_tau > 0.0) {
        return 0;
    }
    let d = 2.0 * std::f64::consts::PI * im_tau * (MAX_TERMS as f64 - 8.0) / std::f64::consts::LN_10
        - 10.0;
    d.clamp(0.0, u32::MAX as f64) as u32
}

/// A complex value with a bound on its absolute error.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexValue {
    pub z: Cx,
    pub err: Float,
}

/// An error bound given as an `f64`.
pub fn err_bound(x: f64) -> Float {
    Float::with_val(ERR_PREC, x)
}

fn round_up(x: Float) -> Float {
    // widen by one part in 2^50 to cover rounding of the bound itself
    let bump = Float::with_val(ERR_PREC, &x >> 50u32);
    x + bump
}

impl ComplexValue {
    pub fn new(z: Cx, err: Float) -> Self {
        ComplexValue { z, err: Float::with_val(ERR_PREC, err) }
    }

    /// A value known up to rounding at its own precision.
    pub fn exact(z: Cx) -> Self {
        let u = unit(z.prec());
        let err = Float::with_val(ERR_PREC, z.abs_f64()) * u;
        ComplexValue { z, err }
    }

    pub fn re(&self) -> &Float {
        &self.z.re
    }

    pub fn im(&self) -> &Float {
        &self.z.im
    }

    pub fn prec(&self) -> u32 {
        self.z.prec()
    }

    pub fn abs(&self) -> Float {
        Float::with_val(ERR_PREC, self.z.abs())
    }

    /// `err / |z|`, infinite for a zero value with nonzero error.
    pub fn rel_err(&self) -> f64 {
        let a = self.abs();
        if a.is_zero() {
            if self.err.is_zero() {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            Float::with_val(ERR_PREC, &self.err / &a).to_f64()
        }
    }

    fn rounding(&self) -> Float {
        self.abs() * unit(self.prec()) * 4u32
    }

    pub fn add(&self, o: &Self) -> Self {
        let z = &self.z + &o.z;
        let r = ComplexValue { z, err: Float::new(ERR_PREC) };
        let err = round_up(Float::with_val(ERR_PREC, &self.err + &o.err) + r.rounding());
        ComplexValue { err, ..r }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let z = &self.z - &o.z;
        let r = ComplexValue { z, err: Float::new(ERR_PREC) };
        let err = round_up(Float::with_val(ERR_PREC, &self.err + &o.err) + r.rounding());
        ComplexValue { err, ..r }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let z = &self.z * &o.z;
        let r = ComplexValue { z, err: Float::new(ERR_PREC) };
        let err = self.abs() * &o.err
            + o.abs() * &self.err
            + Float::with_val(ERR_PREC, &self.err * &o.err)
            + r.rounding();
        ComplexValue { err: round_up(err), ..r }
    }

    pub fn div(&self, o: &Self) -> Self {
        let z = &self.z / &o.z;
        let r = ComplexValue { z, err: Float::new(ERR_PREC) };
        let denom = o.abs() - &o.err;
        let err = if denom.is_sign_positive() && !denom.is_zero() {
            (Float::with_val(ERR_PREC, &self.err + r.abs() * &o.err)) / denom + r.rounding() * 2u32
        } else {
            Float::with_val(ERR_PREC, rug::float::Special::Infinity)
        };
        ComplexValue { err: round_up(err), ..r }
    }

    /// Multiplication by an exactly known constant.
    pub fn scale(&self, c: &Float) -> Self {
        let z = self.z.scale(c);
        let ac = Float::with_val(ERR_PREC, c.abs_ref());
        let r = ComplexValue { z, err: Float::new(ERR_PREC) };
        let err = round_up(ac * &self.err + r.rounding());
        ComplexValue { err, ..r }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&Float::with_val(self.prec(), k))
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = ComplexValue::exact(Cx::one(self.prec()));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn conj(&self) -> Self {
        ComplexValue { z: self.z.conj(), err: self.err.clone() }
    }

    /// Widens the bound by an absolute amount.
    pub fn widen(mut self, extra: &Float) -> Self {
        self.err += extra;
        self
    }

    /// True when `|self - other|` is within the combined error bounds.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let diff = Float::with_val(ERR_PREC, (&self.z - &other.z).abs());
        diff <= Float::with_val(ERR_PREC, &self.err + &other.err)
    }

    /// `re +/- err, im` as decimal strings with `digits` significant digits.
    pub fn decimal_parts(&self, digits: usize) -> (String, String, String) {
        (
            self.z.re.to_string_radix(10, Some(digits)),
            self.z.im.to_string_radix(10, Some(digits)),
            self.err.to_string_radix(10, Some(3)),
        )
    }
}

impl std::fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "{:.*} (+/- {})", digits, self.z, self.err.to_string_radix(10, Some(3)))
    }
}

pub(crate) fn unit(prec: u32) -> Float {
    Float::with_val(ERR_PREC, 1) >> (prec.saturating_sub(1))
}

/// `sum_{n > m} n^k s^n` with `s = exp(ln_s)`, bounded by a geometric majorant.
/// Computed in log space so that tiny tails do not underflow.
pub(crate) fn poly_geometric_tail(k: i32, ln_s: f64, m: usize) -> Float {
    let n0 = (m + 1) as f64;
    let ln_first = k as f64 * n0.ln() + n0 * ln_s;
    let ln_ratio = k as f64 * ((n0 + 1.0) / n0).ln() + ln_s;
    if ln_ratio >= 0.0 {
        return Float::with_val(ERR_PREC, rug::float::Special::Infinity);
    }
    let denom = -(ln_ratio.exp_m1());
    Float::with_val(ERR_PREC, ln_first - denom.ln()).exp()
}

/// `t * exp(t)`, which dominates `exp(t) - 1` for `t >= 0`.
pub(crate) fn expm1_bound(t: &Float) -> Float {
    Float::with_val(ERR_PREC, t.exp_ref()) * t
}
