use rug::Float;
use serde::Serialize;

use super::cx::Cx;
use super::series::QExpansions;
use super::value::{expm1_bound, unit, ComplexValue, EvalContext, ERR_PREC};
use crate::arith::gcd3;
use crate::error::{domain, Result};

/// A rational row vector `(n1/den, n2/den)`, not reduced modulo `Z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RowVector {
    pub n1: i64,
    pub n2: i64,
    pub den: i64,
}

impl RowVector {
    pub fn new(n1: i64, n2: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return domain("row vector with zero denominator");
        }
        let s = den.signum();
        let (n1, n2, den) = (n1 * s, n2 * s, den * s);
        let g = gcd3(n1, n2, den);
        Ok(RowVector { n1: n1 / g, n2: n2 / g, den: den / g })
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn neg(&self) -> Self {
        RowVector { n1: -self.n1, n2: -self.n2, den: self.den }
    }

    pub fn add(&self, o: &Self) -> Self {
        RowVector::new(self.n1 * o.den + o.n1 * self.den, self.n2 * o.den + o.n2 * self.den, self.den * o.den)
            .expect("nonzero denominators")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Canonical representative modulo `Z^2`.
    pub fn reduce(&self) -> Result<SiegelIndex> {
        SiegelIndex::new(self.n1, self.n2, self.den)
    }

    /// `u = +/- v (mod Z^2)`.
    pub fn equiv_up_to_sign(&self, o: &Self) -> bool {
        let congruent = |a: &RowVector, b: &RowVector| a.sub(b).is_integral();
        congruent(self, o) || congruent(self, &o.neg())
    }

    pub fn v1(&self, prec: u32) -> Float {
        Float::with_val(prec, self.n1) / self.den
    }

    pub fn v2(&self, prec: u32) -> Float {
        Float::with_val(prec, self.n2) / self.den
    }

    /// `z = v1 tau + v2`.
    pub fn point(&self, tau: &Cx) -> Cx {
        let p = tau.prec();
        let z = tau.scale(&self.v1(p));
        Cx::new(z.re + self.v2(p), z.im)
    }
}

impl std::fmt::Display for RowVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}/{}, {}/{})", self.n1, self.den, self.n2, self.den)
    }
}

/// A vector in `Q^2 \ Z^2` reduced into `[0,1)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SiegelIndex {
    pub n1: i64,
    pub n2: i64,
    pub den: i64,
}

impl SiegelIndex {
    pub fn new(n1: i64, n2: i64, den: i64) -> Result<Self> {
        let r = RowVector::new(n1, n2, den)?;
        let (n1, n2) = (r.n1.rem_euclid(r.den), r.n2.rem_euclid(r.den));
        if n1 == 0 && n2 == 0 {
            return domain(format!("index {r} is integral"));
        }
        let g = gcd3(n1, n2, r.den);
        Ok(SiegelIndex { n1: n1 / g, n2: n2 / g, den: r.den / g })
    }

    /// The index scaled into level `n`: numerators over the common denominator `n`.
    pub fn at_level(&self, n: i64) -> Option<(i64, i64)> {
        (n % self.den == 0).then(|| (self.n1 * (n / self.den), self.n2 * (n / self.den)))
    }

    pub fn neg(&self) -> Self {
        SiegelIndex::new(-self.n1, -self.n2, self.den).expect("nonintegral")
    }

    /// Representative of `{v, -v}`, the smaller of the two.
    pub fn sign_class(&self) -> Self {
        (*self).min(self.neg())
    }
}

impl From<SiegelIndex> for RowVector {
    fn from(s: SiegelIndex) -> Self {
        RowVector { n1: s.n1, n2: s.n2, den: s.den }
    }
}

impl From<&SiegelIndex> for RowVector {
    fn from(s: &SiegelIndex) -> Self {
        (*s).into()
    }
}

impl std::fmt::Display for SiegelIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        RowVector::from(*self).fmt(f)
    }
}

impl QExpansions {
    /// `g_v(tau)` from the product expansion, for `v` not integral.
    pub fn siegel(&self, v: &RowVector) -> Result<ComplexValue> {
        if v.is_integral() {
            return domain(format!("Siegel function undefined at integral vector {v}"));
        }
        let prec = self.prec();
        let den = v.den as i128;
        let (n1, n2) = (v.n1 as i128, v.n2 as i128);
        // -exp(pi i v2 (v1 - 1)) = -exp(2 pi i n2 (n1 - den) / (2 den^2))
        let num = n2 * (n1 - den);
        let d2 = 2 * den * den;
        let rou = Cx::root_of_unity(
            i64::try_from(num.rem_euclid(d2)).expect("small"),
            i64::try_from(d2).expect("small"),
            prec,
        );
        // q^((v1^2 - v1 + 1/6)/2) with exponent (6 n1^2 - 6 n1 den + den^2) / (12 den^2)
        let e_num = 6 * n1 * n1 - 6 * n1 * den + den * den;
        let e_den = 12 * den * den;
        let expo = Float::with_val(prec, e_num as f64) / Float::with_val(prec, e_den as f64);
        let expo = if e_num.unsigned_abs() < (1u128 << 52) && e_den < (1i128 << 52) {
            expo
        } else {
            Float::with_val(prec, rug::Integer::from(e_num)) / Float::with_val(prec, rug::Integer::from(e_den))
        };
        let qpow = self.tau.scale(&expo).exp_2pi_i();

        let z = v.point(&self.tau);
        let qz = z.exp_2pi_i();
        let one = Cx::one(prec);
        let v1_abs = (v.n1 as f64 / v.den as f64).abs();
        let extra = v1_abs.ceil() as usize + 1;
        let m = self.terms + extra;
        let mut prod = &one - &qz;
        let qz_inv = qz.recip();
        let mut a = qz.clone();
        let mut b = qz_inv;
        for _ in 1..=m {
            a = &a * &self.q;
            b = &b * &self.q;
            prod = prod * (&one - &a) * (&one - &b);
        }
        let val = -(&(&rou * &qpow) * &prod);

        let s = self.ln_abs_q().exp();
        let mf = m as f64;
        // sum over n > m of s^(n - |v1|) terms, two per n
        let lead = Float::with_val(ERR_PREC, self.ln_abs_q() * (mf + 1.0 - v1_abs)).exp();
        let t = lead * Float::with_val(ERR_PREC, 2.0 / (1.0 - s).powi(2));
        let rel = expm1_bound(&t) + Float::with_val(ERR_PREC, 16.0 * (4.0 * mf + 40.0)) * unit(prec);
        let err = Float::with_val(ERR_PREC, val.abs()) * rel;
        Ok(ComplexValue::new(val, err))
    }

    /// `f_v = -2^7 3^5 (g_2 g_3 / Delta) wp(v1 tau + v2) = 16 E_4 E_6 P / Delta_0`.
    pub fn fricke(&self, v: &RowVector) -> Result<ComplexValue> {
        if v.is_integral() {
            return domain(format!("Fricke function undefined at integral vector {v}"));
        }
        let p = self.p_series(&v.point(&self.tau))?;
        Ok(self.e4.mul(&self.e6).mul(&p).scale_i64(16).div(&self.delta0))
    }
}

pub fn siegel_value(v: impl Into<RowVector>, tau: &Cx, ctx: &EvalContext) -> Result<ComplexValue> {
    QExpansions::new(tau, ctx)?.siegel(&v.into())
}

pub fn fricke_value(v: impl Into<RowVector>, tau: &Cx, ctx: &EvalContext) -> Result<ComplexValue> {
    QExpansions::new(tau, ctx)?.fricke(&v.into())
}
