use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::cx::Cx;
use super::value::{expm1_bound, poly_geometric_tail, unit, ComplexValue, EvalContext, ERR_PREC};
use crate::error::{domain, Error, Result};

/// Smallest `Im tau` accepted by the modular-function evaluators.
pub const MIN_IM_TAU: f64 = 0.5;

/// The q-expansions `E_2, E_4, E_6` and `Delta_0 = q prod (1 - q^n)^24`
/// at one point `tau`, shared by everything evaluated on `[tau, 1]`.
#[derive(Debug, Clone)]
pub struct QExpansions {
    pub tau: Cx,
    pub q: Cx,
    /// Number of q-series terms.
    pub terms: usize,
    pub e2: ComplexValue,
    pub e4: ComplexValue,
    pub e6: ComplexValue,
    pub delta0: ComplexValue,
    ln_s: f64,
    prec: u32,
}

fn fabs(x: f64) -> Float {
    Float::with_val(ERR_PREC, x)
}

pub(crate) fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

impl QExpansions {
    pub fn new(tau: &Cx, ctx: &EvalContext) -> Result<Self> {
        let im = tau.im.to_f64();
        if !(im > 0.0) {
            return domain(format!("tau = {tau} is not in the upper half-plane"));
        }
        let m = ctx.cutoff(im)?;
        let prec = ctx.prec_bits();
        let tau = tau.with_prec(prec);
        let q = tau.exp_2pi_i();
        let ln_s = -2.0 * std::f64::consts::PI * im;
        let s = ln_s.exp();

        let one = Cx::one(prec);
        let mut qn = one.clone();
        let mut s1 = Cx::zero(prec);
        let mut s3 = Cx::zero(prec);
        let mut s5 = Cx::zero(prec);
        let mut prod = one.clone();
        let (mut a1, mut a3, mut a5) = (0f64, 0f64, 0f64);
        for n in 1..=m {
            qn = &qn * &q;
            let om = &one - &qn;
            let l = &qn / &om;
            let nn = n as i64;
            let t1 = l.scale_i64(nn);
            let t3 = t1.scale_i64(nn).scale_i64(nn);
            let t5 = t3.scale_i64(nn).scale_i64(nn);
            s1 = s1 + t1;
            s3 = s3 + t3;
            s5 = s5 + t5;
            prod = prod * om;
            let mag = s.powi(n as i32) / (1.0 - s);
            let nf = n as f64;
            a1 += nf * mag;
            a3 += nf.powi(3) * mag;
            a5 += nf.powi(5) * mag;
        }
        let u = unit(prec);
        let mf = m as f64;
        let inv1s = fabs(1.0 / (1.0 - s));
        let sum_err = |k: i32, abs_sum: f64| -> Float {
            poly_geometric_tail(k, ln_s, m) * &inv1s + fabs(16.0 * (mf + 2.0) * abs_sum) * &u
        };

        let e2 = ComplexValue::new(&one - &s1.scale_i64(24), sum_err(1, a1) * 24u32);
        let e4 = ComplexValue::new(&one + &s3.scale_i64(240), sum_err(3, a3) * 240u32);
        let e6 = ComplexValue::new(&one - &s5.scale_i64(504), sum_err(5, a5) * 504u32);

        // relative truncation of the product: exp(24 sum_{n>m} s^n/(1-s^n)) - 1
        let t = fabs(24.0 * s / (1.0 - s).powi(2)) * Float::with_val(ERR_PREC, ln_s * mf).exp();
        let p24 = prod.pow_u(24);
        let d0 = &q * &p24;
        let rel = expm1_bound(&t) + fabs(8.0 * (3.0 * mf + 50.0)) * &u;
        let d0_err = Float::with_val(ERR_PREC, d0.abs()) * rel;
        let delta0 = ComplexValue::new(d0, d0_err);

        Ok(QExpansions { tau, q, terms: m, e2, e4, e6, delta0, ln_s, prec })
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `ln |q|`.
    pub fn ln_abs_q(&self) -> f64 {
        self.ln_s
    }

    fn delta0_times(&self, k: i64) -> ComplexValue {
        self.delta0.scale_i64(k)
    }

    /// `j = E_4^3 / Delta_0`.
    pub fn j(&self) -> ComplexValue {
        self.e4.pow_u(3).div(&self.delta0)
    }

    /// `J = j / 1728`.
    pub fn big_j(&self) -> ComplexValue {
        self.e4.pow_u(3).div(&self.delta0_times(1728))
    }

    /// `J - 1 = E_6^2 / (1728 Delta_0)`, free of cancellation near `J = 1`.
    pub fn big_j_minus_one(&self) -> ComplexValue {
        self.e6.pow_u(2).div(&self.delta0_times(1728))
    }

    /// `C = J^2 (J - 1)^3`.
    pub fn c(&self) -> ComplexValue {
        self.big_j().pow_u(2).mul(&self.big_j_minus_one().pow_u(3))
    }

    /// `g_2 = (4 pi^4 / 3) E_4` on `[tau, 1]`.
    pub fn g2(&self) -> ComplexValue {
        let k = pi(self.prec).square() * pi(self.prec).square() * 4u32 / 3u32;
        self.e4.scale(&k)
    }

    /// `g_3 = (8 pi^6 / 27) E_6` on `[tau, 1]`.
    pub fn g3(&self) -> ComplexValue {
        let k = pi(self.prec).pow(6u32) * 8u32 / 27u32;
        self.e6.scale(&k)
    }

    /// `Delta = (2 pi)^12 Delta_0`.
    pub fn delta(&self) -> ComplexValue {
        let k = (pi(self.prec) * 2u32).pow(12u32);
        self.delta0.scale(&k)
    }

    /// `g_2 g_3 / Delta = E_4 E_6 / (10368 pi^2 Delta_0)`.
    pub fn g2g3_over_delta(&self) -> ComplexValue {
        let k = pi(self.prec).square() * 10368u32;
        self.e4.mul(&self.e6).div(&self.delta0.scale(&k))
    }

    /// Reduces `z` modulo `[tau, 1]` and up to sign so that
    /// `0 <= Im z / Im tau <= 1/2` and `|Re z| <= 1/2`, returning the sign
    /// relating `z` to the reduced point under `z -> -z`.
    fn reduce(&self, z: &Cx) -> (Cx, i32) {
        let prec = self.prec;
        let z = z.with_prec(prec);
        let v1 = Float::with_val(prec, &z.im / &self.tau.im);
        let k = Float::with_val(prec, v1.floor_ref());
        let mut w = &z - &self.tau.scale(&k);
        let frac = v1 - &k;
        let mut sign = 1;
        if frac > 0.5 {
            w = &self.tau - &w;
            sign = -1;
        }
        let r = Float::with_val(prec, w.re.round_ref());
        w.re -= r;
        (w, sign)
    }

    /// The normalized series `P` with `wp = (2 pi i)^2 P` and, when asked,
    /// `Q` with `wp' = (2 pi i)^3 Q`, at a reduced point.
    fn p_and_q(&self, z: &Cx, want_q: bool) -> Result<(ComplexValue, Option<ComplexValue>, i32)> {
        let prec = self.prec;
        let (w, sign) = self.reduce(z);
        let u_z = w.exp_2pi_i();
        let one = Cx::one(prec);
        let gap = (&one - &u_z).abs_f64();
        let tiny = Float::with_val(ERR_PREC, 1) >> (prec / 2);
        if Float::with_val(ERR_PREC, gap) < tiny {
            return Err(Error::Pole(format!("z = {z} lies in the period lattice")));
        }
        let m = self.terms;
        let s = self.ln_s.exp();
        let mut x = u_z.clone();
        let mut wv = u_z.recip();
        let mut sum_p = Cx::zero(prec);
        let mut sum_q = Cx::zero(prec);
        let mut abs_p = 0f64;
        let mut abs_q = 0f64;
        for n in 0..=m {
            for (t, is_w) in [(&x, false), (&wv, true)] {
                if n == 0 && is_w {
                    continue;
                }
                let om = &one - t;
                let om2 = om.square();
                let tp = t / &om2;
                abs_p += tp.abs_f64();
                sum_p = sum_p + tp;
                if want_q {
                    let tq = &(t * &(&one + t)) / &(&om2 * &om);
                    abs_q += tq.abs_f64();
                    if is_w {
                        sum_q = sum_q - tq;
                    } else {
                        sum_q = sum_q + tq;
                    }
                }
            }
            x = &x * &self.q;
            wv = &wv * &self.q;
        }
        let u = unit(prec);
        let mf = m as f64;
        let near = 1.0 + 1.0 / gap;
        // |x_n| <= s^n, |w_n| <= s^(n - 1/2) after reduction
        let sq = s.sqrt();
        let tail_base = |pow: i32| -> Float {
            let lead = Float::with_val(ERR_PREC, self.ln_s * (mf + 0.5)).exp();
            lead / fabs((1.0 - s) * (1.0 - sq).powi(pow)) * 2u32
        };
        let rnd = |a: f64| fabs(32.0 * (mf + 2.0) * a * near) * &u;

        let twelfth = self.e2.scale(&(Float::with_val(prec, 1) / 12u32));
        let p_err = tail_base(2) + rnd(abs_p);
        let p = twelfth.add(&ComplexValue::new(sum_p, p_err));
        let q = if want_q {
            let q_err = tail_base(3) * 2u32 + rnd(abs_q) * near;
            Some(ComplexValue::new(sum_q, q_err))
        } else {
            None
        };
        Ok((p, q, sign))
    }

    /// `P(z)` with `wp(z; [tau, 1]) = -4 pi^2 P(z)`.
    pub(crate) fn p_series(&self, z: &Cx) -> Result<ComplexValue> {
        Ok(self.p_and_q(z, false)?.0)
    }

    /// `wp(z; [tau, 1])`.
    pub fn wp(&self, z: &Cx) -> Result<ComplexValue> {
        let p = self.p_series(z)?;
        let k = -(pi(self.prec).square() * 4u32);
        Ok(p.scale(&k))
    }

    /// `wp'(z; [tau, 1])`.
    pub fn wp_prime(&self, z: &Cx) -> Result<ComplexValue> {
        let (_, q, sign) = self.p_and_q(z, true)?;
        let q = q.expect("requested");
        // (2 pi i)^3 = -8 pi^3 i
        let k = pi(self.prec).pow(3u32) * 8u32;
        let v = q.scale(&k);
        let z = Cx::new(Float::with_val(self.prec, &v.z.im), -Float::with_val(self.prec, &v.z.re));
        let z = if sign < 0 { -z } else { z };
        Ok(ComplexValue::new(z, v.err))
    }
}

fn check_fundamental_region(tau: &Cx) -> Result<()> {
    let im = tau.im.to_f64();
    if !(im >= MIN_IM_TAU) {
        return Err(Error::Precision {
            reason: format!("Im tau = {im} is below {MIN_IM_TAU}; move tau toward the fundamental domain"),
            achievable_digits: super::value::achievable_digits(im),
        });
    }
    Ok(())
}

pub fn j_value(tau: &Cx, ctx: &EvalContext) -> Result<ComplexValue> {
    check_fundamental_region(tau)?;
    Ok(QExpansions::new(tau, ctx)?.j())
}

#[allow(non_snake_case)]
pub fn J_value(tau: &Cx, ctx: &EvalContext) -> Result<ComplexValue> {
    check_fundamental_region(tau)?;
    Ok(QExpansions::new(tau, ctx)?.big_j())
}

#[allow(non_snake_case)]
pub fn C_value(tau: &Cx, ctx: &EvalContext) -> Result<ComplexValue> {
    check_fundamental_region(tau)?;
    Ok(QExpansions::new(tau, ctx)?.c())
}

pub fn wp_value(z: &Cx, tau: &Cx, ctx: &EvalContext) -> Result<ComplexValue> {
    QExpansions::new(tau, ctx)?.wp(z)
}

pub fn wp_prime_value(z: &Cx, tau: &Cx, ctx: &EvalContext) -> Result<ComplexValue> {
    QExpansions::new(tau, ctx)?.wp_prime(z)
}
