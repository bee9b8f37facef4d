use rug::Float;

use super::cx::Cx;
use super::series::QExpansions;
use super::siegel::RowVector;
use super::value::{ComplexValue, EvalContext};
use crate::cmfield::FieldInvariants;
use crate::error::Result;
use crate::ideals::TorsionPoint;

/// The curve `y^2 = 4x^3 - A x - B` attached to `K` and `n`, with the data
/// needed to evaluate `x_{K,n}` and `y_{K,n}^2` at torsion points.
#[derive(Debug, Clone)]
pub struct WeberCurve {
    pub field: FieldInvariants,
    pub n: u32,
    pub series: QExpansions,
    /// `C_K^n`.
    pub c_pow: ComplexValue,
    /// `C_K^n g_2 g_3 / Delta` on `O_K`.
    pub scale: ComplexValue,
}

impl WeberCurve {
    pub fn new(field: &FieldInvariants, n: u32, ctx: &EvalContext) -> Result<Self> {
        field.require_generic()?;
        let tau = Cx::from_cm_point(&field.tau(), ctx.prec_bits());
        let series = QExpansions::new(&tau, ctx)?;
        let c_pow = series.c().pow_u(n as u64);
        let scale = c_pow.mul(&series.g2g3_over_delta());
        Ok(WeberCurve { field: field.clone(), n, series, c_pow, scale })
    }

    pub fn j_k(&self) -> ComplexValue {
        self.series.big_j()
    }

    pub fn c_k(&self) -> ComplexValue {
        self.series.c()
    }

    /// `A = J(J-1)/27 C^(2n)`, `B = J(J-1)^2/27^2 C^(3n)`.
    pub fn coefficients(&self) -> (ComplexValue, ComplexValue) {
        let j = self.series.big_j();
        let jm1 = self.series.big_j_minus_one();
        let c2 = self.c_pow.pow_u(2);
        let c3 = c2.mul(&self.c_pow);
        let prec = self.series.prec();
        let inv27 = ComplexValue::exact(Cx::one(prec)).div(&ComplexValue::exact(Cx::from_ratio(27, 1, prec)));
        let a = j.mul(&jm1).mul(&c2).mul(&inv27);
        let b = j.mul(&jm1).mul(&jm1).mul(&c3).mul(&inv27).mul(&inv27);
        (a, b)
    }

    fn omega(&self, w: &TorsionPoint) -> Cx {
        let tau = &self.series.tau;
        let prec = self.series.prec();
        let a = Float::with_val(prec, w.a) / w.den;
        let b = Float::with_val(prec, w.b) / w.den;
        let z = tau.scale(&a);
        Cx::new(z.re + b, z.im)
    }

    /// `x_{K,n}(omega) = C^n (g_2 g_3 / Delta) wp(omega)` on `O_K = [tau_K, 1]`.
    pub fn x(&self, w: &TorsionPoint) -> Result<ComplexValue> {
        let wp = self.series.wp(&self.omega(w))?;
        Ok(self.scale.mul(&wp))
    }

    /// The same value as `-C^n f_(a/D, b/D)(tau_K) / (2^7 3^5)`.
    pub fn x_via_fricke(&self, w: &TorsionPoint) -> Result<ComplexValue> {
        let v = RowVector::new(w.a, w.b, w.den)?;
        let f = self.series.fricke(&v)?;
        let prec = self.series.prec();
        let k = ComplexValue::exact(Cx::from_ratio(-41472, 1, prec));
        Ok(self.c_pow.mul(&f).div(&k))
    }

    /// `y^2 = (C^n g_2 g_3 / Delta)^3 wp'(omega)^2`.
    pub fn y_squared(&self, w: &TorsionPoint) -> Result<ComplexValue> {
        let wpp = self.series.wp_prime(&self.omega(w))?;
        Ok(self.scale.pow_u(3).mul(&wpp.pow_u(2)))
    }

    /// `4x^3 - A x - B` at `x`.
    pub fn rhs(&self, x: &ComplexValue) -> ComplexValue {
        let (a, b) = self.coefficients();
        x.pow_u(3).scale_i64(4).sub(&a.mul(x)).sub(&b)
    }
}

pub fn curve_coefficients(
    field: &FieldInvariants,
    n: u32,
    ctx: &EvalContext,
) -> Result<(ComplexValue, ComplexValue)> {
    Ok(WeberCurve::new(field, n, ctx)?.coefficients())
}

pub fn weber_x(field: &FieldInvariants, n: u32, w: &TorsionPoint, ctx: &EvalContext) -> Result<ComplexValue> {
    WeberCurve::new(field, n, ctx)?.x(w)
}

pub fn y_squared(field: &FieldInvariants, n: u32, w: &TorsionPoint, ctx: &EvalContext) -> Result<ComplexValue> {
    WeberCurve::new(field, n, ctx)?.y_squared(w)
}
