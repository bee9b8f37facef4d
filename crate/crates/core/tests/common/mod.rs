#![allow(dead_code)]

use cmray::cmfield::CmPoint;
use cmray::modfun::{ComplexValue, Cx, EvalContext};
use num_complex::Complex64;

pub fn c64(v: &ComplexValue) -> Complex64 {
    Complex64::new(v.z.re.to_f64(), v.z.im.to_f64())
}

pub fn cx(re: f64, im: f64, ctx: &EvalContext) -> Cx {
    Cx::from_f64(re, im, ctx.prec_bits())
}

pub fn cm(b: i64, a: i64, d: i64, ctx: &EvalContext) -> Cx {
    Cx::from_cm_point(&CmPoint { b, a, d }, ctx.prec_bits())
}

pub fn lattice_sum(z: Complex64, tau: Complex64, r: i64) -> (Complex64, Complex64, Complex64) {
    let mut wp = 1.0 / (z * z);
    let mut g2 = Complex64::new(0.0, 0.0);
    let mut g3 = Complex64::new(0.0, 0.0);
    for m in -r..=r {
        for n in -r..=r {
            if m == 0 && n == 0 {
                continue;
            }
            let w = tau * m as f64 + n as f64;
            let w2 = w * w;
            wp += 1.0 / ((z - w) * (z - w)) - 1.0 / w2;
            let w4 = w2 * w2;
            g2 += 1.0 / w4;
            g3 += 1.0 / (w4 * w2);
        }
    }
    (wp, g2 * 60.0, g3 * 140.0)
}

/// Lattice sums over `|m|, |n| <= 200`, Richardson-extrapolated against `100`.
pub fn lattice_oracle(z: Complex64, tau: Complex64) -> (Complex64, Complex64, Complex64) {
    let a = lattice_sum(z, tau, 100);
    let b = lattice_sum(z, tau, 200);
    let ex = |x: Complex64, y: Complex64| (y * 4.0 - x) / 3.0;
    (ex(a.0, b.0), ex(a.1, b.1), ex(a.2, b.2))
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

