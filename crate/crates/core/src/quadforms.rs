//! Positive definite binary quadratic forms `a x^2 + b x y + c y^2`.

use serde::Serialize;

use crate::arith::{gcd3, isqrt};
use crate::cmfield::{check_fundamental, field_invariants, CmPoint};
use crate::error::{domain, Result};
use crate::ideals::{self, IdealHnf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// Integer 2x2 matrix `[[m00, m01], [m10, m11]]`.
pub type Mat2 = [[i64; 2]; 2];

pub const IDENTITY: Mat2 = [[1, 0], [0, 1]];

pub fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let mut r = [[0i64; 2]; 2];
    for (i, row) in r.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    r
}

pub fn det(m: &Mat2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// A reduced form together with `gamma` in SL2(Z) such that
/// `input(gamma * (x, y)^T) = form(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReducedForm {
    pub form: QuadForm,
    pub witness: Mat2,
}

impl QuadForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        gcd3(self.a, self.b, self.c) == 1
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.discriminant() < 0
    }

    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        (-a < b && b <= a && a < c) || (0 <= b && b <= a && a == c)
    }

    /// Principal form `x^2 + b_K x y + c_K y^2` of discriminant `d`.
    pub fn principal(d: i64) -> Self {
        if d.rem_euclid(4) == 0 {
            QuadForm::new(1, 0, -d / 4)
        } else {
            QuadForm::new(1, 1, (1 - d) / 4)
        }
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// The form `(x, y) -> self(m * (x, y)^T)`.
    pub fn transform(&self, m: &Mat2) -> QuadForm {
        let [[p, q], [r, s]] = *m;
        let QuadForm { a, b, c } = *self;
        QuadForm {
            a: a * p * p + b * p * r + c * r * r,
            b: 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            c: a * q * q + b * q * s + c * s * s,
        }
    }

    fn check_definite(&self) -> Result<()> {
        if !self.is_positive_definite() {
            return domain(format!(
                "form ({}, {}, {}) is not positive definite",
                self.a, self.b, self.c
            ));
        }
        if !self.is_primitive() {
            return domain(format!("form ({}, {}, {}) is not primitive", self.a, self.b, self.c));
        }
        Ok(())
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// Gauss reduction. The witness is accumulated from `T^k` and `S`.
pub fn reduce(q: &QuadForm) -> Result<ReducedForm> {
    q.check_definite()?;
    let mut f = *q;
    let mut w = IDENTITY;
    loop {
        // b into (-a, a]
        let k = (f.a - f.b).div_euclid(2 * f.a);
        if k != 0 {
            let t = [[1, k], [0, 1]];
            f = f.transform(&t);
            w = mat_mul(&w, &t);
        }
        if f.a > f.c {
            let s = [[0, -1], [1, 0]];
            f = f.transform(&s);
            w = mat_mul(&w, &s);
            continue;
        }
        if f.a == f.c && f.b < 0 {
            let s = [[0, -1], [1, 0]];
            f = f.transform(&s);
            w = mat_mul(&w, &s);
        }
        break;
    }
    debug_assert!(f.is_reduced());
    debug_assert!(bound_holds(&f));
    Ok(ReducedForm { form: f, witness: w })
}

/// `a <= sqrt(|d| / 3)` for a reduced form.
fn bound_holds(f: &QuadForm) -> bool {
    3 * f.a * f.a <= -f.discriminant()
}

/// All reduced forms of discriminant `d`, sorted by `(a, b)`; the principal
/// form comes first.
pub fn enumerate_reduced(d: i64) -> Result<Vec<QuadForm>> {
    check_fundamental(d)?;
    let amax = isqrt(d.unsigned_abs() / 3) as i64;
    let mut out = Vec::new();
    for a in 1..=amax {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadForm::new(a, b, num / (4 * a));
            if f.is_reduced() && f.is_primitive() {
                assert!(bound_holds(&f));
                out.push(f);
            }
        }
    }
    Ok(out)
}

pub fn class_number(d: i64) -> Result<usize> {
    Ok(enumerate_reduced(d)?.len())
}

/// `tau_Q = (-b + sqrt(d)) / (2a)`, the root of `Q(x, 1)` in the upper half-plane.
pub fn tau_of_form(q: &QuadForm) -> CmPoint {
    CmPoint { b: q.b, a: q.a, d: q.discriminant() }
}

/// The ideal `[a, (-b + sqrt(d))/2]` attached to a form.
pub fn form_to_ideal(q: &QuadForm) -> Result<IdealHnf> {
    let field = field_invariants(q.discriminant())?;
    // (-b + sqrt d)/2 = tau_K + (b_K - b)/2
    let shift = (field.b_k - q.b) / 2;
    ideals::ideal_from_generators(&field, &[(1, shift)], Some(q.a))
}

/// The primitive form attached to an ideal class, reduced.
pub fn ideal_to_form(i: &IdealHnf) -> Result<ReducedForm> {
    let field = field_invariants(i.d)?;
    let c = i.c;
    let (a, b) = (i.a / c, i.b / c);
    let bq = field.b_k - 2 * b;
    let num = bq * bq - field.d;
    debug_assert_eq!(num % (4 * a), 0);
    reduce(&QuadForm::new(a, bq, num / (4 * a)))
}

/// Composition of form classes through ideal multiplication.
pub fn compose(q1: &QuadForm, q2: &QuadForm) -> Result<ReducedForm> {
    q1.check_definite()?;
    q2.check_definite()?;
    if q1.discriminant() != q2.discriminant() {
        return domain(format!(
            "discriminant mismatch: {} vs {}",
            q1.discriminant(),
            q2.discriminant()
        ));
    }
    let prod = ideals::ideal_multiply(&form_to_ideal(q1)?, &form_to_ideal(q2)?)?;
    ideal_to_form(&prod)
}

/// Inverse class: `(a, -b, c)` reduced.
pub fn inverse(q: &QuadForm) -> Result<ReducedForm> {
    reduce(&QuadForm::new(q.a, -q.b, q.c))
}
