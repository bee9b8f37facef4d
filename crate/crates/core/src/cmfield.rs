//! Exact invariants of an imaginary quadratic field `K = Q(sqrt(d_K))`.
//!
//! The ring of integers is `O_K = Z*tau_K + Z` with `tau_K` the root in the
//! upper half-plane of the principal form `x^2 + b_K x + c_K`.

use serde::Serialize;

use crate::arith::{factorize, is_prime, is_squarefree};
use crate::error::{domain, Error, Result};
use crate::quadforms;

/// A CM point `(-b + sqrt(d)) / (2a)` in the upper half-plane, kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CmPoint {
    pub b: i64,
    pub a: i64,
    pub d: i64,
}

impl CmPoint {
    pub fn real_part(&self) -> f64 {
        -(self.b as f64) / (2.0 * self.a as f64)
    }

    pub fn imag_part(&self) -> f64 {
        ((-self.d) as f64).sqrt() / (2.0 * self.a as f64)
    }
}

impl std::fmt::Display for CmPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}+sqrt({}))/{}", -self.b, self.d, 2 * self.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SplitType {
    Ramified,
    Inert,
    Split,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FieldInvariants {
    pub d: i64,
    pub b_k: i64,
    pub c_k: i64,
    pub h_k: usize,
}

impl FieldInvariants {
    /// `tau_K = (-b_K + sqrt(d_K)) / 2`.
    pub fn tau(&self) -> CmPoint {
        CmPoint { b: self.b_k, a: 1, d: self.d }
    }

    /// Excludes `Q(i)` and `Q(sqrt(-3))`.
    pub fn require_generic(&self) -> Result<()> {
        if self.d == -3 || self.d == -4 {
            Err(Error::UnsupportedField(self.d))
        } else {
            Ok(())
        }
    }

    /// `N(s*tau_K + t) = c_K s^2 - b_K s t + t^2`.
    pub fn norm_form(&self, s: i64, t: i64) -> i64 {
        norm_form(self, s, t)
    }
}

/// Checks that `d` is a negative fundamental discriminant, naming the
/// violated condition otherwise.
pub fn check_fundamental(d: i64) -> Result<()> {
    if d >= 0 {
        return domain(format!("discriminant {d} is not negative"));
    }
    let m = d.rem_euclid(4);
    let n = d.unsigned_abs();
    match m {
        1 => {
            if !is_squarefree(n) {
                return domain(format!("discriminant {d} = 1 (mod 4) is not squarefree"));
            }
        }
        0 => {
            let q = d / 4;
            if !matches!(q.rem_euclid(4), 2 | 3) {
                return domain(format!(
                    "discriminant {d} = 0 (mod 4) but d/4 = {q} is not 2 or 3 (mod 4)"
                ));
            }
            if !is_squarefree(q.unsigned_abs()) {
                return domain(format!("discriminant {d}: d/4 = {q} is not squarefree"));
            }
        }
        _ => return domain(format!("discriminant {d} is not 0 or 1 (mod 4)")),
    }
    Ok(())
}

pub fn is_fundamental(d: i64) -> bool {
    check_fundamental(d).is_ok()
}

/// Fundamental discriminants in `lo..=hi` (both negative), descending from `hi`.
pub fn fundamental_discriminants(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi.min(-1)).rev().filter(|&d| is_fundamental(d)).collect()
}

pub fn field_invariants(d: i64) -> Result<FieldInvariants> {
    check_fundamental(d)?;
    let (b_k, c_k) = if d.rem_euclid(4) == 0 { (0, -d / 4) } else { (1, (1 - d) / 4) };
    debug_assert_eq!(b_k * b_k - 4 * c_k, d);
    let h_k = quadforms::class_number(d)?;
    Ok(FieldInvariants { d, b_k, c_k, h_k })
}

/// Kronecker symbol `(d/p)` for a prime `p`.
pub fn kronecker_symbol(d: i64, p: i64) -> Result<i32> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if p == 2 {
        return Ok(match d.rem_euclid(8) {
            0 | 2 | 4 | 6 => 0,
            1 | 7 => 1,
            _ => -1,
        });
    }
    let a = d.rem_euclid(p);
    if a == 0 {
        return Ok(0);
    }
    // Euler's criterion
    let r = pow_mod(a as u64, ((p - 1) / 2) as u64, p as u64);
    Ok(if r == 1 { 1 } else { -1 })
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut base = (b % m) as u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    r as u64
}

pub fn classify_prime(field: &FieldInvariants, p: i64) -> Result<SplitType> {
    Ok(match kronecker_symbol(field.d, p)? {
        0 => SplitType::Ramified,
        -1 => SplitType::Inert,
        _ => SplitType::Split,
    })
}

pub fn norm_form(field: &FieldInvariants, s: i64, t: i64) -> i64 {
    field.c_k * s * s - field.b_k * s * t + t * t
}

/// True iff every prime factor of `n` is inert in `K`.
pub fn inert_modulus_check(field: &FieldInvariants, n: i64) -> Result<bool> {
    if n < 2 {
        return domain(format!("modulus {n} must be at least 2"));
    }
    for (p, _) in factorize(n as u64) {
        if classify_prime(field, p as i64)? != SplitType::Inert {
            return Ok(false);
        }
    }
    Ok(true)
}
