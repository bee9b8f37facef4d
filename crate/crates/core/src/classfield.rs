//! Hilbert class polynomials, Galois conjugates of modular values, and the
//! combinatorics of `S_N`, `P_N` and `m_N`.

use rayon::prelude::*;
use rug::{Float, Integer};
use serde::Serialize;

use crate::arith::{factorize, gcd, gcd3};
use crate::cmfield::{classify_prime, norm_form, FieldInvariants, SplitType};
use crate::error::{domain, Error, Result};
use crate::ideals::{ideal_add, ideal_from_generators, prime_ideal_above, IdealHnf, TorsionPoint};
use crate::modfun::{ComplexValue, Cx, EvalContext, QExpansions, RowVector, SiegelIndex, WeberCurve};
use crate::quadforms::{det, enumerate_reduced, tau_of_form, Mat2, QuadForm};

/// A monic polynomial with integer coefficients, degree-descending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntPoly {
    #[serde(serialize_with = "ser_integers")]
    pub coeffs: Vec<Integer>,
}

fn ser_integers<S: serde::Serializer>(v: &[Integer], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}

impl IntPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let deg = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let e = deg - i;
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = Integer::from(c.abs_ref());
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show = e == 0 || mag != 1;
            match (e, show) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{mag}x")?,
                (1, false) => write!(f, "x")?,
                (_, true) => write!(f, "{mag}x^{e}")?,
                (_, false) => write!(f, "x^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Result of a class polynomial computation.
#[derive(Debug, Clone, Serialize)]
pub struct ClassPoly {
    pub poly: IntPoly,
    /// Largest distance of a computed coefficient from its rounded value.
    pub residue: f64,
    /// Digits actually used after any automatic increase.
    pub digits_used: u32,
}

/// Estimated decimal size of the largest Hilbert class polynomial coefficient.
pub fn hilbert_coefficient_digits(d: i64) -> Result<f64> {
    let forms = enumerate_reduced(d)?;
    let s = ((-d) as f64).sqrt();
    Ok(forms.iter().map(|q| (std::f64::consts::PI * s / q.a as f64 + 1.0) / std::f64::consts::LN_10).sum())
}

fn poly_from_roots(roots: &[ComplexValue], prec: u32) -> Vec<ComplexValue> {
    // coefficients of prod (x - r), degree-descending
    let mut c = vec![ComplexValue::exact(Cx::one(prec))];
    for r in roots {
        let mut next = c.clone();
        next.push(ComplexValue::exact(Cx::zero(prec)));
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] = next[i + 1].sub(&ci.mul(r));
        }
        c = next;
    }
    c
}

fn round_coefficients(c: &[ComplexValue]) -> (Vec<Integer>, f64) {
    let mut residue = 0f64;
    let mut out = Vec::with_capacity(c.len());
    for v in c {
        let r = Float::with_val(v.prec(), v.z.re.round_ref());
        let dr = Float::with_val(64, &v.z.re - &r).abs().to_f64();
        let di = Float::with_val(64, v.z.im.abs_ref()).to_f64();
        residue = residue.max(dr.hypot(di));
        out.push(r.to_integer().expect("finite"));
    }
    (out, residue)
}

/// `prod (x - j(tau_Q))` over the reduced forms of discriminant `d`.
///
/// Precision is raised automatically to cover the coefficient size. Below
/// 30 digits the caller has asked for a cheap mode, and discriminants whose
/// coefficients approach the working precision are refused instead.
pub fn hilbert_class_poly(d: i64, ctx: &EvalContext) -> Result<ClassPoly> {
    crate::cmfield::check_fundamental(d)?;
    let est = hilbert_coefficient_digits(d)?;
    if ctx.digits < 30 && est >= ctx.digits as f64 - 5.0 {
        return Err(Error::Precision {
            reason: format!(
                "coefficients of the class polynomial for d = {d} have about {:.0} digits",
                est.ceil()
            ),
            achievable_digits: ctx.digits,
        });
    }
    let forms = enumerate_reduced(d)?;
    let mut digits = ctx.digits.max(est.ceil() as u32 + 15);
    for _ in 0..4 {
        let c = ctx.with_digits(digits);
        let roots = forms
            .par_iter()
            .map(|q| QExpansions::new(&Cx::from_cm_point(&tau_of_form(q), c.prec_bits()), &c).map(|s| s.j()))
            .collect::<Result<Vec<_>>>()?;
        let coeffs = poly_from_roots(&roots, c.prec_bits());
        let (ints, residue) = round_coefficients(&coeffs);
        if residue < 1e-4 {
            return Ok(ClassPoly { poly: IntPoly { coeffs: ints }, residue, digits_used: digits });
        }
        digits *= 2;
    }
    Err(Error::Precision {
        reason: format!("class polynomial coefficients for d = {d} did not round cleanly"),
        achievable_digits: 0,
    })
}

/// `v * gamma` for `v` of level dividing `n`, reduced into `[0,1)^2`.
pub fn siegel_index_action(v: &SiegelIndex, gamma: &Mat2, n: i64) -> Result<SiegelIndex> {
    if gcd(det(gamma), n) != 1 {
        return domain(format!("det {} of {gamma:?} is not coprime to {n}", det(gamma)));
    }
    let (s, t) = v
        .at_level(n)
        .ok_or_else(|| Error::Domain(format!("{v} does not have level dividing {n}")))?;
    let s2 = (s as i128 * gamma[0][0] as i128 + t as i128 * gamma[1][0] as i128).rem_euclid(n as i128);
    let t2 = (s as i128 * gamma[0][1] as i128 + t as i128 * gamma[1][1] as i128).rem_euclid(n as i128);
    SiegelIndex::new(s2 as i64, t2 as i64, n)
}

/// `[[a_Q, (b_Q - b_K)/2], [0, 1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReciprocityMatrix {
    pub m: Mat2,
}

impl ReciprocityMatrix {
    pub fn new(field: &FieldInvariants, q: &QuadForm, n: i64) -> Result<Self> {
        if q.discriminant() != field.d || !q.is_primitive() || q.a <= 0 {
            return domain(format!("{q:?} is not a primitive positive form of discriminant {}", field.d));
        }
        if gcd(q.a, n) != 1 {
            return domain(format!("leading coefficient {} is not coprime to {n}", q.a));
        }
        let diff = q.b - field.b_k;
        if diff % 2 != 0 {
            return Err(Error::Internal(format!("b_Q - b_K = {diff} is odd")));
        }
        Ok(ReciprocityMatrix { m: [[q.a, diff / 2], [0, 1]] })
    }
}

/// The conjugate of `f_v(tau_K)` under `[Q]_N`: `f_{v gamma_Q}(tau_Q)`.
pub fn conjugate_fricke_value(
    v: &SiegelIndex,
    q: &QuadForm,
    field: &FieldInvariants,
    n: i64,
    ctx: &EvalContext,
) -> Result<ComplexValue> {
    let gamma = ReciprocityMatrix::new(field, q, n)?;
    let w = siegel_index_action(v, &gamma.m, n)?;
    let tau = Cx::from_cm_point(&tau_of_form(q), ctx.prec_bits());
    QExpansions::new(&tau, ctx)?.fricke(&RowVector::from(w))
}

/// The conjugate of `j(tau_K)` under `[Q]_1`: `j(tau_Q)`.
pub fn conjugate_j(q: &QuadForm, field: &FieldInvariants, ctx: &EvalContext) -> Result<ComplexValue> {
    ReciprocityMatrix::new(field, q, 1)?;
    let tau = Cx::from_cm_point(&tau_of_form(q), ctx.prec_bits());
    Ok(QExpansions::new(&tau, ctx)?.j())
}

fn check_level(field: &FieldInvariants, n: i64) -> Result<()> {
    field.require_generic()?;
    if n < 2 {
        return domain(format!("level {n} must be at least 2"));
    }
    Ok(())
}

/// Representatives `s*tau_K + t` of `(O_K/N)^* / {+-1}`, the lexicographically
/// smaller member of each sign pair, in increasing order.
pub fn residue_units(field: &FieldInvariants, n: i64) -> Result<Vec<(i64, i64)>> {
    check_level(field, n)?;
    let mut out = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if gcd(norm_form(field, s, t).rem_euclid(n), n) != 1 {
                continue;
            }
            let neg = ((-s).rem_euclid(n), (-t).rem_euclid(n));
            if (s, t) <= neg {
                out.push((s, t));
            }
        }
    }
    Ok(out)
}

/// `|(O_K/N)^*| = N^2 prod_p (1 - 1/N(P))` over the primes `P | N`.
pub fn unit_group_order(field: &FieldInvariants, n: i64) -> Result<u64> {
    let mut phi = (n as u64) * (n as u64);
    for (p, _) in factorize(n as u64) {
        phi = match classify_prime(field, p as i64)? {
            SplitType::Ramified => phi / p * (p - 1),
            SplitType::Split => phi / p / p * (p - 1) * (p - 1),
            SplitType::Inert => phi / p / p * (p * p - 1),
        };
    }
    Ok(phi)
}

/// `[K_(N) : H_K]`, the order of `(O_K/N)^*` modulo the image of `{+-1}`.
pub fn ray_class_degree(field: &FieldInvariants, n: i64) -> Result<u64> {
    check_level(field, n)?;
    let phi = unit_group_order(field, n)?;
    Ok(if n == 2 { phi } else { phi / 2 })
}

/// `|(O_K/m)^*|` from the prime ideals dividing `m`.
pub fn unit_group_order_ideal(field: &FieldInvariants, m: &IdealHnf) -> Result<u64> {
    let norm = m.norm() as u64;
    let mut num = norm as u128;
    let mut den = 1u128;
    for (p, _) in factorize(norm) {
        let p = p as i64;
        let primes = match classify_prime(field, p)? {
            SplitType::Split => {
                let roots: Vec<i64> = (0..p).filter(|&t| norm_form(field, 1, t).rem_euclid(p) == 0).collect();
                roots
                    .iter()
                    .map(|&r| prime_ideal_above(field, p, Some(r)))
                    .collect::<Result<Vec<_>>>()?
            }
            _ => vec![prime_ideal_above(field, p, None)?],
        };
        for pr in primes {
            if m.basis().iter().all(|&(s, t)| pr.contains(s, t)) {
                let np = pr.norm() as u128;
                num *= np - 1;
                den *= np;
            }
        }
    }
    Ok((num / den) as u64)
}

/// `[K_m : H_K]` for an ideal `m != O_K`.
pub fn ray_class_degree_ideal(field: &FieldInvariants, m: &IdealHnf) -> Result<u64> {
    field.require_generic()?;
    if m.is_unit() {
        return domain("the modulus must be a proper ideal");
    }
    let phi = unit_group_order_ideal(field, m)?;
    // -1 = 1 (mod m) exactly when 2 lies in m
    Ok(if m.contains(0, 2) { phi } else { phi / 2 })
}

/// `|(O_K/m)^*|` by testing every residue, for cross-checking.
pub fn unit_group_order_brute(field: &FieldInvariants, m: &IdealHnf) -> Result<u64> {
    let mut count = 0u64;
    for s in 0..m.c {
        for t in 0..m.a {
            if (s, t) == (0, 0) {
                continue;
            }
            let x = ideal_from_generators(field, &[(s, t)], None)?;
            if ideal_add(m, &x)?.is_unit() {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `x_{K,n}((s tau_K + t)/N)` over [`residue_units`], checked to be pairwise
/// distinct beyond their error bounds.
pub fn conjugates_over_hk(field: &FieldInvariants, n_level: i64, n: u32, ctx: &EvalContext) -> Result<Vec<ComplexValue>> {
    let reps = residue_units(field, n_level)?;
    let curve = WeberCurve::new(field, n, ctx)?;
    let vals = reps
        .par_iter()
        .map(|&(s, t)| curve.x(&TorsionPoint::new(s, t, n_level)?))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            if vals[i].agrees_with(&vals[j]) {
                return Err(Error::Precision {
                    reason: format!("conjugates {:?} and {:?} are not separated", reps[i], reps[j]),
                    achievable_digits: ctx.digits,
                });
            }
        }
    }
    Ok(vals)
}

/// `e_1, ..., e_k` of the values, as coefficients of `prod (x - v)` without signs.
pub fn elementary_symmetric(vals: &[ComplexValue]) -> Vec<ComplexValue> {
    let Some(first) = vals.first() else { return Vec::new() };
    let prec = first.prec();
    let c = poly_from_roots(vals, prec);
    c.into_iter()
        .enumerate()
        .skip(1)
        .map(|(k, v)| if k % 2 == 1 { v.scale_i64(-1) } else { v })
        .collect()
}

/// An element of `S_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SnElement {
    pub s: i64,
    pub t: i64,
}

impl SnElement {
    /// Representative of the `=_N` class: the smaller of `u` and `-u` mod `N`.
    pub fn class_rep(&self, n: i64) -> SnElement {
        let neg = SnElement { s: (-self.s).rem_euclid(n), t: (-self.t).rem_euclid(n) };
        (*self).min(neg)
    }

    pub fn row(&self, n: i64) -> RowVector {
        RowVector { n1: self.s, n2: self.t, den: n }
    }
}

pub fn enumerate_s_n(n: i64) -> Result<Vec<SnElement>> {
    if n < 2 {
        return domain(format!("N = {n} must be at least 2"));
    }
    let mut out = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if gcd3(n, s, t) == 1 {
                out.push(SnElement { s, t });
            }
        }
    }
    Ok(out)
}

/// Ordered pairs `(u, v)` of `S_N` with `u` not equivalent to `v`.
pub fn enumerate_p_n(n: i64) -> Result<Vec<(SnElement, SnElement)>> {
    let s = enumerate_s_n(n)?;
    let mut out = Vec::new();
    for u in &s {
        for v in &s {
            if u.class_rep(n) != v.class_rep(n) {
                out.push((*u, *v));
            }
        }
    }
    Ok(out)
}

/// `m_N = |P_N|`, counted from the class sizes.
pub fn m_n(n: i64) -> Result<u64> {
    let s = enumerate_s_n(n)?;
    let mut sizes = std::collections::BTreeMap::<SnElement, u64>::new();
    for u in &s {
        *sizes.entry(u.class_rep(n)).or_default() += 1;
    }
    let total = s.len() as u64;
    Ok(sizes.values().map(|k| k * (total - k)).sum())
}

/// The normalized product of the norm-constant identity at one point.
#[derive(Debug, Clone)]
pub struct NormConstant {
    pub ratio: ComplexValue,
    pub m_n: u64,
    /// Best rational approximation `p/q` of the real part, `q <= 10^6`.
    pub best_rational: (Integer, Integer),
}

/// `prod_{P_N} (f_{u/N} - f_{v/N})^6 / {J^2 (J-1)^3}^{m_N}` at `tau`.
pub fn normconstant_ratio(n: i64, tau: &Cx, ctx: &EvalContext) -> Result<NormConstant> {
    if tau.im.to_f64() < 0.866 {
        return domain(format!("Im tau = {} is below sqrt(3)/2", tau.im.to_f64()));
    }
    let qe = QExpansions::new(tau, ctx)?;
    let s = enumerate_s_n(n)?;
    let mut classes: Vec<SnElement> = s.iter().map(|u| u.class_rep(n)).collect();
    classes.sort();
    classes.dedup();
    let fvals = classes
        .par_iter()
        .map(|c| qe.fricke(&c.row(n)).map(|f| (*c, f)))
        .collect::<Result<std::collections::BTreeMap<_, _>>>()?;
    let pairs = enumerate_p_n(n)?;
    let mut prod = ComplexValue::exact(Cx::one(qe.prec()));
    for (u, v) in &pairs {
        let d = fvals[&u.class_rep(n)].sub(&fvals[&v.class_rep(n)]);
        prod = prod.mul(&d.pow_u(6));
    }
    let m = pairs.len() as u64;
    let ratio = prod.div(&qe.c().pow_u(m));
    let best_rational = best_rational(&ratio.z.re, 1_000_000);
    Ok(NormConstant { ratio, m_n: m, best_rational })
}

/// Best rational approximation with denominator at most `max_den`, from the
/// continued fraction expansion.
pub fn best_rational(x: &Float, max_den: u64) -> (Integer, Integer) {
    let Some(r) = x.to_rational() else { return (Integer::new(), Integer::from(1)) };
    let (mut num, mut den) = r.into_numer_denom();
    let (mut p0, mut q0, mut p1, mut q1) = (Integer::from(0), Integer::from(1), Integer::from(1), Integer::from(0));
    let limit = Integer::from(max_den);
    while den != 0 {
        let (a, rem) = num.div_rem_floor_ref(&den).into();
        let a: Integer = a;
        let q2 = Integer::from(&a * &q1) + &q0;
        if q2 > limit {
            // semiconvergent check
            let k = Integer::from(&limit - &q0) / &q1;
            let pk = Integer::from(&k * &p1) + &p0;
            let qk = Integer::from(&k * &q1) + &q0;
            let xr = x.to_rational().expect("finite");
            let err_k = (rug::Rational::from((pk.clone(), qk.clone())) - &xr).abs();
            let err_1 = (rug::Rational::from((p1.clone(), q1.clone())) - &xr).abs();
            if k > 0 && err_k < err_1 {
                return (pk, qk);
            }
            return (p1, q1);
        }
        let p2 = Integer::from(&a * &p1) + &p0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        num = std::mem::replace(&mut den, rem);
    }
    (p1, q1)
}
