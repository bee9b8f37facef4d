//! Generator bounds for ray class fields and numerical certificates for the
//! inequalities behind them.
//!
//! Every certificate margin is `log10(threshold / observed)`, so a check
//! passes exactly when its margin is positive.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::float::Constant;
use rug::Float;
use serde::Serialize;

use crate::classfield::{m_n, normconstant_ratio, ray_class_degree_ideal};
use crate::cmfield::{fundamental_discriminants, inert_modulus_check, FieldInvariants};
use crate::error::{domain, Error, Result};
use crate::ideals::{least_positive_integer, IdealHnf, TorsionPoint};
use crate::modfun::{ComplexValue, Cx, EvalContext, QExpansions, RowVector, WeberCurve};
use crate::quadforms::{enumerate_reduced, tau_of_form, QuadForm};

/// Default seed for sampled certificates.
pub const DEFAULT_SEED: u64 = 20_211_010;

const BOUND_PREC: u32 = 160;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// `m = N O_K` with every prime factor of `N` inert: `x_{K,n}` generates for all `n >= 0`.
    InertCase,
    /// `x_{K,n}` generates for `n >= n_min` from the explicit lower bound.
    ConditionalBound,
    /// `K_m = H_K`; neither theorem applies.
    HilbertOnly,
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Theorem::InertCase => "InertCase",
            Theorem::ConditionalBound => "ConditionalBound",
            Theorem::HilbertOnly => "HilbertOnly",
        })
    }
}

/// The pieces of the lower bound on `n`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundTerms {
    /// `(13/24) pi sqrt|d|`.
    pub pi_term: f64,
    /// `6 ln(229 N_m / 76)`.
    pub log_term: f64,
    /// `(5/2) pi sqrt|d|`.
    pub denom_pi_term: f64,
    /// `ln 877383`.
    pub ln_877383: f64,
    pub numerator: f64,
    pub denominator: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub d_k: i64,
    pub n_m: i64,
    /// Raw bound as a decimal string with 25 significant digits.
    pub raw_bound: String,
    pub raw_bound_f64: f64,
    pub n_min: u64,
    pub theorem: Theorem,
    pub terms: Option<BoundTerms>,
    pub ray_class_degree: Option<u64>,
    /// `x_{K,n}` and `y_{K,n}^2` together generate `K_m` for every `n >= 0`
    /// whenever `K_m` properly contains `H_K`.
    pub xy_generate_all_n: bool,
    pub note: String,
}

fn bound_value(d: i64, n_m: i64) -> Result<(Float, BoundTerms)> {
    let p = BOUND_PREC;
    let pi = Float::with_val(p, Constant::Pi);
    let sd = Float::with_val(p, -d).sqrt();
    let pi_term = Float::with_val(p, &pi * &sd) * 13u32 / 24u32;
    let log_term = (Float::with_val(p, 229) * n_m / 76u32).ln() * 6u32;
    let denom_pi = Float::with_val(p, &pi * &sd) * 5u32 / 2u32;
    let ln_c = Float::with_val(p, 877383).ln();
    let num = Float::with_val(p, &pi_term + &log_term);
    let den = Float::with_val(p, &denom_pi - &ln_c);
    if den <= 0 {
        return domain(format!("denominator (5/2) pi sqrt|d| - ln 877383 is not positive for d = {d}"));
    }
    let raw = Float::with_val(p, &num / &den) - Float::with_val(p, 1) / 6u32;
    let terms = BoundTerms {
        pi_term: pi_term.to_f64(),
        log_term: log_term.to_f64(),
        denom_pi_term: denom_pi.to_f64(),
        ln_877383: ln_c.to_f64(),
        numerator: num.to_f64(),
        denominator: den.to_f64(),
    };
    Ok((raw, terms))
}

/// Smallest integer `n >= max(0, raw)`.
fn n_min_of(raw: &Float) -> u64 {
    if *raw <= 0 {
        0
    } else {
        raw.clone().ceil().to_f64() as u64
    }
}

/// The lower bound on `n` for `K_m = K(x_{K,n}(omega))` given `N_m`.
pub fn n_min_bound(field: &FieldInvariants, n_m: i64) -> Result<BoundReport> {
    field.require_generic()?;
    if n_m < 2 {
        return domain(format!("N_m = {n_m} must be at least 2"));
    }
    let (raw, terms) = bound_value(field.d, n_m)?;
    Ok(BoundReport {
        d_k: field.d,
        n_m,
        raw_bound: raw.to_string_radix(10, Some(25)),
        raw_bound_f64: raw.to_f64(),
        n_min: n_min_of(&raw),
        theorem: Theorem::ConditionalBound,
        terms: Some(terms),
        ray_class_degree: None,
        xy_generate_all_n: true,
        note: "x_{K,n}(omega) generates K_m for n >= n_min when K_m properly contains H_K".into(),
    })
}

/// Which generation statement applies to the modulus `m`, with its bound.
pub fn generator_plan(field: &FieldInvariants, m: &IdealHnf) -> Result<BoundReport> {
    field.require_generic()?;
    if m.is_unit() {
        return domain("the modulus O_K is trivial");
    }
    if m.d != field.d {
        return domain(format!("ideal of discriminant {} used with d_K = {}", m.d, field.d));
    }
    let n_m = least_positive_integer(m);
    let degree = ray_class_degree_ideal(field, m)?;
    if let Some(n) = m.as_integer_multiple() {
        if n >= 2 && inert_modulus_check(field, n)? {
            return Ok(BoundReport {
                d_k: field.d,
                n_m,
                raw_bound: "0".into(),
                raw_bound_f64: 0.0,
                n_min: 0,
                theorem: Theorem::InertCase,
                terms: bound_value(field.d, n_m).ok().map(|(_, t)| t),
                ray_class_degree: Some(degree),
                xy_generate_all_n: true,
                note: format!("every prime factor of {n} is inert; x_{{K,n}}(1/{n}) generates K_({n}) for all n >= 0"),
            });
        }
    }
    if degree == 1 {
        return Ok(BoundReport {
            d_k: field.d,
            n_m,
            raw_bound: "0".into(),
            raw_bound_f64: 0.0,
            n_min: 0,
            theorem: Theorem::HilbertOnly,
            terms: None,
            ray_class_degree: Some(degree),
            xy_generate_all_n: false,
            note: "[K_m : H_K] = 1, so K_m = H_K".into(),
        });
    }
    let mut r = n_min_bound(field, n_m)?;
    r.ray_class_degree = Some(degree);
    Ok(r)
}

/// Outcome of a numerical check.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub description: String,
    pub seed: Option<u64>,
    pub pass: bool,
    /// Smallest `log10(threshold / observed)` over all checks.
    pub worst_margin: f64,
    pub worst_case: String,
    pub samples_checked: u64,
    /// Further named margins, for certificates with several inequalities.
    pub margins: Vec<(String, f64)>,
}

impl Certificate {
    fn from_checks(claim: &str, description: String, seed: Option<u64>, checks: Vec<(f64, String)>) -> Self {
        let n = checks.len() as u64;
        let (worst_margin, worst_case) = checks
            .into_iter()
            .fold((f64::INFINITY, String::new()), |acc, c| if c.0 < acc.0 || c.0.is_nan() { c } else { acc });
        Certificate {
            claim: claim.into(),
            description,
            seed,
            pass: worst_margin > 0.0,
            worst_margin,
            worst_case,
            samples_checked: n,
            margins: Vec::new(),
        }
    }
}

/// Seed and worker count for sampled sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepOptions {
    pub seed: u64,
    pub threads: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { seed: DEFAULT_SEED, threads: 1 }
    }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    Ok(pool.install(f))
}

fn log10_ratio(num: &Float, den: &Float) -> f64 {
    if den.is_zero() {
        return f64::INFINITY;
    }
    if num.is_zero() || num.is_sign_negative() {
        return f64::NEG_INFINITY;
    }
    Float::with_val(64, num / den).log10().to_f64()
}

fn rel_diff(a: &ComplexValue, b: &ComplexValue) -> Float {
    let diff = Float::with_val(64, (&a.z - &b.z).abs());
    diff / b.abs()
}

fn upper(v: &ComplexValue) -> Float {
    v.abs() + &v.err
}

fn lower(v: &ComplexValue) -> Float {
    v.abs() - &v.err
}

fn jk_bound(d: i64) -> Float {
    // 877383 |q_{tau_K}|^{5/2} = 877383 exp(-(5/2) pi sqrt|d|)
    let p = BOUND_PREC;
    let e = -(Float::with_val(p, Constant::Pi) * Float::with_val(p, -d).sqrt() * 5u32 / 2u32);
    e.exp() * 877383u32
}

fn c_at(q: &QuadForm, ctx: &EvalContext) -> Result<ComplexValue> {
    let tau = Cx::from_cm_point(&tau_of_form(q), ctx.prec_bits());
    Ok(QExpansions::new(&tau, ctx)?.c())
}

/// `|C(tau_Q) / C(tau_K)| < 877383 |q_{tau_K}|^{5/2} < 1` for every
/// fundamental `d` in range with `h_K >= 2` and every nonprincipal reduced `Q`.
pub fn certify_j_inequality(d_min: i64, d_max: i64, ctx: &EvalContext, threads: usize) -> Result<Certificate> {
    if d_min > d_max || d_max > -15 {
        return domain(format!("range [{d_min}, {d_max}] must satisfy d_min <= d_max <= -15"));
    }
    let ds = fundamental_discriminants(d_min, d_max);
    let per_d = in_pool(threads, || {
        ds.par_iter()
            .map(|&d| -> Result<Vec<(f64, String)>> {
                let forms = enumerate_reduced(d)?;
                if forms.len() < 2 {
                    return Ok(Vec::new());
                }
                let principal = QuadForm::principal(d);
                let ck = c_at(&principal, ctx)?;
                let bound = jk_bound(d);
                let mut out = vec![(-(bound.clone().log10().to_f64()), format!("d={d}: bound {bound:.6e} < 1"))];
                for q in forms.iter().filter(|q| **q != principal) {
                    let cq = c_at(q, ctx)?;
                    let ratio = upper(&cq) / lower(&ck);
                    let m = log10_ratio(&bound, &ratio);
                    out.push((m, format!("d={d} Q=({},{},{}): ratio {:.4e} vs bound {:.4e}", q.a, q.b, q.c, ratio.to_f64(), bound.to_f64())));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let checks: Vec<_> = per_d.into_iter().flatten().collect();
    Ok(Certificate::from_checks(
        "j-inequality",
        format!("fundamental d in [{d_min}, {d_max}] with h_K >= 2, all nonprincipal reduced forms"),
        None,
        checks,
    ))
}

/// `|C(tau_Q)|^n < |C(tau_K)|^n` for `1 <= n <= n_max` and every nonprincipal reduced `Q`.
pub fn certify_hkc_separation(d: i64, n_max: u32, ctx: &EvalContext) -> Result<Certificate> {
    let forms = enumerate_reduced(d)?;
    if forms.len() < 2 {
        return domain(format!("h_K = {} for d = {d}; separation needs h_K >= 2", forms.len()));
    }
    let principal = QuadForm::principal(d);
    let ck = c_at(&principal, ctx)?;
    let mut checks = Vec::new();
    for q in forms.iter().filter(|q| **q != principal) {
        let cq = c_at(q, ctx)?;
        let r = upper(&cq) / lower(&ck);
        for n in 1..=n_max {
            let rn = Float::with_val(64, rug::ops::Pow::pow(&r, n));
            let one = Float::with_val(64, 1);
            checks.push((log10_ratio(&one, &rn), format!("Q=({},{},{}) n={n}: |C_Q/C_K|^n = {:.4e}", q.a, q.b, q.c, rn.to_f64())));
        }
    }
    Ok(Certificate::from_checks("hkc", format!("d={d}, 1 <= n <= {n_max}"), None, checks))
}

#[derive(Debug, Clone)]
struct SiegelSample {
    v: RowVector,
    tau: (f64, f64),
    /// Level for the lower bound, when `v` lies in `(1/N) Z^2`.
    level: Option<i64>,
    exact_boundary: bool,
}

fn siegel_margins(s: &SiegelSample, ctx: &EvalContext) -> Result<(f64, Option<f64>)> {
    let prec = ctx.prec_bits();
    let tau = if s.exact_boundary {
        Cx::new(Float::with_val(prec, s.tau.0), Float::with_val(prec, 3).sqrt() / 2u32)
    } else {
        Cx::from_f64(s.tau.0, s.tau.1, prec)
    };
    let qe = QExpansions::new(&tau, ctx)?;
    let g = qe.siegel(&s.v)?;
    // ln s = -2 pi Im tau
    let ln_s = -(Float::with_val(64, Constant::Pi) * Float::with_val(64, &tau.im) * 2u32);
    let upper_bound = Float::with_val(64, -(ln_s.clone()) / 24u32).exp() * Float::with_val(64, 2.29);
    let m1 = log10_ratio(&upper_bound, &upper(&g));
    let m2 = s.level.map(|n| {
        let lb = Float::with_val(64, ln_s.clone() / 12u32).exp() * Float::with_val(64, 0.76) / n as u32;
        log10_ratio(&lower(&g), &lb)
    });
    Ok((m1, m2))
}

/// Both Siegel-function inequalities on seeded random samples plus a
/// deterministic grid along `Im tau = sqrt(3)/2`.
pub fn certify_siegel_bounds(n_max: i64, samples: usize, ctx: &EvalContext, opts: SweepOptions) -> Result<Certificate> {
    if n_max < 2 {
        return domain(format!("N_max = {n_max} must be at least 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let im_lo = 3f64.sqrt() / 2.0;
    let mut list = Vec::with_capacity(samples + 4096);
    for k in 0..samples {
        let tau = (rng.gen_range(-0.5..=0.5), rng.gen_range(im_lo..=10.0));
        if k % 4 == 3 {
            // arbitrary rational vector for the upper bound
            let den = rng.gen_range(2..=1000i64);
            let v = RowVector::new(rng.gen_range(-3 * den..=3 * den), rng.gen_range(-3 * den..=3 * den), den)?;
            if v.is_integral() {
                continue;
            }
            list.push(SiegelSample { v, tau, level: None, exact_boundary: false });
        } else {
            let n = rng.gen_range(2..=n_max);
            let (a, b) = loop {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                if a != 0 || b != 0 {
                    break (a, b);
                }
            };
            list.push(SiegelSample { v: RowVector { n1: a, n2: b, den: n }, tau, level: Some(n), exact_boundary: false });
        }
    }
    let mut grid_levels: Vec<i64> = [2, 3, 4, 5, 6, 7, 8, 10, 12].into_iter().filter(|&n| n <= n_max).collect();
    if !grid_levels.contains(&n_max) {
        grid_levels.push(n_max);
    }
    for re in [-0.5, -0.25, 0.0, 0.25, 0.5] {
        for &n in &grid_levels {
            for a in 0..n {
                for b in 0..n {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    list.push(SiegelSample {
                        v: RowVector { n1: a, n2: b, den: n },
                        tau: (re, im_lo),
                        level: Some(n),
                        exact_boundary: true,
                    });
                }
            }
        }
    }
    let results = in_pool(opts.threads, || {
        list.par_iter().map(|s| siegel_margins(s, ctx)).collect::<Result<Vec<_>>>()
    })??;
    let mut checks = Vec::with_capacity(results.len() * 2);
    let (mut worst_i, mut worst_ii) = (f64::INFINITY, f64::INFINITY);
    for (s, (m1, m2)) in list.iter().zip(&results) {
        worst_i = worst_i.min(*m1);
        checks.push((*m1, format!("upper bound, v={} tau={:?}", s.v, s.tau)));
        if let Some(m2) = m2 {
            worst_ii = worst_ii.min(*m2);
            checks.push((*m2, format!("lower bound, v={} tau={:?}", s.v, s.tau)));
        }
    }
    let mut cert = Certificate::from_checks(
        "siegel-bounds",
        format!("{samples} seeded samples with N <= {n_max}, Im tau in [sqrt(3)/2, 10], plus the Im tau = sqrt(3)/2 grid"),
        Some(opts.seed),
        checks,
    );
    cert.samples_checked = list.len() as u64;
    cert.margins = vec![("upper".into(), worst_i), ("lower".into(), worst_ii)];
    Ok(cert)
}

/// `(2^7 3^5)^6 / 3^9`, the constant relating `(f_u - f_v)^6` to the Siegel side.
pub fn ffgg_constant(prec: u32) -> ComplexValue {
    let k = ComplexValue::exact(Cx::from_ratio(41472, 1, prec)).pow_u(6);
    k.div(&ComplexValue::exact(Cx::from_ratio(19683, 1, prec)))
}

/// Both sides of the Fricke/Siegel difference identity at one point.
pub fn ffgg_sides(qe: &QExpansions, u: &RowVector, v: &RowVector) -> Result<(ComplexValue, ComplexValue)> {
    if u.is_integral() || v.is_integral() || u.equiv_up_to_sign(v) {
        return domain(format!("need nonintegral u = {u}, v = {v} with u != +-v mod Z^2"));
    }
    let lhs = qe.fricke(u)?.sub(&qe.fricke(v)?).pow_u(6);
    let num = qe.siegel(&u.add(v))?.pow_u(6).mul(&qe.siegel(&u.sub(v))?.pow_u(6));
    let den = qe.siegel(u)?.pow_u(12).mul(&qe.siegel(v)?.pow_u(12));
    let rhs = qe.c().mul(&num).div(&den).mul(&ffgg_constant(qe.prec()));
    Ok((lhs, rhs))
}

/// The difference identity on seeded random `(u, v, tau)` to relative `1e-9`.
pub fn certify_ffgg(trials: usize, ctx: &EvalContext, opts: SweepOptions) -> Result<Certificate> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut list = Vec::with_capacity(trials);
    while list.len() < trials {
        let den = rng.gen_range(2..=12i64);
        let mut r = || rng.gen_range(-2 * den..=2 * den);
        let u = RowVector::new(r(), r(), den)?;
        let v = RowVector::new(r(), r(), den)?;
        let tau = (rng.gen_range(-0.5..=0.5), rng.gen_range(0.866..=2.0));
        if u.is_integral() || v.is_integral() || u.equiv_up_to_sign(&v) {
            continue;
        }
        list.push((u, v, tau));
    }
    let checks = in_pool(opts.threads, || {
        list.par_iter()
            .map(|(u, v, tau)| -> Result<(f64, String)> {
                let qe = QExpansions::new(&Cx::from_f64(tau.0, tau.1, ctx.prec_bits()), ctx)?;
                let (lhs, rhs) = ffgg_sides(&qe, u, v)?;
                let r = rel_diff(&lhs, &rhs);
                Ok((log10_ratio(&Float::with_val(64, 1e-9), &r), format!("u={u} v={v} tau={tau:?}")))
            })
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(Certificate::from_checks(
        "ffgg",
        format!("{trials} seeded samples, denominators <= 12, relative tolerance 1e-9"),
        Some(opts.seed),
        checks,
    ))
}

/// Constancy and realness of the norm-constant ratio over seeded sample points.
pub fn certify_normconstant(n: i64, points: usize, ctx: &EvalContext, opts: SweepOptions) -> Result<Certificate> {
    if points < 2 {
        return domain("at least two sample points are needed");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let taus: Vec<(f64, f64)> =
        (0..points).map(|_| (rng.gen_range(-0.5..=0.5), rng.gen_range(0.87..=5.0))).collect();
    let vals = in_pool(opts.threads, || {
        taus.par_iter()
            .map(|t| normconstant_ratio(n, &Cx::from_f64(t.0, t.1, ctx.prec_bits()), ctx))
            .collect::<Result<Vec<_>>>()
    })??;
    let brute = m_n(n)?;
    let mut checks = Vec::new();
    let k0 = &vals[0].ratio;
    for (t, v) in taus.iter().zip(&vals) {
        let r = rel_diff(&v.ratio, k0);
        checks.push((log10_ratio(&Float::with_val(64, 1e-6), &r), format!("constancy at tau={t:?}")));
        let im = Float::with_val(64, v.ratio.z.im.abs_ref()) / v.ratio.abs();
        checks.push((log10_ratio(&Float::with_val(64, 1e-8), &im), format!("realness at tau={t:?}")));
    }
    let m_ok = if vals[0].m_n == brute { f64::INFINITY } else { f64::NEG_INFINITY };
    checks.push((m_ok, format!("m_N = {} against pair count {brute}", vals[0].m_n)));
    let (p, q) = &vals[0].best_rational;
    let mut cert = Certificate::from_checks(
        "normconstant",
        format!("N={n}, {points} seeded points; k ~ {} (best rational {p}/{q})", k0.z.re.to_string_radix(10, Some(12))),
        Some(opts.seed),
        checks,
    );
    cert.margins = vec![("m_N".into(), vals[0].m_n as f64)];
    Ok(cert)
}

/// `y^2 = 4x^3 - Ax - B` and `AB = C^{5n+1}/27^3` on seeded random curves and points.
pub fn certify_curve(samples: usize, ctx: &EvalContext, opts: SweepOptions) -> Result<Certificate> {
    let ds: Vec<i64> = fundamental_discriminants(-200, -7);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut list = Vec::with_capacity(samples);
    while list.len() < samples {
        let d = ds[rng.gen_range(0..ds.len())];
        let n = rng.gen_range(0..=3u32);
        let den = rng.gen_range(2..=16i64);
        let (a, b) = (rng.gen_range(0..den), rng.gen_range(0..den));
        if a == 0 && b == 0 {
            continue;
        }
        list.push((d, n, a, b, den));
    }
    let checks = in_pool(opts.threads, || {
        list.par_iter()
            .map(|&(d, n, a, b, den)| -> Result<Vec<(f64, String)>> {
                let field = crate::cmfield::field_invariants(d)?;
                let curve = WeberCurve::new(&field, n, ctx)?;
                let w = TorsionPoint::new(a, b, den)?;
                let x = curve.x(&w)?;
                let y2 = curve.y_squared(&w)?;
                let rhs = curve.rhs(&x);
                let (ca, cb) = curve.coefficients();
                let scale = [
                    x.pow_u(3).abs() * 4u32,
                    ca.abs() * x.abs(),
                    cb.abs(),
                    y2.abs(),
                ]
                .into_iter()
                .fold(Float::with_val(64, 0), |m, v| if v > m { v } else { m });
                let resid = Float::with_val(64, (&y2.z - &rhs.z).abs()) / scale;
                let ab = ca.mul(&cb);
                let c27 = ComplexValue::exact(Cx::from_ratio(19683, 1, ctx.prec_bits()));
                let expect = curve.c_k().pow_u(5 * n as u64 + 1).div(&c27);
                let tol = Float::with_val(64, 1e-10);
                Ok(vec![
                    (log10_ratio(&tol, &resid), format!("Weierstrass equation d={d} n={n} omega={w}")),
                    (log10_ratio(&tol, &rel_diff(&ab, &expect)), format!("AB identity d={d} n={n}")),
                ])
            })
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(Certificate::from_checks(
        "curve",
        format!("{samples} seeded (d, n <= 3, omega) samples, relative tolerance 1e-10"),
        Some(opts.seed),
        checks.into_iter().flatten().collect(),
    ))
}
