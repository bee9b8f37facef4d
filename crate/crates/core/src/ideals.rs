//! Integral ideals of `O_K = Z*tau_K + Z` in Hermite normal form.
//!
//! An element `s*tau_K + t` is written as the pair `(s, t)`. An ideal is the
//! lattice `Z*a + Z*(b + c*tau_K)` with `a, c > 0`, `0 <= b < a`, so `a` is
//! the least positive rational integer it contains and `a*c` is its norm.

use serde::Serialize;

use crate::arith::{ext_gcd, gcd3, is_prime};
use crate::cmfield::{classify_prime, norm_form, FieldInvariants, SplitType};
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IdealHnf {
    pub d: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// `omega = (a*tau_K + b) / den`, normalized so that `0 <= a, b < den` and
/// `gcd(a, b, den) = 1`. Never an element of `O_K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TorsionPoint {
    pub a: i64,
    pub b: i64,
    pub den: i64,
}

impl TorsionPoint {
    pub fn new(a: i64, b: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return domain(format!("torsion denominator {den} must be positive"));
        }
        let (a, b) = (a.rem_euclid(den), b.rem_euclid(den));
        if a == 0 && b == 0 {
            return domain(format!(
                "omega = ({a}*tau + {b})/{den} lies in O_K; it has no torsion class"
            ));
        }
        let g = gcd3(a, b, den);
        Ok(TorsionPoint { a: a / g, b: b / g, den: den / g })
    }

    /// `xi * omega` for `xi = s*tau_K + t`.
    pub fn scale(&self, field: &FieldInvariants, s: i64, t: i64) -> Result<Self> {
        let (ps, pt) = mul_elements(field.b_k, field.c_k, (s, t), (self.a, self.b));
        TorsionPoint::new(ps, pt, self.den)
    }
}

impl std::fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}*tau+{})/{}", self.a, self.b, self.den)
    }
}

fn basis_consts(d: i64) -> (i64, i64) {
    if d.rem_euclid(4) == 0 {
        (0, -d / 4)
    } else {
        (1, (1 - d) / 4)
    }
}

/// Product in `O_K`, using `tau^2 = -b_K tau - c_K`.
pub(crate) fn mul_elements(b_k: i64, c_k: i64, x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
    let (s1, t1) = (x.0 as i128, x.1 as i128);
    let (s2, t2) = (y.0 as i128, y.1 as i128);
    let ss = s1 * s2;
    let s = s1 * t2 + s2 * t1 - b_k as i128 * ss;
    let t = t1 * t2 - c_k as i128 * ss;
    (s as i64, t as i64)
}

impl IdealHnf {
    pub fn unit(d: i64) -> Self {
        IdealHnf { d, a: 1, b: 0, c: 1 }
    }

    /// `n * O_K`.
    pub fn integer(d: i64, n: i64) -> Self {
        let n = n.abs();
        IdealHnf { d, a: n, b: 0, c: n }
    }

    pub fn norm(&self) -> i64 {
        self.a * self.c
    }

    pub fn is_unit(&self) -> bool {
        self.a == 1
    }

    /// `Some(n)` when the ideal is `n * O_K`.
    pub fn as_integer_multiple(&self) -> Option<i64> {
        (self.b == 0 && self.a == self.c).then_some(self.a)
    }

    pub fn contains(&self, s: i64, t: i64) -> bool {
        if s % self.c != 0 {
            return false;
        }
        let k = (s / self.c) as i128;
        (t as i128 - k * self.b as i128).rem_euclid(self.a as i128) == 0
    }

    /// Z-basis as elements `(s, t)`.
    pub fn basis(&self) -> [(i64, i64); 2] {
        [(0, self.a), (self.c, self.b)]
    }

    /// Closed under multiplication by `tau_K`.
    pub fn is_module(&self) -> bool {
        let (b_k, c_k) = basis_consts(self.d);
        self.basis().iter().all(|&x| {
            let (s, t) = mul_elements(b_k, c_k, (1, 0), x);
            self.contains(s, t)
        })
    }
}

impl std::fmt::Display for IdealHnf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.c == 1 {
            write!(f, "[{}, {}+tau]", self.a, self.b)
        } else {
            write!(f, "[{}, {}+{}*tau]", self.a, self.b, self.c)
        }
    }
}

/// HNF of the Z-module spanned by `gens`.
fn hnf_from_z_gens(d: i64, gens: &[(i64, i64)]) -> Result<IdealHnf> {
    let mut pivot: Option<(i128, i128)> = None;
    let mut a_acc: i128 = 0;
    for &(s, t) in gens {
        let (s, t) = (s as i128, t as i128);
        if s == 0 {
            a_acc = gcd_i128(a_acc, t);
            continue;
        }
        match pivot {
            None => pivot = Some((s, t)),
            Some((ps, pt)) => {
                let (g, x, y) = ext_gcd(ps as i64, s as i64);
                let g = g as i128;
                let (x, y) = (x as i128, y as i128);
                let zero_s = (s / g) * pt - (ps / g) * t;
                a_acc = gcd_i128(a_acc, zero_s);
                let mut nt = x * pt + y * t;
                if a_acc > 0 {
                    nt = nt.rem_euclid(a_acc);
                }
                pivot = Some((g, nt));
            }
        }
    }
    let Some((mut ps, mut pt)) = pivot else {
        return domain("generators span a module of rank < 2");
    };
    if a_acc == 0 {
        return domain("generators span a module of rank < 2");
    }
    if ps < 0 {
        ps = -ps;
        pt = -pt;
    }
    Ok(IdealHnf { d, a: a_acc as i64, b: pt.rem_euclid(a_acc) as i64, c: ps as i64 })
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// The ideal generated over `O_K` by elements `s*tau_K + t` and an optional
/// rational integer.
pub fn ideal_from_generators(
    field: &FieldInvariants,
    gens: &[(i64, i64)],
    integer: Option<i64>,
) -> Result<IdealHnf> {
    let mut z = Vec::with_capacity(2 * gens.len() + 2);
    for &g in gens.iter().chain(integer.map(|n| (0, n)).iter()) {
        z.push(g);
        z.push(mul_elements(field.b_k, field.c_k, (1, 0), g));
    }
    if z.iter().all(|&(s, t)| s == 0 && t == 0) {
        return domain("zero ideal: all generators vanish");
    }
    hnf_from_z_gens(field.d, &z)
}

fn same_field(i: &IdealHnf, j: &IdealHnf) -> Result<()> {
    if i.d != j.d {
        return domain(format!("discriminant mismatch: {} vs {}", i.d, j.d));
    }
    Ok(())
}

pub fn ideal_multiply(i: &IdealHnf, j: &IdealHnf) -> Result<IdealHnf> {
    same_field(i, j)?;
    let (b_k, c_k) = basis_consts(i.d);
    let mut z = Vec::with_capacity(4);
    for x in i.basis() {
        for y in j.basis() {
            z.push(mul_elements(b_k, c_k, x, y));
        }
    }
    hnf_from_z_gens(i.d, &z)
}

pub fn ideal_add(i: &IdealHnf, j: &IdealHnf) -> Result<IdealHnf> {
    same_field(i, j)?;
    let z = [i.basis(), j.basis()].concat();
    hnf_from_z_gens(i.d, &z)
}

/// Complex conjugate ideal.
pub fn ideal_conjugate(i: &IdealHnf) -> IdealHnf {
    let (b_k, _) = basis_consts(i.d);
    // conj(s tau + t) = -s tau + (t - s b_K)
    let z: Vec<(i64, i64)> = i.basis().iter().map(|&(s, t)| (-s, t - s * b_k)).collect();
    hnf_from_z_gens(i.d, &z).expect("conjugate of a rank-2 lattice has rank 2")
}

/// `I / k` when `I` is contained in `k * O_K`.
fn exact_div(i: &IdealHnf, k: i64) -> Result<IdealHnf> {
    if i.a % k != 0 || i.b % k != 0 || i.c % k != 0 {
        return Err(Error::Internal(format!("{i} is not divisible by {k}")));
    }
    Ok(IdealHnf { d: i.d, a: i.a / k, b: i.b / k, c: i.c / k })
}

fn scale(i: &IdealHnf, k: i64) -> IdealHnf {
    IdealHnf { d: i.d, a: i.a * k, b: i.b * k, c: i.c * k }
}

pub fn least_positive_integer(i: &IdealHnf) -> i64 {
    i.a
}

/// `I + N*O_K = O_K`.
pub fn is_coprime_to_integer(i: &IdealHnf, n: i64) -> Result<bool> {
    if n < 1 {
        return domain(format!("modulus {n} must be positive"));
    }
    Ok(ideal_add(i, &IdealHnf::integer(i.d, n))?.is_unit())
}

/// `{x in O_K : x * omega in O_K}`.
///
/// With `alpha = den * omega` and `G = alpha*O_K + den*O_K`, the annihilator
/// is `den * G^{-1} = (den / N(G)) * conj(G)`.
pub fn annihilator(field: &FieldInvariants, w: &TorsionPoint) -> Result<IdealHnf> {
    let alpha = (w.a, w.b);
    let g = ideal_from_generators(field, &[alpha], Some(w.den))?;
    exact_div(&scale(&ideal_conjugate(&g), w.den), g.norm())
}

/// The lexicographically least `(a, b)` such that `(a*tau_K + b)/N_I`
/// generates `I^{-1}/O_K` as an `O_K`-module.
pub fn find_omega(field: &FieldInvariants, i: &IdealHnf) -> Result<TorsionPoint> {
    if i.d != field.d {
        return domain(format!("ideal of discriminant {} used with field {}", i.d, field.d));
    }
    if i.is_unit() {
        return domain("find_omega needs a proper nontrivial ideal");
    }
    let den = i.a;
    for a in 0..den {
        for b in 0..den {
            if gcd3(a, b, den) != 1 {
                continue;
            }
            let w = TorsionPoint { a, b, den };
            if !i.basis().iter().all(|&x| {
                let (s, t) = mul_elements(field.b_k, field.c_k, x, (a, b));
                s % den == 0 && t % den == 0
            }) {
                continue;
            }
            if annihilator(field, &w)? == *i {
                return Ok(w);
            }
        }
    }
    Err(Error::Internal(format!("no generator of I^-1/O_K found for {i}")))
}

/// A prime ideal above `p`: `p*O_K` when `p` is inert, otherwise
/// `[p, root + tau_K]` where `root` is a zero of `N(tau_K + t)` mod `p`
/// (the least one unless given).
pub fn prime_ideal_above(field: &FieldInvariants, p: i64, root: Option<i64>) -> Result<IdealHnf> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    match classify_prime(field, p)? {
        SplitType::Inert => {
            if root.is_some() {
                return domain(format!("{p} is inert in K; no root selects a prime above it"));
            }
            Ok(IdealHnf::integer(field.d, p))
        }
        _ => {
            let t = match root {
                Some(t) => {
                    if norm_form(field, 1, t).rem_euclid(p) != 0 {
                        return domain(format!("N(tau + {t}) is not divisible by {p}"));
                    }
                    t.rem_euclid(p)
                }
                None => (0..p)
                    .find(|&t| norm_form(field, 1, t).rem_euclid(p) == 0)
                    .ok_or_else(|| Error::Internal(format!("no root mod {p}")))?,
            };
            ideal_from_generators(field, &[(1, t)], Some(p))
        }
    }
}

/// Representatives `(s, t)` of `(O_K / I)^*`, with `0 <= s < c`, `0 <= t < a`.
pub fn unit_residues(field: &FieldInvariants, i: &IdealHnf) -> Result<Vec<(i64, i64)>> {
    if i.is_unit() {
        return Ok(vec![(0, 0)]);
    }
    let mut out = Vec::new();
    for s in 0..i.c {
        for t in 0..i.a {
            if s == 0 && t == 0 {
                continue;
            }
            let x = ideal_from_generators(field, &[(s, t)], None)?;
            if ideal_add(i, &x)?.is_unit() {
                out.push((s, t));
            }
        }
    }
    Ok(out)
}

/// Every ideal of norm at most `max_norm`.
pub fn enumerate_ideals(field: &FieldInvariants, max_norm: i64) -> Vec<IdealHnf> {
    let mut out = Vec::new();
    for c in 1..=max_norm {
        let mut a = c;
        while a * c <= max_norm {
            let mut b = 0;
            while b < a {
                let cand = IdealHnf { d: field.d, a, b, c };
                if cand.is_module() {
                    out.push(cand);
                }
                b += c;
            }
            a += c;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gcd;
    use crate::cmfield::field_invariants;

    fn f20() -> FieldInvariants {
        field_invariants(-20).unwrap()
    }

    fn worked_example_primes() -> [IdealHnf; 3] {
        let f = f20();
        [
            ideal_from_generators(&f, &[(1, 1)], Some(2)).unwrap(),
            ideal_from_generators(&f, &[], Some(13)).unwrap(),
            ideal_from_generators(&f, &[(1, 15)], Some(23)).unwrap(),
        ]
    }

    /// Brute-force annihilator: scan residues mod den.
    fn brute_annihilator(f: &FieldInvariants, w: &TorsionPoint) -> IdealHnf {
        let mut gens = vec![(0, w.den), (w.den, 0)];
        for s in 0..w.den {
            for t in 0..w.den {
                let (ps, pt) = mul_elements(f.b_k, f.c_k, (s, t), (w.a, w.b));
                if ps % w.den == 0 && pt % w.den == 0 {
                    gens.push((s, t));
                }
            }
        }
        hnf_from_z_gens(f.d, &gens).unwrap()
    }

    #[test]
    fn generator_examples() {
        let [p1, p2, p3] = worked_example_primes();
        assert_eq!((p1.a, p1.norm()), (2, 2));
        assert_eq!(p2, IdealHnf::integer(-20, 13));
        assert_eq!(p2.norm(), 169);
        assert_eq!((p3.a, p3.norm()), (23, 23));
        let f = f20();
        // order independence
        let q = ideal_from_generators(&f, &[(0, 2), (1, 1)], None).unwrap();
        assert_eq!(q, p1);
        assert!(ideal_from_generators(&f, &[(0, 0)], None).is_err());
        assert!(ideal_from_generators(&f, &[], None).is_err());
        for p in [p1, p2, p3] {
            assert!(p.is_module());
        }
    }

    #[test]
    fn multiply_examples() {
        let [p1, p2, p3] = worked_example_primes();
        assert_eq!(ideal_multiply(&p1, &p1).unwrap(), IdealHnf::integer(-20, 2));
        assert_eq!(ideal_multiply(&p3, &IdealHnf::unit(-20)).unwrap(), p3);
        let m = ideal_multiply(&ideal_multiply(&p1, &p2).unwrap(), &p3).unwrap();
        assert_eq!(least_positive_integer(&m), 598);
        assert_eq!(m.norm(), 2 * 169 * 23);
        assert!(ideal_multiply(&p1, &IdealHnf::unit(-15)).is_err());
    }

    #[test]
    fn prime_constructors_match_bases() {
        let f = f20();
        let [p1, p2, p3] = worked_example_primes();
        assert_eq!(prime_ideal_above(&f, 2, None).unwrap(), p1);
        assert_eq!(prime_ideal_above(&f, 13, None).unwrap(), p2);
        assert_eq!(prime_ideal_above(&f, 23, Some(15)).unwrap(), p3);
        let p3bar = prime_ideal_above(&f, 23, None).unwrap();
        assert_eq!(p3bar, ideal_conjugate(&p3));
        assert_eq!(ideal_multiply(&p3, &p3bar).unwrap(), IdealHnf::integer(-20, 23));
        assert!(prime_ideal_above(&f, 23, Some(3)).is_err());
        assert!(prime_ideal_above(&f, 13, Some(1)).is_err());
    }

    #[test]
    fn coprimality() {
        let f = f20();
        let tau1 = ideal_from_generators(&f, &[(1, 1)], None).unwrap();
        assert!(is_coprime_to_integer(&tau1, 13).unwrap());
        let [p1, ..] = worked_example_primes();
        assert!(!is_coprime_to_integer(&p1, 2).unwrap());
        for s in 0..13 {
            for t in 0..13 {
                if gcd3(13, s, t) != 1 {
                    continue;
                }
                let i = ideal_from_generators(&f, &[(s, t)], None).unwrap();
                assert!(is_coprime_to_integer(&i, 13).unwrap());
            }
        }
    }

    #[test]
    fn coprimality_matches_norm_gcd_for_principal() {
        for d in [-7, -15, -20, -23] {
            let f = field_invariants(d).unwrap();
            for n in 2..=20 {
                for s in -5..5 {
                    for t in -5..5 {
                        if s == 0 && t == 0 {
                            continue;
                        }
                        let i = ideal_from_generators(&f, &[(s, t)], None).unwrap();
                        let want = gcd(norm_form(&f, s, t), n) == 1;
                        assert_eq!(is_coprime_to_integer(&i, n).unwrap(), want);
                    }
                }
            }
        }
    }

    #[test]
    fn annihilator_examples() {
        let f = f20();
        let w = TorsionPoint::new(0, 1, 7).unwrap();
        assert_eq!(annihilator(&f, &w).unwrap(), IdealHnf::integer(-20, 7));
        let w = TorsionPoint::new(0, 2, 4).unwrap();
        assert_eq!(w, TorsionPoint { a: 0, b: 1, den: 2 });
        assert_eq!(annihilator(&f, &w).unwrap(), IdealHnf::integer(-20, 2));
        assert!(TorsionPoint::new(4, 8, 4).is_err());
    }

    #[test]
    fn annihilator_matches_brute_force() {
        for d in [-7, -15, -20] {
            let f = field_invariants(d).unwrap();
            for den in 2..=24 {
                for a in 0..den {
                    for b in 0..den {
                        let Ok(w) = TorsionPoint::new(a, b, den) else { continue };
                        assert_eq!(annihilator(&f, &w).unwrap(), brute_annihilator(&f, &w));
                    }
                }
            }
        }
    }

    #[test]
    fn find_omega_examples() {
        let f = f20();
        let w = find_omega(&f, &IdealHnf::integer(-20, 5)).unwrap();
        assert_eq!(w, TorsionPoint { a: 0, b: 1, den: 5 });
        let [p1, p2, p3] = worked_example_primes();
        let w = find_omega(&f, &p1).unwrap();
        assert_eq!(w, TorsionPoint { a: 1, b: 1, den: 2 });
        assert_eq!(brute_annihilator(&f, &w), p1);
        let m = ideal_multiply(&ideal_multiply(&p1, &p2).unwrap(), &p3).unwrap();
        let w = find_omega(&f, &m).unwrap();
        assert_eq!(w.den, 598);
        assert_eq!(brute_annihilator(&f, &w), m);
        assert!(find_omega(&f, &IdealHnf::unit(-20)).is_err());
    }

    #[test]
    fn norms_and_least_integers() {
        for d in [-7, -15, -20] {
            let f = field_invariants(d).unwrap();
            let ideals = enumerate_ideals(&f, 60);
            for i in &ideals {
                let n = least_positive_integer(i);
                assert_eq!(i.norm() % n, 0);
                assert_eq!((n * n) % i.norm(), 0);
            }
            for i in &ideals {
                for j in &ideals {
                    let p = ideal_multiply(i, j).unwrap();
                    assert_eq!(p.norm(), i.norm() * j.norm());
                    assert_eq!(p, ideal_multiply(j, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn enumeration_counts_match_dedekind_zeta_coefficients() {
        // number of ideals of norm n for Q(sqrt -7): sum_{k | n} (d/k)
        let f = field_invariants(-7).unwrap();
        let ideals = enumerate_ideals(&f, 100);
        for n in 1..=100i64 {
            let want: i64 = (1..=n)
                .filter(|k| n % k == 0)
                .map(|k| crate::arith::factorize(k as u64).iter().fold(1i64, |acc, &(p, e)| {
                    acc * (crate::cmfield::kronecker_symbol(-7, p as i64).unwrap() as i64)
                        .pow(e)
                }))
                .sum();
            let got = ideals.iter().filter(|i| i.norm() == n).count() as i64;
            assert_eq!(got, want, "n={n}");
        }
    }

    #[test]
    fn unit_residue_counts() {
        let f = field_invariants(-7).unwrap();
        assert_eq!(unit_residues(&f, &IdealHnf::integer(-7, 3)).unwrap().len(), 8);
        let f = f20();
        assert_eq!(unit_residues(&f, &IdealHnf::integer(-20, 2)).unwrap().len(), 2);
    }

    proptest::proptest! {
        #[test]
        fn hnf_is_canonical(s1 in -30i64..30, t1 in -30i64..30, s2 in -30i64..30, t2 in -30i64..30) {
            let f = field_invariants(-23).unwrap();
            proptest::prop_assume!(s1 != 0 || t1 != 0);
            let i = ideal_from_generators(&f, &[(s1, t1), (s2, t2)], None).unwrap();
            let j = ideal_from_generators(&f, &[(s2, t2), (s1, t1), (s1 + s2, t1 + t2)], None).unwrap();
            proptest::prop_assert_eq!(i, j);
            proptest::prop_assert!(i.is_module());
            proptest::prop_assert!(i.contains(s1, t1) && i.contains(s2, t2));
            proptest::prop_assert!(i.b >= 0 && i.b < i.a && i.a % i.c == 0 && i.b % i.c == 0);
        }
    }
}
