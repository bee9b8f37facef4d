use cmray::cmfield::FieldInvariants;
use cmray::ideals::{ideal_multiply, prime_ideal_above, IdealHnf};
use cmray::modfun::Cx;
use rug::Float;

/// `"i"` or `"x,y"` for `x + y i`.
pub fn tau(s: &str, prec: u32) -> Result<Cx, String> {
    let s = s.trim();
    if s == "i" {
        return Ok(Cx::i(prec));
    }
    let (x, y) = s.split_once(',').ok_or_else(|| format!("tau `{s}`: expected `i` or `x,y`"))?;
    let re = decimal(x, prec)?;
    let im = decimal(y, prec)?;
    if im <= 0 {
        return Err(format!("tau `{s}` is not in the upper half-plane"));
    }
    Ok(Cx::new(re, im))
}

fn decimal(s: &str, prec: u32) -> Result<Float, String> {
    Float::parse(s.trim())
        .map(|p| Float::with_val(prec, p))
        .map_err(|e| format!("`{s}`: {e}"))
}

/// `"a,b/N"` as `(a, b, N)` with `N > 0`.
pub fn ratio_pair(s: &str) -> Result<(i64, i64, i64), String> {
    let bad = || format!("`{s}`: expected `a,b/N`");
    let (ab, n) = s.trim().split_once('/').ok_or_else(bad)?;
    let (a, b) = ab.split_once(',').ok_or_else(bad)?;
    let int = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    let n = int(n)?;
    if n <= 0 {
        return Err(format!("`{s}`: denominator must be positive"));
    }
    Ok((int(a)?, int(b)?, n))
}

/// One factor `p:P[:root][^e]` of an ideal specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactor {
    pub p: i64,
    pub root: Option<i64>,
    pub exp: u32,
}

pub fn ideal_factors(spec: &str) -> Result<Vec<PrimeFactor>, String> {
    let mut out = Vec::new();
    for item in spec.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (body, exp) = match item.split_once('^') {
            Some((b, e)) => (b, e.trim().parse::<u32>().map_err(|_| format!("bad exponent in `{item}`"))?),
            None => (item, 1),
        };
        let parts: Vec<&str> = body.split(':').map(str::trim).collect();
        if parts.len() < 2 || parts.len() > 3 || parts[0] != "p" {
            return Err(format!("`{item}`: expected p:P[:root][^e]"));
        }
        let p = parts[1].parse::<i64>().map_err(|_| format!("bad prime in `{item}`"))?;
        let root = match parts.get(2) {
            Some(r) => Some(r.parse::<i64>().map_err(|_| format!("bad root in `{item}`"))?),
            None => None,
        };
        if exp == 0 {
            return Err(format!("`{item}`: exponent must be positive"));
        }
        out.push(PrimeFactor { p, root, exp });
    }
    if out.is_empty() {
        return Err("empty ideal specification".into());
    }
    Ok(out)
}

pub fn build_ideal(field: &FieldInvariants, factors: &[PrimeFactor]) -> cmray::error::Result<(Vec<IdealHnf>, IdealHnf)> {
    let mut primes = Vec::with_capacity(factors.len());
    let mut m = IdealHnf::unit(field.d);
    for f in factors {
        let p = prime_ideal_above(field, f.p, f.root)?;
        for _ in 0..f.exp {
            m = ideal_multiply(&m, &p)?;
        }
        primes.push(p);
    }
    Ok((primes, m))
}
