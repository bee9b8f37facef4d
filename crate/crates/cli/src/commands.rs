use cmray::bounds::{self, BoundReport, Certificate, SweepOptions};
use cmray::classfield::hilbert_class_poly;
use cmray::cmfield::{classify_prime, field_invariants, FieldInvariants, SplitType};
use cmray::error::Error;
use cmray::ideals::{ideal_multiply, least_positive_integer, IdealHnf, TorsionPoint};
use cmray::modfun::{self, ComplexValue, Cx, EvalContext, RowVector};
use cmray::quadforms::enumerate_reduced;
use serde_json::{json, Value};

use crate::args::*;
use crate::parse;

pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// What a command produced, before rendering.
pub struct Report {
    pub inputs: Value,
    pub results: Value,
    pub lines: Vec<String>,
    /// `Some(false)` for a failed verification.
    pub passed: Option<bool>,
}

pub fn value_json(v: &ComplexValue, digits: u32) -> Value {
    let (re, im, err) = v.decimal_parts(digits as usize);
    json!({ "re": re, "im": im, "err": err })
}

fn split_name(s: SplitType) -> &'static str {
    match s {
        SplitType::Ramified => "ramified",
        SplitType::Inert => "inert",
        SplitType::Split => "split",
    }
}

fn primes_below(n: i64) -> Vec<i64> {
    (2..n).filter(|&p| (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0)).collect()
}

pub fn field(a: &FieldArgs, ctx: &EvalContext) -> CliResult<Report> {
    let f = field_invariants(a.d)?;
    let forms = enumerate_reduced(a.d)?;
    let mut split = Vec::new();
    for p in primes_below(a.primes_below) {
        split.push((p, split_name(classify_prime(&f, p)?)));
    }
    let mut lines = vec![
        format!("d_K = {}", f.d),
        format!("tau_K = {}", f.tau()),
        format!("O_K = Z[tau_K], tau_K^2 + {} tau_K + {} = 0", f.b_k, f.c_k),
        format!("h_K = {}", f.h_k),
        format!(
            "reduced forms: {}",
            forms.iter().map(|q| format!("({},{},{})", q.a, q.b, q.c)).collect::<Vec<_>>().join(" ")
        ),
        format!("splitting: {}", split.iter().map(|(p, s)| format!("{p}:{s}")).collect::<Vec<_>>().join(" ")),
    ];
    let mut results = json!({
        "d": f.d,
        "b_k": f.b_k,
        "c_k": f.c_k,
        "tau": f.tau().to_string(),
        "h_k": f.h_k,
        "forms": forms,
        "splitting": split.iter().map(|(p, s)| json!({ "p": p, "type": s })).collect::<Vec<_>>(),
    });
    if a.hilbert {
        if ctx.digits < 30 {
            eprintln!("warning: class polynomial at {} digits; rounding may be unreliable below 30", ctx.digits);
        }
        let h = hilbert_class_poly(a.d, ctx)?;
        lines.push(format!("H_d(x) = {}", h.poly));
        lines.push(format!("rounding residue {:.3e} at {} digits", h.residue, h.digits_used));
        results["hilbert"] = serde_json::to_value(&h).expect("class polynomial serializes");
    }
    Ok(Report { inputs: json!({ "d": a.d, "hilbert": a.hilbert }), results, lines, passed: None })
}

fn bound_lines(r: &BoundReport) -> Vec<String> {
    let mut out = vec![
        format!("d_K = {}", r.d_k),
        format!("N_m = {}", r.n_m),
        format!("theorem: {}", r.theorem),
    ];
    if let Some(t) = &r.terms {
        out.push(format!(
            "numerator {:.10} = {:.10} + {:.10}; denominator {:.10} = {:.10} - {:.10}",
            t.numerator, t.pi_term, t.log_term, t.denominator, t.denom_pi_term, t.ln_877383
        ));
    }
    if let Some(deg) = r.ray_class_degree {
        out.push(format!("[K_m : H_K] = {deg}"));
    }
    out.push(format!("raw bound = {}", r.raw_bound));
    out.push(format!("n_min = {}", r.n_min));
    out.push(r.note.clone());
    out
}

pub fn bound(a: &BoundArgs) -> CliResult<Report> {
    let f = field_invariants(a.d)?;
    let (report, mut extra, inputs) = match (&a.nm, &a.ideal) {
        (Some(nm), None) if a.modulus_integer => {
            if *nm < 2 {
                return usage(format!("--nm {nm} must be at least 2"));
            }
            let r = bounds::generator_plan(&f, &IdealHnf::integer(a.d, *nm))?;
            (r, json!({}), json!({ "d": a.d, "nm": nm, "modulus_integer": true }))
        }
        (Some(nm), None) => (bounds::n_min_bound(&f, *nm)?, json!({}), json!({ "d": a.d, "nm": nm })),
        (None, Some(spec)) => {
            let factors = parse::ideal_factors(spec).map_err(CliError::Usage)?;
            let (primes, m) = parse::build_ideal(&f, &factors)?;
            let r = bounds::generator_plan(&f, &m)?;
            let info = factor_info(&f, &factors.iter().map(|x| x.p).collect::<Vec<_>>(), &primes)?;
            (r, json!({ "modulus": m, "factors": info }), json!({ "d": a.d, "ideal": spec }))
        }
        _ => return usage("give exactly one of --nm and --ideal"),
    };
    let mut lines = Vec::new();
    if let Some(fs) = extra.get("factors").and_then(Value::as_array) {
        for x in fs {
            lines.push(format!("prime above {}: {} ({})", x["p"], x["ideal"].as_str().unwrap_or(""), x["type"].as_str().unwrap_or("")));
        }
    }
    lines.extend(bound_lines(&report));
    let mut results = serde_json::to_value(&report).expect("bound report serializes");
    if let Some(obj) = extra.as_object_mut() {
        for (k, v) in std::mem::take(obj) {
            results[k] = v;
        }
    }
    Ok(Report { inputs, results, lines, passed: None })
}

fn factor_info(f: &FieldInvariants, ps: &[i64], primes: &[IdealHnf]) -> CliResult<Vec<Value>> {
    ps.iter()
        .zip(primes)
        .map(|(&p, i)| {
            Ok(json!({ "p": p, "type": split_name(classify_prime(f, p)?), "ideal": i.to_string(), "norm": i.norm() }))
        })
        .collect()
}

fn eval_tau(a: &EvalArgs, prec: u32) -> CliResult<Cx> {
    match (&a.tau, a.tau_surd) {
        (Some(t), None) => parse::tau(t, prec).map_err(CliError::Usage),
        (None, Some(d)) => Ok(Cx::from_cm_point(&field_invariants(d)?.tau(), prec)),
        _ => usage("give exactly one of --tau and --tau-surd"),
    }
}

pub fn eval(a: &EvalArgs, ctx: &EvalContext) -> CliResult<Report> {
    let prec = ctx.prec_bits();
    let mut inputs = json!({ "kind": format!("{:?}", a.kind) });
    let value = match a.kind {
        EvalKind::LowerJ | EvalKind::UpperJ | EvalKind::C | EvalKind::Siegel | EvalKind::Fricke => {
            let tau = eval_tau(a, prec)?;
            inputs["tau"] = json!({ "re": tau.re.to_string_radix(10, Some(ctx.digits as usize)), "im": tau.im.to_string_radix(10, Some(ctx.digits as usize)) });
            match a.kind {
                EvalKind::LowerJ => modfun::j_value(&tau, ctx)?,
                EvalKind::UpperJ => modfun::J_value(&tau, ctx)?,
                EvalKind::C => modfun::C_value(&tau, ctx)?,
                _ => {
                    let Some(v) = &a.v else { return usage("--v a,b/N is required") };
                    let (x, y, n) = parse::ratio_pair(v).map_err(CliError::Usage)?;
                    inputs["v"] = json!(v);
                    let rv = RowVector::new(x, y, n)?;
                    if a.kind == EvalKind::Siegel {
                        modfun::siegel_value(rv, &tau, ctx)?
                    } else {
                        modfun::fricke_value(rv, &tau, ctx)?
                    }
                }
            }
        }
        EvalKind::WeberX | EvalKind::Y2 => {
            let Some(d) = a.d else { return usage("--d is required") };
            let Some(w) = &a.omega else { return usage("--omega a,b/D is required") };
            let (x, y, den) = parse::ratio_pair(w).map_err(CliError::Usage)?;
            let f = field_invariants(d)?;
            let w = TorsionPoint::new(x, y, den)?;
            inputs["d"] = json!(d);
            inputs["n"] = json!(a.n);
            inputs["omega"] = json!(w);
            if a.kind == EvalKind::WeberX {
                modfun::weber_x(&f, a.n, &w, ctx)?
            } else {
                modfun::y_squared(&f, a.n, &w, ctx)?
            }
        }
    };
    let lines = vec![format!("{:.*}", ctx.digits as usize, value)];
    Ok(Report { inputs, results: json!({ "value": value_json(&value, ctx.digits) }), lines, passed: None })
}

pub fn verify(a: &VerifyArgs, ctx: &EvalContext) -> CliResult<Report> {
    let opts = SweepOptions { seed: a.seed, threads: a.threads };
    let cert: Certificate = match a.claim {
        Claim::JInequality => bounds::certify_j_inequality(a.from, a.to, ctx, a.threads)?,
        Claim::SiegelBounds => bounds::certify_siegel_bounds(a.level.unwrap_or(50), a.trials.unwrap_or(10_000), ctx, opts)?,
        Claim::Ffgg => bounds::certify_ffgg(a.trials.unwrap_or(1000), ctx, opts)?,
        Claim::Normconstant => bounds::certify_normconstant(a.level.unwrap_or(2), a.points, ctx, opts)?,
        Claim::Curve => bounds::certify_curve(a.trials.unwrap_or(100), ctx, opts)?,
        Claim::Hkc => bounds::certify_hkc_separation(a.d, a.n_max, ctx)?,
    };
    let results = serde_json::to_value(&cert).expect("certificate serializes");
    if let Some(path) = &a.out {
        let text = serde_json::to_string_pretty(&results).expect("certificate serializes");
        std::fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut lines = vec![
        format!("claim: {}", cert.claim),
        cert.description.clone(),
        format!("samples checked: {}", cert.samples_checked),
        format!("worst margin (log10): {:.4}", cert.worst_margin),
        format!("worst case: {}", cert.worst_case),
    ];
    for (k, v) in &cert.margins {
        lines.push(format!("{k}: {v:.4}"));
    }
    lines.push(if cert.pass { "PASS".into() } else { "FAIL".into() });
    let inputs = json!({ "claim": cert.claim, "seed": a.seed, "threads": a.threads });
    Ok(Report { inputs, results, lines, passed: Some(cert.pass) })
}

/// The modulus `[1+sqrt(-5), 2] * 13 O_K * [15+sqrt(-5), 23]` over `Q(sqrt(-5))`.
pub fn example_paper() -> CliResult<Report> {
    let d = -20;
    let f = field_invariants(d)?;
    let (primes, m) = parse::build_ideal(
        &f,
        &parse::ideal_factors("p:2:1;p:13;p:23:15").map_err(CliError::Usage)?,
    )?;
    let p1_sq = ideal_multiply(&primes[0], &primes[0])?;
    let info = factor_info(&f, &[2, 13, 23], &primes)?;
    let report = bounds::generator_plan(&f, &m)?;
    let types: Vec<&str> = info.iter().map(|x| x["type"].as_str().unwrap_or("")).collect();
    let checks = vec![
        ("N_m = 598", least_positive_integer(&m) == 598 && report.n_m == 598),
        ("raw bound ~ 2.286282", (report.raw_bound_f64 - 2.286282).abs() < 1e-4),
        ("n_min = 3", report.n_min == 3),
        ("2 ramified, 13 inert, 23 split", types == ["ramified", "inert", "split"]),
        ("p1^2 = 2 O_K", p1_sq == IdealHnf::integer(d, 2)),
    ];
    let passed = checks.iter().all(|c| c.1);
    let mut lines: Vec<String> = info
        .iter()
        .map(|x| format!("prime above {}: {} ({})", x["p"], x["ideal"].as_str().unwrap_or(""), x["type"].as_str().unwrap_or("")))
        .collect();
    lines.push(format!("m = {m}"));
    lines.extend(bound_lines(&report));
    for (name, ok) in &checks {
        lines.push(format!("{} {name}", if *ok { "PASS" } else { "FAIL" }));
    }
    let results = json!({
        "field": { "d": d, "h_k": f.h_k },
        "factors": info,
        "modulus": m,
        "bound": report,
        "checkpoints": checks.iter().map(|(n, ok)| json!({ "name": n, "pass": ok })).collect::<Vec<_>>(),
    });
    Ok(Report { inputs: json!({ "example": "paper" }), results, lines, passed: Some(passed) })
}
