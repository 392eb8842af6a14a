//! Command execution. Every command yields a text report and a JSON record;
//! failed checks are reports with `failed` set, not errors.

use std::fmt::Display;

use mzeta::engine::{
    chi_data, class_of_signed, default_order, det_signed, funceq_check, funceq_check_selfdual, zeta_rational,
    zeta_series, FuncEqReport, LambdaContext,
};
use mzeta::frobenius::{weight_of_invertible, FrobContext, FrobObj};
use mzeta::poly::{fmt_poly, Poly};
use mzeta::rat::{fmt_rat, rat_pow};
use mzeta::symbolic::{c1_normal_form, Monomial, SymbolicContext};
use mzeta::{Error, Rat, Ring};
use serde_json::{json, Value};

use crate::ast::Command;
use crate::error::{CliError, CliResult};
use crate::session::{Object, Session};

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub failed: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, failed: false }
    }
}

pub fn run_command(s: &mut Session, cmd: &Command) -> CliResult<Report> {
    let mut r = match cmd {
        Command::Zeta { name, order, classical } => zeta(s, name, *order, *classical)?,
        Command::CheckFunceq { name, order } => check_funceq(s, name, *order, None)?,
        Command::CheckSelfdual { name, dim, order } => check_funceq(s, name, *order, Some(*dim))?,
        Command::CheckC1 { name } => check_c1(s, name)?,
        Command::Det { name } => det(s, name)?,
        Command::Class { name } => class(s, name)?,
        Command::Count { name, from, to } => count(s, name, *from, *to)?,
        Command::Save(path) => {
            let text = serde_json::to_string_pretty(&s.to_json()?).expect("serializable") + "\n";
            std::fs::write(s.resolve(path), text).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            Report::ok(format!("saved {} bindings to {path}", s.bindings().len()), json!({ "path": path }))
        }
        Command::Load(path) => {
            let text = std::fs::read_to_string(s.resolve(path)).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            s.load_json(&v)?;
            Report::ok(format!("loaded {} bindings from {path}", s.bindings().len()), json!({ "path": path }))
        }
    };
    if let Value::Object(m) = &mut r.json {
        m.insert("command".into(), Value::String(cmd.to_string()));
        m.insert("status".into(), Value::String(if r.failed { "failed" } else { "ok" }.into()));
    }
    Ok(r)
}

fn strings<T: Display>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

/// `1 - 2T` without spaces, parenthesized when it has several terms.
fn factor(p: &Poly<Rat>) -> String {
    let s = fmt_poly(p, "T").replace(' ', "");
    if p.coeffs().iter().filter(|c| !Ring::is_zero(*c)).count() > 1 {
        format!("({s})")
    } else {
        s
    }
}

/// `(1+2T^2)/((1-T)(1-2T))` from the per-degree factors.
pub fn fmt_factored(num: &[Poly<Rat>], den: &[Poly<Rat>]) -> String {
    let keep = |v: &[Poly<Rat>]| v.iter().filter(|p| !p.is_one()).cloned().collect::<Vec<_>>();
    let (num, den) = (keep(num), keep(den));
    let n = if num.is_empty() { "1".to_string() } else { num.iter().map(factor).collect() };
    match den.len() {
        0 => n,
        1 => format!("{n}/{}", factor(&den[0])),
        _ => format!("{n}/({})", den.iter().map(factor).collect::<String>()),
    }
}

/// `L^r * A` style rendering of a `c1` normal form.
fn fmt_c1(r: i64, artin: &str) -> String {
    let mut parts = Vec::new();
    match r {
        0 => {}
        1 => parts.push("L".to_string()),
        _ => parts.push(format!("L^{r}")),
    }
    if artin != "1" {
        parts.push(artin.to_string());
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}

/// `(r, with_sign)` when a Frobenius determinant is `±qʳ` in weight `2r`.
fn frob_c1(d: &mzeta::frobenius::K0Class, q: &Rat) -> Option<(i64, bool)> {
    let (w, delta) = d.as_line()?;
    if w % 2 != 0 {
        return None;
    }
    let r = (w / 2) as i64;
    let p = rat_pow(q, r);
    if delta == p {
        Some((r, false))
    } else if delta == -p {
        Some((r, true))
    } else {
        None
    }
}

fn order_for<C: LambdaContext>(
    s: &Session,
    c: &C,
    m: &mzeta::engine::SignedObject<C::Object>,
    o: Option<usize>,
) -> usize {
    o.or(s.order).unwrap_or_else(|| default_order(c, m))
}

fn zeta_text<C: LambdaContext>(s: &Session, name: &str, c: &C, m: &C::Object, order: Option<usize>) -> CliResult<Report>
where
    C::Coeff: Display,
{
    let sm = c.split(m);
    let z = zeta_rational(c, &sm)?;
    let (num, den) = (strings(z.num.coeffs()), strings(z.den.coeffs()));
    let mut text = format!("Z({name}, T) = N(T) / D(T)");
    for (k, x) in num.iter().enumerate() {
        text += &format!("\n  N[{k}] = {x}");
    }
    for (k, x) in den.iter().enumerate() {
        text += &format!("\n  D[{k}] = {x}");
    }
    let mut j = json!({ "numerator": num, "denominator": den });
    if let Some(n) = order.or(s.order) {
        let ser = strings(zeta_series(c, &sm, n)?.coeffs());
        for (k, x) in ser.iter().enumerate() {
            text += &format!("\n  Z[{k}] = {x}");
        }
        j["series"] = json!(ser);
    }
    Ok(Report::ok(text, j))
}

fn zeta(s: &Session, name: &str, order: Option<usize>, classical: bool) -> CliResult<Report> {
    match (s.get(name)?, classical) {
        (Object::Frob(m), true) => {
            let (num, den) = m.classical_zeta_factors();
            let f = fmt_factored(&num, &den);
            Ok(Report::ok(format!("Z_classical({name}, T) = {f}"), json!({ "classical": f })))
        }
        (Object::Sym(_), true) => {
            Err(CliError::Backend("`--classical` needs point counts, i.e. the frobenius backend".into()))
        }
        (Object::Frob(m), false) => zeta_text(s, name, &FrobContext::new(s.q().clone()), m, order),
        (Object::Sym(m), false) => zeta_text(s, name, &SymbolicContext::new(s.registry().clone()), m, order),
    }
}

fn funceq_report<R: Ring + Display>(name: &str, what: &str, r: &FuncEqReport<R>) -> Report {
    let o = r.order_checked;
    let (lhs, rhs) = (strings(&r.lhs.window(-o, o)), strings(&r.rhs.window(-o, o)));
    let verdict = if r.holds { "holds" } else { "FAILS" };
    let mut text = format!(
        "check {what} {name}: {verdict}\n  chi = {} (chi+ = {}, chi- = {})\n  det = {}\n  compared on T^{}..T^{}",
        r.chi.chi, r.chi.chi_plus, r.chi.chi_minus, r.det_class, -o, o
    );
    for (side, series) in [("lhs", &r.lhs), ("rhs", &r.rhs)] {
        let lead = series.offset();
        let c = series.coeff(lead).map_or("0".into(), |c| c.to_string());
        text += &format!("\n  {side} window T^{lead}..T^{}, leading coefficient {c}", series.order());
    }
    let mismatch = r.first_mismatch.as_ref().map(|m| {
        text += &format!("\n  first mismatch at T^{}: lhs = {}, rhs = {}", m.exponent, m.lhs, m.rhs);
        json!({ "exponent": m.exponent, "lhs": m.lhs.to_string(), "rhs": m.rhs.to_string() })
    });
    let j = json!({
        "holds": r.holds,
        "chi": r.chi.chi, "chi_plus": r.chi.chi_plus, "chi_minus": r.chi.chi_minus,
        "det": r.det_class.to_string(),
        "window": [-o, o],
        "lhs": lhs, "rhs": rhs,
        "first_mismatch": mismatch,
    });
    Report { text, json: j, failed: !r.holds }
}

fn funceq_with<C: LambdaContext>(
    s: &Session,
    name: &str,
    c: &C,
    m: &C::Object,
    order: Option<usize>,
    dim: Option<i64>,
) -> CliResult<Report>
where
    C::Coeff: Display,
{
    let sm = c.split(m);
    let o = order_for(s, c, &sm, order);
    match dim {
        None => Ok(funceq_report(name, "funceq", &funceq_check(c, &sm, o)?)),
        Some(d) => match funceq_check_selfdual(c, &sm, d, o) {
            Ok(r) => Ok(funceq_report(name, "selfdual", &r)),
            Err(Error::NotSelfDual(_)) => {
                let dual_class = class_of_signed(c, &mzeta::engine::dual_signed(c, &sm)?)?;
                let text = format!(
                    "check selfdual {name}: FAILS\n  hypothesis [M*] = [M] [L]^-{d} does not hold\n  class of dual = {dual_class}"
                );
                Ok(Report { text, json: json!({ "holds": false, "hypothesis": false, "dim": d }), failed: true })
            }
            Err(e) => Err(e.into()),
        },
    }
}

fn check_funceq(s: &Session, name: &str, order: Option<usize>, dim: Option<i64>) -> CliResult<Report> {
    match s.get(name)? {
        Object::Frob(m) => funceq_with(s, name, &FrobContext::new(s.q().clone()), m, order, dim),
        Object::Sym(m) => funceq_with(s, name, &SymbolicContext::new(s.registry().clone()), m, order, dim),
    }
}

/// Determinant, its weight and its `c1` form when it has one.
struct DetInfo {
    class: String,
    weight: i64,
    c1: Option<String>,
    reason: String,
}

fn det_info(s: &Session, name: &str) -> CliResult<DetInfo> {
    Ok(match s.get(name)? {
        Object::Frob(m) => {
            let d = m.det_object();
            let (w, odd) = weight_of_invertible(&d)?;
            let c1 = frob_c1(&d, s.q()).map(|(r, a)| fmt_c1(r, if a { "A" } else { "1" }));
            let reason = if odd {
                format!("odd weight {w}")
            } else {
                format!("eigenvalue is not ±{}^{}", fmt_rat(s.q()), w / 2)
            };
            DetInfo { class: d.to_string(), weight: w as i64, c1, reason }
        }
        Object::Sym(m) => {
            let c = SymbolicContext::new(s.registry().clone());
            let d = det_signed(&c, &c.split(m))?;
            let mono = d.as_unit_monomial().cloned().unwrap_or_else(Monomial::one);
            let weight = mono
                .factors()
                .map(|(a, e)| match s.registry().get(a.name()).map(|d| &d.kind) {
                    Ok(mzeta::symbolic::AtomKind::InvertibleEven { weight }) => weight * e,
                    _ => 0,
                })
                .sum();
            let (c1, reason) = match c1_normal_form(s.registry(), &d) {
                Ok(f) => (Some(fmt_c1(f.r, &f.artin.to_string())), String::new()),
                Err(e) => (None, e.to_string()),
            };
            DetInfo { class: d.to_string(), weight, c1, reason }
        }
    })
}

fn det(s: &Session, name: &str) -> CliResult<Report> {
    let d = det_info(s, name)?;
    let head = d.c1.clone().unwrap_or_else(|| d.class.clone());
    let text = format!("det({name}) = {head}\n  class: {}\n  weight: {}", d.class, d.weight);
    Ok(Report::ok(text, json!({ "det": head, "class": d.class, "weight": d.weight.to_string() })))
}

fn check_c1(s: &Session, name: &str) -> CliResult<Report> {
    let d = det_info(s, name)?;
    Ok(match &d.c1 {
        Some(f) => Report::ok(
            format!("check c1 {name}: holds\n  det = {f} (weight {})", d.weight),
            json!({ "holds": true, "form": f, "weight": d.weight.to_string() }),
        ),
        None => Report {
            text: format!("check c1 {name}: FAILS\n  det = {}\n  {}", d.class, d.reason),
            json: json!({ "holds": false, "det": d.class, "reason": d.reason }),
            failed: true,
        },
    })
}

fn class(s: &Session, name: &str) -> CliResult<Report> {
    let (cls, chi) = match s.get(name)? {
        Object::Frob(m) => {
            let c = FrobContext::new(s.q().clone());
            let sm = c.split(m);
            (class_of_signed(&c, &sm)?.to_string(), chi_data(&c, &sm))
        }
        Object::Sym(m) => {
            let c = SymbolicContext::new(s.registry().clone());
            let sm = c.split(m);
            (class_of_signed(&c, &sm)?.to_string(), chi_data(&c, &sm))
        }
    };
    let text = format!("[{name}] = {cls}\n  chi = {} (chi+ = {}, chi- = {})", chi.chi, chi.chi_plus, chi.chi_minus);
    Ok(Report::ok(text, json!({ "class": cls, "chi": chi.chi, "chi_plus": chi.chi_plus, "chi_minus": chi.chi_minus })))
}

fn count(s: &Session, name: &str, from: usize, to: usize) -> CliResult<Report> {
    let m: &FrobObj = match s.get(name)? {
        Object::Frob(m) => m,
        Object::Sym(_) => return Err(CliError::Backend("`count` needs the frobenius backend".into())),
    };
    if from == 0 || from > to {
        return Err(CliError::Core(Error::Malformed(format!("power range {from}..{to} must satisfy 1 <= a <= b"))));
    }
    let counts: Vec<(usize, String)> = (from..=to).map(|k| (k, fmt_rat(&m.counting(k)))).collect();
    let text = std::iter::once(format!("point counts of {name}"))
        .chain(counts.iter().map(|(k, n)| format!("  N_{k} = {n}")))
        .collect::<Vec<_>>()
        .join("\n");
    let j: serde_json::Map<String, Value> =
        counts.into_iter().map(|(k, n)| (k.to_string(), Value::String(n))).collect();
    Ok(Report::ok(text, json!({ "counts": j })))
}
