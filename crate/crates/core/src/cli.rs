//! Command-line front end. `run` never panics on user input; it returns the exit code.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 internal invariant failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::hodge::{star, Metric, MetricKind};
use crate::lang::{parse_form, parse_problem, LangError, ProblemSpec};
use crate::maxwell::{
    condition_euclid, condition_mink, current, curvature, eb_fields, eb_inner, energy, faraday_components,
    form_coefficients, gauge_transform, harmonic_potential, lorenz, lorenz_normalize, verify_vacuum,
    wavelike_potential, MaxwellError, Potential, VerificationReport,
};
use crate::numeric::{check_wirtinger, eval_at, RealPoint, DEFAULT_STEP};
use crate::poly::Poly;
use crate::scalar::GaussianRational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Relative tolerance for the finite-difference Wirtinger check in `eval`.
const WIRTINGER_TOL: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(name = "formwell", version, about = "Exact differential forms on C^2 and Maxwell checks")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Full vacuum-solution report for a problem file.
    Verify { file: PathBuf },
    /// Field strength components, E, B, invariants and current.
    Fields { file: PathBuf },
    /// Hodge star of a form under a metric.
    Star { metric: String, form: String },
    /// The star table with its oracle comparison.
    Tables { metric: String },
    /// Gauge-transforms the potential by u (defaults to the file's `gauge` key).
    Gauge { file: PathBuf, u: Option<String> },
    /// Lorenz quantity d*w and, when constant, a curvature-preserving normalization.
    Lorenz { file: PathBuf },
    /// Numeric E, B and Wirtinger checks at a real point.
    Eval {
        file: PathBuf,
        /// Comma-separated x0,x1,x2,x3.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<MaxwellError> for Failure {
    fn from(e: MaxwellError) -> Self {
        match e {
            MaxwellError::Internal(m) => Failure::Internal(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

enum Output {
    Text(String),
    Json(Value),
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let json = cli.json;
    match execute(cli) {
        Ok(Output::Text(s)) => {
            let _ = write!(out, "{s}");
            EXIT_OK
        }
        Ok(Output::Json(v)) => {
            let s = serde_json::to_string_pretty(&v).expect("json values serialize");
            let _ = writeln!(out, "{s}");
            EXIT_OK
        }
        Err(Failure::Usage(m)) => report(err, json, "input", &m, EXIT_USAGE),
        Err(Failure::Internal(m)) => report(err, json, "internal", &m, EXIT_INTERNAL),
    }
}

fn report(err: &mut dyn Write, json: bool, kind: &str, msg: &str, code: i32) -> i32 {
    if json {
        let _ = writeln!(err, "{}", json!({ "error": kind, "message": msg }));
    } else {
        let _ = writeln!(err, "{msg}");
    }
    code
}

fn execute(cli: Cli) -> Result<Output, Failure> {
    let json = cli.json;
    match cli.cmd {
        Cmd::Verify { file } => {
            let p = load(&file)?;
            let r = verify_vacuum(&p.potential, Metric::of(p.metric))?;
            Ok(if json { Output::Json(r.to_json()) } else { Output::Text(verify_text(&r)) })
        }
        Cmd::Fields { file } => fields(&load(&file)?, json),
        Cmd::Star { metric, form } => {
            let kind = metric_arg(&metric)?;
            let f = parse_form(&form).map_err(|e| located("form", &e))?;
            let s = star(&f, Metric::of(kind));
            Ok(if json {
                Output::Json(json!({ "metric": kind.name(), "input": f.to_string(), "output": s.to_string() }))
            } else {
                Output::Text(format!("{s}\n"))
            })
        }
        Cmd::Tables { metric } => tables(metric_arg(&metric)?, json),
        Cmd::Gauge { file, u } => {
            let p = load(&file)?;
            let u = match u {
                Some(text) => crate::lang::parse_expr(&text).map_err(|e| located("u", &e))?,
                None => p.gauge.clone().ok_or_else(|| {
                    Failure::Usage(format!("{}: no gauge function given and no 'gauge' key", file.display()))
                })?,
            };
            gauge(&p, &u, json)
        }
        Cmd::Lorenz { file } => lorenz_cmd(&load(&file)?, json),
        Cmd::Eval { file, at } => {
            let p = load(&file)?;
            eval_cmd(&p, &point_arg(&at)?, json)
        }
    }
}

fn load(path: &Path) -> Result<ProblemSpec, Failure> {
    let name = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| Failure::Usage(format!("{name}: cannot read: {e}")))?;
    let text = String::from_utf8(bytes).map_err(|_| Failure::Usage(format!("{name}: not valid UTF-8")))?;
    parse_problem(&text).map_err(|e| located(&name, &e))
}

fn located(source: &str, e: &LangError) -> Failure {
    let (line, col) = e.position().unwrap_or((1, 1));
    Failure::Usage(format!("{source}:{line}:{col}: {e}"))
}

fn metric_arg(s: &str) -> Result<MetricKind, Failure> {
    MetricKind::from_name(s)
        .ok_or_else(|| Failure::Usage(format!("unknown metric '{s}'; expected 'euclidean' or 'minkowski'")))
}

fn point_arg(s: &str) -> Result<RealPoint, Failure> {
    let bad = || Failure::Usage(format!("--at expects four finite numbers x0,x1,x2,x3, got '{s}'"));
    let xs: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let x: [f64; 4] = xs.try_into().map_err(|_| bad())?;
    RealPoint::new(x).map_err(|_| bad())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn triple(ps: &[Poly; 3]) -> String {
    format!("({}, {}, {})", ps[0], ps[1], ps[2])
}

fn row(s: &mut String, label: &str, value: impl std::fmt::Display) {
    s.push_str(&format!("{label:<20}{value}\n"));
}

fn verify_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    row(&mut s, "metric", r.metric.name());
    row(&mut s, "F", &r.curvature);
    row(&mut s, "dF", if r.d_f.is_zero() { "PASS".to_string() } else { format!("FAIL {}", r.d_f) });
    row(&mut s, "d*F", &r.d_star_f);
    for (basis, coeff) in form_coefficients(&r.d_star_f) {
        row(&mut s, "", format!("{basis}: {coeff}"));
    }
    row(&mut s, "vacuum solution", yes(r.is_vacuum_solution));
    row(&mut s, "duality", r.duality.name());
    let cond = match r.metric {
        MetricKind::Euclidean => "S_E",
        MetricKind::Minkowski => "S_M",
    };
    row(&mut s, cond, &r.condition_sum);
    row(&mut s, &format!("{cond} constant"), r.condition_constant.as_ref().map_or("no".to_string(), |c| format!("yes ({c})")));
    row(&mut s, "d*w", &r.lorenz_value);
    row(&mut s, "harmonic w", yes(r.harmonic_potential));
    row(&mut s, "wavelike w", yes(r.wavelike_potential));
    row(&mut s, "wavelike F", yes(r.wavelike_field));
    row(&mut s, "E", triple(&r.eb.e));
    row(&mut s, "B", triple(&r.eb.b));
    row(&mut s, "<E,B>", &r.eb_inner);
    row(&mut s, "energy", &r.energy);
    for d in &r.table_discrepancies {
        row(&mut s, "table note", format!("{}: listed {}, computed {} ({})", d.subject, d.listed, d.computed, d.note));
    }
    s
}

fn fields(p: &ProblemSpec, json: bool) -> Result<Output, Failure> {
    let m = Metric::of(p.metric);
    let f = curvature(&p.potential);
    let c = faraday_components(&f)?;
    let eb = eb_fields(&f)?;
    let inner = eb_inner(&f)?;
    let en = energy(&f)?;
    let j = current(&p.potential, m);
    let names = ["F12", "F1b2b", "F11b", "F12b", "F21b", "F22b"];
    let comps: Vec<(&str, &Poly)> = names.iter().copied().zip(c.all()).collect();
    if json {
        let comp_obj: serde_json::Map<String, Value> =
            comps.iter().map(|(n, p)| (n.to_string(), Value::String(p.to_string()))).collect();
        let strs = |ps: &[Poly; 3]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        return Ok(Output::Json(json!({
            "metric": p.metric.name(),
            "F": f.to_string(),
            "components": comp_obj,
            "E": strs(&eb.e),
            "B": strs(&eb.b),
            "eb_inner": inner.to_string(),
            "energy": en.to_string(),
            "current": {
                "P1": j.p1.to_string(),
                "Pb1": j.pb1.to_string(),
                "P2": j.p2.to_string(),
                "Pb2": j.pb2.to_string(),
                "rho": j.rho.to_string(),
                "J": strs(&j.j),
            },
        })));
    }
    let mut s = String::new();
    row(&mut s, "metric", p.metric.name());
    row(&mut s, "F", &f);
    for (n, v) in &comps {
        row(&mut s, n, v);
    }
    row(&mut s, "E", triple(&eb.e));
    row(&mut s, "B", triple(&eb.b));
    row(&mut s, "<E,B>", &inner);
    row(&mut s, "energy", &en);
    for (n, v) in [("P1", &j.p1), ("Pb1", &j.pb1), ("P2", &j.p2), ("Pb2", &j.pb2), ("rho", &j.rho)] {
        row(&mut s, n, v);
    }
    row(&mut s, "J", triple(&j.j));
    Ok(Output::Text(s))
}

fn tables(kind: MetricKind, json: bool) -> Result<Output, Failure> {
    let m = Metric::of(kind);
    let reports = m.oracle_reports();
    let own = &reports[0];
    if json {
        let rows: Vec<Value> = m
            .star_table()
            .iter()
            .zip(&own.lines)
            .map(|(e, l)| {
                json!({
                    "input": l.input,
                    "output": e.output.to_string(),
                    "source": e.provenance,
                    "note": e.note,
                    "oracle": l.oracle,
                    "agrees": l.agrees,
                })
            })
            .collect();
        return Ok(Output::Json(Value::Array(rows)));
    }
    let mut s = String::new();
    for (e, l) in m.star_table().iter().zip(&own.lines) {
        let lhs = format!("STAR({}) = {}", l.input, e.output);
        let src = serde_json::to_value(e.provenance).expect("enum serializes");
        s.push_str(&format!("{lhs:<48}[{}]", src.as_str().unwrap_or_default()));
        if let Some(n) = e.note {
            s.push_str(&format!("  {n}"));
        }
        s.push('\n');
    }
    for d in m.discrepancies() {
        s.push_str(&format!("pairing {}: listed {}, computed {} ({})\n", d.subject, d.listed, d.computed, d.note));
    }
    for r in &reports {
        let bad: Vec<_> = r.disagreements().collect();
        s.push_str(&format!("oracle {}: {}/{} agree\n", r.convention, r.lines.len() - bad.len(), r.lines.len()));
        for l in bad {
            s.push_str(&format!("  STAR({}): table {}, oracle {}\n", l.input, l.table, l.oracle));
        }
    }
    Ok(Output::Text(s))
}

fn condition(w: &Potential, kind: MetricKind) -> Poly {
    match kind {
        MetricKind::Euclidean => condition_euclid(w).0,
        MetricKind::Minkowski => condition_mink(w).0,
    }
}

fn gauge(p: &ProblemSpec, u: &Poly, json: bool) -> Result<Output, Failure> {
    let w2 = gauge_transform(&p.potential, u);
    let invariant = curvature(&w2) == curvature(&p.potential);
    if !invariant {
        return Err(Failure::Internal("curvature changed under a gauge transformation".to_string()));
    }
    let shift = &condition(&w2, p.metric) - &condition(&p.potential, p.metric);
    let half = GaussianRational::frac(1, 2);
    let (op, expected) = match p.metric {
        MetricKind::Euclidean => ("(1/2) laplacian u", u.laplace4().scale(&half)),
        MetricKind::Minkowski => ("(1/2) box u", u.dalembert().scale(&half)),
    };
    let matches = shift == expected;
    if !matches {
        return Err(Failure::Internal(format!("S shift {shift} differs from {op} = {expected}")));
    }
    let w = &w2;
    if json {
        return Ok(Output::Json(json!({
            "metric": p.metric.name(),
            "u": u.to_string(),
            "potential": {
                "f1": w.f1.to_string(), "f2": w.f2.to_string(),
                "fb1": w.fb1.to_string(), "fb2": w.fb2.to_string(),
            },
            "curvature_invariant": invariant,
            "condition_shift": shift.to_string(),
            "expected_shift": expected.to_string(),
            "shift_matches": matches,
        })));
    }
    let mut s = String::new();
    row(&mut s, "u", u);
    for (k, f) in [("f1", &w.f1), ("f2", &w.f2), ("fb1", &w.fb1), ("fb2", &w.fb2)] {
        row(&mut s, k, f);
    }
    row(&mut s, "F unchanged", yes(invariant));
    row(&mut s, "S shift", &shift);
    row(&mut s, op, &expected);
    Ok(Output::Text(s))
}

fn lorenz_cmd(p: &ProblemSpec, json: bool) -> Result<Output, Failure> {
    let m = Metric::of(p.metric);
    let (value, constant) = lorenz(&p.potential, m);
    let normalized = match constant {
        Some(_) => Some(lorenz_normalize(&p.potential, m)?),
        None => None,
    };
    if json {
        let norm = normalized.as_ref().map(|(w, u)| {
            json!({
                "u": u.to_string(),
                "f1": w.f1.to_string(), "f2": w.f2.to_string(),
                "fb1": w.fb1.to_string(), "fb2": w.fb2.to_string(),
            })
        });
        return Ok(Output::Json(json!({
            "metric": p.metric.name(),
            "lorenz": value.to_string(),
            "constant": constant.map(|c| c.to_string()),
            "harmonic_potential": harmonic_potential(&p.potential),
            "wavelike_potential": wavelike_potential(&p.potential),
            "normalized": norm,
        })));
    }
    let mut s = String::new();
    row(&mut s, "d*w", &value);
    row(&mut s, "constant", constant.map_or("no".to_string(), |c| format!("yes ({c})")));
    row(&mut s, "harmonic w", yes(harmonic_potential(&p.potential)));
    row(&mut s, "wavelike w", yes(wavelike_potential(&p.potential)));
    if let Some((w, u)) = normalized {
        row(&mut s, "gauge u", &u);
        for (k, f) in [("f1", &w.f1), ("f2", &w.f2), ("fb1", &w.fb1), ("fb2", &w.fb2)] {
            row(&mut s, k, f);
        }
    }
    Ok(Output::Text(s))
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.9}{:+.9}i", z.re, z.im)
}

fn eval_cmd(p: &ProblemSpec, at: &RealPoint, json: bool) -> Result<Output, Failure> {
    let f = curvature(&p.potential);
    let eb = eb_fields(&f)?;
    let num = |ps: &[Poly; 3]| ps.clone().map(|q| eval_at(&q, at));
    let (e, b) = (num(&eb.e), num(&eb.b));
    let w = &p.potential;
    let checks: Vec<(&str, bool)> = [("f1", &w.f1), ("f2", &w.f2), ("fb1", &w.fb1), ("fb2", &w.fb2)]
        .into_iter()
        .map(|(k, q)| (k, check_wirtinger(q, at, DEFAULT_STEP, WIRTINGER_TOL)))
        .collect();
    if json {
        let pairs = |zs: &[Complex64; 3]| zs.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>();
        let wirt: serde_json::Map<String, Value> =
            checks.iter().map(|(k, ok)| (k.to_string(), Value::Bool(*ok))).collect();
        return Ok(Output::Json(json!({
            "at": at.x,
            "E": pairs(&e),
            "B": pairs(&b),
            "wirtinger": wirt,
        })));
    }
    let mut s = String::new();
    row(&mut s, "at", format!("({}, {}, {}, {})", at.x[0], at.x[1], at.x[2], at.x[3]));
    for (k, z) in [("E1", e[0]), ("E2", e[1]), ("E3", e[2]), ("B1", b[0]), ("B2", b[1]), ("B3", b[2])] {
        row(&mut s, k, fmt_c(z));
    }
    for (k, ok) in checks {
        row(&mut s, &format!("wirtinger {k}"), if ok { "PASS" } else { "FAIL" });
    }
    Ok(Output::Text(s))
}
