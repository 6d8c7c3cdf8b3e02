use std::fmt::Write as _;
use std::path::Path;

use num_rational::BigRational;
use serde_json::{json, Value};

use incidence_core::audit::{
    audit_proof_steps, check_beck, check_hirzebruch, check_kelly_moser, check_main, check_melchior, check_stt_all,
    CheckReport, ProofTrace,
};
use incidence_core::configurations::{generate as generate_set, search_min_dirac, GeneratorSpec};
use incidence_core::constants::{
    beck_from_fixed_point, delta_of, optimize_c, solve_fixed_point, DeltaBreakdown, FixedPoint, Mode,
    PipelineParams,
};
use incidence_core::geometry::{compute_arrangement, dirac_from_stats};
use incidence_core::rational::{parse_rational, ratio};
use incidence_core::{ArrangementStats, Error, PointSet};

use crate::report::{self, claim, digest, document};
use crate::{ConstMode, Failure, Kind};

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

type CmdResult = Result<Output, Failure>;

const CHECKS: [&str; 7] = ["melchior", "hirzebruch", "kelly-moser", "stt", "main", "beck", "proof-trace"];

fn read_points(file: &Path) -> Result<(PointSet, String), Failure> {
    let bytes = std::fs::read(file).map_err(|e| Failure::new(2, format!("{}: {e}", file.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Failure::new(2, format!("{}: {e}", file.display())))?;
    let ps = PointSet::parse(text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", file.display(), f.message);
        f
    })?;
    Ok((ps, digest(&bytes)))
}

fn flag_rational(name: &str, value: &str) -> Result<BigRational, Failure> {
    parse_rational(value).map_err(|e| Failure::new(2, format!("--{name}: {e}")))
}

fn pipeline(alpha: &str, beta: &str, tail_width: &str) -> Result<PipelineParams, Failure> {
    let p = PipelineParams::new(
        flag_rational("alpha", alpha)?,
        flag_rational("beta", beta)?,
        flag_rational("tail-width", tail_width)?,
    )
    .map_err(|e| Failure::new(2, e.to_string()))?;
    Ok(p)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn stats_table(st: &ArrangementStats) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n            {}", st.n);
    let _ = writeln!(out, "lines (L)    {}", st.lines);
    let _ = writeln!(out, "incidences   {}", st.incidences);
    let _ = writeln!(out, "edges (E)    {}", st.edges);
    let _ = writeln!(out, "max collinear {}", st.l_max);
    match st.dirac_witness {
        Some(w) => {
            let _ = writeln!(out, "dirac degree {} (point #{w})", st.dirac_degree);
        }
        None => {
            let _ = writeln!(out, "dirac degree -");
        }
    }
    for (i, c) in &st.s {
        let _ = writeln!(out, "  s_{i:<4} {c}");
    }
    out
}

pub fn analyze(file: &Path, json: bool) -> CmdResult {
    let (ps, dig) = read_points(file)?;
    let st = compute_arrangement(&ps);
    Ok(Output::ok(if json { document("analyze", &dig, to_value(&st)) } else { stats_table(&st) }))
}

enum Audit {
    Report(CheckReport),
    Trace(Box<ProofTrace>),
    Skipped { name: &'static str, reason: String },
}

impl Audit {
    fn binding_failure(&self) -> bool {
        match self {
            Audit::Report(r) => r.binding_failure(),
            Audit::Trace(t) => t.binding_failure(),
            Audit::Skipped { .. } => false,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Audit::Report(r) => to_value(r),
            Audit::Trace(t) => {
                let mut v = to_value(t.as_ref());
                v["name"] = json!("proof-trace");
                v
            }
            Audit::Skipped { name, reason } => json!({
                "name": name,
                "preconditions_met": false,
                "holds": false,
                "error": reason,
            }),
        }
    }

    fn line(&self) -> String {
        let verdict = |holds: bool, binding: bool| match (holds, binding) {
            (true, true) => "holds",
            (false, true) => "FAILS",
            (true, false) => "holds (non-binding)",
            (false, false) => "fails (non-binding)",
        };
        match self {
            Audit::Report(r) => format!(
                "{:<12} {:<20} {} {} {}  slack {}",
                r.name,
                verdict(r.holds, r.preconditions_met),
                r.lhs,
                r.relation,
                r.rhs,
                r.slack
            ),
            Audit::Trace(t) => {
                let mut s = format!(
                    "{:<12} {:<20} k={} S={} M={} Lg={} C(n,2)={}",
                    "proof-trace",
                    verdict(!t.binding_failure(), true),
                    t.k,
                    t.small_pairs,
                    t.medium_pairs,
                    t.large_pairs,
                    t.total_pairs
                );
                for r in &t.step_reports {
                    let _ = write!(s, "\n  {:<16} {}", r.name, verdict(r.holds, r.preconditions_met));
                }
                s
            }
            Audit::Skipped { name, reason } => format!("{name:<12} {:<20} {reason}", "skipped"),
        }
    }
}

pub fn verify(file: &Path, checks: &str, c: i64, eps: &str, alpha: &str, beta: &str, json: bool) -> CmdResult {
    let names: Vec<&str> = checks.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if let Some(bad) = names.iter().find(|n| !CHECKS.contains(n)) {
        return Err(Failure::new(4, format!("unknown check {bad:?}; expected one of {}", CHECKS.join(", "))));
    }
    let params = pipeline(alpha, beta, "1/1000000000")?;
    let eps = flag_rational("eps", eps)?;
    let (ps, dig) = read_points(file)?;
    let st = compute_arrangement(&ps);

    let mut audits = Vec::with_capacity(names.len());
    for name in names {
        let audit = match name {
            "melchior" => Audit::Report(check_melchior(&st)),
            "hirzebruch" => Audit::Report(check_hirzebruch(&st)),
            "kelly-moser" => Audit::Report(check_kelly_moser(&st)),
            "stt" => Audit::Report(check_stt_all(&st, &params)),
            "beck" => Audit::Report(check_beck(&st)),
            "main" => match dirac_from_stats(&st).and_then(|d| check_main(&st, d)) {
                Ok(r) => Audit::Report(r),
                Err(e) => Audit::Skipped { name: "main", reason: e.to_string() },
            },
            "proof-trace" => match audit_proof_steps(&st, c, &eps, &params) {
                Ok(t) => Audit::Trace(Box::new(t)),
                Err(e @ Error::PreconditionViolated(_)) => Audit::Skipped { name: "proof-trace", reason: e.to_string() },
                Err(e) => return Err(e.into()),
            },
            _ => unreachable!("validated above"),
        };
        audits.push(audit);
    }
    let failed = audits.iter().any(Audit::binding_failure);
    let text = if json {
        let payload = json!({
            "n": st.n,
            "all_binding_hold": !failed,
            "checks": audits.iter().map(Audit::to_json).collect::<Vec<_>>(),
        });
        document("verify", &dig, payload)
    } else {
        let mut s: String = audits.iter().map(|a| a.line() + "\n").collect();
        let _ = writeln!(s, "{}", if failed { "binding check FAILED" } else { "all binding checks hold" });
        s
    };
    Ok(Output { text, code: u8::from(failed) })
}

fn breakdown_value(b: &DeltaBreakdown, params: &PipelineParams) -> Value {
    json!({
        "c": b.c,
        "alpha": params.alpha.to_string(),
        "beta": params.beta.to_string(),
        "h": report::rational(&b.h),
        "x": report::rational(&b.x),
        "y": report::rational(&b.y),
        "mid_term": report::rational(&b.mid_term),
        "tail": report::interval(&b.tail),
        "eps": report::rational(&b.eps),
        "delta": report::interval(&b.delta),
    })
}

fn fixed_point_value(fp: &FixedPoint, params: &PipelineParams) -> Value {
    let mut v = breakdown_value(&fp.breakdown, params);
    v["mode"] = json!(fp.mode.to_string());
    let mut claims = Vec::new();
    match fp.mode {
        Mode::Dirac => {
            claims.push(claim("delta.lo >= 1000/36158", fp.delta.lo >= ratio(1000, 36158)));
            claims.push(claim("delta.lo >= 1/37", fp.delta.lo >= ratio(1, 37)));
        }
        Mode::Beck => {
            let k = beck_from_fixed_point(fp);
            claims.push(claim("delta.lo >= 100/3257", fp.delta.lo >= ratio(100, 3257)));
            claims.push(claim("eps >= 1/49", fp.eps >= ratio(1, 49)));
            claims.push(claim("beck_constant.lo >= 1/98", k.lo >= ratio(1, 98)));
            v["beck_constant"] = report::interval(&k);
        }
    }
    v["reference_checks"] = Value::Array(claims);
    v
}

fn human_constants(v: &Value) -> String {
    let mut s = String::new();
    let get = |k: &str| v.get(k).cloned().unwrap_or(Value::Null);
    let _ = writeln!(s, "mode {}  c {}", get("mode").as_str().unwrap_or("?"), get("c"));
    for key in ["h", "x", "y", "mid_term", "eps"] {
        let r = get(key);
        let _ = writeln!(s, "{key:<14} {} = {}", r["decimal"].as_str().unwrap_or(""), r["exact"].as_str().unwrap_or(""));
    }
    for key in ["tail", "delta", "beck_constant"] {
        let iv = get(key);
        if !iv.is_null() {
            let _ = writeln!(s, "{key:<14} [{}, {}]", iv["lo_decimal"].as_str().unwrap_or(""), iv["hi_decimal"].as_str().unwrap_or(""));
        }
    }
    if let Some(claims) = v["reference_checks"].as_array() {
        for c in claims {
            let _ = writeln!(s, "  {:<28} {}", c["claim"].as_str().unwrap_or(""), c["holds"]);
        }
    }
    s
}

#[allow(clippy::too_many_arguments)]
pub fn constants(
    c: i64,
    mode: ConstMode,
    eps: Option<&str>,
    range: Option<(i64, i64)>,
    alpha: &str,
    beta: &str,
    tail_width: &str,
    json: bool,
) -> CmdResult {
    let params = pipeline(alpha, beta, tail_width)?;
    let mode_name = match mode {
        ConstMode::Dirac => "dirac",
        ConstMode::Beck => "beck",
        ConstMode::FixedEps => "fixed-eps",
    };
    let canonical = format!(
        "constants c={c} mode={mode_name} eps={} range={range:?} alpha={} beta={} tail_width={}",
        eps.unwrap_or("-"),
        params.alpha,
        params.beta,
        params.tail_width
    );
    let solver_mode = match mode {
        ConstMode::Dirac => Some(Mode::Dirac),
        ConstMode::Beck => Some(Mode::Beck),
        ConstMode::FixedEps => None,
    };

    let payload = match (range, solver_mode) {
        (Some((lo, hi)), Some(m)) => {
            let sweep = optimize_c(lo, hi, &params, m)?;
            let entries: Vec<Value> = sweep
                .entries
                .iter()
                .map(|e| json!({ "c": e.c, "objective": e.objective.as_ref().map(report::rational) }))
                .collect();
            json!({
                "mode": mode_name,
                "c_min": lo,
                "c_max": hi,
                "best_c": sweep.best_c,
                "best_objective": report::rational(&sweep.best_objective),
                "best": fixed_point_value(&sweep.best, &params),
                "entries": entries,
            })
        }
        (Some(_), None) => return Err(Failure::new(2, "--optimize needs --mode dirac or beck")),
        (None, Some(m)) => fixed_point_value(&solve_fixed_point(c, &params, m)?, &params),
        (None, None) => {
            let eps = flag_rational("eps", eps.ok_or_else(|| Failure::new(2, "--mode fixed-eps needs --eps"))?)?;
            let b = delta_of(c, &eps, &params)?;
            let mut v = breakdown_value(&b, &params);
            v["mode"] = json!("fixed-eps");
            v["reference_checks"] = json!([
                claim("delta.lo >= eps", b.delta.lo >= eps),
                claim("delta.lo >= 1/37", b.delta.lo >= ratio(1, 37)),
            ]);
            v
        }
    };
    let text = if json {
        document("constants", &digest(canonical.as_bytes()), payload)
    } else if payload.get("best").is_some() {
        format!("best c {}\n{}", payload["best_c"], human_constants(&payload["best"]))
    } else {
        human_constants(&payload)
    };
    Ok(Output::ok(text))
}

pub fn generate(kind: Kind, params: &[u64], seed: u64, extent: u64, out: Option<&Path>) -> CmdResult {
    let want = if matches!(kind, Kind::Grid) { 2 } else { 1 };
    if params.len() != want {
        return Err(Failure::new(2, format!("expected {want} size parameter(s), got {}", params.len())));
    }
    let spec = match kind {
        Kind::Grid => GeneratorSpec::Grid { width: params[0], height: params[1] },
        Kind::NearPencil => GeneratorSpec::NearPencil { n: params[0] },
        Kind::Collinear => GeneratorSpec::Collinear { n: params[0] },
        Kind::Parabola => GeneratorSpec::Parabola { n: params[0] },
        Kind::RandomGrid => GeneratorSpec::RandomGrid { n: params[0], extent, seed },
    };
    let ps = generate_set(&spec)?;
    let text = ps.to_text();
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
            Ok(Output::ok(format!("{} {}\n", path.display(), ps.len())))
        }
        None => Ok(Output::ok(text)),
    }
}

pub fn search(n: u64, extent: u64, iters: u64, seed: u64, json: bool) -> CmdResult {
    let r = search_min_dirac(n, extent, iters, seed)?;
    let text = if json {
        let mut payload = to_value(&r);
        payload["n"] = json!(n);
        payload["extent"] = json!(extent);
        payload["iterations"] = json!(iters);
        let canonical = format!("search n={n} extent={extent} iters={iters} seed={seed}");
        document("search", &digest(canonical.as_bytes()), payload)
    } else {
        let mut s = format!(
            "n {n}  degree {}  ratio {}  witness #{}  iterations {}  rng {}\n",
            r.degree, r.ratio, r.witness, r.iterations_run, r.rng
        );
        s.push_str(&r.best_set.to_text());
        s
    };
    Ok(Output::ok(text))
}
