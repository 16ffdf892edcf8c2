//! Command-line front end. Exit codes: 0 success or pass, 1 a check came
//! out false, 2 bad input.

use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::catalog::{self, compare_affine_closures, metadata_problems, CatalogEntry};
use crate::config::{KAPPA, Q_DEFAULT_ENV};
use crate::document::{parse_assignments, InputDocument, SCHEMA_VERSION};
use crate::error::{input, Error, Result};
use crate::oracle::{run_named, CHECK_NAMES};
use crate::spherical::{
    describe, enumerate_orbits, is_affine, is_wavefront, negligible_orbit_check,
    parabolic_induction, validate_colored_cone, SphericalDatum,
};
use crate::unramified::{
    basic_function_graded, dual_radical, f_fixed, lfactor_ffixed, lfactor_radical, plan, table, Case, PointValue,
};

#[derive(Parser, Debug)]
#[command(name = "sphvar", version, about = "Spherical varieties: combinatorial checks and unramified basic functions")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank, multiplicities, wavefront and a sample of orbit labels.
    Describe { file: String },
    /// Run one combinatorial check.
    Check { file: String, which: CheckKind },
    /// Orbit labels up to a height.
    Orbits {
        file: String,
        #[arg(long, default_value_t = 3)]
        height: u32,
        /// Only orbits meeting the integral points.
        #[arg(long)]
        integral: bool,
    },
    /// Tabulate the basic function.
    Basicfn {
        file: String,
        #[arg(long, value_enum)]
        case: Option<CaseArg>,
        #[arg(long, default_value_t = 4)]
        height: u32,
        /// `sym` or a rational number; defaults to $SPH_Q_DEFAULT, then `sym`.
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = KAPPA, allow_hyphen_values = true)]
        kappa: i32,
    },
    /// Local L-factor of the dual radical or its f-fixed part.
    Lf {
        file: String,
        #[arg(long, value_enum, default_value = "u_P_f")]
        rep: RepArg,
        /// `z1=a,z2=1/2,...`, one entry per coordinate of the Levi quotient.
        #[arg(long)]
        point: String,
        /// Also expand the power series to this degree (numeric points only).
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = KAPPA, allow_hyphen_values = true)]
        kappa: i32,
    },
    /// Built-in fixtures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Brute-force oracle comparisons.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    Show { key: String },
    Test { key: String },
}

#[derive(Subcommand, Debug)]
pub enum OracleAction {
    Run {
        name: String,
        /// Comma-separated primes.
        #[arg(long, default_value = "2,3")]
        q: String,
        #[arg(long, default_value_t = 2)]
        height: u32,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    ColoredCone,
    Affine,
    Wavefront,
    Induced,
    Negligible,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseArg {
    Borel,
    Pp,
    Graded,
    Smooth,
    Homogeneous,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepArg {
    #[value(name = "u_P")]
    UP,
    #[value(name = "u_P_f")]
    UPf,
}

/// What a command produced: pass/fail plus both renderings.
struct Output {
    pass: bool,
    human: String,
    json: Value,
}

impl Output {
    fn ok(human: String, json: Value) -> Output {
        Output { pass: true, human, json }
    }
}

/// A path to a JSON document, or a catalog key.
fn load_document(file: &str) -> Result<InputDocument> {
    if Path::new(file).is_file() {
        let text = std::fs::read_to_string(file).map_err(|e| Error::Input(format!("{file}: {e}")))?;
        return InputDocument::parse(&text).map_err(|e| match e {
            Error::Input(m) => Error::Input(format!("{file}: {m}")),
            other => other,
        });
    }
    match catalog::source(file) {
        Ok(s) => InputDocument::parse(s),
        Err(_) => input(format!("{file}: no such file or catalog key")),
    }
}

fn parse_q(q: Option<&str>) -> Result<Option<BigRational>> {
    let env = std::env::var(Q_DEFAULT_ENV).ok();
    let s = q.map(str::to_string).or(env).unwrap_or_else(|| "sym".into());
    if s.trim() == "sym" {
        return Ok(None);
    }
    let v: BigRational = s.trim().parse().map_err(|_| Error::Input(format!("bad q {s:?}: expected sym or a rational")))?;
    if v <= BigRational::from_integer(1.into()) {
        return input("q must exceed 1");
    }
    Ok(Some(v))
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({"schema": SCHEMA_VERSION, "command": command});
    if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
        m.extend(b);
    }
    v
}

fn cmd_describe(file: &str) -> Result<Output> {
    let d = load_document(file)?.to_datum()?;
    let m = describe(&d)?;
    let human = m.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n");
    let problems = d.consistency();
    let mut human = human;
    for p in &problems {
        human.push_str(&format!("\nwarning: {p}"));
    }
    Ok(Output::ok(human, envelope("describe", json!({"result": m, "warnings": problems}))))
}

fn colored_cone_of(d: &SphericalDatum) -> Result<&crate::spherical::ColoredCone> {
    d.colored_cone.as_ref().ok_or_else(|| Error::Input("document has no colored_cone".into()))
}

fn cmd_check(file: &str, which: CheckKind) -> Result<Output> {
    let d = load_document(file)?.to_datum()?;
    let name = format!("{which:?}").to_lowercase();
    let (pass, detail, extra) = match which {
        CheckKind::ColoredCone => {
            let v = validate_colored_cone(&d, colored_cone_of(&d)?)?;
            (v.ok, v.detail, Value::Null)
        }
        CheckKind::Affine => {
            let v = is_affine(&d, colored_cone_of(&d)?)?;
            let w: Option<Vec<String>> = v.witness.as_ref().map(|w| w.iter().map(|x| x.to_string()).collect());
            let detail = match &w {
                Some(w) => format!("affine, witness chi = ({})", w.join(", ")),
                None => "not affine".into(),
            };
            (v.affine, detail, json!({"witness": w}))
        }
        CheckKind::Wavefront => {
            let ok = is_wavefront(&d);
            (ok, if ok { "V is the antidominant image".into() } else { "V differs from the antidominant image".into() }, Value::Null)
        }
        CheckKind::Induced => match parabolic_induction(&d)? {
            Some(s) => (true, format!("parabolically induced; Levi simple roots {s:?}"), json!({"levi": s})),
            None => (false, "not parabolically induced".into(), json!({"levi": null})),
        },
        CheckKind::Negligible => match negligible_orbit_check(&d) {
            Ok(r) => {
                let cert: Vec<Value> = r.certificate.iter().map(|(t, w)| json!({"subset": t, "witness": w})).collect();
                (r.ok, if r.ok { "every proper subset has a witness".into() } else { "some subset has no witness".into() }, json!({"certificate": cert}))
            }
            Err(Error::HypothesisNotMet(m)) => (false, format!("hypothesis not met: {m}"), json!({"hypothesis_met": false})),
            Err(e) => return Err(e),
        },
    };
    let human = format!("{}: {} ({detail})", name, if pass { "pass" } else { "fail" });
    let json = envelope("check", json!({"check": name, "pass": pass, "detail": detail, "data": extra}));
    Ok(Output { pass, human, json })
}

fn cmd_orbits(file: &str, height: u32, integral: bool) -> Result<Output> {
    let d = load_document(file)?.to_datum()?;
    let pts = enumerate_orbits(&d, height, integral)?;
    let mut human = (1..=d.rank()).map(|i| format!("l{i}")).collect::<Vec<_>>().join("\t");
    for p in &pts {
        human.push('\n');
        human.push_str(&p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t"));
    }
    Ok(Output::ok(human, envelope("orbits", json!({"height": height, "integral": integral, "rows": pts}))))
}

fn cmd_basicfn(file: &str, case: Option<CaseArg>, height: u32, q: Option<&str>, kappa: i32) -> Result<Output> {
    if kappa != 1 && kappa != -1 {
        return input("kappa must be 1 or -1");
    }
    let doc = load_document(file)?;
    let q = parse_q(q)?;
    if case == Some(CaseArg::Graded) {
        let p = plan(&doc)?.parabolic.ok_or_else(|| Error::Input("graded data needs a borel or pp route".into()))?;
        let g = basic_function_graded(&p, height as usize)?;
        let mut human = String::from("i\tconstituents");
        let mut rows = vec![];
        for (i, parts) in &g {
            let s: Vec<String> = parts.iter().map(|(w, m)| format!("{w:?}x{m}")).collect();
            human.push_str(&format!("\n{i}\t{}", s.join(" ")));
            let c: Vec<Value> = parts.iter().map(|(w, m)| json!({"highest_weight": w, "mult": m.to_string()})).collect();
            rows.push(json!({"i": i, "constituents": c}));
        }
        return Ok(Output::ok(human, envelope("basicfn", json!({"case": "UP-general-graded", "degree": height, "rows": rows}))));
    }
    let case = case.map(|c| match c {
        CaseArg::Borel => Case::Borel,
        CaseArg::Pp => Case::Pp,
        CaseArg::Smooth => Case::Smooth,
        CaseArg::Homogeneous => Case::Homogeneous,
        CaseArg::Graded => unreachable!(),
    });
    let t = table(&doc, case, height, kappa)?;
    let human = t.to_tsv(q.as_ref()).trim_end().to_string();
    let mut body = t.to_json(q.as_ref());
    if let Value::Object(m) = &mut body {
        m.remove("schema");
    }
    Ok(Output::ok(human, envelope("basicfn", body)))
}

fn cmd_lf(file: &str, rep: RepArg, point: &str, degree: Option<usize>, kappa: i32) -> Result<Output> {
    if kappa != 1 && kappa != -1 {
        return input("kappa must be 1 or -1");
    }
    let doc = load_document(file)?;
    let p = plan(&doc)?.parabolic.ok_or_else(|| Error::Input("L-factors need a borel or pp route".into()))?;
    let k = p.ab_rank();
    let a = parse_assignments(point)?;
    let mut pts = vec![];
    for i in 1..=k {
        let key = format!("z{i}");
        let v = a.get(&key).ok_or_else(|| Error::Input(format!("--point: missing {key} (expected z1..z{k})")))?;
        pts.push(PointValue::parse(v)?);
    }
    if let Some(extra) = a.keys().find(|key| !(1..=k).any(|i| **key == format!("z{i}"))) {
        return input(format!("--point: unknown coordinate {extra}"));
    }
    let r = dual_radical(&p)?;
    let l = match rep {
        RepArg::UP => lfactor_radical(&r, &pts, kappa)?,
        RepArg::UPf => lfactor_ffixed(&f_fixed(&r)?, &pts, kappa)?,
    };
    let mut human = l.to_string();
    let mut expansion = Value::Null;
    if let Some(dg) = degree {
        let e = l.expand(dg)?;
        let s: Vec<String> = e.iter().map(|c| c.to_string()).collect();
        for (i, c) in s.iter().enumerate() {
            human.push_str(&format!("\nT^{i}\t{c}"));
        }
        expansion = json!(s);
    }
    let rep_name = match rep {
        RepArg::UP => "u_P",
        RepArg::UPf => "u_P_f",
    };
    let monos: Vec<String> = l.monomials.iter().map(|m| m.to_string()).collect();
    Ok(Output::ok(
        human,
        envelope("lf", json!({"rep": rep_name, "kappa": kappa, "lfactor": l.to_string(), "monomials": monos, "expansion": expansion})),
    ))
}

/// Flag-versus-computation checks for one fixture: (name, pass, detail).
pub fn catalog_checks(e: &CatalogEntry) -> Vec<(String, bool, String)> {
    let d = &e.datum;
    let f = &e.flags;
    let mut out = vec![];
    let mut push = |name: &str, ok: bool, detail: String| out.push((name.to_string(), ok, detail));
    let problems = metadata_problems(e);
    push("metadata", problems.is_empty(), problems.join("; "));
    let cons = d.consistency();
    push("consistency", cons.is_empty(), cons.join("; "));
    let wf = is_wavefront(d);
    push("wavefront", wf == f.wavefront_expected, format!("computed {wf}, flag {}", f.wavefront_expected));
    match parabolic_induction(d) {
        Ok(ind) => {
            push("induced", ind == f.induced, format!("computed {ind:?}, flag {:?}", f.induced));
            if f.reductive_stabilizer {
                push("reductive-not-induced", ind.is_none(), format!("computed {ind:?}"));
            }
        }
        Err(err) => push("induced", false, err.to_string()),
    }
    let neg = match negligible_orbit_check(d) {
        Ok(r) => Ok(Some(r.ok)),
        Err(Error::HypothesisNotMet(_)) => Ok(None),
        Err(err) => Err(err),
    };
    match neg {
        Ok(n) => push("negligible", n == f.negligible, format!("computed {n:?}, flag {:?}", f.negligible)),
        Err(err) => push("negligible", false, err.to_string()),
    }
    match crate::spherical::arithmetic_multiplicity(d) {
        Ok(m) => push("arith_mult", m == f.arith_mult.into(), format!("computed {m}, flag {}", f.arith_mult)),
        Err(err) => push("arith_mult", false, err.to_string()),
    }
    match crate::spherical::aut_lineality(d) {
        Ok((r, _)) => push("aut_rank", r == f.aut_rank, format!("computed {r}, flag {}", f.aut_rank)),
        Err(err) => push("aut_rank", false, err.to_string()),
    }
    if f.smooth_expected && plan(&e.document).is_ok() {
        match table(&e.document, None, 4, KAPPA) {
            Ok(t) => {
                let integral: Vec<_> = enumerate_orbits(d, 4, true).unwrap_or_default();
                let bad: Vec<_> = t
                    .values
                    .iter()
                    .filter(|(l, v)| {
                        let want = integral.contains(l);
                        (**v == crate::QLaurent::one()) != want || (!want && !v.is_zero())
                    })
                    .map(|(l, _)| l.clone())
                    .collect();
                push("smooth-basic-function", bad.is_empty(), format!("strata off the indicator: {bad:?}"));
            }
            Err(err) => push("smooth-basic-function", false, err.to_string()),
        }
    }
    if e.document.catalog.as_ref().and_then(|m| m.compare_with.as_ref()).is_some() {
        match compare_affine_closures(&e.key) {
            Ok(r) => push("compare-closures", r.equal, r.detail),
            Err(err) => push("compare-closures", false, err.to_string()),
        }
    }
    out
}

fn cmd_catalog(action: &CatalogAction) -> Result<Output> {
    match action {
        CatalogAction::List => {
            let rows: Vec<Value> = catalog::load_all()?
                .iter()
                .map(|e| json!({"key": e.key, "preflag_case": e.flags.preflag_case, "provenance": e.provenance}))
                .collect();
            let human = catalog::list_entries().join("\n");
            Ok(Output::ok(human, envelope("catalog-list", json!({"entries": rows}))))
        }
        CatalogAction::Show { key } => {
            let src = catalog::source(key)?;
            let doc: Value = serde_json::from_str(src).map_err(|e| Error::Input(e.to_string()))?;
            Ok(Output::ok(src.trim_end().to_string(), envelope("catalog-show", json!({"key": key, "document": doc}))))
        }
        CatalogAction::Test { key } => {
            let e = catalog::load(key)?;
            let checks = catalog_checks(&e);
            let pass = checks.iter().all(|c| c.1);
            let human = checks
                .iter()
                .map(|(n, ok, d)| format!("{}\t{n}\t{d}", if *ok { "pass" } else { "FAIL" }))
                .collect::<Vec<_>>()
                .join("\n");
            let rows: Vec<Value> = checks.iter().map(|(n, ok, d)| json!({"check": n, "pass": ok, "detail": d})).collect();
            Ok(Output { pass, human, json: envelope("catalog-test", json!({"key": key, "pass": pass, "checks": rows})) })
        }
    }
}

fn cmd_oracle(action: &OracleAction) -> Result<Output> {
    let OracleAction::Run { name, q, height } = action;
    if !CHECK_NAMES.contains(&name.as_str()) {
        return input(format!("unknown oracle check {name}; known: {}", CHECK_NAMES.join(", ")));
    }
    let qs: Vec<u64> = q
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| Error::Input(format!("bad --q entry {s:?}"))))
        .collect::<Result<_>>()?;
    let reports = run_named(name, &qs, *height)?;
    // the kappa check passes when exactly one sign survives at every q
    let pass = if name == "kappa" {
        qs.iter().all(|&q| reports.iter().filter(|r| r.q == q && r.ok()).count() == 1)
    } else {
        reports.iter().all(|r| r.ok())
    };
    let mut human = vec![];
    let mut rows = vec![];
    for r in &reports {
        human.push(format!("{}\tq={}\tchecked={}\t{}", r.name, r.q, r.checked, if r.ok() { "pass" } else { "fail" }));
        if !r.mismatches.is_empty() {
            human.push(r.mismatch_tsv().trim_end().to_string());
        }
        let mm: Vec<Value> = r
            .mismatches
            .iter()
            .map(|m| json!({"label": m.label, "oracle": m.oracle.to_string(), "engine": m.engine.to_string()}))
            .collect();
        rows.push(json!({"name": r.name, "q": r.q, "checked": r.checked, "pass": r.ok(), "mismatches": mm}));
    }
    Ok(Output { pass, human: human.join("\n"), json: envelope("oracle", json!({"check": name, "pass": pass, "reports": rows})) })
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Describe { file } => cmd_describe(file),
        Command::Check { file, which } => cmd_check(file, *which),
        Command::Orbits { file, height, integral } => cmd_orbits(file, *height, *integral),
        Command::Basicfn { file, case, height, q, kappa } => cmd_basicfn(file, *case, *height, q.as_deref(), *kappa),
        Command::Lf { file, rep, point, degree, kappa } => cmd_lf(file, *rep, point, *degree, *kappa),
        Command::Catalog { action } => cmd_catalog(action),
        Command::Oracle { action } => cmd_oracle(action),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let text = if cli.json { serde_json::to_string_pretty(&o.json).expect("serializable") } else { o.human };
            let _ = writeln!(out, "{text}");
            if o.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if cli.json {
                let v = json!({"schema": SCHEMA_VERSION, "error": e.to_string()});
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Input(_) | Error::UnsupportedRank(_) | Error::Precision(_) => 2,
                _ => 1,
            }
        }
    }
}
