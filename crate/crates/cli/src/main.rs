//! Batch command surface for the finite-level verification suites.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use virtalg::characters::{char_value, character_table};
use virtalg::limit::{
    assemble_window, compression_experiment, eigen_pipeline, theta_limit, LimitMode, CAUCHY_SCHEDULE, DEFAULT_SCHEDULE,
};
use virtalg::partition::partitions_up_to;
use virtalg::shifted::eval_sstar;
use virtalg::suites;
use virtalg::{Error, FiniteGroup, Multipartition, Partition, SequenceFamily, Q};

use output::{write_atomic, Format, Report, Table};

#[derive(Parser, Debug)]
#[command(name = "virtalg", version, about = "Exact finite-level identity suites for S(n), wreath products and rook monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; csv is available for tabular commands only.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct GroupArg {
    /// Built-in name (trivial, Z2, V4, S3, D4) or path to a group file.
    #[arg(long, default_value = "trivial")]
    group: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Central eigenvalues against p#_k: z^(k) on S(n), z^(k,ψ) on G(n), or Δ on rook models.
    Eigentable {
        #[arg(long)]
        n: usize,
        /// Only this k (default: every 1 ≤ k ≤ n).
        #[arg(long)]
        k: Option<usize>,
        /// Use Δ^(k)_n / Δ_n(k,φ) on the rook models.
        #[arg(long)]
        rook: bool,
        #[command(flatten)]
        group: GroupArg,
    },
    /// Monoid presentation relations and the commutation relations of u_i.
    VerifyHecke {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        group: GroupArg,
    },
    /// Centrality, θ-consistency and shift identities for Δ, z and u.
    VerifyCentral {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        group: GroupArg,
    },
    /// Σ (C(n,|λ|) dim λ)² = Σ C(n,ℓ)² ℓ! = |Γ(n)|.
    DimIdentity {
        #[arg(long)]
        n: usize,
    },
    /// Decomposition of a rook model restricted to the unit group.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        mlambda: Option<String>,
        #[command(flatten)]
        group: GroupArg,
    },
    /// Truncation limits, windows, compression rates and eigenvalue pipelines.
    Limit(LimitArgs),
    /// Character values χ^λ_ρ, or the full table of S(n) with --n.
    Charval {
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        rho: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// s*_μ(ν) for |μ|, |ν| ≤ n.
    SstarTable {
        #[arg(long)]
        n: usize,
    },
    /// Emits the JSON definition of a built-in group.
    GroupTemplate {
        #[arg(long)]
        name: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Action {
    Theta,
    Window,
    Compression,
    Pipeline,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// eps, alpha, delta, u, z, or a full family expression such as `shifted(1, alpha(1))`.
    family: String,
    #[arg(long, value_enum, default_value = "theta")]
    action: Action,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Truncation level (theta, compression) or window end.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    mlambda: Option<String>,
    /// Comma-separated sizes, e.g. 8,12,18,27,40.
    #[arg(long)]
    schedule: Option<String>,
    /// Comma-separated checkpoints for rate certificates (default: the schedule).
    #[arg(long)]
    checkpoints: Option<String>,
    /// Float tolerance; switches theta/window to the Cauchy mode.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    group: GroupArg,
}

type Outcome = Result<Report, Error>;

fn config(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

/// Parameter problems exit with 2; everything else is a failed computation.
fn is_config_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidArgument(_)
            | Error::BoundExceeded { .. }
            | Error::Parse { .. }
            | Error::GroupFile { .. }
            | Error::GroupMismatch { .. }
            | Error::SizeMismatch { .. }
            | Error::Unsupported(_)
            | Error::Io(_)
    )
}

fn group(arg: &GroupArg) -> Result<Arc<FiniteGroup>, Error> {
    FiniteGroup::resolve(&arg.group).map(Arc::new)
}

/// Accepts `[2,1]` as well as the bare `2,1`.
fn partition(text: &str) -> Result<Partition, Error> {
    let t = text.trim();
    if t.starts_with('[') {
        t.parse::<Partition>()
    } else {
        format!("[{t}]").parse::<Partition>()
    }
}

fn sizes(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| config(format!("bad size `{s}` in `{text}`"))))
        .collect()
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

fn eigentable(n: usize, k: Option<usize>, rook: bool, g: &GroupArg) -> Outcome {
    let grp = group(g)?;
    let ks = k.map(|k| vec![k]);
    let t = if rook {
        suites::rook_eigentable(n, &grp, ks.as_deref())?
    } else if grp.is_trivial() {
        suites::sym_eigentable(n, ks.as_deref())?
    } else {
        suites::wreath_eigentable(n, &grp, ks.as_deref())?
    };
    let mut rep = Report::new("eigentable", json!({"n": n, "k": k, "rook": rook, "group": grp.name()}));
    let mut table = Table::new(&["lambda", "k", "psi", "eigenvalue", "expected", "match"]);
    for r in &t.rows {
        let psi = r.psi.map(|p| p.to_string()).unwrap_or_default();
        table.push(vec![r.lambda.clone(), r.k.to_string(), psi.clone(), r.eigenvalue.to_string(), r.expected.to_string(), r.matched.to_string()]);
        let psi = if psi.is_empty() { String::new() } else { format!(" psi={psi}") };
        rep.lines.push(format!("{} k={}{psi}: {} (p# = {}) {}", r.lambda, r.k, r.eigenvalue, r.expected, if r.matched { "ok" } else { "MISMATCH" }));
    }
    rep.passed = t.passed;
    rep.counterexample = t.first_mismatch().map(value);
    rep.result = value(&t);
    rep.table = Some(table);
    Ok(rep)
}

fn suite_report(command: &str, s: suites::SuiteReport) -> Report {
    let mut rep = Report::new(command, s.params.clone());
    for c in &s.checks {
        rep.lines.push(format!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name));
    }
    rep.lines.push(format!("{} checks, {} failed", s.checks.len(), s.failures()));
    rep.passed = s.passed;
    rep.counterexample = s.first_failure().map(value);
    let mut table = Table::new(&["check", "passed"]);
    for c in &s.checks {
        table.push(vec![c.name.clone(), c.passed.to_string()]);
    }
    rep.table = Some(table);
    rep.result = value(&s);
    rep
}

fn dim_identity(n: usize) -> Outcome {
    let d = suites::dim_identity(n)?;
    let mut rep = Report::new("dim-identity", json!({"n": n}));
    rep.lines.push(format!("sum of squares     {}", d.sum_of_squares));
    rep.lines.push(format!("rook model dims    {}", d.rook_models));
    rep.lines.push(format!("closed form        {}", d.closed_form));
    rep.lines.push(format!("enumerated |Γ({n})|  {}", d.enumerated));
    let mut table = Table::new(&["n", "sum_of_squares", "rook_models", "closed_form", "enumerated", "match"]);
    table.push(vec![n.to_string(), d.sum_of_squares.clone(), d.rook_models.clone(), d.closed_form.clone(), d.enumerated.clone(), d.matched.to_string()]);
    rep.passed = d.matched;
    if !d.matched {
        rep.counterexample = Some(value(&d));
    }
    rep.table = Some(table);
    rep.result = value(&d);
    Ok(rep)
}

fn spectrum(n: usize, lambda: Option<&str>, mlambda: Option<&str>, g: &GroupArg) -> Outcome {
    let grp = group(g)?;
    let s = match (lambda, mlambda) {
        (Some(l), None) if grp.is_trivial() => suites::sym_spectrum(&partition(l)?, n)?,
        (None, Some(ml)) if grp.is_trivial() => {
            let m = Multipartition::parse(ml, &grp)?;
            suites::sym_spectrum(m.get(0), n)?
        }
        (None, Some(ml)) => suites::wreath_spectrum(&Multipartition::parse(ml, &grp)?, n, &grp)?,
        (Some(l), None) => {
            let m = Multipartition::trivial_slot(grp.num_chars(), partition(l)?);
            suites::wreath_spectrum(&m, n, &grp)?
        }
        _ => return Err(config("spectrum needs exactly one of --lambda and --mlambda")),
    };
    let mut rep = Report::new("spectrum", json!({"n": n, "lambda": s.lambda, "group": grp.name()}));
    let mut table = Table::new(&["irreducible", "multiplicity", "expected"]);
    for (name, m) in &s.multiplicities {
        let want = u8::from(s.expected.contains(name));
        table.push(vec![name.clone(), m.to_string(), want.to_string()]);
        if !m.is_zero() || want == 1 {
            rep.lines.push(format!("{name}: {m} (expected {want})"));
        }
    }
    if let Some(m) = &s.stable_row_multiplicity {
        rep.lines.push(format!("multiplicity of the grown diagram: {m}"));
    }
    rep.passed = s.passed;
    if !s.passed {
        rep.counterexample = Some(json!({"multiplicities": value(&s.multiplicities), "expected": s.expected}));
    }
    rep.table = Some(table);
    rep.result = value(&s);
    Ok(rep)
}

fn family_text(a: &LimitArgs) -> Result<String, Error> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| config(format!("`{}` needs {flag}", a.family)));
    Ok(match a.family.as_str() {
        "eps" => format!("eps({},{})", need(a.i, "--i")?, need(a.m, "--m")?),
        "alpha" | "delta" | "z" => format!("{}({})", a.family, need(a.k, "--k")?),
        "u" => format!("u({})", need(a.i, "--i")?),
        other => other.to_string(),
    })
}

fn limit(a: &LimitArgs) -> Outcome {
    let grp = group(&a.group)?;
    let schedule = a.schedule.as_deref().map(sizes).transpose()?;
    let checkpoints = a.checkpoints.as_deref().map(sizes).transpose()?;
    if a.action == Action::Pipeline {
        return pipeline(a, &grp, schedule, checkpoints);
    }
    let text = family_text(a)?;
    let seq = SequenceFamily::parse(&text, grp.clone())?;
    let mode = match a.tol {
        Some(tol) if matches!(a.action, Action::Theta | Action::Window) => LimitMode::CauchyFloat {
            schedule: schedule.clone().unwrap_or_else(|| CAUCHY_SCHEDULE.to_vec()),
            tol,
        },
        _ => LimitMode::ExactFit,
    };
    let params = json!({
        "family": seq.to_string(), "action": format!("{:?}", a.action).to_lowercase(), "r": a.r,
        "group": grp.name(), "schedule": schedule, "checkpoints": checkpoints, "tol": a.tol,
        "lambda": a.lambda,
    });
    let mut rep = Report::new("limit", params);
    let r = a.r.ok_or_else(|| config("limit needs --r"))?;
    match a.action {
        Action::Theta => {
            let lim = theta_limit(&seq, r, &mode)?;
            rep.lines.push(format!("b_{r} = {}", lim.element));
            rep.result = json!({
                "family": seq.to_string(), "level_m": seq.level(), "degree_bound": seq.degree_bound(),
                "per_r": { r.to_string(): {"limit_element": lim.element.to_text(), "certificate": value(&lim.certificate)} },
            });
        }
        Action::Window => {
            let w = assemble_window(&seq, r, &mode)?;
            let mut per_r = serde_json::Map::new();
            for (level, cert) in &w.certificates {
                let b = w.window.get(*level).expect("window level");
                rep.lines.push(format!("b_{level} = {b}"));
                per_r.insert(level.to_string(), json!({"limit_element": b.to_text(), "certificate": value(cert)}));
            }
            rep.lines.push("window invariants hold".into());
            rep.result = json!({
                "family": seq.to_string(), "level_m": seq.level(), "degree_bound": seq.degree_bound(), "per_r": per_r,
            });
        }
        Action::Compression => {
            let lambda = partition(a.lambda.as_deref().ok_or_else(|| config("compression needs --lambda"))?)?;
            let sched = schedule.unwrap_or_else(|| DEFAULT_SCHEDULE.iter().copied().filter(|&n| n <= 14).collect());
            let checks = checkpoints.unwrap_or_else(|| sched.clone());
            let tol = a.tol.unwrap_or(1e-8);
            let c = compression_experiment(&seq, &lambda, r, &sched, &checks, tol)?;
            let mut table = Table::new(&["N", "E", "N_times_E"]);
            for ((n, v), s) in c.schedule.iter().zip(&c.values).zip(&c.scaled) {
                table.push(vec![n.to_string(), format!("{v:e}"), format!("{s:e}")]);
                rep.lines.push(format!("N={n}: E={v:.3e} N*E={s:.6}"));
            }
            rep.lines.push(format!("fitted C = {:.6}", c.certificate.fitted_c));
            rep.passed = c.pass;
            if !c.pass {
                rep.counterexample = Some(value(&c.certificate));
            }
            rep.table = Some(table);
            rep.result = json!({
                "family": seq.to_string(), "level_m": seq.level(), "degree_bound": seq.degree_bound(),
                "experiments": [{
                    "kind": "compression", "lambda": c.lambda, "schedule": c.schedule, "values": c.values,
                    "fitted_C": c.certificate.fitted_c, "pass": c.pass, "detail": value(&c),
                }],
            });
        }
        Action::Pipeline => unreachable!("handled above"),
    }
    Ok(rep)
}

fn pipeline(a: &LimitArgs, grp: &Arc<FiniteGroup>, schedule: Option<Vec<usize>>, checkpoints: Option<Vec<usize>>) -> Outcome {
    if a.family != "alpha" {
        return Err(config("the pipeline action applies to the alpha family"));
    }
    let k = a.k.ok_or_else(|| config("pipeline needs --k"))?;
    let ml = match (a.lambda.as_deref(), a.mlambda.as_deref()) {
        (Some(l), None) => Multipartition::trivial_slot(grp.num_chars(), partition(l)?),
        (None, Some(m)) => Multipartition::parse(m, grp)?,
        _ => return Err(config("pipeline needs exactly one of --lambda and --mlambda")),
    };
    let sched = schedule.unwrap_or_else(|| DEFAULT_SCHEDULE.to_vec());
    let checks = checkpoints.unwrap_or_else(|| sched.clone());
    let e = eigen_pipeline(k, &ml, grp, &sched, &checks)?;
    let mut rep = Report::new("limit", json!({"family": format!("alpha({k})"), "action": "pipeline", "lambda": e.lambda, "group": grp.name(), "schedule": sched, "checkpoints": checks}));
    let mut table = Table::new(&["n", "eigenvalue", "n_times_error"]);
    for ((n, v), s) in e.schedule.iter().zip(&e.values).zip(&e.scaled) {
        table.push(vec![n.to_string(), v.to_string(), format!("{s}")]);
        rep.lines.push(format!("n={n}: t = {v} (n*|t - target| = {s:.6})"));
    }
    rep.lines.push(format!("target {} ; fitted C = {:.6}", e.target, e.certificate.fitted_c));
    rep.passed = e.pass;
    if !e.pass {
        rep.counterexample = Some(json!({"certificate": value(&e.certificate), "cross_checked": e.cross_checked}));
    }
    rep.table = Some(table);
    rep.result = json!({
        "family": format!("alpha({k})"),
        "experiments": [{
            "kind": "pipeline", "lambda": e.lambda, "schedule": e.schedule, "values": value(&e.values),
            "fitted_C": e.certificate.fitted_c, "pass": e.pass, "detail": value(&e),
        }],
    });
    Ok(rep)
}

fn charval(lambda: Option<&str>, rho: Option<&str>, n: Option<usize>) -> Outcome {
    match (lambda, rho, n) {
        (Some(l), Some(r), None) => {
            let (l, r) = (partition(l)?, partition(r)?);
            let v = char_value(&l, &r)?;
            let mut rep = Report::new("charval", json!({"lambda": l.to_string(), "rho": r.to_string()}));
            rep.lines.push(format!("chi^{l}({r}) = {v}"));
            let mut table = Table::new(&["lambda", "rho", "value"]);
            table.push(vec![l.to_string(), r.to_string(), v.to_string()]);
            rep.table = Some(table);
            rep.result = json!({"value": v.to_string()});
            Ok(rep)
        }
        (None, None, Some(n)) => {
            let (parts, rows) = character_table(n);
            let names: Vec<String> = parts.iter().map(ToString::to_string).collect();
            let mut rep = Report::new("charval", json!({"n": n}));
            let mut header = vec!["lambda".to_string()];
            header.extend(names.iter().cloned());
            let mut table = Table { header, rows: Vec::new() };
            for (name, row) in names.iter().zip(&rows) {
                let vals: Vec<String> = row.iter().map(ToString::to_string).collect();
                rep.lines.push(format!("{name:>16} {}", vals.join(" ")));
                let mut line = vec![name.clone()];
                line.extend(vals);
                table.push(line);
            }
            rep.result = json!({"classes": names, "table": rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()});
            rep.table = Some(table);
            Ok(rep)
        }
        _ => Err(config("charval needs --lambda and --rho, or --n")),
    }
}

fn sstar_table(n: usize) -> Outcome {
    let parts = partitions_up_to(n);
    let mut rep = Report::new("sstar-table", json!({"n": n}));
    let mut table = Table::new(&["mu", "nu", "value"]);
    let mut entries = Vec::new();
    for mu in &parts {
        for nu in &parts {
            let v = if mu.is_empty() { Q::one() } else { eval_sstar(mu, nu)? };
            table.push(vec![mu.to_string(), nu.to_string(), v.to_string()]);
            if !v.is_zero() {
                rep.lines.push(format!("s*_{mu}({nu}) = {v}"));
            }
            entries.push(json!({"mu": mu.to_string(), "nu": nu.to_string(), "value": v.to_string()}));
        }
    }
    rep.result = json!({"entries": entries});
    rep.table = Some(table);
    Ok(rep)
}

fn group_template(name: &str) -> Outcome {
    let g = FiniteGroup::builtin(name)?;
    let mut rep = Report::new("group-template", json!({"name": name}));
    let file: Value = serde_json::from_str(&g.to_json()).map_err(|e| Error::GroupFile { location: name.to_string(), message: e.to_string() })?;
    rep.lines.push(g.to_json());
    rep.result = file;
    Ok(rep)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Eigentable { n, k, rook, group } => eigentable(*n, *k, *rook, group),
        Command::VerifyHecke { n, group: g } => Ok(suite_report("verify-hecke", suites::hecke_suite(*n, &group(g)?)?)),
        Command::VerifyCentral { n, group: g } => {
            Ok(suite_report("verify-central", suites::central_suite(*n, &group(g)?)?))
        }
        Command::DimIdentity { n } => dim_identity(*n),
        Command::Spectrum { n, lambda, mlambda, group } => spectrum(*n, lambda.as_deref(), mlambda.as_deref(), group),
        Command::Limit(a) => limit(a),
        Command::Charval { lambda, rho, n } => charval(lambda.as_deref(), rho.as_deref(), *n),
        Command::SstarTable { n } => sstar_table(*n),
        Command::GroupTemplate { name } => group_template(name),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eigentable { .. } => "eigentable",
        Command::VerifyHecke { .. } => "verify-hecke",
        Command::VerifyCentral { .. } => "verify-central",
        Command::DimIdentity { .. } => "dim-identity",
        Command::Spectrum { .. } => "spectrum",
        Command::Limit(_) => "limit",
        Command::Charval { .. } => "charval",
        Command::SstarTable { .. } => "sstar-table",
        Command::GroupTemplate { .. } => "group-template",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) if is_config_error(&e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            let mut r = Report::new(command_name(&cli.command), Value::Null);
            r.passed = false;
            r.counterexample = Some(json!({"error": e.to_string()}));
            r.lines.push(format!("error: {e}"));
            r
        }
    };
    let text = match report.render(cli.format) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
