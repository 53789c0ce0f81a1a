//! `spinsv`: character tables, brackets, Hurwitz numbers, Siegel–Veech
//! constants and the verification suites from the command line.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use spinsv::brackets::{l_bracket, mixed_recognition_order, ConnectedSpec};
use spinsv::error::{Error, Result};
use spinsv::exact::{fmt_rational, int, Rational};
use spinsv::graphs::identities::{chain_sum, d1};
use spinsv::graphs::{SpinVolumes, VolumeSource, VolumeTable};
use spinsv::qmf::{recognize, recognize_mixed, DEFAULT_ORDER};
use spinsv::sergeev::{
    character_table, cylinder_census, hurwitz_bruteforce, weighted_spin_hurwitz_char, Family, GroupId, HurwitzProfile,
    Weight,
};
use spinsv::svgf::{c0_numerator, c0_numerator_genfun_literal, derived_constants, vol_pm, OddSignature, Route};
use spinsv::symfun::SymFunc;
use spinsv::verify::{expansion_checks, mainint_checks, run_suite, Check, VerifyOptions, SUITES};

const EXIT_DOMAIN: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;

#[derive(Parser)]
#[command(name = "spinsv", version, about = "Spin character tables, q-brackets and Siegel-Veech constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Character table of a spin group.
    Chartable {
        #[arg(long)]
        group: String,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Connected q-bracket of elements of Λ, e.g. --slots "p1*p3|p1".
    Bracket {
        #[arg(long)]
        slots: String,
        /// Put p_{-1} in the leading slot.
        #[arg(long)]
        pminus1: bool,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        q_order: usize,
    },
    /// Weighted spin Hurwitz number.
    Hurwitz {
        #[arg(long)]
        degree: u32,
        /// Entries separated by ';', parts by ','.
        #[arg(long)]
        profile: String,
        #[arg(long, default_value = "one")]
        weight: String,
        #[arg(long, value_enum, default_value_t = HurwitzRoute::Character)]
        route: HurwitzRoute,
    },
    /// c₀^±(μ) for an odd signature.
    Svconst {
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value_t = SvRoute::Both)]
        route: SvRoute,
        #[arg(long, value_enum, default_value_t = Emit::VolumeFree)]
        emit: Emit,
        #[arg(long, env = "SPINSV_VOL_TABLE")]
        vol_table: Option<PathBuf>,
    },
    /// Spin volume vol^±(μ).
    Volpm {
        #[arg(long)]
        mu: String,
    },
    /// Graph sums over boundary strata.
    Graphs {
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum)]
        what: GraphQuery,
        #[arg(long, value_enum, default_value_t = Sector::Spin)]
        sector: Sector,
        #[arg(long, env = "SPINSV_VOL_TABLE")]
        vol_table: Option<PathBuf>,
    },
    /// Cylinder census of the connected Hurwitz tuples of a profile.
    Census {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        profile: String,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 10)]
        max_weight: u32,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        q_order: usize,
        #[arg(long, default_value_t = 8)]
        max_size: u32,
        #[arg(long, env = "SPINSV_VOL_TABLE")]
        vol_table: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HurwitzRoute {
    Character,
    Bruteforce,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SvRoute {
    Bracket,
    Genfun,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Constant,
    VolumeFree,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphQuery {
    D1,
    D1pm,
    Chains,
    CheckMainint,
    CheckExpansion,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sector {
    Spin,
    NonSpin,
}

/// What a command produced: a JSON report, or raw text for table output.
enum Output {
    Report { fields: Map<String, Value>, failed: bool },
    Raw(String),
}

fn report(v: Value) -> Output {
    match v {
        Value::Object(fields) => Output::Report { fields, failed: false },
        other => Output::Report { fields: Map::from_iter([("value".to_string(), other)]), failed: false },
    }
}

fn q(x: &Rational) -> Value {
    Value::String(fmt_rational(x))
}

fn parse_mu(s: &str) -> Result<Vec<i64>> {
    let mu = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad signature {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if mu.iter().any(|&m| m <= 0) {
        return Err(Error::Parse(format!("signature entries must be positive: {s:?}")));
    }
    Ok(mu)
}

fn odd_signature(mu: &[i64]) -> Result<OddSignature> {
    OddSignature::new(mu.iter().map(|&m| m as u32).collect())
}

fn load_table(path: &Option<PathBuf>) -> Result<Option<VolumeTable>> {
    match path {
        None => Ok(None),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            VolumeTable::from_json_str(&text)
                .map(Some)
                .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
        }
    }
}

fn checks_json(checks: &[Check]) -> Value {
    serde_json::to_value(checks).expect("checks serialize")
}

fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed || c.known_deviation)
}

fn chartable(group: &str, degree: u32, format: TableFormat) -> Result<Output> {
    let t = character_table(GroupId::new(Family::parse(group)?, degree)?)?;
    Ok(match format {
        TableFormat::Text => Output::Raw(t.render_text()),
        TableFormat::Csv => Output::Raw(t.render_csv()),
        TableFormat::Json => report(t.to_json()),
    })
}

fn bracket(slots: &str, pminus1: bool, q_order: usize) -> Result<Output> {
    let fs = slots.split('|').map(str::parse::<SymFunc>).collect::<Result<Vec<_>>>()?;
    let spec = ConnectedSpec { pminus1, slots: fs };
    let k = spec.weight()?;
    let series = spec.series(q_order);
    let closed = spec.closed();
    // recognition may need more coefficients than were asked for
    let long = spec.series(q_order.max(mixed_recognition_order(k)));
    // the p_{-1} brackets mix weights k and below
    let recognized = if pminus1 { recognize_mixed(&long, k)? } else { recognize(&long, k)? };
    let l = l_bracket(&spec)?;
    Ok(report(json!({
        "weight": k,
        "q_expansion": series.to_strings(),
        "closed_form": closed.to_json(),
        "closed_form_text": closed.to_string(),
        "routes_agree": recognized == closed && closed.expand(q_order) == series,
        "L": q(&l),
    })))
}

fn hurwitz(degree: u32, profile: &str, weight: &str, route: HurwitzRoute) -> Result<Output> {
    let h = HurwitzProfile::parse(degree, profile)?;
    let w = Weight::parse(weight)?;
    let mut out = Output::Report { fields: Map::new(), failed: false };
    if let Output::Report { fields, failed } = &mut out {
        fields.insert("weight".into(), json!(w.to_string()));
        match route {
            HurwitzRoute::Character => {
                fields.insert("value".into(), q(&weighted_spin_hurwitz_char(&h, w)?));
                fields.insert("route".into(), json!("character"));
            }
            HurwitzRoute::Bruteforce => {
                fields.insert("value".into(), q(&hurwitz_bruteforce(&h, w)?));
                fields.insert("route".into(), json!("bruteforce"));
            }
            HurwitzRoute::Both => {
                let a = weighted_spin_hurwitz_char(&h, w)?;
                let b = hurwitz_bruteforce(&h, w)?;
                fields.insert("character".into(), q(&a));
                fields.insert("bruteforce".into(), q(&b));
                fields.insert("match".into(), json!(a == b));
                *failed = a != b;
            }
        }
    }
    Ok(out)
}

fn svconst(mu: &str, route: SvRoute, emit: Emit, vol_table: &Option<PathBuf>) -> Result<Output> {
    let sig = odd_signature(&parse_mu(mu)?)?;
    let routes: Vec<(Route, &str)> = match route {
        SvRoute::Bracket => vec![(Route::Bracket, "bracket")],
        SvRoute::Genfun => vec![(Route::Genfun, "genfun")],
        SvRoute::Both => vec![(Route::Bracket, "bracket"), (Route::Genfun, "genfun")],
    };
    let nums = routes.iter().map(|(r, _)| c0_numerator(&sig, *r)).collect::<Result<Vec<_>>>()?;
    let mut fields = Map::new();
    fields.insert("routes".into(), json!(routes.iter().map(|r| r.1).collect::<Vec<_>>()));
    let agree = nums.windows(2).all(|w| w[0] == w[1]);
    if routes.len() > 1 {
        fields.insert("routes_agree".into(), json!(agree));
    }
    match emit {
        Emit::VolumeFree => {
            // −4π² c₀^± vol(μ)
            let mut per = Map::new();
            for ((_, name), n) in routes.iter().zip(&nums) {
                per.insert((*name).into(), q(n));
            }
            fields.insert("numerator".into(), Value::Object(per));
            fields.insert("quantity".into(), json!("-4*pi^2*c0*vol(mu)"));
            if route != SvRoute::Bracket {
                fields.insert("genfun_literal".into(), q(&c0_numerator_genfun_literal(&sig)));
            }
        }
        Emit::Constant => {
            let table = load_table(vol_table)?
                .ok_or_else(|| Error::Invalid("--emit constant needs a volume table (--vol-table or SPINSV_VOL_TABLE)".into()))?;
            let mu_i: Vec<i64> = sig.entries().iter().map(|&m| m as i64).collect();
            let vol = table.vol(&mu_i)?;
            let c0 = &nums[0] / (int(-4) * &vol);
            let dc = derived_constants(&c0, &sig);
            fields.insert("vol".into(), q(&vol));
            fields.insert("c0".into(), q(&dc.c0));
            fields.insert("c_i".into(), json!(dc.c_i.iter().map(fmt_rational).collect::<Vec<_>>()));
            fields.insert("c_cyl".into(), q(&dc.c_cyl));
            fields.insert("unit".into(), json!("pi^-2"));
        }
    }
    Ok(Output::Report { fields, failed: !agree })
}

fn graphs(mu: &str, what: GraphQuery, sector: Sector, vol_table: &Option<PathBuf>) -> Result<Output> {
    let mu = parse_mu(mu)?;
    let spin = SpinVolumes::new();
    let table;
    let vols: &dyn VolumeSource = match (what, sector) {
        (GraphQuery::D1pm, _) | (_, Sector::Spin) if what != GraphQuery::D1 => &spin,
        _ => {
            table = load_table(vol_table)?
                .ok_or_else(|| Error::Invalid("the non-spin sector needs a volume table (--vol-table or SPINSV_VOL_TABLE)".into()))?;
            &table
        }
    };
    let sector_name = if vols.is_spin() { "spin" } else { "non-spin" };
    let mut fields = Map::new();
    fields.insert("sector".into(), json!(sector_name));
    let mut failed = false;
    match what {
        GraphQuery::D1 | GraphQuery::D1pm => {
            fields.insert(if vols.is_spin() { "d1pm" } else { "d1" }.into(), q(&d1(&mu, vols)?));
        }
        GraphQuery::Chains => {
            fields.insert("chain_sum".into(), q(&chain_sum(&mu, vols)?));
        }
        GraphQuery::CheckMainint | GraphQuery::CheckExpansion => {
            let checks =
                if what == GraphQuery::CheckMainint { mainint_checks(&mu, vols)? } else { expansion_checks(&mu, vols)? };
            failed = !all_pass(&checks);
            fields.insert("passed".into(), json!(!failed));
            fields.insert("checks".into(), checks_json(&checks));
        }
    }
    Ok(Output::Report { fields, failed })
}

fn verify(suite: &str, opts: &VerifyOptions, format: ReportFormat) -> Result<Output> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { suite.split(',').map(str::trim).collect() };
    let reports = names.iter().map(|n| run_suite(n, opts)).collect::<Result<Vec<_>>>()?;
    let failed = reports.iter().any(|r| !r.passed());
    if let ReportFormat::Csv = format {
        let mut s = String::from("suite,check,passed,known_deviation,detail\n");
        let esc = |x: &str| format!("\"{}\"", x.replace('"', "\"\""));
        for r in &reports {
            for c in &r.checks {
                s.push_str(&format!("{},{},{},{},{}\n", r.suite, esc(&c.name), c.passed, c.known_deviation, esc(&c.detail)));
            }
        }
        return Ok(Output::Raw(s));
    }
    let suites: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "suite": r.suite,
                "passed": r.passed(),
                "checks": r.checks.len(),
                "failures": checks_json(&r.failures().into_iter().cloned().collect::<Vec<_>>()),
                "known_deviations": checks_json(&r.checks.iter().filter(|c| c.known_deviation).cloned().collect::<Vec<_>>()),
                "elapsed_seconds": r.elapsed_seconds,
            })
        })
        .collect();
    let mut fields = Map::new();
    fields.insert("passed".into(), json!(!failed));
    fields.insert("total_checks".into(), json!(reports.iter().map(|r| r.checks.len()).sum::<usize>()));
    fields.insert("suites".into(), Value::Array(suites));
    Ok(Output::Report { fields, failed })
}

fn dispatch(cmd: &Command) -> Result<(Value, Output)> {
    Ok(match cmd {
        Command::Chartable { group, degree, format } => {
            (json!({"group": group, "degree": degree}), chartable(group, *degree, *format)?)
        }
        Command::Bracket { slots, pminus1, q_order } => {
            (json!({"slots": slots, "pminus1": pminus1, "q_order": q_order}), bracket(slots, *pminus1, *q_order)?)
        }
        Command::Hurwitz { degree, profile, weight, route } => (
            json!({"degree": degree, "profile": profile, "weight": weight}),
            hurwitz(*degree, profile, weight, *route)?,
        ),
        Command::Svconst { mu, route, emit, vol_table } => (
            json!({"mu": mu, "vol_table": vol_table.as_ref().map(|p| p.display().to_string())}),
            svconst(mu, *route, *emit, vol_table)?,
        ),
        Command::Volpm { mu } => {
            let sig = odd_signature(&parse_mu(mu)?)?;
            (json!({"mu": mu}), report(json!({"vol_pm": q(&vol_pm(&sig))})))
        }
        Command::Graphs { mu, what, sector, vol_table } => (
            json!({"mu": mu, "vol_table": vol_table.as_ref().map(|p| p.display().to_string())}),
            graphs(mu, *what, *sector, vol_table)?,
        ),
        Command::Census { degree, profile } => {
            let c = cylinder_census(&HurwitzProfile::parse(*degree, profile)?)?;
            let mut v = serde_json::to_value(&c).expect("census serializes");
            if let Some(o) = v.as_object_mut() {
                o.remove("profile");
            }
            (json!({"degree": degree, "profile": profile}), report(v))
        }
        Command::Verify { suite, max_weight, q_order, max_size, vol_table, format } => {
            let opts = VerifyOptions {
                q_order: *q_order,
                max_weight: *max_weight,
                max_size: *max_size,
                vol_table: load_table(vol_table)?,
            };
            (
                json!({"suite": suite, "max_weight": max_weight, "q_order": q_order, "max_size": max_size}),
                verify(suite, &opts, *format)?,
            )
        }
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Chartable { .. } => "chartable",
        Command::Bracket { .. } => "bracket",
        Command::Hurwitz { .. } => "hurwitz",
        Command::Svconst { .. } => "svconst",
        Command::Volpm { .. } => "volpm",
        Command::Graphs { .. } => "graphs",
        Command::Census { .. } => "census",
        Command::Verify { .. } => "verify",
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    match dispatch(&cli.command) {
        Ok((_, Output::Raw(text))) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Ok((inputs, Output::Report { fields, failed })) => {
            let mut out = Map::new();
            out.insert("command".into(), json!(command_name(&cli.command)));
            out.insert("inputs".into(), inputs);
            out.extend(fields);
            out.insert("elapsed_seconds".into(), json!(start.elapsed().as_secs_f64()));
            emit(&(serde_json::to_string_pretty(&Value::Object(out)).expect("report serializes") + "\n"));
            if failed {
                ExitCode::from(EXIT_VERIFY)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("spinsv {}: {e}", command_name(&cli.command));
            ExitCode::from(if matches!(e, Error::Parse(_)) { EXIT_PARSE } else { EXIT_DOMAIN })
        }
    }
}
