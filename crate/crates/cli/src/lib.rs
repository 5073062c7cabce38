//! Command-line front end: select table rows, run verifications over parameter lists,
//! search for regular subgroups and print coverage. The structured output format is
//! described in `docs/report-schema.md`.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use factoriza_core::constructions::mathieu::{m12_2_on_24, mathieu};
use factoriza_core::constructions::nilpotent::psp43_deg27;
use factoriza_core::factorization::{verify, Verdict, VerificationReport};
use factoriza_core::formula::Env;
use factoriza_core::perm::{regular_subgroup_search, ExtraspecialType, PermGroup};
use factoriza_core::tables::{
    all_rows, coverage_report, export, instantiate, lookup, negative_control, order_arithmetic, rows_of, Instantiated,
    OrderCheck, TableCoverage, TableId, TableRow, Tractability,
};
use factoriza_core::Error;

pub const SCHEMA: &str = "factoriza-report/1";
pub const SEED_ENV: &str = "FACTORIZA_SEED";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Rows of the optional sporadic representatives, skipped unless asked for.
const SPORADIC_ROWS: [(TableId, usize); 4] = [(TableId::T3, 22), (TableId::T3, 23), (TableId::T4, 45), (TableId::T4, 46)];

#[derive(Parser, Debug)]
#[command(name = "factoriza", version, about = "Verify factorizations G = HK of almost simple groups with a solvable factor")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Instantiate table rows and verify them.
    Verify(VerifyArgs),
    /// Regular subgroups of a small primitive group, up to conjugacy.
    SearchRegular(SearchArgs),
    /// Per-table coverage and order arithmetic.
    Report(OutputArgs),
    /// Export the table data, one record per row.
    Tables(TablesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Human,
    Structured,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
    /// Seed for randomized searches; FACTORIZA_SEED is used when this is absent.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Table id: T1..T7 or the full slug.
    #[arg(long)]
    pub table: Option<String>,
    /// Case or row number within the table.
    #[arg(long, alias = "row")]
    pub case: Option<usize>,
    /// Values of n: a number, a comma list or an inclusive range a..b.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    /// Run the row's negative control instead of its witness.
    #[arg(long)]
    pub negative_control: bool,
    /// Every tractable row (of --table, if given) at its default parameters.
    #[arg(long)]
    pub all_tractable: bool,
    /// Include the J2 and HS representatives in --all-tractable.
    #[arg(long)]
    pub include_sporadic: bool,
    /// Keep wall-clock times in the report (they are zeroed otherwise).
    #[arg(long)]
    pub timings: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupChoice {
    M11,
    M12,
    M22,
    M23,
    M24,
    #[value(name = "m12-2")]
    M12_2,
    #[value(name = "psp43-27")]
    Psp43_27,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[arg(long, value_enum)]
    pub group: GroupChoice,
    #[arg(long)]
    pub nilpotent_only: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct TablesArgs {
    #[arg(long)]
    pub table: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Text produced by a run and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub text: String,
    pub code: i32,
    pub diagnostics: Vec<String>,
}

impl RunOutput {
    fn usage(msg: impl Into<String>) -> Self {
        RunOutput { text: String::new(), code: EXIT_USAGE, diagnostics: vec![msg.into()] }
    }
}

pub fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{SEED_ENV}={v} is not an unsigned integer")),
        Err(_) => Ok(0),
    }
}

/// Parses `5`, `5,7,9` or the inclusive range `5..9`.
pub fn parse_list(s: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|_| format!("bad range start in {part}"))?;
            let b: u64 = b.trim_start_matches('=').trim().parse().map_err(|_| format!("bad range end in {part}"))?;
            if a > b {
                return Err(format!("empty range {part}"));
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| format!("{part} is not an unsigned integer"))?);
        }
    }
    if out.is_empty() {
        return Err(format!("empty parameter list {s:?}"));
    }
    Ok(out)
}

fn list(x: &Option<String>) -> Result<Vec<Option<u64>>, String> {
    match x {
        None => Ok(vec![None]),
        Some(s) => Ok(parse_list(s)?.into_iter().map(Some).collect()),
    }
}

#[derive(Clone)]
struct Job {
    row: &'static TableRow,
    env: Env,
    negative: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Intractable,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub label: String,
    pub row: String,
    pub params: Env,
    pub status: Status,
    /// Construction time of the row's instances; zero unless timings were requested.
    pub build_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_check: Option<OrderCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
    #[serde(skip)]
    cap: bool,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub records: usize,
    pub pass: usize,
    pub fail: usize,
    pub partial: usize,
    pub intractable: usize,
    pub errors: usize,
}

#[derive(Serialize)]
struct VerifyConfig<'a> {
    table: Option<&'a str>,
    case: Option<usize>,
    n: Option<&'a str>,
    m: Option<&'a str>,
    q: Option<&'a str>,
    negative_control: bool,
    all_tractable: bool,
    include_sporadic: bool,
    timings: bool,
    seed: u64,
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    schema: &'static str,
    command: &'static str,
    config: VerifyConfig<'a>,
    notices: &'a [String],
    records: &'a [Record],
    summary: &'a Summary,
}

fn params_of(row: &TableRow, env: &Env) -> Env {
    // only the parameters the row reads, so labels and reports stay stable
    let defaults = row.defaults;
    Env {
        n: env.n.filter(|_| defaults.n.is_some()),
        m: env.m.filter(|_| defaults.m.is_some()),
        q: env.q.filter(|_| defaults.q.is_some()),
        d: None,
        e: None,
    }
}

fn run_job(job: &Job, timings: bool) -> Vec<Record> {
    let row = job.row;
    let params = match row.env(&job.env) {
        Ok(e) => params_of(row, &e),
        Err(_) => job.env,
    };
    let order_check = order_arithmetic(row, &job.env).ok().flatten();
    let start = std::time::Instant::now();
    let built = if job.negative {
        negative_control(row, &job.env).map(Instantiated::Instances)
    } else {
        instantiate(row, &job.env)
    };
    let build_ms = if timings { start.elapsed().as_millis() as u64 } else { 0 };
    let base = |label: String, status: Status| Record {
        label,
        row: row.label(),
        params,
        status,
        build_ms,
        verdict: None,
        reason: None,
        order_check: order_check.clone(),
        report: None,
        cap: false,
    };
    match built {
        Ok(Instantiated::Instances(v)) => v
            .iter()
            .map(|inst| {
                let mut rep = verify(inst);
                if !timings {
                    rep.elapsed_ms = 0;
                }
                let mut r = base(rep.label.clone(), Status::Verified);
                r.verdict = Some(rep.verdict);
                r.report = Some(rep);
                r
            })
            .collect(),
        Ok(Instantiated::Intractable(why)) => {
            let mut r = base(row.label(), Status::Intractable);
            r.reason = Some(why);
            r.cap = true;
            vec![r]
        }
        Err(e) => {
            let mut r = base(row.label(), Status::Error);
            r.cap = matches!(e, Error::Cap(_));
            r.reason = Some(e.to_string());
            vec![r]
        }
    }
}

/// Runs jobs on `workers` threads; the result order depends only on the labels.
fn run_pool(jobs: &[Job], workers: usize, timings: bool) -> Vec<Record> {
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Record>> = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..workers.max(1).min(jobs.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(job) = jobs.get(i) else { break };
                let recs = run_job(job, timings);
                out.lock().unwrap().extend(recs);
            });
        }
    });
    let mut v = out.into_inner().unwrap();
    v.sort_by(|a, b| a.label.cmp(&b.label).then_with(|| a.row.cmp(&b.row)));
    v
}

fn resolve_jobs(a: &VerifyArgs, notices: &mut Vec<String>) -> Result<Vec<Job>, String> {
    let table = a.table.as_deref().map(|t| TableId::parse(t).ok_or_else(|| format!("unknown table {t}"))).transpose()?;
    let (ns, ms, qs) = (list(&a.n)?, list(&a.m)?, list(&a.q)?);
    if a.all_tractable {
        if a.case.is_some() || a.n.is_some() || a.m.is_some() || a.q.is_some() {
            return Err("--all-tractable runs every row at its defaults; drop --case and parameter lists".into());
        }
        let rows: Vec<&'static TableRow> = match table {
            Some(t) => rows_of(t).collect(),
            None => all_rows().iter().collect(),
        };
        let jobs = rows
            .into_iter()
            .filter(|r| {
                let sporadic = SPORADIC_ROWS.contains(&(r.table, r.row));
                if sporadic {
                    a.include_sporadic
                } else {
                    r.tractable == Tractability::Tractable
                }
            })
            .map(|row| Job { row, env: Env::default(), negative: a.negative_control })
            .collect();
        return Ok(jobs);
    }
    let t = table.ok_or("--table is required (or use --all-tractable)")?;
    let case = a.case.ok_or("--case is required")?;
    let row = match (t, case) {
        (TableId::T5, c) if c > 4 => {
            notices.push(format!("T5 has rows 1..=4; case {c} is read as T4 case {c}"));
            lookup(TableId::T4, c)
        }
        _ => lookup(t, case),
    }
    .map_err(|e| e.to_string())?;
    let mut jobs = Vec::new();
    for &n in &ns {
        for &m in &ms {
            for &q in &qs {
                let env = Env { n, m, q, d: None, e: None };
                let full = row.env(&env).map_err(|e| e.to_string())?;
                if row.tractable == Tractability::Tractable {
                    (row.check)(&full).map_err(|e| format!("{}: {e}", row.label()))?;
                }
                jobs.push(Job { row, env, negative: a.negative_control });
            }
        }
    }
    Ok(jobs)
}

fn summarize(records: &[Record]) -> Summary {
    let mut s = Summary { records: records.len(), ..Summary::default() };
    for r in records {
        match (&r.status, r.verdict) {
            (Status::Verified, Some(Verdict::Pass)) => s.pass += 1,
            (Status::Verified, Some(Verdict::Partial)) => s.partial += 1,
            (Status::Verified, _) => s.fail += 1,
            (Status::Intractable, _) => s.intractable += 1,
            (Status::Error, _) => s.errors += 1,
        }
    }
    s
}

fn verdict_word(r: &Record) -> &'static str {
    match (&r.status, r.verdict) {
        (Status::Verified, Some(Verdict::Pass)) => "PASS",
        (Status::Verified, Some(Verdict::Partial)) => "PARTIAL",
        (Status::Verified, _) => "FAIL",
        (Status::Intractable, _) => "SKIP",
        (Status::Error, _) => "ERROR",
    }
}

fn human_verify(records: &[Record], notices: &[String], summary: &Summary) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{SCHEMA} verify");
    for n in notices {
        let _ = writeln!(s, "notice: {n}");
    }
    for r in records {
        match &r.report {
            Some(rep) => {
                let _ = writeln!(
                    s,
                    "{:<8}{}  G = {}, H = {}, K = {}  |H| = {} (ell {}), |domain| = {}, stabilizer {}, {}, {}",
                    verdict_word(r),
                    r.label,
                    rep.ambient,
                    rep.h,
                    rep.k,
                    rep.h_order,
                    rep.ell,
                    rep.domain_size,
                    rep.stabilizer_order,
                    if rep.transitive { "transitive" } else { "intransitive" },
                    if rep.exact { "exact" } else { "not exact" },
                );
                if let Some(d) = &rep.divisibility {
                    let scope = if rep.exact { "" } else { " (required only for exact factorizations)" };
                    let _ = writeln!(s, "        divisibility in {}: {} | {} is {}{scope}", d.socle, d.h_cap_g0, d.index, d.divides);
                }
                if let Some(n) = &rep.orbit_count {
                    let _ = writeln!(s, "        orbit count {n}");
                }
                for m in &rep.mismatches {
                    let _ = writeln!(s, "        mismatch: {m}");
                }
                if rep.elapsed_ms + r.build_ms > 0 {
                    let _ = writeln!(s, "        built in {} ms, verified in {} ms", r.build_ms, rep.elapsed_ms);
                }
            }
            None => {
                let _ = writeln!(s, "{:<8}{}  {}", verdict_word(r), r.label, r.reason.as_deref().unwrap_or(""));
            }
        }
    }
    let _ = writeln!(
        s,
        "summary: {} records, {} pass, {} fail, {} partial, {} intractable, {} errors",
        summary.records, summary.pass, summary.fail, summary.partial, summary.intractable, summary.errors
    );
    s
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

pub fn cmd_verify(a: &VerifyArgs) -> RunOutput {
    let seed = match resolve_seed(a.out.seed) {
        Ok(s) => s,
        Err(e) => return RunOutput::usage(e),
    };
    let mut notices = Vec::new();
    let jobs = match resolve_jobs(a, &mut notices) {
        Ok(j) if j.is_empty() => return RunOutput::usage("the selection matches no rows"),
        Ok(j) => j,
        Err(e) => return RunOutput::usage(e),
    };
    let workers = a.jobs.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let records = run_pool(&jobs, workers, a.timings);
    let summary = summarize(&records);
    let code = if summary.fail + summary.partial > 0 || records.iter().any(|r| r.status == Status::Error && !r.cap) {
        EXIT_MISMATCH
    } else if !a.all_tractable && records.iter().any(|r| r.cap) {
        EXIT_CAP
    } else {
        EXIT_PASS
    };
    let text = match a.out.format {
        Format::Human => human_verify(&records, &notices, &summary),
        Format::Structured => to_json(&VerifyDoc {
            schema: SCHEMA,
            command: "verify",
            config: VerifyConfig {
                table: a.table.as_deref(),
                case: a.case,
                n: a.n.as_deref(),
                m: a.m.as_deref(),
                q: a.q.as_deref(),
                negative_control: a.negative_control,
                all_tractable: a.all_tractable,
                include_sporadic: a.include_sporadic,
                timings: a.timings,
                seed,
            },
            notices: &notices,
            records: &records,
            summary: &summary,
        }),
    };
    RunOutput { text, code, diagnostics: notices }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassRecord {
    pub name: String,
    pub order: u128,
    pub nilpotent: bool,
    pub extraspecial: &'static str,
}

#[derive(Serialize)]
struct SearchDoc<'a> {
    schema: &'static str,
    command: &'static str,
    group: GroupChoice,
    degree: usize,
    order: u128,
    nilpotent_only: bool,
    seed: u64,
    classes: &'a [ClassRecord],
}

pub fn search_group(g: GroupChoice) -> factoriza_core::Result<PermGroup> {
    match g {
        GroupChoice::M11 => mathieu("M11"),
        GroupChoice::M12 => mathieu("M12"),
        GroupChoice::M22 => mathieu("M22"),
        GroupChoice::M23 => mathieu("M23"),
        GroupChoice::M24 => mathieu("M24"),
        GroupChoice::M12_2 => m12_2_on_24(),
        GroupChoice::Psp43_27 => psp43_deg27(),
    }
}

fn extraspecial_word(t: ExtraspecialType) -> &'static str {
    match t {
        ExtraspecialType::Plus => "plus",
        ExtraspecialType::Minus => "minus",
        ExtraspecialType::NotExtraspecial => "none",
    }
}

pub fn cmd_search(a: &SearchArgs) -> RunOutput {
    let seed = match resolve_seed(a.out.seed) {
        Ok(s) => s,
        Err(e) => return RunOutput::usage(e),
    };
    let fail = |e: Error| RunOutput {
        text: String::new(),
        code: if matches!(e, Error::Cap(_)) { EXIT_CAP } else { EXIT_MISMATCH },
        diagnostics: vec![e.to_string()],
    };
    let g = match search_group(a.group) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let classes = match regular_subgroup_search(&g, a.nilpotent_only, seed) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let recs: Vec<ClassRecord> = classes
        .iter()
        .map(|c| ClassRecord {
            name: c.name.clone(),
            order: c.group.order(),
            nilpotent: c.nilpotent,
            extraspecial: extraspecial_word(c.extraspecial),
        })
        .collect();
    let text = match a.out.format {
        Format::Structured => to_json(&SearchDoc {
            schema: SCHEMA,
            command: "search-regular",
            group: a.group,
            degree: g.degree(),
            order: g.order(),
            nilpotent_only: a.nilpotent_only,
            seed,
            classes: &recs,
        }),
        Format::Human => {
            let mut s = format!(
                "{SCHEMA} search-regular\ngroup {}: degree {}, order {}, {} regular classes{}\n",
                a.group.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
                g.degree(),
                g.order(),
                recs.len(),
                if a.nilpotent_only { " (nilpotent only)" } else { "" }
            );
            for c in &recs {
                let _ = writeln!(s, "  {:<12} order {:<6} nilpotent {:<5} extraspecial {}", c.name, c.order, c.nilpotent, c.extraspecial);
            }
            s
        }
    };
    RunOutput { text, code: EXIT_PASS, diagnostics: Vec::new() }
}

#[derive(Serialize)]
struct OrderRecord {
    row: String,
    check: OrderCheck,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    schema: &'static str,
    command: &'static str,
    coverage: &'a [TableCoverage],
    order_arithmetic: &'a [OrderRecord],
}

pub fn cmd_report(a: &OutputArgs) -> RunOutput {
    let coverage = coverage_report();
    let mut orders = Vec::new();
    for r in all_rows() {
        match order_arithmetic(r, &Env::default()) {
            Ok(Some(check)) => orders.push(OrderRecord { row: r.label(), check }),
            Ok(None) => {}
            Err(e) => return RunOutput { text: String::new(), code: EXIT_MISMATCH, diagnostics: vec![format!("{}: {e}", r.label())] },
        }
    }
    let code = if orders.iter().all(|o| o.check.consistent) { EXIT_PASS } else { EXIT_MISMATCH };
    let text = match a.format {
        Format::Structured => to_json(&ReportDoc { schema: SCHEMA, command: "report", coverage: &coverage, order_arithmetic: &orders }),
        Format::Human => {
            let mut s = format!("{SCHEMA} report\n");
            for c in &coverage {
                let _ = writeln!(
                    s,
                    "{:<24} {:>3} rows: {:>3} instantiable, {:>3} order arithmetic only, {:>3} intractable",
                    c.table, c.rows, c.instantiable, c.order_arithmetic_only, c.intractable
                );
                for (row, why) in &c.reasons {
                    let _ = writeln!(s, "    {row}: {why}");
                }
            }
            let bad: Vec<&OrderRecord> = orders.iter().filter(|o| !o.check.consistent).collect();
            let _ = writeln!(s, "order arithmetic: {} rows checked, {} inconsistent", orders.len(), bad.len());
            for o in bad {
                let _ = writeln!(s, "    {}: {}", o.row, o.check.detail);
            }
            s
        }
    };
    RunOutput { text, code, diagnostics: Vec::new() }
}

pub fn cmd_tables(a: &TablesArgs) -> RunOutput {
    let table = match a.table.as_deref().map(|t| TableId::parse(t).ok_or_else(|| format!("unknown table {t}"))).transpose() {
        Ok(t) => t,
        Err(e) => return RunOutput::usage(e),
    };
    let recs: Vec<_> = export().into_iter().filter(|r| table.is_none_or(|t| r.table == t.slug())).collect();
    let text = match a.out.format {
        Format::Structured => to_json(&serde_json::json!({ "schema": SCHEMA, "command": "tables", "rows": recs })),
        Format::Human => {
            let mut s = format!("{SCHEMA} tables\n");
            for r in &recs {
                let ell = r.ell.as_deref().map(|e| format!("  ell = {e}")).unwrap_or_default();
                let flag = r.reason.as_deref().map(|w| format!("  [intractable: {w}]")).unwrap_or_default();
                let _ = writeln!(s, "{} row {}: G = {}, H = {}, K = {}{ell}{flag}", &r.table[..2], r.name, r.g, r.h, r.k);
            }
            s
        }
    };
    RunOutput { text, code: EXIT_PASS, diagnostics: Vec::new() }
}

pub fn run(cli: &Cli) -> RunOutput {
    match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::SearchRegular(a) => cmd_search(a),
        Command::Report(a) => cmd_report(a),
        Command::Tables(a) => cmd_tables(a),
    }
}

fn output_target(cli: &Cli) -> Option<&std::path::Path> {
    match &cli.command {
        Command::Verify(a) => a.out.output.as_deref(),
        Command::SearchRegular(a) => a.out.output.as_deref(),
        Command::Report(a) => a.output.as_deref(),
        Command::Tables(a) => a.out.output.as_deref(),
    }
}

/// Parses `args` (without the program name), runs, and writes the report to the
/// requested file if any. Parse errors come back as exit code 2.
pub fn run_args<I, S>(args: I) -> RunOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("factoriza")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return RunOutput { text: e.to_string(), code, diagnostics: Vec::new() };
        }
    };
    let mut out = run(&cli);
    if let Some(path) = output_target(&cli) {
        if let Err(e) = std::fs::write(path, &out.text) {
            out.diagnostics.push(format!("cannot write {}: {e}", path.display()));
            out.code = EXIT_USAGE;
        }
        out.text.clear();
    }
    out
}
