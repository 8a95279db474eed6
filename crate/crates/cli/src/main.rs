mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dumont_core::exactpoly::ExactPolynomial;
use dumont_core::grammar::{Grammar, OpKind, OperatorSpec};
use dumont_core::identities::{self, CaseInfo};
use dumont_core::numcheck::NumOptions;
use dumont_core::permstats::{self, DistributionTable, Statistic};
use dumont_core::report::VerificationReport;
use dumont_core::series::{jacobi_classical, jacobi_two_param};
use dumont_core::triangles::{extract, recur, ArrayName, Triangle};
use serde_json::json;

use config::{Format, RunConfig};

#[derive(Parser)]
#[command(name = "dumont", version, about = "Grammar derivations, coefficient triangles and identity checks for the Dumont system")]
struct Cli {
    /// key = value file overriding the built-in defaults
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// worker threads (also DUMONT_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate D, xD or Dx on a seed
    Expand(ExpandArgs),
    /// Build one of the arrays s, a, b, c, d, t, r
    Triangle(TriangleArgs),
    /// Distribution of a permutation or matching statistic
    Stats(StatsArgs),
    /// Taylor numerators of sn, cn or dn
    Series(SeriesArgs),
    /// Run identity and closed-form checks
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ExpandArgs {
    /// schett, eulerian, extended, or rules like `x->y*z; y->x*z; z->x*y`
    #[arg(long, default_value = "schett")]
    grammar: String,
    #[arg(long, default_value = "D")]
    op: String,
    #[arg(long, default_value = "x")]
    start: String,
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// print every level from 0 to n
    #[arg(long)]
    all: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Grammar,
    Recurrence,
    Both,
}

#[derive(Args)]
struct TriangleArgs {
    #[arg(long)]
    name: String,
    #[arg(long, value_enum, default_value = "grammar")]
    method: Method,
    #[arg(long)]
    nmax: Option<usize>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    statistic: String,
    #[arg(long)]
    n: Option<usize>,
    /// allow the largest enumeration sizes
    #[arg(long)]
    large: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    Sn,
    Cn,
    Dn,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ring {
    Classical,
    TwoParam,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, value_enum)]
    function: Function,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum, default_value = "classical")]
    ring: Ring,
}

#[derive(Args)]
struct VerifyArgs {
    /// case id, or `all`
    #[arg(long, default_value = "all")]
    id: String,
    /// list case ids and exit
    #[arg(long)]
    list: bool,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// per-case limit in seconds
    #[arg(long)]
    timeout: Option<f64>,
}

enum Failure {
    Usage(String),
    Verification,
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path).map_err(usage)?;
    }
    if let Ok(v) = std::env::var("DUMONT_THREADS") {
        cfg.set("threads", &v).map_err(|e| usage(format!("DUMONT_THREADS: {e}")))?;
    }
    if let Some(t) = cli.threads {
        cfg.threads = Some(t);
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Outcome {
    let mut cfg = load_config(&cli)?;
    if let Some(t) = cfg.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(usage)?;
    }
    let out = match cli.cmd {
        Command::Expand(a) => expand(&a, &cfg)?,
        Command::Triangle(a) => triangle(&a, &cfg)?,
        Command::Stats(a) => stats(&a, &cfg)?,
        Command::Series(a) => series(&a, &cfg)?,
        Command::Verify(a) => {
            if let Some(v) = a.nmax {
                cfg.identity_nmax = Some(v);
            }
            cfg.order = a.order.unwrap_or(cfg.order);
            cfg.samples = a.samples.unwrap_or(cfg.samples);
            cfg.tol = a.tol.unwrap_or(cfg.tol);
            cfg.seed = a.seed.unwrap_or(cfg.seed);
            if let Some(t) = a.timeout {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(usage(format!("timeout must be positive, got {t}")));
                }
                cfg.timeout = Duration::from_secs_f64(t);
            }
            cfg.validate().map_err(usage)?;
            return verify(&a, &cfg);
        }
    };
    emit(&out);
    Ok(())
}

fn emit(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = stdout.write_all(b"\n");
    }
}

fn pretty_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn grammar_from(text: &str) -> Result<Grammar, Failure> {
    match text {
        "schett" => Ok(Grammar::schett()),
        "eulerian" => Ok(Grammar::eulerian()),
        "extended" => Ok(Grammar::extended()),
        rules if rules.contains("->") => Grammar::parse(rules).map_err(usage),
        other => Err(usage(format!("unknown grammar `{other}`"))),
    }
}

fn expand(a: &ExpandArgs, cfg: &RunConfig) -> Result<String, Failure> {
    let kind: OpKind = a.op.parse().map_err(usage)?;
    let op = OperatorSpec::from_text(kind, grammar_from(&a.grammar)?, &a.start).map_err(usage)?;
    let levels = op.sequence(a.n).map_err(usage)?;
    let first = if a.all { 0 } else { a.n };
    let shown: Vec<(usize, &ExactPolynomial)> = levels.iter().enumerate().skip(first).collect();
    let label = |n: usize| match kind {
        OpKind::D => format!("D^{n}({})", a.start),
        _ => format!("({kind})^{n}({})", a.start),
    };
    Ok(match cfg.format {
        Format::Pretty => shown.iter().map(|(n, p)| format!("{} = {p}\n", label(*n))).collect(),
        Format::Csv => {
            let mut s = String::from("n,polynomial\n");
            for (n, p) in &shown {
                s.push_str(&format!("{n},{p}\n"));
            }
            s
        }
        Format::Json => pretty_json(&json!({
            "grammar": op.grammar.to_string(),
            "op": kind.to_string(),
            "start": a.start,
            "levels": shown.iter().map(|(n, p)| json!({
                "n": n,
                "polynomial": p.to_string(),
                "terms": p.to_json_terms(),
            })).collect::<Vec<_>>(),
        })),
    })
}

fn render_triangle(t: &Triangle, format: Format) -> String {
    match format {
        Format::Json => pretty_json(&t.to_json()),
        Format::Csv => t.to_csv(),
        Format::Pretty => t.to_pretty(),
    }
}

fn triangle(a: &TriangleArgs, cfg: &RunConfig) -> Result<String, Failure> {
    let name: ArrayName = a.name.parse().map_err(usage)?;
    let n = a.nmax.unwrap_or(cfg.triangle_nmax);
    let t = match a.method {
        Method::Grammar => extract(name, n).map_err(usage)?,
        Method::Recurrence => recur(name, n).map_err(usage)?,
        Method::Both => {
            let (g, r) = rayon::join(|| extract(name, n), || recur(name, n));
            let (g, r) = (g.map_err(usage)?, r.map_err(usage)?);
            if let Some((n, i, j, x, y)) = g.first_difference(&r) {
                eprintln!("{name}_{{{n},{i},{j}}}: grammar gives {x}, recurrence gives {y}");
                emit(&render_triangle(&g, cfg.format));
                return Err(Failure::Verification);
            }
            g
        }
    };
    Ok(render_triangle(&t, cfg.format))
}

fn stats(a: &StatsArgs, cfg: &RunConfig) -> Result<String, Failure> {
    let which: Statistic = a.statistic.parse().map_err(|e| {
        let names: Vec<&str> = Statistic::ALL.iter().map(|(k, _)| *k).collect();
        usage(format!("{e}; known: {}", names.join(", ")))
    })?;
    let n = a.n.unwrap_or(cfg.stats_n);
    let domain_cap = match which {
        Statistic::DescentsB => identities::data::BN_CAP,
        Statistic::Matchings => identities::data::MATCHING_CAP,
        _ => identities::data::SN_CAP,
    };
    if n > domain_cap && !a.large {
        return Err(usage(format!("n={n} exceeds the default bound {domain_cap}; pass --large to go further")));
    }
    if which == Statistic::Euler {
        let e = permstats::euler_numbers(n).map_err(usage)?;
        let table = DistributionTable {
            statistic: "euler".into(),
            n,
            counts: e.into_iter().enumerate().map(|(k, v)| (k + 1, v)).collect(),
        };
        return Ok(render_table(&table, cfg.format));
    }
    if which == Statistic::CyclePeaks {
        return Ok(render_table(&permstats::cycle_peaks_xy(n).map_err(usage)?, cfg.format));
    }
    let table = match which {
        Statistic::InteriorPeaks => permstats::interior_peaks(n),
        Statistic::LeftPeaks => permstats::left_peaks(n),
        Statistic::Descents => permstats::descents(n),
        Statistic::DescentsB => permstats::descents_type_b(n),
        Statistic::AlternatingRuns => permstats::alternating_runs(n),
        Statistic::UpDownRuns => permstats::up_down_runs(n),
        Statistic::LongestAlt => permstats::longest_alt_subseq(n),
        Statistic::Matchings => permstats::matchings_odd_smaller(n),
        Statistic::Euler | Statistic::CyclePeaks => unreachable!("handled above"),
    }
    .map_err(usage)?;
    Ok(render_table(&table, cfg.format))
}

fn render_table<K: Ord + Clone + std::fmt::Display>(t: &DistributionTable<K>, format: Format) -> String {
    match format {
        Format::Json => pretty_json(&t.to_json()),
        Format::Csv => t.to_csv(),
        Format::Pretty => {
            let mut s = format!("{} n={} total={}\n", t.statistic, t.n, t.total());
            for (k, v) in &t.counts {
                s.push_str(&format!("  {k}: {v}\n"));
            }
            s
        }
    }
}

fn series(a: &SeriesArgs, cfg: &RunConfig) -> Result<String, Failure> {
    let order = a.order.unwrap_or(cfg.series_order);
    let js = match a.ring {
        Ring::Classical => jacobi_classical(order),
        Ring::TwoParam => jacobi_two_param(order),
    };
    let (label, s) = match a.function {
        Function::Sn => ("sn", &js.sn),
        Function::Cn => ("cn", &js.cn),
        Function::Dn => ("dn", &js.dn),
    };
    Ok(match cfg.format {
        Format::Json => {
            let mut v = s.to_json();
            v["function"] = json!(label);
            pretty_json(&v)
        }
        Format::Csv => {
            let mut out = String::from("m,numerator\n");
            for (m, c) in s.numerators().iter().enumerate() {
                out.push_str(&format!("{m},{c}\n"));
            }
            out
        }
        Format::Pretty => {
            let mut out = format!("{label}(u) = sum of c_m u^m/m!, m <= {order}\n");
            for (m, c) in s.numerators().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out.push_str(&format!("  c_{m} = {c}\n"));
            }
            out
        }
    })
}

/// Every case runs on its own thread, started together, so a stuck case is
/// reported instead of blocking the rest. Cases use the rayon pool
/// internally; waiting is done here, outside it.
fn run_with_timeout(cases: &[CaseInfo], n_max: Option<usize>, num: NumOptions, limit: Duration) -> Vec<VerificationReport> {
    let start = Instant::now();
    let pending: Vec<_> = cases
        .iter()
        .map(|&case| {
            let (tx, rx) = mpsc::channel();
            std::thread::spawn(move || {
                let _ = tx.send(identities::run_info(&case, n_max, &num));
            });
            (case.id, rx)
        })
        .collect();
    pending
        .into_iter()
        .map(|(id, rx)| match rx.recv_timeout(limit.saturating_sub(start.elapsed())) {
            Ok(r) => r,
            Err(mpsc::RecvTimeoutError::Timeout) => {
                let mut r = VerificationReport::error(id, "-", format!("timed out after {:.0} s", limit.as_secs_f64()));
                r.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
                r
            }
            Err(mpsc::RecvTimeoutError::Disconnected) => VerificationReport::error(id, "-", "case panicked".into()),
        })
        .collect()
}

fn verify(a: &VerifyArgs, cfg: &RunConfig) -> Outcome {
    let all = identities::registry();
    if a.list {
        let text = match cfg.format {
            Format::Json => pretty_json(&json!(all.iter().map(|c| json!({"id": c.id, "summary": c.summary})).collect::<Vec<_>>())),
            Format::Csv => std::iter::once("id,summary\n".to_string())
                .chain(all.iter().map(|c| format!("{},\"{}\"\n", c.id, c.summary)))
                .collect(),
            Format::Pretty => all.iter().map(|c| format!("{:<34} {}\n", c.id, c.summary)).collect(),
        };
        emit(&text);
        return Ok(());
    }
    let chosen: Vec<CaseInfo> = if a.id == "all" {
        all
    } else {
        let c = all
            .into_iter()
            .find(|c| c.id == a.id)
            .ok_or_else(|| usage(format!("unknown id `{}`; see `verify --list`", a.id)))?;
        vec![c]
    };
    let num = cfg.num_options();
    let reports = run_with_timeout(&chosen, cfg.identity_nmax, num, cfg.timeout);
    let text = match cfg.format {
        Format::Json if reports.len() == 1 => pretty_json(&json!(reports[0])),
        Format::Json => pretty_json(&json!(reports)),
        Format::Csv => {
            let mut s = String::from("id,range,status,elapsed_ms,samples,worst_rel_err\n");
            for r in &reports {
                s.push_str(&format!(
                    "{},\"{}\",{},{:.3},{},{}\n",
                    r.id,
                    r.range,
                    r.status,
                    r.elapsed_ms,
                    r.samples.map(|v| v.to_string()).unwrap_or_default(),
                    r.worst_rel_err.map(|v| format!("{v:e}")).unwrap_or_default()
                ));
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.one_line());
                s.push('\n');
                for note in &r.notes {
                    s.push_str(&format!("    {note}\n"));
                }
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            s.push_str(&format!("{} cases, {} failed\n", reports.len(), failed));
            s
        }
    };
    emit(&text);
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
