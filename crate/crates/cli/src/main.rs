//! `nashcurve`: Nash blowups of monomial curves from the command line.

mod cache;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nashcurve::error::Error;
use nashcurve::graph_ideal::HRecord;
use nashcurve::nash::{blowup, conjecture_report, BlowupKind, BlowupTable};
use nashcurve::product::{
    binomial, conductor_region, not_contained, product_cluster_identities, product_regular, t_staircase,
    tangent_directions_independent, FlagCluster,
};
use nashcurve::sweep::{criterion_sweep, SweepBounds};
use nashcurve::verify::{self, Suite};
use nashcurve::{construct_h, enumerate_semigroups, is_normal_flag, is_normal_simple, DifferenceMode, NumericalSemigroup};
use serde::Serialize;

use cache::Cache;
use render::{Output, ProductReport, SemigroupInfo, Verdict};

#[derive(Parser, Debug)]
#[command(name = "nashcurve", version, about = "Higher Nash blowups of monomial curves and their products")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cache directory (default: the platform cache dir).
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, hide = true, value_enum)]
    inject_fault: Option<Fault>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fault {
    Domain,
    Internal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Simple,
    Flag,
    Classical,
    Point,
}

impl Mode {
    fn kind(self) -> BlowupKind {
        match self {
            Mode::Simple => BlowupKind::Simple,
            Mode::Flag => BlowupKind::Flag,
            Mode::Classical => BlowupKind::IteratedClassical,
            Mode::Point => BlowupKind::IteratedPoint,
        }
    }

    fn difference(self) -> Result<DifferenceMode, Error> {
        match self {
            Mode::Simple => Ok(DifferenceMode::Simple),
            Mode::Flag => Ok(DifferenceMode::Flag),
            other => Err(Error::InvalidArgument(format!(
                "mode {} has no criterion; use simple or flag",
                format!("{other:?}").to_lowercase()
            ))),
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
struct Level {
    /// Blowup order.
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conductor, genus, gaps and small elements.
    Semigroup { gens: String },
    /// The graph-ideal generator `h_m`.
    Hgen {
        gens: String,
        #[arg(long)]
        m: usize,
    },
    /// Value semigroup of a blowup.
    Nash {
        gens: String,
        #[command(flatten)]
        level: Level,
        #[arg(long, value_enum, default_value = "simple")]
        mode: Mode,
    },
    /// All four blowups for orders 1..=n.
    Table {
        gens: String,
        #[command(flatten)]
        level: Level,
    },
    /// Normality criterion.
    Check {
        gens: String,
        #[command(flatten)]
        level: Level,
        #[arg(long, value_enum, default_value = "simple")]
        mode: Mode,
    },
    /// Regularity of the blowup of a product of curves.
    Product {
        /// One generator list per factor, e.g. `1 3,4`.
        #[arg(required = true)]
        gens: Vec<String>,
        #[command(flatten)]
        level: Level,
        #[arg(long, value_enum, default_value = "simple")]
        mode: Mode,
    },
    /// Computed blowups against the difference semigroups.
    Conjecture {
        gens: Option<String>,
        #[arg(long, conflicts_with = "bounds", required_unless_present = "bounds")]
        n: Option<usize>,
        /// `M,C,N`: every semigroup with multiplicity <= M, conductor <= C.
        #[arg(long)]
        bounds: Option<String>,
    },
    /// Run a named reproduction suite.
    Verify {
        /// h-golden, table, two-five, example, criterion, clusters, conductor or conjecture.
        suite: String,
    },
    /// Criterion sweep written as JSON lines.
    Sweep {
        #[arg(long)]
        bounds: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_semigroup(text: &str) -> Result<NumericalSemigroup, Error> {
    text.parse()
}

/// Canonical form of the request, used as the cache key.
#[derive(Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
enum Key {
    Semigroup { s: String },
    Hgen { s: String, m: usize },
    Nash { s: String, n: usize, mode: Mode },
    Table { s: String, n: usize },
    Check { s: String, n: usize, mode: Mode },
    Product { factors: Vec<String>, n: usize, mode: Mode },
    Conjecture { s: Option<String>, n: Option<usize>, bounds: Option<String> },
    Verify { suite: String },
}

struct Request {
    key: Key,
    run: Box<dyn FnOnce() -> Result<Output, Error>>,
}

fn request(command: Command) -> Result<Request, Error> {
    Ok(match command {
        Command::Semigroup { gens } => {
            let s = parse_semigroup(&gens)?;
            Request { key: Key::Semigroup { s: s.to_string() }, run: Box::new(move || Ok(Output::Semigroup(SemigroupInfo::new(&s)))) }
        }
        Command::Hgen { gens, m } => {
            let s = parse_semigroup(&gens)?;
            Request {
                key: Key::Hgen { s: s.to_string(), m },
                run: Box::new(move || Ok(Output::H(HRecord::new(&s, &construct_h(&s, m)?)))),
            }
        }
        Command::Nash { gens, level, mode } => {
            let s = parse_semigroup(&gens)?;
            let n = level.n;
            Request { key: Key::Nash { s: s.to_string(), n, mode }, run: Box::new(move || Ok(Output::Nash(blowup(&s, n, mode.kind())?))) }
        }
        Command::Table { gens, level } => {
            let s = parse_semigroup(&gens)?;
            let n = level.n;
            if n == 0 {
                return Err(Error::InvalidArgument("table needs n >= 1".into()));
            }
            Request { key: Key::Table { s: s.to_string(), n }, run: Box::new(move || Ok(Output::Table(BlowupTable::compute(&s, n)?))) }
        }
        Command::Check { gens, level, mode } => {
            let s = parse_semigroup(&gens)?;
            let n = level.n;
            let diff = mode.difference()?;
            Request { key: Key::Check { s: s.to_string(), n, mode }, run: Box::new(move || check(s, n, diff)) }
        }
        Command::Product { gens, level, mode } => {
            let ss = gens.iter().map(|g| parse_semigroup(g)).collect::<Result<Vec<_>, _>>()?;
            let n = level.n;
            let diff = mode.difference()?;
            Request {
                key: Key::Product { factors: ss.iter().map(|s| s.to_string()).collect(), n, mode },
                run: Box::new(move || product(ss, n, diff)),
            }
        }
        Command::Conjecture { gens, n, bounds } => match (gens, n, bounds) {
            (Some(g), Some(n), None) => {
                let s = parse_semigroup(&g)?;
                Request {
                    key: Key::Conjecture { s: Some(s.to_string()), n: Some(n), bounds: None },
                    run: Box::new(move || Ok(Output::Conjecture(conjecture_report(&s, n)?))),
                }
            }
            (None, None, Some(b)) => {
                let bounds: SweepBounds = b.parse()?;
                Request {
                    key: Key::Conjecture { s: None, n: None, bounds: Some(bounds.to_string()) },
                    run: Box::new(move || {
                        let mut rows = Vec::new();
                        for s in enumerate_semigroups(bounds.max_multiplicity, bounds.max_conductor) {
                            rows.extend(conjecture_report(&s, bounds.max_n)?);
                        }
                        Ok(Output::Conjecture(rows))
                    }),
                }
            }
            _ => return Err(Error::InvalidArgument("conjecture takes either GENS --n N or --bounds M,C,N".into())),
        },
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            Request { key: Key::Verify { suite: suite.to_string() }, run: Box::new(move || Ok(Output::Verify(verify::run(suite)?))) }
        }
        Command::Sweep { .. } => unreachable!("sweep is not cacheable"),
    })
}

fn check(s: NumericalSemigroup, n: usize, mode: DifferenceMode) -> Result<Output, Error> {
    let (normal, kind) = match mode {
        DifferenceMode::Simple => (is_normal_simple(&s, n), BlowupKind::Simple),
        DifferenceMode::Flag => (is_normal_flag(&s, n), BlowupKind::Flag),
    };
    let computed = blowup(&s, n, kind)?.output;
    if computed.is_natural() != normal {
        return Err(Error::CriterionMismatch(format!("{s}, n = {n}: criterion says {normal}, blowup is {computed}")));
    }
    Ok(Output::Check(Verdict { semigroup: s, n, mode, normal, computed }))
}

fn product(ss: Vec<NumericalSemigroup>, n: usize, mode: DifferenceMode) -> Result<Output, Error> {
    let regular = product_regular(&ss, n, mode)?;
    let t = t_staircase(&ss, n)?;
    let t_colength = t.colength()?;
    let expected = binomial((n + ss.len()) as u64, ss.len() as u64) as usize;
    if t_colength != expected {
        return Err(Error::IdentityViolation(format!("T colength {t_colength}, expected {expected}")));
    }
    let t_misses_conductor = not_contained(&t, &conductor_region(&ss)?)?;
    if t_misses_conductor && !regular {
        return Err(Error::CriterionMismatch(format!("T does not contain U at n = {n} but the blowup is singular")));
    }
    let cluster_colengths = if ss.len() == 2 {
        let u = FlagCluster::new(&ss[0], n);
        let v = FlagCluster::new(&ss[1], n);
        Some(product_cluster_identities(&u, &v, n)?.into_iter().map(|c| c.colength).collect())
    } else {
        None
    };
    Ok(Output::Product(ProductReport {
        factors: ss.iter().map(|s| s.to_string()).collect(),
        n,
        mode,
        regular,
        factorwise_simple: ss.iter().map(|s| is_normal_simple(s, n)).collect(),
        factorwise_flag: ss.iter().map(|s| is_normal_flag(s, n)).collect(),
        tangent_directions_independent: tangent_directions_independent(&ss, n)?,
        t_minimal: t.minimal().len(),
        t_colength,
        t_misses_conductor,
        cluster_colengths,
    }))
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

struct Settings {
    json: bool,
    cache: Option<Cache>,
}

fn sweep(bounds: &str, out: &PathBuf, json: bool) -> Result<ExitCode, Error> {
    let bounds: SweepBounds = bounds.parse()?;
    let report = criterion_sweep(bounds, true)?;
    std::fs::write(out, report.to_jsonl()).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", out.display())))?;
    let mismatches = report.theorem_mismatches().count();
    let summary = render::SweepSummary {
        bounds: bounds.to_string(),
        semigroups: report.semigroups,
        records: report.records.len(),
        theorem_mismatches: mismatches,
        conjecture_disagreements: report.conjecture_disagreements().count(),
    };
    if json {
        emit(&format!("{}\n", serde_json::to_string_pretty(&summary).expect("summary serializes")));
    } else {
        emit(&summary.to_string());
    }
    Ok(if mismatches == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn execute(command: Command, settings: &Settings) -> Result<ExitCode, Error> {
    if let Command::Sweep { bounds, out } = &command {
        return sweep(bounds, out, settings.json);
    }
    let Request { key, run } = request(command)?;
    let key = format!("{}|{}", env!("CARGO_PKG_VERSION"), serde_json::to_string(&key).expect("key serializes"));
    let cached = settings.cache.as_ref().and_then(|c| c.get(&key)).and_then(|v| serde_json::from_value::<Output>(v).ok());
    let output = match cached {
        Some(o) => o,
        None => {
            let o = run()?;
            if let Some(c) = &settings.cache {
                let value = serde_json::to_value(&o).expect("output serializes");
                if let Err(e) = c.put(&key, &value) {
                    eprintln!("warning: cache write failed: {e}");
                }
            }
            o
        }
    };
    if settings.json {
        emit(&format!("{}\n", serde_json::to_string_pretty(&output).expect("output serializes")));
    } else {
        emit(&output.to_string());
    }
    Ok(match &output {
        Output::Verify(r) if !r.passed => ExitCode::from(2),
        _ => ExitCode::SUCCESS,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.inject_fault {
        Some(Fault::Domain) => Err(Error::InvalidArgument("injected domain fault".into())),
        Some(Fault::Internal) => Err(Error::CriterionMismatch("injected internal fault".into())),
        None => {
            let cache = if cli.no_cache { None } else { cli.cache_dir.or_else(Cache::default_dir).map(Cache::new) };
            execute(cli.command, &Settings { json: cli.json, cache })
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}
