//! Command-line front end. Every subcommand prints one JSON document on
//! stdout (or CSV for `count --csv -`); diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::blocks;
use crate::classify;
use crate::enumerate::{self, CountTable, Limits, Source};
use crate::error::Error;
use crate::factorize;
use crate::group::{Family, GroupContext, SignedPermutation};
use crate::oracle::CayleyGraph;
use crate::stats;
use crate::suite;

/// Optional JSON configuration, e.g. `{"default_family": "B", "max_rank": 6}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub default_family: Option<Family>,
    /// Rank limit for type B and D enumerations.
    pub max_rank: Option<usize>,
    /// Group-order limit; `COXDEPTH_MAX_ORDER` wins when both are set.
    pub max_order: Option<u128>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }

    fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if let Some(r) = self.max_rank {
            limits.max_rank = r;
        }
        if let (Some(o), None) = (
            self.max_order,
            std::env::var_os(crate::oracle::MAX_ORDER_ENV),
        ) {
            limits.max_order = o;
        }
        limits
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "coxdepth",
    version,
    about = "Depth and related statistics in S_n, B_n and D_n"
)]
struct Cli {
    /// JSON config file setting caps and a default family.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct ElementArgs {
    /// Group family: A, B or D.
    #[arg(long = "type")]
    family: Option<Family>,
    /// Window notation, e.g. "-4,-2,-3,-1".
    #[arg(long, allow_hyphen_values = true)]
    w: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Stat {
    Depth,
    #[value(name = "dp_eq_ls")]
    DpEqLs,
    Boolean,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Length and depth breakdowns, oddness and blocks of one element.
    Stat(ElementArgs),
    /// Depth-realizing reduced factorization with its verification report.
    Factor {
        #[command(flatten)]
        el: ElementArgs,
        /// Also print the concatenated reduced word in simple generators.
        #[arg(long)]
        word: bool,
    },
    /// Depth and reflection lengths from exhaustive graph search.
    Oracle {
        #[arg(long = "type")]
        family: Option<Family>,
        #[arg(long)]
        n: usize,
        /// One element; without it the whole table is printed.
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
    },
    /// Short-braid avoidance, booleanness and pattern-list avoidance.
    Classify(ElementArgs),
    /// Counts over a whole group next to closed forms.
    Count {
        #[arg(long = "type")]
        family: Option<Family>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        stat: Stat,
        /// Write CSV to this path (`-` for stdout) instead of JSON.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Runs the whole invariant suite for ranks 1..=max-n.
    VerifyAll {
        #[arg(long = "type")]
        family: Option<Family>,
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Verification(m)) => {
            let _ = writeln!(err, "verification failed: {m}");
            1
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Outcome {
    let config = match &cli.config {
        Some(p) => Config::load(p).map_err(Failure::Usage)?,
        None => Config::default(),
    };
    let limits = config.limits();
    let family = |f: Option<Family>| {
        f.or(config.default_family).ok_or_else(|| {
            Failure::Usage("--type is required (or set default_family in --config)".into())
        })
    };
    match cli.command {
        Command::Stat(el) => {
            let (ctx, w) = element(family(el.family)?, &el.w)?;
            emit(out, &stat_json(&ctx, &w)?)
        }
        Command::Factor { el, word } => {
            let (ctx, w) = element(family(el.family)?, &el.w)?;
            let f = factorize::factorize(&w, &ctx)?;
            let report = factorize::verify(&f, &w, &ctx);
            let mut doc = json!({ "factorization": f, "verification": report });
            if word {
                let word = factorize::expand_to_word(&f);
                doc["word"] = json!({ "letters": word.letters, "text": word.to_string() });
            }
            emit(out, &doc)?;
            if !report.passed() {
                return Err(Failure::Verification(format!(
                    "factorization of {w} failed {report:?}"
                )));
            }
            Ok(())
        }
        Command::Oracle { family: f, n, w } => {
            let ctx = GroupContext::new(family(f)?, n)?;
            let g = CayleyGraph::build(&ctx, limits.max_order)?;
            match w {
                Some(text) => {
                    let w = ctx.parse(&text)?;
                    emit(
                        out,
                        &json!({
                            "family": ctx.family,
                            "n": n,
                            "window": w,
                            "dp": g.depth(&w)?,
                            "lt": g.lt(&w)?,
                            "lr": g.lr(&w)?,
                            "ls": g.ls(&w)?,
                        }),
                    )
                }
                None => emit(
                    out,
                    &json!({ "family": ctx.family, "n": n, "rows": g.table() }),
                ),
            }
        }
        Command::Classify(el) => {
            let (ctx, w) = element(family(el.family)?, &el.w)?;
            let c = classify::classify(&w, &ctx)?;
            let avoids: serde_json::Map<String, serde_json::Value> = c
                .avoids
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect();
            emit(
                out,
                &json!({
                    "family": ctx.family,
                    "window": w,
                    "short_braid_avoiding": c.short_braid_avoiding,
                    "boolean": c.boolean,
                    "depth_eq_length": c.depth_eq_length,
                    "avoids": avoids,
                }),
            )
        }
        Command::Count {
            family: f,
            n,
            stat,
            csv,
            jobs,
        } => {
            let ctx = GroupContext::new(family(f)?, n)?;
            let table = with_jobs(jobs, || count_table(&ctx, stat, &limits))??;
            match csv {
                Some(path) if path.as_os_str() == "-" => Ok(table.write_csv(out)?),
                Some(path) => {
                    let file = std::fs::File::create(&path).map_err(|e| {
                        Failure::Usage(format!("cannot write {}: {e}", path.display()))
                    })?;
                    Ok(table.write_csv(file)?)
                }
                None => emit(out, &table),
            }
        }
        Command::VerifyAll {
            family: f,
            max_n,
            jobs,
        } => {
            let fam = family(f)?;
            let report = with_jobs(jobs, || suite::run_suite(fam, max_n, &limits))??;
            emit(out, &report)?;
            if !report.passed {
                let names: Vec<String> = report
                    .failed_checks()
                    .map(|c| format!("{}({}{})", c.name, c.family, c.n))
                    .collect();
                return Err(Failure::Verification(names.join(", ")));
            }
            Ok(())
        }
    }
}

fn element(family: Family, text: &str) -> Result<(GroupContext, SignedPermutation), Failure> {
    let w: SignedPermutation = text.parse()?;
    let ctx = GroupContext::new(family, w.rank())?;
    ctx.check(&w)?;
    Ok((ctx, w))
}

fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, Failure> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Failure::Usage("--jobs must be positive".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Failure::Usage(format!("cannot start {j} workers: {e}"))),
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    writeln!(out, "{text}").map_err(|e| Failure::Usage(format!("write failed: {e}")))
}

fn stat_json(ctx: &GroupContext, w: &SignedPermutation) -> Result<serde_json::Value, Failure> {
    let mut doc = json!({
        "family": ctx.family,
        "window": w,
        "length": stats::length(w, ctx),
        "depth": stats::depth(w, ctx),
        "oddness": blocks::oddness(w, ctx)?,
        "blocks": { "b": blocks::b_decompose(w) },
    });
    if ctx.family == Family::D {
        doc["blocks"]["d"] = json!(blocks::d_decompose(w)?);
    }
    Ok(doc)
}

fn count_table(ctx: &GroupContext, stat: Stat, limits: &Limits) -> crate::Result<CountTable> {
    match stat {
        Stat::Depth => enumerate::depth_distribution(ctx, limits),
        Stat::DpEqLs => {
            let mut t = CountTable {
                family: ctx.family,
                n: ctx.rank,
                statistic: "dp_eq_ls".into(),
                rows: vec![],
            };
            push(
                &mut t,
                "total",
                enumerate::count_depth_eq_length(ctx, limits)?,
                Source::Enumerated,
            );
            if let Ok(v) = enumerate::depth_eq_length_closed_form(ctx) {
                push(&mut t, "total", v, Source::ClosedForm);
            }
            Ok(t)
        }
        Stat::Boolean => {
            let mut t = CountTable {
                family: ctx.family,
                n: ctx.rank,
                statistic: "boolean".into(),
                rows: vec![],
            };
            for k in 0..=ctx.generators().len() as u64 {
                push(
                    &mut t,
                    k,
                    enumerate::count_boolean_by_length(ctx, k, limits)?,
                    Source::Enumerated,
                );
                if let Ok(v) = enumerate::boolean_by_length_closed_form(ctx, k) {
                    push(&mut t, k, v, Source::ClosedForm);
                }
            }
            push(
                &mut t,
                "total",
                enumerate::count_boolean(ctx, limits)?,
                Source::Enumerated,
            );
            if let Ok(v) = enumerate::boolean_closed_form(ctx) {
                push(&mut t, "total", v, Source::ClosedForm);
            }
            Ok(t)
        }
    }
}

fn push(t: &mut CountTable, key: impl ToString, count: u64, source: Source) {
    t.rows.push(enumerate::CountRow {
        key: key.to_string(),
        count,
        source,
    });
}
