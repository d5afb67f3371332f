//! The `charvar` command line.
//!
//! JSON artifacts go to `--out` (or stdout); the human-readable summary goes
//! to stderr so stdout stays machine-readable.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finiteness::{verdict_from_basis, DetectionReport, SlopeResult};
use crate::poly::{buchberger, resume, Budget, BuchbergerOptions, Checkpoint, GroebnerBasis, GroebnerCache, MonomialOrder};
use crate::presentation::GroupPresentation;
use crate::trace::ReductionEngine;
use crate::variety::{augment_with_slope, variety_ideal_with, VarietyIdeal, DEFAULT_ORDER};

#[derive(Debug, Parser)]
#[command(name = "charvar", version, about = "SL(2,C) character varieties and module finiteness over a slope trace")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the trace polynomial of a word.
    Reduce {
        input: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Write the defining ideal (optionally augmented with a slope) as JSON.
    Equations {
        input: PathBuf,
        #[arg(long)]
        slope: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a reduced Groebner basis of the (augmented) ideal.
    Groebner(RunArgs),
    /// Decide finite generation over Q[s] for one slope.
    Basis(RunArgs),
    /// Run the full detection pipeline over one or more slopes.
    Detect(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Lex,
    Grevlex,
    Block,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Group presentation file.
    pub input: PathBuf,
    /// Slope selector such as `meridian^-1 * longitude`; repeatable for `detect`.
    #[arg(long)]
    pub slope: Vec<String>,
    #[arg(long, value_enum, default_value = "block")]
    pub order: OrderArg,
    /// Directory of Groebner bases keyed by ideal and order.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for S-pair reduction; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Stop before processing pairs of larger lcm degree.
    #[arg(long)]
    pub budget_degree: Option<u32>,
    /// Stop after this many S-pairs.
    #[arg(long)]
    pub budget_pairs: Option<usize>,
    /// Where to write the checkpoint when a budget runs out.
    #[arg(long, default_value = "groebner.checkpoint.json")]
    pub checkpoint: PathBuf,
    /// Resume from a checkpoint file written by an earlier run on the same ideal.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    /// Include wall-clock times in JSON output (breaks byte-identical reruns).
    #[arg(long)]
    pub timings: bool,
    /// Report each batch of S-pairs on stderr.
    #[arg(long)]
    pub progress: bool,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const UNSUPPORTED_RANK: i32 = 3;
    pub const BUDGET: i32 = 4;
    pub const INVARIANT: i32 = 5;
}

/// Output of a run: the artifact for stdout or `--out`, and a summary.
#[derive(Debug, Default)]
pub struct Outcome {
    pub artifact: String,
    pub summary: String,
}

fn load(path: &Path) -> Result<GroupPresentation> {
    let text = std::fs::read_to_string(path)?;
    GroupPresentation::parse(&text)
}

fn check_rank(p: &GroupPresentation) -> Result<()> {
    if p.rank() > 3 {
        return Err(Error::UnsupportedRank(p.rank()));
    }
    Ok(())
}

fn options(args: &RunArgs) -> BuchbergerOptions {
    BuchbergerOptions {
        threads: args.threads.max(1),
        budget: Budget {
            max_pairs: args.budget_pairs,
            max_degree: args.budget_degree,
        },
        progress: args.progress,
    }
}

fn order_for(arg: OrderArg, ideal: &VarietyIdeal) -> MonomialOrder {
    match arg {
        OrderArg::Lex => MonomialOrder::Lex,
        OrderArg::Grevlex => MonomialOrder::Grevlex,
        OrderArg::Block => MonomialOrder::elimination(ideal.nvars() - usize::from(ideal.has_slope())),
    }
}

fn presentation_summary(p: &GroupPresentation, out: &mut String) {
    let rels: Vec<String> = p.relators().iter().map(|r| p.format_word(r)).collect();
    let names: String = p.names().iter().map(|c| format!("{c} ")).collect();
    writeln!(out, "presentation: <{}| {}>", names, rels.join(", ")).unwrap();
    for (name, w) in p.peripherals() {
        writeln!(out, "peripheral {name}: {}", p.format_word(w)).unwrap();
    }
}

fn build_ideal(p: &GroupPresentation, slope: Option<&str>, summary: &mut String) -> Result<VarietyIdeal> {
    check_rank(p)?;
    let mut engine = ReductionEngine::new(p.rank());
    let base = variety_ideal_with(p, &mut engine)?;
    writeln!(
        summary,
        "coordinates: ({}) in C^{}",
        base.coordinates().join(", "),
        base.nvars()
    )
    .unwrap();
    writeln!(summary, "defining polynomials: {}", base.generators().len()).unwrap();
    let Some(sel) = slope else {
        return Ok(base);
    };
    let alpha = p.slope_word(sel)?;
    let ideal = augment_with_slope(&base, &alpha, &mut engine)?;
    writeln!(
        summary,
        "slope {sel} = {}; augmented ideal: {} generators in C^{}",
        p.format_word(&alpha),
        ideal.generators().len(),
        ideal.nvars()
    )
    .unwrap();
    for w in ideal.warnings() {
        writeln!(summary, "warning: {w}").unwrap();
    }
    Ok(ideal)
}

/// Groebner basis with optional caching; verifies ideal membership of the
/// generators before returning.
fn groebner_for(ideal: &VarietyIdeal, order: MonomialOrder, args: &RunArgs, summary: &mut String) -> Result<GroebnerBasis> {
    let cache = args.cache_dir.as_ref().map(GroebnerCache::new);
    let key = GroebnerCache::key(&ideal.to_json(), &order);
    if let Some(cache) = &cache {
        if let Some(gb) = cache.load(&key)? {
            writeln!(summary, "groebner basis loaded from cache {}", cache.path_for(&key).display()).unwrap();
            return Ok(gb);
        }
    }
    let opts = options(args);
    let result = match &args.resume {
        Some(path) => {
            let cp = Checkpoint::load(path)?;
            if cp.nvars() != ideal.nvars() || *cp.order() != order {
                return Err(Error::Parse(format!(
                    "checkpoint {} was written for a different ring or monomial order",
                    path.display()
                )));
            }
            writeln!(summary, "resuming from {} ({} pairs done, {} pending)", path.display(), cp.stats().pairs, cp.pending_pairs()).unwrap();
            resume(cp, &opts)
        }
        None => buchberger(ideal.generators(), ideal.nvars(), order, &opts),
    };
    let gb = match result {
        Err(Error::Budget {
            pairs,
            degree,
            checkpoint,
        }) => {
            checkpoint.save(&args.checkpoint)?;
            return Err(Error::Budget {
                pairs,
                degree,
                checkpoint,
            });
        }
        other => other?,
    };
    if let Some(g) = ideal.generators().iter().find(|g| !gb.contains(g)) {
        return Err(Error::Invariant(format!(
            "generator {} does not reduce to zero modulo the computed basis",
            g.to_string_with(ideal.coordinates(), &DEFAULT_ORDER)
        )));
    }
    if let Some(cache) = &cache {
        let path = cache.store(&key, &gb, ideal.coordinates())?;
        writeln!(summary, "groebner basis stored in cache {}", path.display()).unwrap();
    }
    Ok(gb)
}

fn basis_summary(gb: &GroebnerBasis, out: &mut String) {
    let st = gb.stats();
    writeln!(
        out,
        "groebner basis ({}): {} elements, {} pairs, max degree {}",
        gb.order(),
        gb.len(),
        st.pairs,
        st.max_degree
    )
    .unwrap();
}

fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

/// Runs one command and returns its artifacts.
pub fn execute(cmd: &Command) -> Result<Outcome> {
    let mut summary = String::new();
    let artifact = match cmd {
        Command::Reduce { input, word } => {
            let p = load(input)?;
            let w = p.word(word)?;
            let mut engine = ReductionEngine::new(p.rank());
            let poly = engine.reduce(&w);
            writeln!(summary, "I_{} in {} coordinates", word, engine.ncoords()).unwrap();
            format!("{}\n", poly.to_string_with(&engine.names(), &DEFAULT_ORDER))
        }
        Command::Equations { input, slope, .. } => {
            let p = load(input)?;
            presentation_summary(&p, &mut summary);
            let ideal = build_ideal(&p, slope.as_deref(), &mut summary)?;
            to_text(&ideal.to_json())
        }
        Command::Groebner(args) => {
            let p = load(args.input.as_path())?;
            presentation_summary(&p, &mut summary);
            if args.slope.len() > 1 {
                return Err(Error::Parse("groebner takes at most one --slope".into()));
            }
            let ideal = build_ideal(&p, args.slope.first().map(String::as_str), &mut summary)?;
            let order = order_for(args.order, &ideal);
            let gb = groebner_for(&ideal, order, args, &mut summary)?;
            basis_summary(&gb, &mut summary);
            to_text(&gb.to_json(ideal.coordinates()))
        }
        Command::Basis(args) => {
            let [slope] = args.slope.as_slice() else {
                return Err(Error::Parse("basis needs exactly one --slope".into()));
            };
            let p = load(args.input.as_path())?;
            presentation_summary(&p, &mut summary);
            let ideal = build_ideal(&p, Some(slope), &mut summary)?;
            let gb = groebner_for(&ideal, order_for(OrderArg::Block, &ideal), args, &mut summary)?;
            basis_summary(&gb, &mut summary);
            let verdict = verdict_from_basis(&gb, ideal.coordinates());
            match verdict.generating_monomials.as_ref() {
                Some(g) => writeln!(summary, "finitely generated over Q[s] by {} monomials", g.len()).unwrap(),
                None => writeln!(summary, "not finitely generated; missing pure powers: {}", verdict.missing().join(", ")).unwrap(),
            }
            let mut v = verdict.to_json();
            v["slope"] = json!(slope);
            to_text(&v)
        }
        Command::Detect(args) => {
            if args.slope.is_empty() {
                return Err(Error::Parse("detect needs at least one --slope".into()));
            }
            if args.resume.is_some() && args.slope.len() > 1 {
                return Err(Error::Parse("--resume applies to a single slope".into()));
            }
            let p = load(args.input.as_path())?;
            presentation_summary(&p, &mut summary);
            let mut results = Vec::new();
            for sel in &args.slope {
                let ideal = build_ideal(&p, Some(sel), &mut summary)?;
                let start = Instant::now();
                let gb = groebner_for(&ideal, order_for(OrderArg::Block, &ideal), args, &mut summary)?;
                basis_summary(&gb, &mut summary);
                results.push(SlopeResult {
                    slope: sel.clone(),
                    verdict: verdict_from_basis(&gb, ideal.coordinates()),
                    wall_time: start.elapsed(),
                });
            }
            let report = DetectionReport::assemble(results);
            writeln!(summary, "conclusion: {}", report.conclusion.as_str()).unwrap();
            for line in &report.narrative {
                writeln!(summary, "  {line}").unwrap();
            }
            to_text(&report.to_json(args.timings))
        }
    };
    Ok(Outcome { artifact, summary })
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::UnknownLetter { .. } | Error::Json(_) => exit::PARSE,
        Error::UnsupportedRank(_) => exit::UNSUPPORTED_RANK,
        Error::Budget { .. } => exit::BUDGET,
        Error::Invariant(_) => exit::INVARIANT,
        _ => exit::OTHER,
    }
}

fn stage(cmd: &Command) -> &'static str {
    match cmd {
        Command::Reduce { .. } => "reduce",
        Command::Equations { .. } => "equations",
        Command::Groebner(_) => "groebner",
        Command::Basis(_) => "basis",
        Command::Detect(_) => "detect",
    }
}

fn out_path(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Equations { out, .. } => out.as_deref(),
        Command::Groebner(a) | Command::Basis(a) | Command::Detect(a) => a.out.as_deref(),
        Command::Reduce { .. } => None,
    }
}

/// Entry point for the binary. Returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli.command) {
        Ok(outcome) => {
            eprint!("{}", outcome.summary);
            match out_path(&cli.command) {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &outcome.artifact) {
                        eprintln!("{}: writing {}: {e}", stage(&cli.command), path.display());
                        return exit::OTHER;
                    }
                }
                None => {
                    use std::io::Write as _;
                    let mut out = std::io::stdout().lock();
                    match out.write_all(outcome.artifact.as_bytes()).and_then(|()| out.flush()) {
                        Ok(()) => {}
                        // A closed reader (`| head`) is not an error worth reporting.
                        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                        Err(e) => {
                            eprintln!("{}: writing output: {e}", stage(&cli.command));
                            return exit::OTHER;
                        }
                    }
                }
            }
            exit::OK
        }
        Err(e) => {
            eprintln!("{}: {e}", stage(&cli.command));
            if let (Error::Budget { .. }, Command::Groebner(a) | Command::Basis(a) | Command::Detect(a)) = (&e, &cli.command) {
                eprintln!("checkpoint written to {}", a.checkpoint.display());
            }
            exit_code(&e)
        }
    }
}
