//! Command-line driver: analyze single groups, run corpora, search for
//! vanishing virtual characters, and count regular orbits.
//!
//! Exit codes: 0 = all verdicts pass, 1 = a mathematical failure,
//! 2 = only capability-limited or unverified entries.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use maxsimple::bounds::{count_regular_orbits, gl_sylow_generators, matrix_group_order};
use maxsimple::corpus::{parse_corpus, run_corpus, run_pair, search_steinberg_zero, RunOptions};
use maxsimple::limits::{Limits, DEFAULT_SEED};
use maxsimple::pcomplex::{census_csv, chain_orbits, ComplexKind};
use maxsimple::report::{AnalysisReport, ReportFile, VerdictStatus};

#[derive(Parser)]
#[command(
    name = "maxsimple",
    about = "Exact simple-module dimensions, p-subgroup complexes, and structural bounds for small permutation groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one group at one prime and print every verdict.
    Analyze(AnalyzeArgs),
    /// Corpus operations.
    #[command(subcommand)]
    Corpus(CorpusCommand),
    /// Scan a corpus for groups with trivial p-core but identically zero
    /// virtual character (expected to find none).
    SearchSteinbergZero(SearchArgs),
    /// Count regular orbits of a Sylow p-subgroup of GL(n, q) on its
    /// natural module.
    RegularOrbits(RegularOrbitsArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Builder spec, e.g. sym:4, alt:5, sl2:4, fermat_example:3,
    /// direct:sym:3,alt:5, file:path/to/group.grp
    spec: String,
    #[arg(short = 'p', long)]
    prime: u64,
    /// Which complex to list chain orbits for in the text output.
    #[arg(long, default_value = "poset")]
    complex: String,
    /// Write the full report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the chain census (all three complexes) as CSV.
    #[arg(long)]
    census: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Run every (entry, prime) pair of a corpus file.
    Run(CorpusRunArgs),
}

#[derive(Args)]
struct CorpusRunArgs {
    file: PathBuf,
    /// Write the aggregated report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Bypass the content-addressed result cache.
    #[arg(long)]
    no_cache: bool,
    #[arg(long, default_value = ".maxsimple-cache")]
    cache_dir: PathBuf,
    /// Skip entries carrying this tag (repeatable).
    #[arg(long)]
    skip_tag: Vec<String>,
}

#[derive(Args)]
struct SearchArgs {
    file: PathBuf,
    #[arg(short = 'p', long)]
    prime: u64,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct RegularOrbitsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    p: u64,
}

fn main() -> ExitCode {
    if let Ok(workers) = std::env::var("MAXSIMPLE_WORKERS") {
        if let Ok(n) = workers.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Corpus(CorpusCommand::Run(args)) => corpus_run(args),
        Command::SearchSteinbergZero(args) => search(args),
        Command::RegularOrbits(args) => regular_orbits(args),
    };
    match code {
        Ok(c) => ExitCode::from(c as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn print_report(report: &AnalysisReport) {
    println!(
        "group {} (order {}, degree {}) at p = {} [{}], |G|_p = {}",
        report.name, report.order, report.degree, report.p, report.p_class, report.order_p_part
    );
    if let (Some(op), Some(phi)) = (report.o_p_order, report.frattini_order) {
        println!("  p-core order {op}, Frattini order {phi}");
    }
    if let (Some(x), Some(xc), Some(out)) = (report.x_order, report.xc_order, report.out_p_part) {
        println!("  |X| = {x}, |X·C(X)| = {xc}, outer p-part = {out}");
    }
    if let Some(b) = report.bound_generic {
        println!("  generic-prime bound: {b}");
    }
    if let Some(b) = report.bound_abelian {
        println!("  abelian-subgroup bound: {b}");
    }
    if let Some(m) = report.m_s {
        println!(
            "  m_s = {m}, dims over the closure: {:?} (splitting field degree {})",
            report.abs_simple_dims.as_deref().unwrap_or(&[]),
            report.splitting_field_degree.unwrap_or(0)
        );
    }
    if let (Some(a), Some(b)) = (report.abs_irreducible_classes, report.p_regular_classes) {
        println!("  absolutely irreducible classes: {a}, p-regular classes: {b}");
    }
    if let Some(d) = report.defect_zero {
        println!("  defect-zero simple present: {d}");
    }
    if let (Some(a), Some(b), Some(c)) = (
        report.euler_poset,
        report.euler_elementary_abelian,
        report.euler_bouc,
    ) {
        println!("  reduced Euler characteristics: poset {a}, elab {b}, bouc {c}")
    }
    if let Some(nz) = report.steinberg_nonzero {
        println!(
            "  virtual character nonzero: {nz}; values {:?}",
            report.steinberg_values.as_deref().unwrap_or(&[])
        );
    }
    for v in &report.verdicts {
        let tag = match v.status {
            VerdictStatus::Pass => "PASS",
            VerdictStatus::Fail => "FAIL",
            VerdictStatus::Unverified => "UNVERIFIED",
        };
        println!("  [{tag}] {}: {}", v.claim, v.detail);
    }
    for e in &report.errors {
        println!("  (limit) {e}");
    }
}

fn analyze(args: AnalyzeArgs) -> Result<i32, maxsimple::Error> {
    let limits = Limits::default();
    let base = Path::new(".");
    let opts = RunOptions {
        limits,
        seed: args.seed,
        cache_dir: None,
        use_cache: false,
        skip_tags: Vec::new(),
    };
    let report = run_pair(&args.spec, &args.spec, args.prime, base, &opts);
    print_report(&report);

    // chain orbits of the selected complex
    if report.order > 0 {
        let kind = ComplexKind::parse(&args.complex)?;
        let group = maxsimple::builders::build_group(&args.spec, base, &limits)?;
        match chain_orbits(&group, args.prime, kind, &limits) {
            Ok(orbits) => {
                println!("  chain orbits ({}):", kind.label());
                for o in orbits {
                    let orders: Vec<String> =
                        o.subgroup_orders.iter().map(|x| x.to_string()).collect();
                    println!(
                        "    m={} [{}] stabilizer {} orbit {} sign {}",
                        o.length(),
                        orders.join("<"),
                        o.stabilizer_order,
                        o.orbit_size,
                        o.sign
                    );
                }
            }
            Err(e) => println!("  chain orbits unavailable: {e}"),
        }
        if let Some(path) = &args.census {
            let csv = census_csv(&group, args.prime, &limits)?;
            std::fs::write(path, csv)?;
            println!("  census written to {}", path.display());
        }
    }

    let file = ReportFile::new(args.seed, vec![report]);
    if let Some(path) = &args.json {
        std::fs::write(path, file.to_json_pretty()?)?;
    }
    Ok(file.exit_code())
}

fn corpus_run(args: CorpusRunArgs) -> Result<i32, maxsimple::Error> {
    let text = std::fs::read_to_string(&args.file)?;
    let entries = parse_corpus(&text)?;
    let base = args
        .file
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    let opts = RunOptions {
        limits: Limits::default(),
        seed: args.seed,
        cache_dir: Some(args.cache_dir.clone()),
        use_cache: !args.no_cache,
        skip_tags: args.skip_tag.clone(),
    };
    let report = run_corpus(&entries, &base, &opts);
    for r in &report.reports {
        print_report(r);
    }
    let (pass, fail, unver) = report.reports.iter().fold((0, 0, 0), |acc, r| {
        if r.has_fail() {
            (acc.0, acc.1 + 1, acc.2)
        } else if r.has_unverified() {
            (acc.0, acc.1, acc.2 + 1)
        } else {
            (acc.0 + 1, acc.1, acc.2)
        }
    });
    println!("summary: {pass} pass, {fail} fail, {unver} unverified");
    if let Some(path) = &args.json {
        std::fs::write(path, report.to_json_pretty()?)?;
    }
    Ok(report.exit_code())
}

fn search(args: SearchArgs) -> Result<i32, maxsimple::Error> {
    let text = std::fs::read_to_string(&args.file)?;
    let entries = parse_corpus(&text)?;
    let base = args
        .file
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    let opts = RunOptions::default();
    let (hits, skipped) = search_steinberg_zero(&entries, &base, args.prime, &opts);
    if hits.is_empty() {
        println!(
            "no group with trivial {}-core and zero virtual character among {} entries",
            args.prime,
            entries.len()
        );
    }
    for hit in &hits {
        println!("HIT: {} ({}) of order {}", hit.name, hit.builder, hit.order);
    }
    for (name, why) in &skipped {
        println!("skipped {name}: {why}");
    }
    if let Some(path) = &args.json {
        std::fs::write(path, serde_json::to_string_pretty(&hits)?)?;
    }
    Ok(if skipped.is_empty() { 0 } else { 2 })
}

fn regular_orbits(args: RegularOrbitsArgs) -> Result<i32, maxsimple::Error> {
    let limits = Limits::default();
    let gens = gl_sylow_generators(args.n, args.q, args.p, &limits)?;
    let order = if gens.is_empty() {
        1
    } else {
        matrix_group_order(&gens, &limits)?
    };
    let count = if gens.is_empty() {
        // trivial Sylow subgroup: every vector is a regular orbit
        args.q.pow(args.n as u32)
    } else {
        count_regular_orbits(&gens, args.n, &limits)?
    };
    println!(
        "Sylow {}-subgroup of GL({}, {}) has order {} and {} regular orbit(s) on {} vectors",
        args.p,
        args.n,
        args.q,
        order,
        count,
        args.q.pow(args.n as u32)
    );
    Ok(0)
}
