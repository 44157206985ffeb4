//! Corpus files, the parallel verification runner, and the result cache.
//!
//! Corpus format, line oriented and diffable:
//!
//! ```text
//! # comment
//! name | builder-spec | p1,p2 | tag1,tag2
//! ```
//!
//! The cache is content addressed by (builder spec, prime, toolchain
//! version); reports are deterministic for a fixed seed and version, so hits
//! can be reused byte for byte.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::bounds::analyze_group;
use crate::builders::build_group;
use crate::error::{Error, Result};
use crate::limits::{is_prime, Limits};
use crate::report::{AnalysisReport, ReportFile, Verdict, VerdictStatus};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub builder: String,
    pub primes: Vec<u64>,
    pub tags: Vec<String>,
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split('|').map(|s| s.trim()).collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(Error::Parse(format!(
                "corpus line {}: expected `name | builder | primes [| tags]`",
                lineno + 1
            )));
        }
        let primes: Vec<u64> = parts[2]
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("corpus line {}: bad prime", lineno + 1)))
            })
            .collect::<Result<_>>()?;
        for &p in &primes {
            if !is_prime(p) {
                return Err(Error::Parse(format!(
                    "corpus line {}: {p} is not prime",
                    lineno + 1
                )));
            }
        }
        let tags: Vec<String> = parts
            .get(3)
            .map(|t| {
                t.split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect()
            })
            .unwrap_or_default();
        out.push(CorpusEntry {
            name: parts[0].to_string(),
            builder: parts[1].to_string(),
            primes,
            tags,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub limits: Limits,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub use_cache: bool,
    pub skip_tags: Vec<String>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            limits: Limits::default(),
            seed: crate::limits::DEFAULT_SEED,
            cache_dir: None,
            use_cache: false,
            skip_tags: Vec::new(),
        }
    }
}

fn cache_key(builder: &str, p: u64) -> String {
    let mut hasher = Sha256::new();
    hasher.update(builder.as_bytes());
    hasher.update(b"|");
    hasher.update(p.to_string().as_bytes());
    hasher.update(b"|");
    hasher.update(crate::report::toolchain_fingerprint().as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn cache_load(dir: &Path, key: &str) -> Option<AnalysisReport> {
    let path = dir.join(format!("{key}.json"));
    let text = std::fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

fn cache_store(dir: &Path, key: &str, report: &AnalysisReport) {
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    if let Ok(text) = serde_json::to_string_pretty(report) {
        let _ = std::fs::write(dir.join(format!("{key}.json")), text);
    }
}

/// Analyzes one (builder, prime) pair, using the cache when enabled.
pub fn run_pair(
    name: &str,
    builder: &str,
    p: u64,
    base_dir: &Path,
    opts: &RunOptions,
) -> AnalysisReport {
    if let (true, Some(dir)) = (opts.use_cache, opts.cache_dir.as_ref()) {
        if let Some(mut hit) = cache_load(dir, &cache_key(builder, p)) {
            hit.name = name.to_string();
            return hit;
        }
    }
    let report = match build_group(builder, base_dir, &opts.limits) {
        Ok(group) => analyze_group(name, Some(builder), &group, p, &opts.limits, opts.seed),
        Err(e) => error_report(name, builder, p, &e),
    };
    if let (true, Some(dir)) = (opts.use_cache, opts.cache_dir.as_ref()) {
        cache_store(dir, &cache_key(builder, p), &report);
    }
    report
}

fn error_report(name: &str, builder: &str, p: u64, e: &Error) -> AnalysisReport {
    AnalysisReport {
        name: name.to_string(),
        builder: Some(builder.to_string()),
        degree: 0,
        order: 0,
        p,
        order_p_part: 0,
        p_class: crate::bounds::prime_class(p).label().to_string(),
        o_p_order: None,
        frattini_order: None,
        o_p_trivial: None,
        frattini_trivial: None,
        x_order: None,
        xc_order: None,
        out_p_part: None,
        bound_generic: None,
        bound_abelian: None,
        m_s: None,
        abs_simple_dims: None,
        splitting_field_degree: None,
        simples: None,
        p_regular_classes: None,
        abs_irreducible_classes: None,
        classes: None,
        euler_poset: None,
        euler_elementary_abelian: None,
        euler_bouc: None,
        steinberg_nonzero: None,
        steinberg_values: None,
        defect_zero: None,
        verdicts: vec![Verdict {
            claim: "build".into(),
            status: VerdictStatus::Unverified,
            detail: format!("{e}"),
        }],
        errors: vec![format!("build: {e}")],
    }
}

/// Runs every (entry, prime) pair on the rayon pool; reports are assembled
/// in corpus order, so output is deterministic regardless of scheduling.
pub fn run_corpus(entries: &[CorpusEntry], base_dir: &Path, opts: &RunOptions) -> ReportFile {
    let jobs: Vec<(String, String, u64)> = entries
        .iter()
        .filter(|e| !e.tags.iter().any(|t| opts.skip_tags.contains(t)))
        .flat_map(|e| {
            e.primes
                .iter()
                .map(|&p| (e.name.clone(), e.builder.clone(), p))
                .collect::<Vec<_>>()
        })
        .collect();
    let reports: Vec<AnalysisReport> = jobs
        .par_iter()
        .map(|(name, builder, p)| run_pair(name, builder, *p, base_dir, opts))
        .collect();
    ReportFile::new(opts.seed, reports)
}

/// One hit of the vanishing search: a group with trivial p-core whose
/// virtual character is identically zero.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SteinbergZeroHit {
    pub name: String,
    pub builder: String,
    pub order: u64,
}

/// Scans the corpus at one prime for groups with trivial p-core and zero
/// virtual character. Capability failures are logged and skipped, never
/// reported as hits.
pub fn search_steinberg_zero(
    entries: &[CorpusEntry],
    base_dir: &Path,
    p: u64,
    opts: &RunOptions,
) -> (Vec<SteinbergZeroHit>, Vec<(String, String)>) {
    let mut hits = Vec::new();
    let mut skipped = Vec::new();
    for entry in entries {
        if entry.tags.iter().any(|t| opts.skip_tags.contains(t)) {
            continue;
        }
        let result = (|| -> Result<Option<SteinbergZeroHit>> {
            let group = build_group(&entry.builder, base_dir, &opts.limits)?;
            let core = group.p_core(p, &opts.limits)?;
            if core.order() != 1 {
                return Ok(None);
            }
            if crate::pcomplex::steinberg_nonzero(&group, p, &opts.limits)? {
                return Ok(None);
            }
            Ok(Some(SteinbergZeroHit {
                name: entry.name.clone(),
                builder: entry.builder.clone(),
                order: group.order(),
            }))
        })();
        match result {
            Ok(Some(hit)) => hits.push(hit),
            Ok(None) => {}
            Err(e) => skipped.push((entry.name.clone(), format!("{e}"))),
        }
    }
    (hits, skipped)
}
