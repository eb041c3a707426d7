//! `sgchroma`: command-line front end for the signed-graph library.
//!
//! Graph inputs are files in the text format (`-` reads stdin). Results are
//! printed as JSON, scans in the chosen report format.
//!
//! Exit codes: 0 completed, 1 usage or input error, 2 internal defect.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use sgchroma_core::harness::report::{render, ReportFormat};
use sgchroma_core::harness::scan::{run_scan, CheckName, Corpus, ScanSpec};
use sgchroma_core::harness::{generate, run_scan_checkpointed};
use sgchroma_core::minor::{
    has_even_odd_minor, has_ktilde_minor, has_ktilde_subdivision, has_odd_minor, negative_path_dichotomy,
    verify_certificate, Certificate,
};
use sgchroma_core::rational::format_ratio;
use sgchroma_core::{
    balanced_quotient, canonical_form, chi_b, chi_fb, is_balanced, verify_quotient, Error, SignedGraph,
};

#[derive(Parser)]
#[command(name = "sgchroma", version, about = "Balanced colourings, signed minors and conjecture scans")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a graph and print its size and canonical form.
    Parse { file: PathBuf },
    /// Balance test with a switching or a negative cycle.
    Balance { file: PathBuf },
    /// Exact balanced chromatic number with a cover.
    Chib { file: PathBuf },
    /// Exact fractional balanced chromatic number with a weighting.
    Chifb { file: PathBuf },
    /// Balanced quotient with its contraction trace.
    Quotient { file: PathBuf },
    /// Search for a pattern minor or subdivision.
    Minor {
        file: PathBuf,
        /// `ktilde:T`, `odd:T`, `evenodd:T` or `subdivision:T`.
        #[arg(long)]
        pattern: String,
    },
    /// Disjoint negative H-paths or a small hitting set.
    Dichotomy {
        file: PathBuf,
        /// Comma-separated vertices of H.
        #[arg(long = "H", value_delimiter = ',', required = true)]
        h: Vec<usize>,
        #[arg(long)]
        k: usize,
    },
    /// Run a check over an exhaustive or seeded random corpus.
    Scan {
        #[arg(long)]
        check: String,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
        /// Use a random corpus with this seed instead of every class.
        #[arg(long)]
        seed: Option<u64>,
        /// Size of the random corpus.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value = "text")]
        format: String,
        /// Save progress here after each order and resume from it.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Print a graph from a named family.
    Generate { family: String },
}

enum Failure {
    Usage(String),
    Defect(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CriticalDefect(_) => Failure::Defect(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(threads) = std::env::var("SGCHROMA_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    match run(cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Defect(m)) => {
            eprintln!("defect: {m}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<SignedGraph, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    Ok(SignedGraph::parse(&text)?)
}

fn pretty(v: &serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialise"))
}

fn checked(g: &SignedGraph, cert: Certificate) -> Result<serde_json::Value, Failure> {
    let verdict = verify_certificate(g, &cert);
    if !verdict.is_valid() {
        return Err(Failure::Defect(format!("produced certificate failed verification: {verdict:?}")));
    }
    Ok(json!({ "found": true, "certificate": cert, "verdict": verdict }))
}

fn run(cmd: Cmd) -> Result<String, Failure> {
    match cmd {
        Cmd::Parse { file } => {
            let g = read_graph(&file)?;
            let form = canonical_form(&g).map(|f| f.to_hex()).ok();
            Ok(pretty(&json!({ "n": g.n(), "m": g.m(), "canonical": form })))
        }
        Cmd::Balance { file } => {
            let g = read_graph(&file)?;
            let r = is_balanced(&g);
            r.verify(&g).map_err(|e| Failure::Defect(e.to_string()))?;
            Ok(pretty(&json!({ "balanced": r.is_balanced(), "certificate": r })))
        }
        Cmd::Chib { file } => {
            let g = read_graph(&file)?;
            let r = chi_b(&g)?;
            Ok(pretty(&json!({ "chi_b": r.value(), "result": r })))
        }
        Cmd::Chifb { file } => {
            let g = read_graph(&file)?;
            let (v, w) = chi_fb(&g)?;
            Ok(pretty(&json!({ "chi_fb": format_ratio(&v), "weighting": w })))
        }
        Cmd::Quotient { file } => {
            let g = read_graph(&file)?;
            let q = balanced_quotient(&g)?;
            let verdict = verify_quotient(&g, &q);
            if !verdict.is_valid() {
                return Err(Failure::Defect(format!("quotient failed verification: {verdict:?}")));
            }
            Ok(pretty(&json!({ "quotient_text": q.quotient.to_text(), "result": q, "verdict": verdict })))
        }
        Cmd::Minor { file, pattern } => {
            let g = read_graph(&file)?;
            let (kind, t) = pattern
                .split_once(':')
                .and_then(|(k, t)| Some((k, t.parse::<usize>().ok()?)))
                .ok_or_else(|| Failure::Usage(format!("pattern must be KIND:T, got {pattern:?}")))?;
            let none = || Ok(pretty(&json!({ "found": false })));
            match kind {
                "ktilde" => match has_ktilde_minor(&g, t)? {
                    Some(c) => checked(&g, Certificate::Minor(c)).map(|v| pretty(&v)),
                    None => none(),
                },
                "odd" => match has_odd_minor(&g, t)? {
                    Some(c) => checked(&g, Certificate::Minor(c)).map(|v| pretty(&v)),
                    None => none(),
                },
                "evenodd" => match has_even_odd_minor(&g.underlying(), t)? {
                    Some(c) => checked(&g, Certificate::EvenOdd(c)).map(|v| pretty(&v)),
                    None => none(),
                },
                "subdivision" => match has_ktilde_subdivision(&g, t)? {
                    Some(c) => checked(&g, Certificate::Subdivision(c)).map(|v| pretty(&v)),
                    None => none(),
                },
                _ => Err(Failure::Usage(format!("unknown pattern kind {kind:?}"))),
            }
        }
        Cmd::Dichotomy { file, h, k } => {
            let g = read_graph(&file)?;
            let result = negative_path_dichotomy(&g, &h, k)?;
            let mut h = h;
            h.sort_unstable();
            h.dedup();
            checked(&g, Certificate::Dichotomy { h, k, result }).map(|v| pretty(&v))
        }
        Cmd::Scan { check, t, n, seed, count, format, checkpoint } => {
            let check: CheckName = check.parse()?;
            let format: ReportFormat = format.parse()?;
            let corpus = match seed {
                Some(seed) => Corpus::Random { seed, count },
                None => Corpus::All,
            };
            let spec = ScanSpec { check, t, n, corpus };
            let record = match checkpoint {
                Some(path) => run_scan_checkpointed(&spec, &path)?,
                None => run_scan(&spec)?,
            };
            let out = render(&record, format)?;
            if record.theorem_backed && record.counterexamples > 0 {
                print!("{out}");
                return Err(Failure::Defect(format!(
                    "{} counterexamples to a proven statement",
                    record.counterexamples
                )));
            }
            Ok(out)
        }
        Cmd::Generate { family } => Ok(generate(&family)?.to_text()),
    }
}
