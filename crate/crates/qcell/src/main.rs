use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use qcell::rigidity::{
    analyze, diff_against_reference, enumerate_prop_cases, symmetric_matrices_pipeline, write_csv,
    AnalyzeOptions, CaseDiff, Conclusion, EnumerateOptions, Enumeration, RigidityReport,
};
use qcell::rootsys::{theta_degrees, CartanType, Family};
use qcell::uqplus::{verify_f4_lemmas, verify_g2_relations, F4Which, RootVectorOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser, Serialize)]
#[command(name = "qcell", version, about = "Root data, PBW computations and rigidity checks for quantum Schubert cells")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Worker threads for parallel case evaluation (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Term budget for a single algebra computation.
    #[arg(long, global = true)]
    budget: Option<usize>,

    /// Result cache directory; QCELL_CACHE overrides it.
    #[arg(long, global = true)]
    #[serde(skip)]
    cache: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Analyze one (type, J) case, e.g. `analyze B6 2,5`.
    Analyze {
        #[arg(value_name = "TYPE")]
        ty: String,
        /// Comma-separated simple-root indices.
        j: String,
    },
    /// Scan every case up to a rank and compare with the reference list.
    Enumerate {
        #[arg(long, default_value_t = 9)]
        max_rank: usize,
        /// Drop cases whose grading conditions fail combinatorially.
        #[arg(long)]
        filter_grading: bool,
    },
    /// Run a certificate suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// F4 tiers to run (1..=3).
        #[arg(long, default_value_t = 2)]
        tier: u8,
        /// Size for the symmetric suite; all of 2..=8 when omitted.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Print theta-degree tables.
    Tables {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Suite {
    G2,
    F4x,
    F4y,
    Symmetric,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("qcell: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::from(code)
        }
        Err(Failure(msg)) => {
            eprintln!("qcell: {msg}");
            ExitCode::from(1)
        }
    }
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    match std::env::var_os("QCELL_CACHE") {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => cli.cache.clone(),
    }
}

/// Cached output, keyed by version and canonical arguments.
struct Cache {
    path: Option<PathBuf>,
}

impl Cache {
    fn new(cli: &Cli) -> Cache {
        let path = cache_dir(cli).map(|dir| {
            let key = serde_json::json!({ "version": env!("CARGO_PKG_VERSION"), "args": cli });
            let hash = Sha256::digest(key.to_string().as_bytes());
            let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
            dir.join(format!("{hex}.out"))
        });
        Cache { path }
    }

    fn get(&self) -> Option<(String, u8)> {
        let text = std::fs::read_to_string(self.path.as_ref()?).ok()?;
        let (code, body) = text.split_once('\n')?;
        Some((body.to_string(), code.parse().ok()?))
    }

    fn put(&self, out: &str, code: u8) -> Result<(), Failure> {
        let Some(path) = &self.path else { return Ok(()) };
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| Failure(format!("cache write to {}: {e}", dir.display())))?;
        }
        std::fs::write(path, format!("{code}\n{out}")).map_err(|e| Failure(format!("cache write to {}: {e}", path.display())))
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let cache = Cache::new(cli);
    let cacheable = !matches!(cli.command, Command::Analyze { .. });
    if cacheable {
        if let Some(hit) = cache.get() {
            return Ok(hit);
        }
    }
    let (out, code) = match &cli.command {
        Command::Analyze { ty, j } => cmd_analyze(cli, ty, j)?,
        Command::Enumerate { max_rank, filter_grading } => cmd_enumerate(cli, *max_rank, *filter_grading)?,
        Command::Verify { suite, tier, n } => cmd_verify(cli, *suite, *tier, *n)?,
        Command::Tables { max_n } => cmd_tables(cli, *max_n)?,
    };
    if cacheable {
        cache.put(&out, code)?;
    }
    Ok((out, code))
}

fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

fn parse_j(s: &str) -> Result<Vec<usize>, Failure> {
    let j: Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse::<usize>()).collect();
    let mut j = j.map_err(|_| Failure(format!("J must be a comma-separated list of indices, got `{s}`")))?;
    j.sort_unstable();
    j.dedup();
    Ok(j)
}

fn render_reports(format: Format, reports: &[RigidityReport]) -> String {
    match format {
        Format::Json if reports.len() == 1 => reports[0].to_json(),
        Format::Json => to_json(&reports),
        Format::Csv => write_csv(reports),
        Format::Text => reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n"),
    }
}

fn cmd_analyze(cli: &Cli, ty: &str, j: &str) -> Result<(String, u8), Failure> {
    let ty: CartanType = ty.parse()?;
    let j = parse_j(j)?;
    let mut opts = AnalyzeOptions::default();
    if let Some(b) = cli.budget {
        opts.grading.budget = b;
    }
    let report = analyze(ty, &j, opts)?;
    let code = if report.conclusion == Conclusion::DiagonalOnDegreeOne { 0 } else { 2 };
    Ok((render_reports(cli.format, &[report]), code))
}

#[derive(Serialize)]
struct EnumerateOutput<'a> {
    max_rank: usize,
    scanned: usize,
    cases: &'a [qcell::rigidity::Case],
    diff: &'a CaseDiff,
}

fn cmd_enumerate(cli: &Cli, max_rank: usize, filter_grading: bool) -> Result<(String, u8), Failure> {
    if max_rank > 9 {
        eprintln!("qcell: warning: max rank {max_rank} is beyond the reference list");
    }
    let e: Enumeration = enumerate_prop_cases(max_rank, EnumerateOptions { filter_grading })?;
    let diff = diff_against_reference(&e);
    let code = if diff.is_empty() { 0 } else { 2 };
    let out = match cli.format {
        Format::Json => to_json(&EnumerateOutput {
            max_rank,
            scanned: e.scanned,
            cases: &e.cases,
            diff: &diff,
        }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["type", "J", "status"])?;
            for c in &e.cases {
                let st = if diff.extra.contains(c) { "extra" } else { "found" };
                w.write_record([c.ty.as_str(), &join(&c.j), st])?;
            }
            for c in &diff.missing {
                w.write_record([c.ty.as_str(), &join(&c.j), "missing"])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure(e.to_string()))?)?
        }
        Format::Text => {
            let mut s = format!("scanned {} cases of rank <= {max_rank}, {} qualify\n", e.scanned, e.cases.len());
            for c in &e.cases {
                s.push_str(&format!("  {c}\n"));
            }
            s.push_str(&format!("diff: {}\n", serde_json::to_string(&diff)?));
            s
        }
    };
    Ok((out, code))
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_verify(cli: &Cli, suite: Suite, tier: u8, n: Option<usize>) -> Result<(String, u8), Failure> {
    let budget = cli.budget.unwrap_or(RootVectorOptions::default().budget);
    match suite {
        Suite::G2 => {
            let r = verify_g2_relations()?;
            let code = if r.all_passed() { 0 } else { 1 };
            let out = match cli.format {
                Format::Json => to_json(&r),
                _ => {
                    let mut s = format!("G2 relations: {}/{} pass\n", r.passed, r.total);
                    for c in &r.certificates {
                        s.push_str(&format!("  [{:?}] {}\n", c.status, c.identity));
                    }
                    s
                }
            };
            Ok((out, code))
        }
        Suite::F4x | Suite::F4y => {
            if !(1..=3).contains(&tier) {
                return Err(Failure(format!("tier must be 1, 2 or 3, got {tier}")));
            }
            let which = if suite == Suite::F4x { F4Which::X } else { F4Which::Y };
            let r = verify_f4_lemmas(which, tier, budget)?;
            // tier 3 is best effort
            let falsified = r.tiers.iter().any(|t| t.failed > 0);
            let exhausted = r.tiers.iter().filter(|t| t.tier < 3).any(|t| t.budget_exceeded > 0);
            let code = if falsified { 1 } else if exhausted { 3 } else { 0 };
            let out = match cli.format {
                Format::Json => to_json(&r),
                _ => {
                    let mut s = String::new();
                    for t in &r.tiers {
                        s.push_str(&format!(
                            "tier {}: {} pass, {} fail, {} over budget ({:.2}s)\n",
                            t.tier, t.passed, t.failed, t.budget_exceeded, t.seconds
                        ));
                        for c in t.certificates.iter().filter(|c| !c.passed()) {
                            s.push_str(&format!("  [{:?}] {}\n", c.status, c.identity));
                        }
                    }
                    s
                }
            };
            Ok((out, code))
        }
        Suite::Symmetric => {
            let ns: Vec<usize> = match n {
                Some(n) => vec![n],
                None => (2..=8).collect(),
            };
            let mut reports = Vec::new();
            let mut ok = true;
            let mut text = String::new();
            for n in ns {
                match symmetric_matrices_pipeline(n) {
                    Ok(r) => {
                        let sym = r.symmetric.as_ref().expect("symmetric checks present");
                        let steps: Vec<String> = sym.steps.iter().map(|s| format!("({}) {}", s.step, s.checks)).collect();
                        let dims: Vec<String> = sym
                            .centralizers
                            .iter()
                            .map(|c| format!("x{}{}:{}", c.root.0, c.root.1, c.dim))
                            .collect();
                        text.push_str(&format!(
                            "C{n}: steps {}; centralizer dims {}; distinct {}; equal to n - i {}\n",
                            steps.join(" "),
                            dims.join(" "),
                            sym.dims_distinct,
                            sym.claim_holds
                        ));
                        ok &= sym.claim_holds;
                        reports.push(r);
                    }
                    Err(e) => {
                        text.push_str(&format!("C{n}: {e}\n"));
                        ok = false;
                    }
                }
            }
            let out = match cli.format {
                Format::Json => to_json(&reports),
                Format::Csv => write_csv(&reports),
                Format::Text => text,
            };
            Ok((out, if ok { 0 } else { 1 }))
        }
    }
}

#[derive(Serialize)]
struct TableRow {
    #[serde(rename = "type")]
    ty: String,
    #[serde(rename = "J")]
    j: Vec<usize>,
    theta_degrees: Vec<i64>,
}

fn cmd_tables(cli: &Cli, max_n: usize) -> Result<(String, u8), Failure> {
    let mut cases: Vec<(CartanType, Vec<usize>)> = vec![
        (CartanType::new(Family::G, 2)?, vec![1]),
        (CartanType::new(Family::G, 2)?, vec![2]),
        (CartanType::new(Family::B, 6)?, vec![2, 5]),
    ];
    let f4 = CartanType::new(Family::F, 4)?;
    for mask in 1u32..16 {
        cases.push((f4, (1..=4).filter(|i| mask >> (i - 1) & 1 == 1).collect()));
    }
    for n in 2..=max_n {
        cases.push((CartanType::new(Family::C, n)?, vec![n]));
    }
    let mut rows = Vec::new();
    for (ty, j) in cases {
        rows.push(TableRow {
            ty: ty.to_string(),
            theta_degrees: theta_degrees(ty, &j)?,
            j,
        });
    }
    let out = match cli.format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["type", "J", "theta_degrees"])?;
            for r in &rows {
                let d: Vec<String> = r.theta_degrees.iter().map(|x| x.to_string()).collect();
                w.write_record([r.ty.as_str(), &join(&r.j), &d.join(" ")])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure(e.to_string()))?)?
        }
        Format::Text => rows
            .iter()
            .map(|r| format!("{:<4} {:<8} {:?}\n", r.ty, join(&r.j), r.theta_degrees))
            .collect(),
    };
    Ok((out, 0))
}
