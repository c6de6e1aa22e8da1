mod output;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use output::{emit, Document, Format};
use qlp::arith::rational::to_decimal;
use qlp::arith::{format_rational, parse_rational, BigRational};
use qlp::clifford::{build_code, clifford_hamming, detection_report, distance_distribution, Reading};
use qlp::codefile::{CodeFile, LoadedCode};
use qlp::lp::{dist2_bound, feasible_at, lp_bound, BoundOptions, Feasibility, LpError, LpOptions};
use qlp::metric::{profile, validate, FamilySpec};
use qlp::oracle::{verify_lambda, verify_wtj, OracleError};
use qlp::su2::{code_quarter, code_third, su2_report};
use qlp::wtj::{lambda_signature, wtj_matrix};

#[derive(Parser)]
#[command(name = "qlp", version, about = "Exact quantum linear programming bounds and code verification")]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// qhamming, su2, su-sym, su-ext, clifford-odd, clifford-even, spinorial or semispinorial
    #[arg(long)]
    family: String,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    w: Option<u32>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, CliError> {
        self.spec_with_n(self.n)
    }

    fn spec_with_n(&self, n: Option<u32>) -> Result<FamilySpec, CliError> {
        let spec = FamilySpec::from_parts(&self.family, self.q, n, self.w).map_err(usage)?;
        validate(&spec).map_err(usage)?;
        Ok(spec)
    }
}

#[derive(Args, Clone, Copy)]
struct LpFlags {
    /// Add the shadow-type inequalities of a self-dual family.
    #[arg(long)]
    self_dual: bool,
    /// Restrict to pure codes.
    #[arg(long)]
    pure: bool,
}

impl From<LpFlags> for LpOptions {
    fn from(f: LpFlags) -> Self {
        LpOptions {
            self_dual: f.self_dual,
            pure: f.pure,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dump the W_t(j) matrix and, for self-dual families, the signs lambda_j.
    Wtj {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Bracket the linear programming bound on the code value.
    Bound {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        flags: LpFlags,
        /// Also report the largest integer value that is feasible.
        #[arg(long)]
        integer: bool,
        /// Bisection tolerance as p/q.
        #[arg(long, default_value = "1/100000", value_parser = parse_rat)]
        tol: BigRational,
        /// Decimal places of the rounded value.
        #[arg(long, default_value_t = 3)]
        digits: u32,
    },
    /// Exact feasibility of the linear program at one value.
    Feasible {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        d: usize,
        #[arg(long = "K", alias = "k", value_parser = parse_rat)]
        k: BigRational,
        #[command(flatten)]
        flags: LpFlags,
    },
    /// Bounds over a grid of sizes and distances.
    Table {
        /// qhamming, su2, su-sym, su-ext, clifford-odd, clifford-even, spinorial or semispinorial
        #[arg(long)]
        family: String,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        w: Option<u32>,
        /// Size range, `a..b` inclusive or a single value.
        #[arg(long, value_parser = parse_range)]
        n: (u32, u32),
        /// Distance range, `a..b` inclusive or a single value.
        #[arg(long, value_parser = parse_range)]
        d: (u32, u32),
        #[command(flatten)]
        flags: LpFlags,
        #[arg(long, default_value = "1/100000", value_parser = parse_rat)]
        tol: BigRational,
        #[arg(long, default_value_t = 3)]
        digits: u32,
    },
    /// Write a code file for one of the built-in constructions.
    Construct {
        #[arg(long, value_enum)]
        code: Construction,
        /// Hamming parameter for clifford-hamming.
        #[arg(long)]
        s: Option<usize>,
        /// Representation parameter for the su(2) codes.
        #[arg(long)]
        n: Option<u32>,
        /// Family recorded in a Clifford code file.
        #[arg(long, default_value = "clifford-odd")]
        family: String,
    },
    /// Verify a code file: distance, purity and distance distributions.
    Verify {
        /// Code file; `-` or absent reads stdin.
        #[arg(long)]
        code: Option<PathBuf>,
        /// Reading of a Clifford code: even, odd or spinorial.
        #[arg(long)]
        reading: Option<String>,
    },
    /// Compare the closed forms with brute-force operator computations.
    Oracle {
        #[command(flatten)]
        family: FamilyArgs,
        /// Sweep n from the smallest valid value up to this one.
        #[arg(long)]
        max_n: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    CliffordHamming,
    Su2Third,
    Su2Quarter,
}

#[derive(Debug)]
enum CliError {
    /// Bad arguments or input; exit code 2.
    Usage(String),
    /// A check ran and failed; exit code 1.
    Failed(Document),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

impl std::fmt::Debug for Document {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.json)
    }
}

fn parse_rat(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let bad = || format!("expected `a..b` or a number, got `{s}`");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: u32 = a.parse().map_err(|_| bad())?;
    let b: u32 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn rat_str(x: &BigRational) -> String {
    format_rational(x)
}

fn rats(xs: &[BigRational]) -> Vec<String> {
    xs.iter().map(rat_str).collect()
}

const SELF_DUAL_FAMILIES: &str = "qhamming (q=2), su2, su-sym (q=2), su-ext (n=2w), clifford-odd, clifford-even, spinorial, semispinorial (even n)";

fn lp_error(e: LpError) -> CliError {
    match e {
        LpError::NotSelfDual(f) => CliError::Usage(format!(
            "{f} has no self-dual structure; self-dual families: {SELF_DUAL_FAMILIES}"
        )),
        other => usage(other),
    }
}

fn cmd_wtj(fa: &FamilyArgs) -> Result<Document, CliError> {
    let spec = fa.spec()?;
    let w = wtj_matrix(&spec).map_err(usage)?;
    let lambda = lambda_signature(&spec).map_err(usage)?.signs().map(<[i8]>::to_vec);
    let size = w.size();
    let entries: Vec<Vec<String>> = (0..size).map(|t| rats(w.row(t))).collect();
    let mut header = vec!["t".to_string()];
    header.extend((0..size).map(|j| j.to_string()));
    let mut rows: Vec<Vec<String>> = entries
        .iter()
        .enumerate()
        .map(|(t, row)| std::iter::once(t.to_string()).chain(row.iter().cloned()).collect())
        .collect();
    if let Some(l) = &lambda {
        rows.push(std::iter::once("lambda".to_string()).chain(l.iter().map(|x| x.to_string())).collect());
    }
    let json = json!({ "family": spec, "entries": entries, "lambda": lambda });
    Ok(Document::new(json, header, rows))
}

fn bound_json(r: &qlp::lp::BoundResult, digits: u32) -> Value {
    let mut v = serde_json::to_value(r).expect("bound serializes");
    v["value"] = json!(r.value().map(rat_str));
    v["decimal"] = json!(r.value().map(|x| to_decimal(x, digits)));
    v
}

fn cmd_bound(
    fa: &FamilyArgs,
    d: usize,
    flags: LpFlags,
    integer: bool,
    tol: &BigRational,
    digits: u32,
) -> Result<Document, CliError> {
    let spec = fa.spec()?;
    let opts = BoundOptions {
        lp: flags.into(),
        tolerance: tol.clone(),
        integer,
    };
    let r = lp_bound(&spec, d, &opts).map_err(lp_error)?;
    let mut json = bound_json(&r, digits);
    let mut pairs = vec![
        ("family".to_string(), spec.to_string()),
        ("d".to_string(), d.to_string()),
        ("feasible_at".to_string(), r.feasible_at.as_ref().map(rat_str).unwrap_or_default()),
        ("infeasible_at".to_string(), r.infeasible_at.as_ref().map(rat_str).unwrap_or_else(|| "none".into())),
        ("decimal".to_string(), r.value().map(|x| to_decimal(x, digits)).unwrap_or_default()),
    ];
    if let Some(k) = &r.integer_bound {
        pairs.push(("integer_bound".to_string(), k.to_string()));
    }
    if d == 2 {
        // the closed-form distance-2 value, shown next to the LP bracket
        if let Ok(a) = dist2_bound(&spec) {
            let v = a.value().map(rat_str);
            json["dist2_bound"] = json!(v);
            pairs.push(("dist2_bound".to_string(), v.unwrap_or_else(|| "not applicable".into())));
        }
    }
    Ok(Document::key_value(json, pairs))
}

fn cmd_feasible(fa: &FamilyArgs, d: usize, k: &BigRational, flags: LpFlags) -> Result<Document, CliError> {
    let spec = fa.spec()?;
    let verdict = feasible_at(&spec, k, d, flags.into()).map_err(lp_error)?;
    let witness = match &verdict {
        Feasibility::Feasible(a) => Some(rats(a)),
        Feasibility::Infeasible => None,
    };
    let json = json!({
        "family": spec,
        "d": d,
        "K": rat_str(k),
        "feasible": verdict.is_feasible(),
        "witness": witness,
    });
    let mut pairs = vec![
        ("family".to_string(), spec.to_string()),
        ("K".to_string(), rat_str(k)),
        ("feasible".to_string(), verdict.is_feasible().to_string()),
    ];
    if let Some(w) = witness {
        for (t, a) in w.into_iter().enumerate() {
            pairs.push((format!("A_{t}"), a));
        }
    }
    Ok(Document::key_value(json, pairs))
}

#[allow(clippy::too_many_arguments)]
fn cmd_table(
    family: &str,
    q: Option<u32>,
    w: Option<u32>,
    ns: (u32, u32),
    ds: (u32, u32),
    flags: LpFlags,
    tol: &BigRational,
    digits: u32,
) -> Result<Document, CliError> {
    let fa = FamilyArgs {
        family: family.to_string(),
        q,
        n: None,
        w,
    };
    let specs: Vec<FamilySpec> = (ns.0..=ns.1)
        .map(|n| fa.spec_with_n(Some(n)))
        .collect::<Result<_, _>>()?;
    let cells: Vec<(usize, usize)> = (0..specs.len())
        .flat_map(|i| (ds.0..=ds.1).map(move |d| (i, d as usize)))
        .collect();
    let opts = BoundOptions {
        lp: flags.into(),
        tolerance: tol.clone(),
        integer: false,
    };
    let results: Vec<Option<qlp::lp::BoundResult>> = cells
        .par_iter()
        .map(|&(i, d)| {
            let r = profile(&specs[i]).map_err(usage)?.r;
            if d < 1 || d > r + 1 {
                return Ok(None);
            }
            lp_bound(&specs[i], d, &opts).map(Some).map_err(lp_error)
        })
        .collect::<Result<_, CliError>>()?;
    let nd = (ds.1 - ds.0 + 1) as usize;
    let mut header = vec!["n".to_string()];
    header.extend((ds.0..=ds.1).map(|d| format!("d={d}")));
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for (i, spec) in specs.iter().enumerate() {
        let mut row = vec![spec.n().to_string()];
        let mut jcells = Vec::new();
        for (k, d) in (ds.0..=ds.1).enumerate() {
            match &results[i * nd + k] {
                Some(r) => {
                    row.push(r.value().map(|x| to_decimal(x, digits)).unwrap_or_default());
                    let mut v = bound_json(r, digits);
                    v["d"] = json!(d);
                    jcells.push(v);
                }
                None => {
                    row.push(String::new());
                    jcells.push(Value::Null);
                }
            }
        }
        rows.push(row);
        json_rows.push(json!({ "n": spec.n(), "cells": jcells }));
    }
    let json = json!({
        "family": family,
        "self_dual": flags.self_dual,
        "pure": flags.pure,
        "rows": json_rows,
    });
    Ok(Document::new(json, header, rows))
}

fn cmd_construct(code: Construction, s: Option<usize>, n: Option<u32>, family: &str) -> Result<String, CliError> {
    let need_n = || n.ok_or_else(|| CliError::Usage("--n is required for su(2) codes".into()));
    let file = match code {
        Construction::CliffordHamming => {
            let s = s.ok_or_else(|| CliError::Usage("--s is required for clifford-hamming".into()))?;
            let stab = clifford_hamming(s).map_err(usage)?;
            let spec = FamilySpec::from_parts(family, None, Some(stab.n as u32), None).map_err(usage)?;
            CodeFile::from_stabilizer(spec, &stab)
        }
        Construction::Su2Third => {
            let n = need_n()?;
            CodeFile::from_su2(n, &code_third(n).map_err(usage)?)
        }
        Construction::Su2Quarter => {
            let n = need_n()?;
            if n == 0 {
                return Err(CliError::Usage("n must be at least 1".into()));
            }
            CodeFile::from_su2(n, &code_quarter(n))
        }
    };
    // round-trip through the loader so a bad construction never reaches disk
    file.load().map_err(usage)?;
    Ok(file.to_json() + "\n")
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(usage)?;
            Ok(s)
        }
    }
}

fn cmd_verify(code: Option<&PathBuf>, reading: Option<&str>) -> Result<Document, CliError> {
    let text = read_input(code)?;
    let loaded = CodeFile::parse(&text).and_then(|f| f.load()).map_err(usage)?;
    match loaded {
        LoadedCode::Clifford { family, code } => {
            let reading = match reading {
                Some(s) => Reading::parse(s).ok_or_else(|| CliError::Usage(format!("unknown reading `{s}`")))?,
                None => Reading::for_family(&family).map(|(r, _)| r).unwrap_or(Reading::Odd),
            };
            let object = build_code(&code).map_err(usage)?;
            let report = detection_report(&object, reading).map_err(|e| {
                CliError::Failed(Document::key_value(json!({ "error": e.to_string() }), vec![("error".into(), e.to_string())]))
            })?;
            let fam = reading.family(code.n);
            let dist = distance_distribution(&object, &fam).ok();
            let (b_ok, a_ok) = match &dist {
                Some(dd) => {
                    let w = wtj_matrix(&fam).map_err(usage)?;
                    (w.apply(&dd.a) == dd.b, w.apply(&dd.b) == dd.a)
                }
                None => (true, true),
            };
            let json = json!({
                "kind": "clifford-stabilizer",
                "report": report,
                "distribution": dist,
                "b_equals_wa": dist.as_ref().map(|_| b_ok),
                "a_equals_wb": dist.as_ref().map(|_| a_ok),
            });
            let mut pairs = vec![
                ("reading".to_string(), format!("{reading:?}").to_lowercase()),
                ("n".to_string(), report.n.to_string()),
                ("dimension".to_string(), report.dimension.to_string()),
                ("min_distance".to_string(), report.min_distance.to_string()),
                ("pure".to_string(), report.is_pure.to_string()),
                ("nondegenerate".to_string(), report.is_nondegenerate.to_string()),
            ];
            if let Some(dd) = &dist {
                pairs.push(("A".to_string(), rats(&dd.a).join(" ")));
                pairs.push(("B".to_string(), rats(&dd.b).join(" ")));
                pairs.push(("B = W A".to_string(), b_ok.to_string()));
                pairs.push(("A = W B".to_string(), a_ok.to_string()));
            }
            let doc = Document::key_value(json, pairs);
            if b_ok && a_ok {
                Ok(doc)
            } else {
                Err(CliError::Failed(doc))
            }
        }
        LoadedCode::Su2 { n, vectors } => {
            if reading.is_some() {
                return Err(CliError::Usage("--reading applies to Clifford codes only".into()));
            }
            let report = su2_report(n, &vectors).map_err(usage)?;
            let json = json!({ "kind": "su2-vectors", "report": report });
            let pairs = vec![
                ("n".to_string(), n.to_string()),
                ("dimension".to_string(), report.dimension.to_string()),
                ("min_distance".to_string(), report.min_distance.to_string()),
            ];
            Ok(Document::key_value(json, pairs))
        }
    }
}

fn min_n(family: &str) -> u32 {
    match family {
        "su-ext" | "semispinorial" => 2,
        _ => 1,
    }
}

fn cmd_oracle(fa: &FamilyArgs, max_n: Option<u32>) -> Result<Document, CliError> {
    let specs: Vec<FamilySpec> = match max_n {
        Some(m) => {
            let lo = fa.n.unwrap_or_else(|| match (fa.family.as_str(), fa.w) {
                ("su-ext", Some(w)) => w + 1,
                (f, _) => min_n(f),
            });
            (lo..=m).map(|n| fa.spec_with_n(Some(n))).collect::<Result<_, _>>()?
        }
        None => vec![fa.spec()?],
    };
    let mut reports = Vec::new();
    let mut rows = Vec::new();
    let mut all = true;
    for spec in specs {
        let wtj = verify_wtj(&spec).map_err(usage)?;
        let lambda = match verify_lambda(&spec) {
            Ok(r) => Some(r),
            Err(OracleError::NotSelfDual(_)) => None,
            Err(e) => return Err(usage(e)),
        };
        let passed = wtj.matches && lambda.as_ref().is_none_or(|l| l.matches);
        all &= passed;
        rows.push(vec![
            spec.to_string(),
            if wtj.matches {
                "match".to_string()
            } else {
                format!("{} mismatches", wtj.mismatches.len())
            },
            match &lambda {
                Some(l) if l.matches => "match".to_string(),
                Some(_) => "mismatch".to_string(),
                None => "not self-dual".to_string(),
            },
            if passed { "PASS" } else { "FAIL" }.to_string(),
        ]);
        reports.push(json!({ "family": spec, "wtj": wtj, "lambda": lambda, "passed": passed }));
    }
    let json = json!({ "reports": reports, "passed": all });
    let header = ["family", "wtj", "lambda", "verdict"].map(String::from).to_vec();
    let doc = Document::new(json, header, rows);
    if all {
        Ok(doc)
    } else {
        Err(CliError::Failed(doc))
    }
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("QLP_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("QLP_THREADS must be a positive integer, got `{v}`")))?;
        if n == 0 {
            return Err(CliError::Usage("QLP_THREADS must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(usage)?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    configure_threads()?;
    let fmt = |default: Format| cli.format.unwrap_or(default);
    let doc = match &cli.cmd {
        Command::Wtj { family } => cmd_wtj(family).map(|d| (d, fmt(Format::Csv))),
        Command::Bound {
            family,
            d,
            flags,
            integer,
            tol,
            digits,
        } => cmd_bound(family, *d, *flags, *integer, tol, *digits).map(|d| (d, fmt(Format::Json))),
        Command::Feasible { family, d, k, flags } => cmd_feasible(family, *d, k, *flags).map(|d| (d, fmt(Format::Json))),
        Command::Table {
            family,
            q,
            w,
            n,
            d,
            flags,
            tol,
            digits,
        } => cmd_table(family, *q, *w, *n, *d, *flags, tol, *digits).map(|d| (d, fmt(Format::Md))),
        Command::Construct { code, s, n, family } => return cmd_construct(*code, *s, *n, family).map(|t| (t, true)),
        Command::Verify { code, reading } => cmd_verify(code.as_ref(), reading.as_deref()).map(|d| (d, fmt(Format::Json))),
        Command::Oracle { family, max_n } => cmd_oracle(family, *max_n).map(|d| (d, fmt(Format::Json))),
    };
    match doc {
        Ok((d, f)) => Ok((d.render(f), true)),
        Err(CliError::Failed(d)) => {
            let f = cli.format.unwrap_or(Format::Json);
            Ok((d.render(f), false))
        }
        Err(e) => Err(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            if let Err(e) = emit(&text, cli.out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(_)) => ExitCode::from(1),
    }
}
