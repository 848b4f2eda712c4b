//! `rlt`: compile binomial-sum specifications into linear representations,
//! evaluate and minimize them, identify run length transforms, tabulate block
//! averages, and verify the registered fixtures.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use rlt_core::analysis;
use rlt_core::baumsweet::{self, BsSpec};
use rlt_core::repfile::{Provenance, RepFile};
use rlt_core::rlt::recurrence_display;
use rlt_core::{
    compile, fixture, fixtures, identify_rlt, verify_fixture, LinearRecurrence,
    LinearRepresentation, SumSpec,
};

#[derive(Parser)]
#[command(name = "rlt", version, about = "Run length transforms of linear recurrences, via carry automata and exact linear representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a sum specification into a representation file
    Compile(CompileArgs),
    /// Evaluate a representation over a range of n
    Eval(EvalArgs),
    /// Minimize a representation file
    Minimize(MinimizeArgs),
    /// Decide exact equivalence of two representation files
    Equiv(EquivArgs),
    /// Identify the linear recurrence whose run length transform a representation is
    Identify(IdentifyArgs),
    /// Apply the run length transform of an explicit recurrence
    RltApply(RltApplyArgs),
    /// Exact block sums g(r), averages mu(r), and the minimal polynomial of gamma0+gamma1
    Average(AverageArgs),
    /// Generalized Baum-Sweet values T_m(n)
    Baumsweet(BaumsweetArgs),
    /// Verify registered fixtures end to end
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CompileArgs {
    /// Coefficients a1,a2,a3,a4 of binom(a1 n + a2 k, a3 n + a4 k) binom(n,k)
    #[arg(long = "a", value_name = "A1,A2,A3,A4")]
    spec: String,
    /// Minimize the representation before writing it
    #[arg(long)]
    minimize: bool,
    /// Output path (stdout when omitted)
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Representation file
    rep: PathBuf,
    /// Single value or inclusive range LO..HI
    #[arg(long = "n", value_name = "N|LO..HI")]
    range: String,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct MinimizeArgs {
    /// Representation file
    rep: PathBuf,
    /// Output path (stdout when omitted)
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EquivArgs {
    rep1: PathBuf,
    rep2: PathBuf,
}

#[derive(Args)]
struct IdentifyArgs {
    /// Representation file
    rep: PathBuf,
}

#[derive(Args)]
struct RltApplyArgs {
    /// Recurrence coefficients d0,...,dr for S(n+1) = d0 S(n) + ... + dr S(n-r)
    #[arg(long = "d", value_name = "D0,...,DR")]
    coeffs: String,
    /// Initial values c1,...,cr (S(0) = 1 is implied)
    #[arg(long = "c", value_name = "C1,...,CR", default_value = "")]
    initials: String,
    /// Single value or inclusive range LO..HI
    #[arg(long = "n", value_name = "N|LO..HI")]
    range: String,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct AverageArgs {
    /// Representation file
    rep: PathBuf,
    /// Single value or inclusive range LO..HI
    #[arg(long = "r", value_name = "R|LO..HI", default_value = "0..8")]
    range: String,
    /// Check the published closed form (requires provenance matching a known fixture)
    #[arg(long = "closed-form")]
    closed_form: bool,
}

#[derive(Args)]
struct BaumsweetArgs {
    /// Family parameter (m >= 2)
    #[arg(long = "m")]
    m: u32,
    /// Single value or inclusive range LO..HI
    #[arg(long = "n", value_name = "N|LO..HI")]
    range: String,
    /// Cross-validate the sum, the run predicate, and the witness
    #[arg(long)]
    check: bool,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Fixture name (all fixtures when omitted)
    name: Option<String>,
    /// Sweep bound for the triple-equality check
    #[arg(long, default_value_t = 4096)]
    bound: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Comma-separated values on one line
    Plain,
    /// OEIS b-file lines: "n value"
    Bfile,
    /// CSV with an "n,value" header
    Csv,
    /// JSON array of [n, value] pairs (values as strings)
    Json,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Compile(args) => cmd_compile(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Minimize(args) => cmd_minimize(args),
        Command::Equiv(args) => cmd_equiv(args),
        Command::Identify(args) => cmd_identify(args),
        Command::RltApply(args) => cmd_rlt_apply(args),
        Command::Average(args) => cmd_average(args),
        Command::Baumsweet(args) => cmd_baumsweet(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn parse_spec(text: &str) -> Result<SumSpec> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|p| p.trim().parse::<i64>().with_context(|| format!("bad coefficient {p:?}")))
        .collect::<Result<_>>()?;
    let [a1, a2, a3, a4] = parts.as_slice() else {
        bail!("--a expects exactly four comma-separated integers, got {}", parts.len());
    };
    Ok(SumSpec::new(*a1, *a2, *a3, *a4)?)
}

fn parse_i64_list(text: &str) -> Result<Vec<i64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| p.trim().parse::<i64>().with_context(|| format!("bad integer {p:?}")))
        .collect()
}

/// `N` or inclusive `LO..HI`; an inverted range is empty, not an error.
fn parse_range(text: &str) -> Result<Vec<u64>> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u64 = lo.trim().parse().with_context(|| format!("bad range start {lo:?}"))?;
        let hi: u64 = hi.trim().parse().with_context(|| format!("bad range end {hi:?}"))?;
        if lo > hi {
            return Ok(Vec::new());
        }
        Ok((lo..=hi).collect())
    } else {
        let n: u64 = text.trim().parse().with_context(|| format!("bad value {text:?}"))?;
        Ok(vec![n])
    }
}

fn load_rep(path: &Path) -> Result<(LinearRepresentation, RepFile)> {
    let file = RepFile::load(path).with_context(|| format!("reading {}", path.display()))?;
    let rep = file.to_rep().with_context(|| format!("parsing {}", path.display()))?;
    Ok((rep, file))
}

fn write_rep(rep: &LinearRepresentation, provenance: Option<Provenance>, out: Option<&Path>) -> Result<()> {
    let file = RepFile::from_rep(rep, provenance);
    match out {
        Some(path) => file.save(path).with_context(|| format!("writing {}", path.display()))?,
        None => println!("{}", file.to_json_string()?),
    }
    Ok(())
}

fn print_values<V: Display>(pairs: &[(u64, V)], format: Format) {
    match format {
        Format::Plain => {
            let line: Vec<String> = pairs.iter().map(|(_, v)| v.to_string()).collect();
            if !line.is_empty() {
                println!("{}", line.join(","));
            }
        }
        Format::Bfile => {
            for (n, v) in pairs {
                println!("{n} {v}");
            }
        }
        Format::Csv => {
            println!("n,value");
            for (n, v) in pairs {
                println!("{n},{v}");
            }
        }
        Format::Json => {
            let entries: Vec<String> = pairs
                .iter()
                .map(|(n, v)| format!("[{n},\"{v}\"]"))
                .collect();
            println!("[{}]", entries.join(","));
        }
    }
}

fn cmd_compile(args: CompileArgs) -> Result<ExitCode> {
    let spec = parse_spec(&args.spec)?;
    let rep = compile(&spec, args.minimize);
    let provenance = Provenance {
        spec: Some(spec.as_array()),
        minimized: Some(args.minimize),
        tool_version: Some(rlt_core::VERSION.to_string()),
    };
    write_rep(&rep, Some(provenance), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_eval(args: EvalArgs) -> Result<ExitCode> {
    let (rep, _) = load_rep(&args.rep)?;
    let ns = parse_range(&args.range)?;
    let pairs: Vec<(u64, String)> = ns
        .iter()
        .map(|&n| {
            let value = rep.evaluate(n);
            let text = if value.is_integer() {
                value.to_integer().to_string()
            } else {
                value.to_string()
            };
            (n, text)
        })
        .collect();
    print_values(&pairs, args.format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_minimize(args: MinimizeArgs) -> Result<ExitCode> {
    let (rep, file) = load_rep(&args.rep)?;
    let minimized = rep.minimize();
    let provenance = Provenance {
        spec: file.provenance.as_ref().and_then(|p| p.spec),
        minimized: Some(true),
        tool_version: Some(rlt_core::VERSION.to_string()),
    };
    write_rep(&minimized, Some(provenance), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_equiv(args: EquivArgs) -> Result<ExitCode> {
    let (rep1, _) = load_rep(&args.rep1)?;
    let (rep2, _) = load_rep(&args.rep2)?;
    if rep1.order() != rep2.order() {
        bail!(
            "reading orders differ ({} vs {}); reverse one side first",
            rep1.order().as_str(),
            rep2.order().as_str()
        );
    }
    // Equivalence is exponential in the combined rank; compare minimal forms.
    let eq = rep1.minimize().equivalent(&rep2.minimize());
    println!("equivalent: {eq}");
    Ok(if eq { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn recurrence_summary(rec: &LinearRecurrence) -> String {
    let initials: Vec<String> = rec.initials().iter().map(|x| x.to_string()).collect();
    format!("{}; initial values {}", recurrence_display(rec), initials.join(", "))
}

fn cmd_identify(args: IdentifyArgs) -> Result<ExitCode> {
    let (rep, _) = load_rep(&args.rep)?;
    let rep = match rep.order() {
        rlt_core::ReadingOrder::Msd => rep,
        rlt_core::ReadingOrder::Lsd => rep.reverse(),
    };
    match identify_rlt(&rep) {
        Ok(rec) => {
            println!("order: {}", rec.order());
            println!("{}", recurrence_summary(&rec));
            let terms: Vec<String> = rec.terms(10).iter().map(|x| x.to_string()).collect();
            println!("terms: {}", terms.join(", "));
            match fixtures().into_iter().find(|f| f.recurrence == rec) {
                Some(f) => println!("fixture match: {} ({})", f.name, f.sequence),
                None => println!("fixture match: none"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(failure) => {
            println!("not a run length transform: {failure}");
            Ok(ExitCode::FAILURE)
        }
    }
}

fn cmd_rlt_apply(args: RltApplyArgs) -> Result<ExitCode> {
    let coeffs = parse_i64_list(&args.coeffs)?;
    let mut initials = vec![1i64];
    initials.extend(parse_i64_list(&args.initials)?);
    let rec = LinearRecurrence::from_i64(&coeffs, &initials)?;
    let ns = parse_range(&args.range)?;
    let pairs: Vec<(u64, String)> = ns
        .iter()
        .map(|&n| (n, rec.run_length_transform(n).to_string()))
        .collect();
    print_values(&pairs, args.format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_average(args: AverageArgs) -> Result<ExitCode> {
    let (rep, file) = load_rep(&args.rep)?;
    let rep = match rep.order() {
        rlt_core::ReadingOrder::Msd => rep,
        rlt_core::ReadingOrder::Lsd => rep.reverse(),
    };
    let rs = parse_range(&args.range)?;
    println!("r,g(r),mu(r)");
    for &r in &rs {
        let r = u32::try_from(r).context("r out of range")?;
        let stats = analysis::block_stats(&rep, r)?;
        println!("{r},{},{}", stats.g_r, stats.mu_r);
    }
    let poly = analysis::minimal_polynomial(&rep)?;
    println!("minimal polynomial of gamma0+gamma1: {poly}");

    if args.closed_form {
        let name = file
            .provenance
            .as_ref()
            .and_then(|p| p.spec)
            .and_then(|spec| {
                fixtures()
                    .into_iter()
                    .find(|f| f.spec.as_array() == spec)
                    .map(|f| f.name)
            })
            .context("--closed-form needs provenance matching a registered fixture")?;
        let form = analysis::known_average_form(name)
            .with_context(|| format!("no published closed form for {name} (order 3+ recurrences are omitted)"))?;
        let report = analysis::verify_closed_form(&rep, form.roots, 20, 1e-9)?;
        let mut table_err = 0f64;
        for r in 0..=report.r_max {
            let exact = analysis::block_average(&rep, r)?
                .to_f64()
                .context("average out of double range")?;
            let rel = ((form.mu)(r) - exact).abs() / exact.abs().max(f64::MIN_POSITIVE);
            table_err = table_err.max(rel);
        }
        let passed = report.passed && table_err <= report.tol;
        println!(
            "closed form [{name}]: fit err {:.3e}, table err {:.3e}, tol {:.0e}: {}",
            report.max_rel_err,
            table_err,
            report.tol,
            if passed { "pass" } else { "FAIL" }
        );
        if !passed {
            return Ok(ExitCode::FAILURE);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_baumsweet(args: BaumsweetArgs) -> Result<ExitCode> {
    let spec = BsSpec::new(args.m)?;
    let ns = parse_range(&args.range)?;
    if args.check {
        let rec = baumsweet::tm_run_length_form(&spec);
        for &n in &ns {
            let sum = baumsweet::tm_sum(&spec, n);
            let predicate = u64::from(baumsweet::tm_predicate(&spec, n));
            let transform = rec.run_length_transform(n);
            let witness = baumsweet::tm_witness(&spec, n);
            let witness_consistent = match witness {
                Some(_) => sum == 1,
                None => sum == 0,
            };
            if sum != predicate || transform != sum.into() || !witness_consistent {
                eprintln!(
                    "mismatch at n={n}: sum={sum} predicate={predicate} transform={transform} witness={witness:?}"
                );
                return Ok(ExitCode::FAILURE);
            }
        }
        println!("checked {} values of T_{}: sum, predicate, transform, and witness agree", ns.len(), args.m);
        return Ok(ExitCode::SUCCESS);
    }
    let pairs: Vec<(u64, u64)> = ns.iter().map(|&n| (n, baumsweet::tm_sum(&spec, n))).collect();
    print_values(&pairs, args.format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let selected = match &args.name {
        Some(name) => vec![fixture(name).with_context(|| format!("unknown fixture {name:?}"))?],
        None => fixtures(),
    };
    let mut passed = 0usize;
    for f in &selected {
        let report = verify_fixture(f, args.bound);
        print!("{report}");
        passed += usize::from(report.passed());
    }
    println!("{passed}/{} fixtures passed (bound {})", selected.len(), args.bound);
    Ok(if passed == selected.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
