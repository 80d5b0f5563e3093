//! Command-line front end. [`run`] does all the work so tests can drive it
//! without spawning a process.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use radicality::arith::prime_power;
use radicality::catalog::{self, CatalogEntry, GroupResult};
use radicality::density::{self, Stop};
use radicality::fields::Field;
use radicality::psl2::{self, PslClassData, ScanRow};
use radicality::roots::{
    power_image_with, Probability, Statement, StructuralBudget, VerificationReport,
};
use radicality::spec_parser::parse_spec;
use radicality::{Error, Execution, DEFAULT_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Environment variable overriding the default order cap.
pub const CAP_ENV: &str = "RADICALITY_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "radicality",
    version,
    about = "Probability that a group element has an r-th root"
)]
struct Cli {
    /// Run every sweep on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prob_r(G) for one group and one or more exponents.
    Prob(ProbArgs),
    /// Run the verification suite over a catalog of groups.
    Verify(VerifyArgs),
    /// Compare the PSL(2,q) closed form against enumeration.
    Psl(PslArgs),
    /// Trace the density construction for a target probability.
    Density(DensityArgs),
}

#[derive(Args, Debug)]
struct Format {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args, Debug)]
struct ProbArgs {
    /// Group in the DSL, e.g. "C2^3 x S4" or "PSL(2,5)". Dn is dihedral of order 2n.
    #[arg(long)]
    group: String,
    #[arg(long, value_delimiter = ',', required = true)]
    r: Vec<u64>,
    #[command(flatten)]
    format: Format,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// `builtin` or a file with one group per line.
    #[arg(long, default_value = "builtin")]
    catalog: String,
    /// Inclusive exponent range, `LO..HI`.
    #[arg(long, default_value = "2..6")]
    r_range: String,
    /// Print the catalog and exit.
    #[arg(long)]
    list_catalog: bool,
    /// Include every individual check in the report, not only failures.
    #[arg(long)]
    details: bool,
    #[command(flatten)]
    format: Format,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args, Debug)]
struct PslArgs {
    #[arg(long, value_delimiter = ',')]
    q: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    r: Vec<u64>,
    /// Default to every prime power 4 <= q <= 32 and r in 2..6.
    #[arg(long)]
    scan: bool,
    /// Add class representatives with measured and expected centralizers.
    #[arg(long)]
    classes: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args, Debug)]
struct DensityArgs {
    /// Target as NUM/DEN.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long)]
    r: u64,
    #[arg(long, default_value = "1/10000")]
    eps: String,
    #[arg(long, default_value_t = 64)]
    max_steps: usize,
    /// Build and enumerate the realizable prefixes (r = 2 only).
    #[arg(long)]
    realize: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    cap: Option<usize>,
}

enum Failure {
    Core(Error),
    Input(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

type Outcome = std::result::Result<i32, Failure>;

struct Ctx<'a> {
    command: Vec<String>,
    exec: Execution,
    env_cap: Option<String>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn cap(&self, flag: Option<usize>) -> std::result::Result<usize, Failure> {
        if let Some(c) = flag {
            return Ok(c);
        }
        match &self.env_cap {
            None => Ok(DEFAULT_CAP),
            Some(v) => v.trim().parse().map_err(|_| {
                Failure::Input(format!(
                    "{CAP_ENV} must be a non-negative integer, got {v:?}"
                ))
            }),
        }
    }

    fn report<T: Serialize>(&mut self, results: &T, summary: serde_json::Value) -> io::Result<()> {
        let doc = json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "results": results,
            "summary": summary,
        });
        serde_json::to_writer_pretty(&mut *self.out, &doc)?;
        writeln!(self.out)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, std::env::var(CAP_ENV).ok(), out, err)
}

/// [`run`] with the cap override passed in rather than read from the environment.
pub fn run_with_env<I, T>(
    args: I,
    env_cap: Option<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
                return EXIT_OK;
            }
            let _ = write!(err, "{text}");
            return EXIT_INPUT;
        }
    };
    let mut ctx = Ctx {
        command: args
            .iter()
            .skip(1)
            .map(|a| a.to_string_lossy().into_owned())
            .collect(),
        exec: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
        env_cap,
        out,
        err,
    };
    let result = match cli.command {
        Command::Prob(a) => cmd_prob(&mut ctx, a),
        Command::Verify(a) => cmd_verify(&mut ctx, a),
        Command::Psl(a) => cmd_psl(&mut ctx, a),
        Command::Density(a) => cmd_density(&mut ctx, a),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Core(e)) => {
            let _ = writeln!(ctx.err, "error: {e}");
            match e {
                Error::CapExceeded { .. } => EXIT_CAP,
                _ => EXIT_INPUT,
            }
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(ctx.err, "error: {e}");
            EXIT_FAILED
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    group: &'a str,
    order: usize,
    r: u64,
    image_size: usize,
    prob_num: u64,
    prob_den: u64,
    prob_decimal: f64,
}

#[derive(Serialize)]
struct ProbRow {
    group: String,
    order: usize,
    r: u64,
    image_size: usize,
    probability: Probability,
}

fn check_exponents(rs: &[u64]) -> std::result::Result<(), Failure> {
    match rs.iter().find(|&&r| r < 2) {
        Some(r) => Err(Failure::Input(format!(
            "exponent r = {r} must be at least 2"
        ))),
        None => Ok(()),
    }
}

fn write_csv<'a>(
    out: &mut dyn Write,
    rows: impl Iterator<Item = CsvRow<'a>>,
) -> std::result::Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_prob(ctx: &mut Ctx, a: ProbArgs) -> Outcome {
    check_exponents(&a.r)?;
    let cap = ctx.cap(a.cap)?;
    let spec = parse_spec(&a.group)?;
    let group = radicality::spec_parser::realize(&spec, cap)?;
    let name = spec.to_string();
    let rows: Vec<ProbRow> =
        a.r.iter()
            .map(|&r| {
                let image = power_image_with(&group, r, ctx.exec);
                ProbRow {
                    group: name.clone(),
                    order: group.order(),
                    r,
                    image_size: image.image_size(),
                    probability: image.probability(),
                }
            })
            .collect();
    if a.format.json {
        ctx.report(&rows, json!({ "passed": true, "items": rows.len() }))?;
    } else if a.format.csv {
        write_csv(
            ctx.out,
            rows.iter().map(|r| CsvRow {
                group: &r.group,
                order: r.order,
                r: r.r,
                image_size: r.image_size,
                prob_num: r.probability.num(),
                prob_den: r.probability.den(),
                prob_decimal: r.probability.to_f64(),
            }),
        )?;
    } else {
        writeln!(
            ctx.out,
            "{:<24} {:>8} {:>4} {:>8}  Prob_r",
            "group", "order", "r", "|G^r|"
        )?;
        for r in &rows {
            writeln!(
                ctx.out,
                "{:<24} {:>8} {:>4} {:>8}  {} ({:.6})",
                r.group,
                r.order,
                r.r,
                r.image_size,
                r.probability,
                r.probability.to_f64()
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn parse_range(text: &str) -> std::result::Result<Vec<u64>, Failure> {
    let bad = || {
        Failure::Input(format!(
            "--r-range expects LO..HI with 2 <= LO <= HI, got {text:?}"
        ))
    };
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| bad())?;
    if lo < 2 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

#[derive(Serialize)]
struct VerifyItem<'a> {
    group: &'a str,
    spec: &'a str,
    order: usize,
    r: u64,
    image_size: usize,
    probability: Probability,
    passed: bool,
    checks: usize,
    tally: std::collections::BTreeMap<Statement, radicality::roots::StatementTally>,
    #[serde(skip_serializing_if = "Option::is_none")]
    details: Option<&'a VerificationReport>,
    failures: Vec<&'a radicality::roots::Check>,
}

fn cmd_verify(ctx: &mut Ctx, a: VerifyArgs) -> Outcome {
    let entries: Vec<CatalogEntry> = if a.catalog == "builtin" {
        catalog::builtin()
    } else {
        let text = std::fs::read_to_string(&a.catalog)
            .map_err(|e| Failure::Input(format!("cannot read catalog {:?}: {e}", a.catalog)))?;
        catalog::parse_catalog(&text)?
    };
    if a.list_catalog {
        for e in &entries {
            writeln!(ctx.out, "{:<12} {}", e.name, e.spec)?;
        }
        return Ok(EXIT_OK);
    }
    let rs = parse_range(&a.r_range)?;
    let cap = ctx.cap(a.cap)?;
    if entries.is_empty() {
        writeln!(
            ctx.err,
            "warning: catalog {:?} is empty; nothing to verify",
            a.catalog
        )?;
    } else {
        writeln!(
            ctx.err,
            "verifying {} groups for r in {}..{}",
            entries.len(),
            rs[0],
            rs[rs.len() - 1]
        )?;
    }
    let results =
        catalog::verify_catalog(&entries, &rs, &StructuralBudget::default(), cap, ctx.exec)?;
    let passed = results.iter().all(GroupResult::passed);
    let mut total = VerificationReport::default();
    for r in &results {
        total.checks.extend(r.report.checks.iter().cloned());
    }
    let tally = total.tally();
    let failures = total.failures().count();
    let prob = |r: &GroupResult| Probability::ratio(r.image_size, r.order);
    if a.format.json {
        let items: Vec<VerifyItem> = results
            .iter()
            .map(|r| VerifyItem {
                group: &r.group,
                spec: &r.spec,
                order: r.order,
                r: r.r,
                image_size: r.image_size,
                probability: prob(r),
                passed: r.passed(),
                checks: r.report.checks.len(),
                tally: r.report.tally(),
                details: a.details.then_some(&r.report),
                failures: r.report.failures().collect(),
            })
            .collect();
        ctx.report(
            &items,
            json!({
                "passed": passed,
                "items": items.len(),
                "checks": total.checks.len(),
                "failures": failures,
                "tally": tally,
            }),
        )?;
    } else if a.format.csv {
        write_csv(
            ctx.out,
            results.iter().map(|r| {
                let p = prob(r);
                CsvRow {
                    group: &r.group,
                    order: r.order,
                    r: r.r,
                    image_size: r.image_size,
                    prob_num: p.num(),
                    prob_den: p.den(),
                    prob_decimal: p.to_f64(),
                }
            }),
        )?;
    } else {
        for r in &results {
            let t = r.report.tally();
            let holds: usize = t.values().map(|s| s.holds).sum();
            let fails: usize = t.values().map(|s| s.fails).sum();
            writeln!(
                ctx.out,
                "{:<12} order {:>6}  r={}  Prob_r {:<8} checks {:>5}  failed {}",
                r.group,
                r.order,
                r.r,
                prob(r).to_string(),
                holds + fails,
                fails
            )?;
            let shown: Vec<_> = if a.details {
                r.report.checks.iter().collect()
            } else {
                r.report.failures().collect()
            };
            for c in shown {
                writeln!(
                    ctx.out,
                    "    {:?} {}: {:?}",
                    c.statement, c.instance, c.outcome
                )?;
            }
        }
        writeln!(ctx.out)?;
        writeln!(
            ctx.out,
            "{:<26} {:>8} {:>6} {:>10} {:>8}",
            "statement", "holds", "fails", "degenerate", "observed"
        )?;
        for (s, t) in &tally {
            let name = serde_json::to_value(s)?;
            writeln!(
                ctx.out,
                "{:<26} {:>8} {:>6} {:>10} {:>8}",
                name.as_str().unwrap_or_default(),
                t.holds,
                t.fails,
                t.degenerate,
                t.observed
            )?;
        }
        writeln!(ctx.out, "{}", if passed { "PASS" } else { "FAIL" })?;
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

fn scan_defaults() -> Vec<u64> {
    (4..=32).filter(|&q| prime_power(q).is_some()).collect()
}

fn cmd_psl(ctx: &mut Ctx, a: PslArgs) -> Outcome {
    let qs = match (a.q.is_empty(), a.scan) {
        (false, _) => a.q.clone(),
        (true, true) => scan_defaults(),
        (true, false) => {
            return Err(Failure::Input(
                "--q is required unless --scan is given".into(),
            ))
        }
    };
    let rs = match (a.r.is_empty(), a.scan) {
        (false, _) => a.r.clone(),
        (true, true) => (2..=6).collect(),
        (true, false) => vec![2],
    };
    check_exponents(&rs)?;
    let cap = ctx.cap(a.cap)?;
    let rows: Vec<ScanRow> = psl2::psl2_scan(&qs, &rs, cap, ctx.exec)?;
    let mut classes: Vec<PslClassData> = Vec::new();
    if a.classes {
        let mut sorted = qs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        for q in sorted {
            classes.push(psl2::theorem_elements(&Field::new(q)?, cap)?);
        }
    }
    let broken: Vec<&ScanRow> = rows
        .iter()
        .filter(|r| r.hypothesis_ok && r.agree == Some(false))
        .collect();
    let passed = broken.is_empty() && classes.iter().all(|c| c.class_equation_holds);
    for r in rows.iter().filter(|r| r.note.is_some()) {
        writeln!(
            ctx.err,
            "warning: q = {}: {}",
            r.q,
            r.note.as_deref().unwrap_or_default()
        )?;
    }
    if a.json {
        let results = json!({ "scan": rows, "classes": classes });
        ctx.report(
            &results,
            json!({
                "passed": passed,
                "items": rows.len(),
                "hypothesis_cells": rows.iter().filter(|r| r.hypothesis_ok).count(),
                "agreeing_cells": rows.iter().filter(|r| r.agree == Some(true)).count(),
            }),
        )?;
    } else {
        writeln!(
            ctx.out,
            "{:>4} {:>3} {:>10} {:>10} {:>10} {:>7} {:>5}",
            "q", "r", "formula", "enumerated", "order", "hyp_ok", "agree"
        )?;
        for r in &rows {
            let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
            writeln!(
                ctx.out,
                "{:>4} {:>3} {:>10} {:>10} {:>10} {:>7} {:>5}",
                r.q,
                r.r,
                r.formula.to_string(),
                show(r.enumerated.map(|p| p.to_string())),
                show(r.order.map(|o| o.to_string())),
                r.hypothesis_ok,
                show(r.agree.map(|b| b.to_string()))
            )?;
        }
        for c in &classes {
            writeln!(
                ctx.out,
                "\nPSL(2,{}): order {}, {} classes, class equation {}, representatives distinct {}",
                c.q,
                c.order,
                c.class_count,
                if c.class_equation_holds {
                    "holds"
                } else {
                    "FAILS"
                },
                c.distinct_classes
            )?;
            for rep in &c.representatives {
                let expected = rep
                    .expected_centralizer
                    .map_or_else(|| "-".to_string(), |e| e.to_string());
                writeln!(
                    ctx.out,
                    "  {:<10} order {:>3}  |C| measured {:>5}  expected {:>5}",
                    rep.label, rep.element_order, rep.measured_centralizer, expected
                )?;
            }
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_density(ctx: &mut Ctx, a: DensityArgs) -> Outcome {
    let x = density::parse_ratio(&a.x)?;
    let eps = density::parse_ratio(&a.eps)?;
    let trace = density::density_trace(
        &x,
        a.r,
        &Stop {
            eps: eps.clone(),
            max_steps: a.max_steps,
        },
    )?;
    let cap = ctx.cap(a.cap)?;
    let checks = if a.realize {
        if a.r != 2 {
            writeln!(ctx.err, "warning: --realize only builds groups for r = 2")?;
        }
        density::cross_check(&trace, cap, ctx.exec)?
    } else {
        Vec::new()
    };
    if !trace.converged {
        writeln!(
            ctx.err,
            "warning: no convergence within {} steps",
            a.max_steps
        )?;
    }
    let passed = checks.iter().all(|c| c.agree);
    if a.json {
        let results = json!({
            "trace": trace,
            "descriptor": trace.descriptor().to_string(),
            "realizations": checks,
        });
        ctx.report(
            &results,
            json!({ "passed": passed, "converged": trace.converged, "steps": trace.steps.len() }),
        )?;
    } else {
        writeln!(
            ctx.out,
            "x = {}, r = {}, m = {}, y = {}",
            trace.x, trace.r, trace.m, trace.y
        )?;
        writeln!(
            ctx.out,
            "{:>4} {:>3} {:>14} {:>14}  {:>12}",
            "step", "n", "r_i", "predicted", "error"
        )?;
        for (i, s) in trace.steps.iter().enumerate() {
            writeln!(
                ctx.out,
                "{:>4} {:>3} {:>14} {:>14}  {:>12.3e}",
                i + 1,
                s.n,
                s.r_factor.to_string(),
                if s.predicted.denom().bits() <= 40 {
                    s.predicted.to_string()
                } else {
                    format!("{:.10}", s.predicted_decimal)
                },
                s.error_decimal
            )?;
        }
        writeln!(ctx.out, "descriptor: {}", trace.descriptor())?;
        writeln!(
            ctx.out,
            "converged: {} (eps {eps})",
            if trace.converged { "yes" } else { "no" }
        )?;
        for c in &checks {
            writeln!(
                ctx.out,
                "realized {} step(s): {} = {}, order {}, predicted {}, enumerated {}, {}",
                c.steps,
                c.descriptor,
                c.group,
                c.order,
                c.predicted,
                c.enumerated,
                if c.agree { "agree" } else { "DISAGREE" }
            )?;
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}
