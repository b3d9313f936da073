//! Command-line front end.
//!
//! Exit codes: 0 when every check holds, 1 when a check fails, 2 on any
//! input or configuration error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use a1tk_core::a1::{a1_constant_of, power_a1_constant, verify_theorem1, CONSTANT_SLACK};
use a1tk_core::generators::{corpus_weight, GenKind, GenSpec};
use a1tk_core::rearrange::value_levels;
use a1tk_core::reverse_holder::{
    exponent_sweep, extremal_weight, lemma1_residual, midpoint_exponent, sharpness_sides, verify_hy_monotone,
    verify_theorem2, verify_theorem2_power, SweepRow,
};
use a1tk_core::{a1_constant, a1_constant_bruteforce, decreasing_rearrangement, is_equimeasurable, Interval, Weight};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{exit_code, CliError, Outcome};
use crate::format::{read_weight, write_weight};
use crate::report::{float17, sweep_csv, to_canonical_json};

pub const SEED_ENV: &str = "A1TK_SEED";

/// Largest cell count accepted by `--gen`.
pub const MAX_GEN_CELLS: usize = 1 << 16;
/// Largest oracle grid accepted by `--oracle`.
pub const MAX_ORACLE_GRID: usize = 1 << 24;
/// Largest corpus accepted by `verify --count`.
pub const MAX_CORPUS: usize = 1 << 20;
/// Cell bound of the `verify --count` corpus.
pub const CORPUS_CELLS: usize = 64;

pub const LEMMA1_TOL: f64 = 1e-8;
pub const SHARPNESS_TOL: f64 = 1e-12;
const HY_SAMPLES: usize = 1000;

#[derive(Debug, Parser)]
#[command(name = "a1tk", version, about = "Exact A1 constants, rearrangements and sharp reverse Hölder checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Write the decreasing rearrangement of a weight.
    Rearrange,
    /// Exact A1 constant with witness.
    A1,
    /// Run every check on one weight or a seeded corpus.
    Verify,
    /// Both sides of the sharp inequality over a grid of exponents.
    Sweep,
    /// Residual of the Hardy-average integral identity.
    Lemma1,
    /// Write a generated weight.
    Gen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenArg {
    pub kind: GenKind,
    pub n: usize,
    pub parameter: f64,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Weight file.
    #[arg(long, global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Generated weight: kind,n,parameter with kind one of bounded_ratio,
    /// nonincreasing_hardy, shuffle, extremal_discretized.
    #[arg(long, global = true, value_name = "KIND,n,param", value_parser = parse_gen)]
    pub gen: Option<GenArg>,
    /// Generator seed; A1TK_SEED takes precedence.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Exponent; defaults to the midpoint of [1, p_critical).
    #[arg(long, global = true)]
    pub p: Option<f64>,
    /// Without --input or --gen, use the extremal weight with this constant.
    #[arg(long, global = true)]
    pub c: Option<f64>,
    /// Upper end of the initial interval in lemma1 and verify.
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Also run the grid oracle in a1, e.g. grid=65536.
    #[arg(long, global = true, value_name = "grid=N", value_parser = parse_oracle)]
    pub oracle: Option<usize>,
    /// Test hook: multiply the sharp right-hand side in verify by X.
    #[arg(long, global = true, value_name = "X", default_value_t = 1.0)]
    pub skew: f64,
    /// verify: check this many weights of the seeded corpus.
    #[arg(long, global = true)]
    pub count: Option<usize>,
    /// sweep: number of exponents.
    #[arg(long, global = true, default_value_t = 50)]
    pub points: usize,
    /// sweep: distance kept from p_critical.
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub margin: f64,
    /// sweep: largest exponent when p_critical is infinite or larger.
    #[arg(long, global = true, default_value_t = 8.0)]
    pub p_cap: f64,
}

fn parse_gen(text: &str) -> Result<GenArg, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [kind, n, parameter] = parts[..] else {
        return Err("expected KIND,n,param".into());
    };
    let kind = GenKind::from_name(kind).ok_or_else(|| {
        let names: Vec<&str> = GenKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown kind {kind:?}; expected one of {}", names.join(", "))
    })?;
    let n: usize = n.parse().map_err(|e| format!("cell count {n:?}: {e}"))?;
    if !(1..=MAX_GEN_CELLS).contains(&n) {
        return Err(format!("cell count must be in 1..={MAX_GEN_CELLS}"));
    }
    let parameter: f64 = parameter.parse().map_err(|e| format!("parameter {parameter:?}: {e}"))?;
    Ok(GenArg { kind, n, parameter })
}

fn parse_oracle(text: &str) -> Result<usize, String> {
    let grid = text.strip_prefix("grid=").ok_or("expected grid=N")?;
    let grid: usize = grid.parse().map_err(|e| format!("grid {grid:?}: {e}"))?;
    if !(2..=MAX_ORACLE_GRID).contains(&grid) {
        return Err(format!("grid must be in 2..={MAX_ORACLE_GRID}"));
    }
    Ok(grid)
}

/// The environment value, when present, wins over the flag.
pub fn resolve_seed(flag: Option<u64>, env: Option<OsString>) -> Result<u64, CliError> {
    match env {
        Some(raw) => {
            let text = raw.to_str().ok_or_else(|| CliError::Config(format!("{SEED_ENV} is not valid UTF-8")))?;
            text.trim().parse().map_err(|e| CliError::Config(format!("{SEED_ENV}={text:?}: {e}")))
        }
        None => Ok(flag.unwrap_or(0)),
    }
}

struct Context {
    opts: Options,
    seed: u64,
}

impl Context {
    fn format(&self, default: Format) -> Format {
        self.opts.format.unwrap_or(default)
    }

    fn check_finite(&self) -> Result<(), CliError> {
        let o = &self.opts;
        for (name, value) in [("p", o.p), ("c", o.c), ("delta", o.delta), ("tol", Some(o.tol)), ("skew", Some(o.skew))]
        {
            if let Some(v) = value {
                if !v.is_finite() {
                    return Err(CliError::Config(format!("--{name} must be finite, got {v}")));
                }
            }
        }
        if o.tol < 0.0 {
            return Err(CliError::Config(format!("--tol must be non-negative, got {}", o.tol)));
        }
        if o.skew <= 0.0 {
            return Err(CliError::Config(format!("--skew must be positive, got {}", o.skew)));
        }
        Ok(())
    }

    fn weight(&self) -> Result<Weight, CliError> {
        let o = &self.opts;
        match (&o.input, &o.gen, o.c) {
            (Some(path), None, None) => read_weight(path),
            (None, Some(g), None) => self.generate(g),
            (None, None, Some(c)) => Ok(Weight::Power(extremal_weight(c)?)),
            (None, None, None) => Err(CliError::Config("one of --input, --gen or --c is required".into())),
            _ => Err(CliError::Config("--input, --gen and --c select a weight; give only one".into())),
        }
    }

    fn generate(&self, g: &GenArg) -> Result<Weight, CliError> {
        let spec = GenSpec { kind: g.kind, n: g.n, parameter: g.parameter, seed: self.seed };
        Ok(Weight::Step(spec.generate()?))
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.opts.output {
            Some(path) => std::fs::write(path, text)?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
        Ok(())
    }

    fn reject_csv(&self, command: &str) -> Result<(), CliError> {
        if self.opts.format == Some(Format::Csv) {
            return Err(CliError::Config(format!("{command} has no csv output; use json or text")));
        }
        Ok(())
    }
}

fn text_lines(pairs: &[(&str, String)]) -> String {
    let mut s = String::new();
    for (k, v) in pairs {
        let _ = writeln!(s, "{k}: {v}");
    }
    s
}

fn cmd_rearrange(ctx: &Context) -> Result<Outcome, CliError> {
    ctx.reject_csv("rearrange")?;
    let w = ctx.weight()?;
    let star = decreasing_rearrangement(&w);
    let levels = value_levels(&w, &star);
    let equimeasurable = is_equimeasurable(&w, &star, &levels);
    let holds = equimeasurable && star.is_nonincreasing();
    eprintln!(
        "equimeasurable: {equimeasurable} ({} value levels); non-increasing: {}",
        levels.len(),
        star.is_nonincreasing()
    );
    ctx.emit(&write_weight(&star))?;
    Ok(Outcome::from_holds(holds))
}

#[derive(Serialize)]
struct OracleRecord {
    grid: usize,
    value: f64,
    gap: f64,
}

#[derive(Serialize)]
struct A1Record {
    command: &'static str,
    constant: f64,
    witness_lo: f64,
    witness_hi: f64,
    witness_lo_index: Option<usize>,
    witness_hi_index: Option<usize>,
    sliver_left: bool,
    sliver_right: bool,
    oracle: Option<OracleRecord>,
}

fn cmd_a1(ctx: &Context) -> Result<Outcome, CliError> {
    ctx.reject_csv("a1")?;
    let w = ctx.weight()?;
    let record = match &w {
        Weight::Step(s) => {
            let r = a1_constant(s);
            let witness = r.witness(s);
            let oracle = match ctx.opts.oracle {
                Some(grid) => {
                    let value = a1_constant_bruteforce(s, grid)?;
                    Some(OracleRecord { grid, value, gap: r.constant - value })
                }
                None => None,
            };
            A1Record {
                command: "a1",
                constant: r.constant,
                witness_lo: witness.lo(),
                witness_hi: witness.hi(),
                witness_lo_index: Some(r.witness_lo_index),
                witness_hi_index: Some(r.witness_hi_index),
                sliver_left: r.sliver_left,
                sliver_right: r.sliver_right,
                oracle,
            }
        }
        Weight::Power(g) => {
            if ctx.opts.oracle.is_some() {
                return Err(CliError::Config("--oracle needs a step weight".into()));
            }
            // Every initial interval attains the constant.
            A1Record {
                command: "a1",
                constant: power_a1_constant(g),
                witness_lo: 0.0,
                witness_hi: 1.0,
                witness_lo_index: None,
                witness_hi_index: None,
                sliver_left: false,
                sliver_right: false,
                oracle: None,
            }
        }
    };
    let holds = record.oracle.as_ref().map_or(true, |o| o.value <= record.constant * (1.0 + CONSTANT_SLACK));
    let text = match ctx.format(Format::Text) {
        Format::Json => to_canonical_json(&record)?,
        _ => {
            let index = |i: Option<usize>| i.map_or("-".to_string(), |i| i.to_string());
            let mut pairs = vec![
                ("constant", float17(record.constant)),
                (
                    "witness",
                    format!(
                        "({}, {}) breakpoints {}..{}",
                        float17(record.witness_lo),
                        float17(record.witness_hi),
                        index(record.witness_lo_index),
                        index(record.witness_hi_index)
                    ),
                ),
                ("sliver_left", record.sliver_left.to_string()),
                ("sliver_right", record.sliver_right.to_string()),
            ];
            if let Some(o) = &record.oracle {
                pairs.push(("oracle", format!("{} (grid {})", float17(o.value), o.grid)));
                pairs.push(("oracle_gap", float17(o.gap)));
            }
            text_lines(&pairs)
        }
    };
    ctx.emit(&text)?;
    Ok(Outcome::from_holds(holds))
}

#[derive(Debug, Serialize)]
struct CheckRecord {
    check: &'static str,
    weight: usize,
    holds: bool,
    /// Quantity compared against `bound`; absent for pass/fail checks.
    value: Option<f64>,
    bound: Option<f64>,
    c: f64,
    p: f64,
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    holds: bool,
    failed: Vec<String>,
    weights: usize,
    tol: f64,
    skew: f64,
    delta: f64,
    records: Vec<CheckRecord>,
}

fn check_weight(ctx: &Context, index: usize, w: &Weight, delta: f64) -> Result<Vec<CheckRecord>, CliError> {
    let tol = ctx.opts.tol;
    let skew = ctx.opts.skew;
    let c = a1_constant_of(w);
    let p = match ctx.opts.p {
        Some(p) => p,
        None => midpoint_exponent(c)?,
    };
    let record = |check, holds, value: Option<f64>, bound: Option<f64>| CheckRecord {
        check,
        weight: index,
        holds,
        value,
        bound,
        c,
        p,
    };

    let (theorem1, theorem2) = match w {
        Weight::Step(s) => {
            let t1 = verify_theorem1(s);
            let bound = t1.a1_original * (1.0 + CONSTANT_SLACK);
            let t1 = record("theorem1", t1.holds, Some(t1.a1_rearranged.max(t1.hardy_rearranged)), Some(bound));
            (t1, verify_theorem2(s, p, tol)?)
        }
        Weight::Power(g) => {
            // Power weights are their own rearrangement; both constants are 1/(1+α).
            (record("theorem1", true, Some(c), Some(c * (1.0 + CONSTANT_SLACK))), verify_theorem2_power(g, p, tol)?)
        }
    };
    let ratio = theorem2.worst_ratio / skew;
    let theorem2 = record("theorem2", ratio <= 1.0 + tol, Some(ratio), Some(1.0 + tol));

    let star = decreasing_rearrangement(w);
    let l1 = lemma1_residual(&star, p, delta)?;
    let lemma1 = record("lemma1", l1.residual < LEMMA1_TOL, Some(l1.residual), Some(LEMMA1_TOL));

    let (lhs, rhs) = sharpness_sides(c, p)?;
    let gap = (lhs / (rhs * skew) - 1.0).abs();
    let sharpness = record("sharpness_gap", gap < SHARPNESS_TOL, Some(gap), Some(SHARPNESS_TOL));

    let y = w.average(&Interval::UNIT);
    let hy = record("hy_monotone", verify_hy_monotone(y, c, p, HY_SAMPLES)?, None, None);

    Ok(vec![theorem1, theorem2, lemma1, sharpness, hy])
}

fn cmd_verify(ctx: &Context) -> Result<Outcome, CliError> {
    ctx.reject_csv("verify")?;
    let delta = ctx.opts.delta.unwrap_or(1.0);
    let weights: Vec<Weight> = match ctx.opts.count {
        Some(count) => {
            if ctx.opts.input.is_some() || ctx.opts.gen.is_some() || ctx.opts.c.is_some() {
                return Err(CliError::Config("--count draws its own corpus; drop --input, --gen and --c".into()));
            }
            if !(1..=MAX_CORPUS).contains(&count) {
                return Err(CliError::Config(format!("--count must be in 1..={MAX_CORPUS}")));
            }
            (0..count as u64)
                .map(|k| corpus_weight(ctx.seed.wrapping_add(k), CORPUS_CELLS).map(Weight::Step))
                .collect::<Result<_, _>>()?
        }
        None => vec![ctx.weight()?],
    };
    let mut records = Vec::with_capacity(5 * weights.len());
    for (index, w) in weights.iter().enumerate() {
        records.extend(check_weight(ctx, index, w, delta)?);
    }
    let failed: Vec<String> =
        records.iter().filter(|r| !r.holds).map(|r| format!("{}[{}]", r.check, r.weight)).collect();
    for r in records.iter().filter(|r| !r.holds) {
        let show = |v: Option<f64>| v.map_or("-".to_string(), float17);
        eprintln!("FAIL {} on weight {}: value {} bound {}", r.check, r.weight, show(r.value), show(r.bound));
    }
    let report = VerifyReport {
        command: "verify",
        holds: failed.is_empty(),
        failed,
        weights: weights.len(),
        tol: ctx.opts.tol,
        skew: ctx.opts.skew,
        delta,
        records,
    };
    let text = match ctx.format(Format::Json) {
        Format::Json => to_canonical_json(&report)?,
        _ => {
            let mut s = String::new();
            for r in &report.records {
                let show = |v: Option<f64>| v.map_or("-".to_string(), float17);
                let verdict = if r.holds { "ok" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "{:>6} {:<14} {:<4} value {} bound {}",
                    r.weight,
                    r.check,
                    verdict,
                    show(r.value),
                    show(r.bound)
                );
            }
            let _ = writeln!(s, "{} checks, {} failed", report.records.len(), report.failed.len());
            s
        }
    };
    ctx.emit(&text)?;
    Ok(Outcome::from_holds(report.holds))
}

#[derive(Serialize)]
struct SweepReport<'a> {
    command: &'static str,
    c: f64,
    rows: &'a [SweepRowRecord],
}

#[derive(Serialize)]
struct SweepRowRecord {
    p: f64,
    lhs: f64,
    rhs: f64,
    ratio: f64,
    holds: bool,
}

fn cmd_sweep(ctx: &Context) -> Result<Outcome, CliError> {
    let w = ctx.weight()?;
    let o = &ctx.opts;
    if !(o.margin > 0.0 && o.margin.is_finite()) {
        return Err(CliError::Config(format!("--margin must be positive, got {}", o.margin)));
    }
    if !(o.p_cap > 1.0 && o.p_cap.is_finite()) {
        return Err(CliError::Config(format!("--p-cap must exceed 1, got {}", o.p_cap)));
    }
    if !(1..=1_000_000).contains(&o.points) {
        return Err(CliError::Config("--points must be in 1..=1000000".into()));
    }
    let rows: Vec<SweepRow> = exponent_sweep(&w, o.points, o.margin, o.p_cap, o.tol)?;
    let holds = rows.iter().all(|r| r.holds);
    let text = match ctx.format(Format::Csv) {
        Format::Csv => sweep_csv(&rows)?,
        Format::Json => {
            let records: Vec<SweepRowRecord> = rows
                .iter()
                .map(|r| SweepRowRecord { p: r.p, lhs: r.lhs, rhs: r.rhs, ratio: r.ratio, holds: r.holds })
                .collect();
            to_canonical_json(&SweepReport { command: "sweep", c: a1_constant_of(&w), rows: &records })?
        }
        Format::Text => {
            let mut s = format!("{:>24} {:>24} {:>24} {:>24} holds\n", "p", "lhs", "rhs", "ratio");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:>24} {:>24} {:>24} {:>24} {}",
                    float17(r.p),
                    float17(r.lhs),
                    float17(r.rhs),
                    float17(r.ratio),
                    r.holds
                );
            }
            s
        }
    };
    ctx.emit(&text)?;
    Ok(Outcome::from_holds(holds))
}

#[derive(Serialize)]
struct Lemma1Record {
    command: &'static str,
    p: f64,
    delta: f64,
    lhs: f64,
    rhs: f64,
    residual: f64,
    quadrature_cells: usize,
    holds: bool,
}

fn cmd_lemma1(ctx: &Context) -> Result<Outcome, CliError> {
    ctx.reject_csv("lemma1")?;
    let w = ctx.weight()?;
    let p = ctx.opts.p.unwrap_or(2.0);
    let delta = ctx.opts.delta.unwrap_or(1.0);
    let r = lemma1_residual(&w, p, delta)?;
    let record = Lemma1Record {
        command: "lemma1",
        p,
        delta,
        lhs: r.lhs,
        rhs: r.rhs,
        residual: r.residual,
        quadrature_cells: r.quadrature_cells,
        holds: r.residual < LEMMA1_TOL,
    };
    let text = match ctx.format(Format::Text) {
        Format::Json => to_canonical_json(&record)?,
        _ => text_lines(&[
            ("p", float17(p)),
            ("delta", float17(delta)),
            ("lhs", float17(r.lhs)),
            ("rhs", float17(r.rhs)),
            ("residual", float17(r.residual)),
            ("quadrature_cells", r.quadrature_cells.to_string()),
        ]),
    };
    ctx.emit(&text)?;
    Ok(Outcome::from_holds(record.holds))
}

fn cmd_gen(ctx: &Context) -> Result<Outcome, CliError> {
    ctx.reject_csv("gen")?;
    let Some(g) = &ctx.opts.gen else {
        return Err(CliError::Config("gen needs --gen KIND,n,param".into()));
    };
    if ctx.opts.input.is_some() || ctx.opts.c.is_some() {
        return Err(CliError::Config("gen takes only --gen and --seed".into()));
    }
    ctx.emit(&write_weight(&ctx.generate(g)?))?;
    Ok(Outcome::Pass)
}

pub fn run(cli: Cli, seed_env: Option<OsString>) -> Result<Outcome, CliError> {
    let seed = resolve_seed(cli.opts.seed, seed_env)?;
    let ctx = Context { opts: cli.opts, seed };
    ctx.check_finite()?;
    match cli.command {
        Command::Rearrange => cmd_rearrange(&ctx),
        Command::A1 => cmd_a1(&ctx),
        Command::Verify => cmd_verify(&ctx),
        Command::Sweep => cmd_sweep(&ctx),
        Command::Lemma1 => cmd_lemma1(&ctx),
        Command::Gen => cmd_gen(&ctx),
    }
}

/// Parses `args`, runs the command and reports errors on stderr.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    let result = run(cli, std::env::var_os(SEED_ENV));
    if let Err(e) = &result {
        eprintln!("a1tk: {e}");
    }
    exit_code(&result)
}
