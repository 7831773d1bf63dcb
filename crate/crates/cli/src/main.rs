//! `qlag`: batch front end for the quasi-orthogonal q-Laguerre library.
//!
//! Exit codes: 0 every verdict holds, 3 some verdict fails, 4 some verdict is
//! not applicable (and none fails), 2 bad parameters or usage, 1 a numerical
//! routine gave up.

mod grid;
mod output;
mod records;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qlag::checks::{
    bounds, check_common_zero_with, check_pattern, common_point, find_common_zero_delta, moments,
    CheckId, CheckOptions, CommonZeroKind, PatternId, Truncation, Verdict,
};
use qlag::qlaguerre::{eval_hypergeometric, eval_recurrence};
use qlag::table::{ReferenceRow, REFERENCE_ROWS, REFERENCE_RTOL};
use qlag::zeros::{zeros, Direct, Perturbed, ZeroSource};
use qlag::{Error, FamilyParams, PolySpec, PrecReal};
use rayon::prelude::*;

use grid::{family_grid, parse_degrees, parse_reals};
use output::{emit, Format, Record};
use records::*;

#[derive(Parser)]
#[command(
    name = "qlag",
    version,
    about = "Quasi-orthogonal q-Laguerre polynomials: values, zeros and checks"
)]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "QLAG_PRECISION_BITS", default_value_t = qlag::DEFAULT_PRECISION)]
    precision_bits: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Significant digits for numbers in CSV and text output.
    #[arg(long, global = true, default_value_t = 10)]
    digits: usize,

    #[command(subcommand)]
    command: Command,
}

/// A `(q, delta, n)` grid. Lists are comma separated; degrees also take `a..b`.
#[derive(Args, Clone)]
struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, allow_hyphen_values = true)]
    delta: String,
    #[arg(long)]
    n: String,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate by the recurrence and by the basic hypergeometric series.
    Eval {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value = "0")]
        shift: String,
        /// Evaluation points.
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        z: String,
    },
    /// All real zeros.
    Zeros {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value = "0")]
        shift: String,
    },
    /// Run one or more named checks.
    Check {
        /// Check names, comma separated (see `qlag check --list`).
        #[arg(long, required_unless_present = "list")]
        theorem: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "list")]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "list")]
        delta: Option<String>,
        #[arg(long, required_unless_present = "list")]
        n: Option<String>,
        /// Negative control: displace zero K (0-based) of the polynomial the statement is about.
        #[arg(long, value_name = "K")]
        perturb: Option<usize>,
        /// Newton-distance threshold for calling a point a shared zero.
        #[arg(long, default_value_t = CheckOptions::default().tol_common)]
        tol_common: f64,
        /// Print the available check names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Bounds on the negative zero and the strict chain around it.
    Bounds {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Recompute the published table of bounds.
    Table1 {
        /// Diff against the printed values; exits 3 on any relative error above 1e-4.
        #[arg(long)]
        compare: bool,
        #[arg(long, allow_hyphen_values = true, requires_all = ["delta", "n"])]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires_all = ["q", "n"])]
        delta: Option<String>,
        #[arg(long, requires_all = ["q", "delta"])]
        n: Option<String>,
    },
    /// Jackson-integral moments of the quasi-orthogonal polynomial.
    Moments {
        #[command(flatten)]
        grid: GridArgs,
        /// Highest order; defaults to n - 1.
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long, allow_hyphen_values = true, requires = "j_max")]
        j_min: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "j_min")]
        j_max: Option<i64>,
    },
    /// Find delta at which a closed-form point is a shared zero, then check it.
    FindCommonZero {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        q: String,
        #[arg(long)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
        #[arg(long, default_value_t = CheckOptions::default().tol_common)]
        tol_common: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// `L_n` and `L_{n-2}` sharing `a_n`.
    A,
    /// `L_n` and `L_n^{(delta+2)}` sharing `c_n`.
    C,
}

impl From<Kind> for CommonZeroKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::A => CommonZeroKind::Diagonal,
            Kind::C => CommonZeroKind::PointC,
        }
    }
}

struct Ctx {
    precision: u32,
    format: Format,
    out: Option<PathBuf>,
    digits: usize,
}

impl Ctx {
    fn emit<R: Record>(&self, records: &[R]) -> Result<()> {
        emit(records, self.format, self.digits, self.out.as_deref())
    }
}

fn parse_shifts(text: &str) -> Result<Vec<u8>> {
    parse_degrees(text)?
        .into_iter()
        .map(|t| {
            u8::try_from(t)
                .ok()
                .filter(|&t| t <= qlag::qlaguerre::MAX_SHIFT)
                .ok_or_else(|| Error::Domain(format!("shift {t} is outside 0..=4")).into())
        })
        .collect()
}

/// Parameter points in `(q, delta, n)` order.
fn points(g: &GridArgs, precision: u32) -> Result<Vec<(FamilyParams, usize)>> {
    let fams = family_grid(&g.q, &g.delta, precision)?;
    let ns = parse_degrees(&g.n)?;
    Ok(fams
        .iter()
        .flat_map(|p| ns.iter().map(move |&n| (p.clone(), n)))
        .collect())
}

/// Worst verdict wins: any failure, else any not-applicable, else holds.
fn combined(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    verdicts
        .into_iter()
        .fold(Verdict::Holds, |acc, v| match (acc, v) {
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::NotApplicable, _) | (_, Verdict::NotApplicable) => Verdict::NotApplicable,
            _ => Verdict::Holds,
        })
}

fn cmd_eval(ctx: &Ctx, g: &GridArgs, shift: &str, z: &str) -> Result<Verdict> {
    let shifts = parse_shifts(shift)?;
    let zs = parse_reals(z, ctx.precision)?;
    let mut tasks: Vec<(PolySpec, PrecReal)> = Vec::new();
    for (p, n) in points(g, ctx.precision)? {
        for &t in &shifts {
            for z in &zs {
                tasks.push((PolySpec::new(&p, t, n), z.clone()));
            }
        }
    }
    let records: Vec<EvalRecord> = tasks
        .par_iter()
        .map(|(spec, z)| {
            let rec = eval_recurrence(spec, z);
            let (hyp, rel, note) = match eval_hypergeometric(spec, z) {
                Ok(h) => {
                    let scale = rec.abs().max(h.abs());
                    let rel = if scale.is_zero() {
                        PrecReal::zero(ctx.precision)
                    } else {
                        (&rec - &h).abs() / scale
                    };
                    (Some(h), Some(rel), None)
                }
                Err(e @ Error::DegenerateParameter(_)) => (None, None, Some(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            Ok(EvalRecord {
                q: spec.params.q().clone(),
                delta: spec.params.delta().clone(),
                shift: spec.shift,
                n: spec.degree,
                z: z.clone(),
                recurrence: rec,
                hypergeometric: hyp,
                rel_diff: rel,
                note,
            })
        })
        .collect::<Result<_>>()?;
    ctx.emit(&records)?;
    Ok(Verdict::Holds)
}

fn cmd_zeros(ctx: &Ctx, g: &GridArgs, shift: &str) -> Result<Verdict> {
    let shifts = parse_shifts(shift)?;
    let specs: Vec<PolySpec> = points(g, ctx.precision)?
        .into_iter()
        .flat_map(|(p, n)| {
            shifts
                .iter()
                .map(move |&t| PolySpec::new(&p, t, n))
                .collect::<Vec<_>>()
        })
        .collect();
    let records: Vec<ZerosRecord> = specs
        .par_iter()
        .map(|s| Ok(ZerosRecord(zeros(s)?)))
        .collect::<Result<_>>()?;
    ctx.emit(&records)?;
    Ok(Verdict::Holds)
}

/// `(shift, degree)` of the polynomial a negative control should disturb.
fn perturb_target(id: CheckId, n: usize) -> (u8, usize) {
    match id {
        CheckId::Pattern(PatternId::Shift1Shift2) => (1, n),
        CheckId::Pattern(PatternId::Shift1NextDegree) => (0, n + 1),
        _ => (0, n),
    }
}

fn run_check(
    id: CheckId,
    params: &FamilyParams,
    n: usize,
    perturb: Option<usize>,
    opts: &CheckOptions,
) -> Result<CheckRecord> {
    let bad;
    let source: &dyn ZeroSource = match perturb {
        Some(index) => {
            let (shift, degree) = perturb_target(id, n);
            bad = Perturbed {
                inner: &Direct,
                shift,
                degree,
                index,
            };
            &bad
        }
        None => &Direct,
    };
    Ok(match id {
        CheckId::Pattern(p) => {
            CheckRecord::Pattern(Box::new(check_pattern(p, params, n, source, opts)?))
        }
        CheckId::CommonZero(k) => CheckRecord::Common(Box::new(check_common_zero_with(
            k, params, n, source, opts,
        )?)),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    ctx: &Ctx,
    theorem: &str,
    q: &str,
    delta: &str,
    n: &str,
    perturb: Option<usize>,
    tol_common: f64,
) -> Result<Verdict> {
    let mut ids = theorem
        .split(',')
        .map(|s| s.trim().parse::<CheckId>())
        .collect::<Result<Vec<_>, _>>()?;
    ids.dedup();
    let opts = CheckOptions { tol_common };
    let g = GridArgs {
        q: q.into(),
        delta: delta.into(),
        n: n.into(),
    };
    let grid = points(&g, ctx.precision)?;
    let tasks: Vec<(CheckId, &FamilyParams, usize)> = ids
        .iter()
        .flat_map(|&id| grid.iter().map(move |(p, n)| (id, p, *n)))
        .collect();
    let records: Vec<CheckRecord> = tasks
        .par_iter()
        .map(|(id, p, n)| run_check(*id, p, *n, perturb, &opts))
        .collect::<Result<_>>()?;
    ctx.emit(&records)?;
    Ok(combined(records.iter().map(CheckRecord::verdict)))
}

fn cmd_bounds(ctx: &Ctx, g: &GridArgs) -> Result<Verdict> {
    let records: Vec<BoundsRow> = points(g, ctx.precision)?
        .par_iter()
        .map(|(p, n)| match bounds(p, *n) {
            Ok(r) => Ok(BoundsRow(r)),
            Err(Error::ChainViolation(r)) => Ok(BoundsRow(*r)),
            Err(e) => Err(e.into()),
        })
        .collect::<Result<_>>()?;
    ctx.emit(&records)?;
    Ok(if records.iter().all(|r| r.0.chain_holds()) {
        Verdict::Holds
    } else {
        Verdict::Fails
    })
}

fn rel(computed: f64, printed: f64) -> f64 {
    ((computed - printed) / printed).abs()
}

fn cmd_table1(ctx: &Ctx, compare: bool, grid: Option<GridArgs>) -> Result<Verdict> {
    let prec = ctx.precision;
    let rows: Vec<(FamilyParams, usize)> = match &grid {
        // published order
        None => REFERENCE_ROWS
            .iter()
            .map(|r| Ok((FamilyParams::parse(r.q, r.delta, prec)?, r.n)))
            .collect::<Result<_>>()?,
        Some(g) => {
            let mut v = points(g, prec)?;
            v.sort_by(|a, b| {
                (a.0.q(), a.1, a.0.delta())
                    .partial_cmp(&(b.0.q(), b.1, b.0.delta()))
                    .expect("finite parameters")
            });
            v
        }
    };
    let references: Vec<(FamilyParams, &ReferenceRow)> = REFERENCE_ROWS
        .iter()
        .map(|r| Ok((FamilyParams::parse(r.q, r.delta, prec)?, r)))
        .collect::<Result<_>>()?;
    let records: Vec<TableRecord> = rows
        .par_iter()
        .map(|(p, n)| {
            let b = match bounds(p, *n) {
                Ok(r) => r,
                Err(Error::ChainViolation(r)) => *r,
                Err(e) => return Err(e.into()),
            };
            let comparison = compare.then(|| {
                let printed = references
                    .iter()
                    .find(|(rp, r)| r.n == *n && rp.q() == p.q() && rp.delta() == p.delta())
                    .map(|(_, r)| **r);
                let max_rel_err = printed.map(|r| {
                    rel(b.outer.to_f64(), r.outer)
                        .max(rel(b.z1.to_f64(), r.z1))
                        .max(rel(b.inner.to_f64(), r.inner))
                });
                Comparison {
                    printed,
                    max_rel_err,
                    matches: max_rel_err.map(|e| e <= REFERENCE_RTOL),
                }
            });
            Ok(TableRecord {
                chain_holds: b.chain_holds(),
                q: b.q,
                n: b.n,
                delta: b.delta,
                outer: b.outer,
                z1: b.z1,
                inner: b.inner,
                comparison,
            })
        })
        .collect::<Result<_>>()?;
    ctx.emit(&records)?;
    let ok = records.iter().all(|r| {
        r.chain_holds
            && r.comparison
                .as_ref()
                .and_then(|c| c.matches)
                .unwrap_or(true)
    });
    Ok(if ok { Verdict::Holds } else { Verdict::Fails })
}

fn cmd_moments(
    ctx: &Ctx,
    g: &GridArgs,
    max_order: Option<usize>,
    trunc: Option<Truncation>,
) -> Result<Verdict> {
    let per_point: Vec<Vec<MomentRow>> = points(g, ctx.precision)?
        .par_iter()
        .map(|(p, n)| {
            let spec = PolySpec::new(p, 0, *n);
            let top = max_order.unwrap_or(n.saturating_sub(1));
            Ok(moments(&spec, top, trunc)?
                .into_iter()
                .map(MomentRow)
                .collect())
        })
        .collect::<Result<_>>()?;
    ctx.emit(&per_point.into_iter().flatten().collect::<Vec<_>>())?;
    Ok(Verdict::Holds)
}

fn cmd_find_common_zero(
    ctx: &Ctx,
    kind: CommonZeroKind,
    q: &str,
    n: &str,
    lo: &str,
    hi: &str,
    tol_common: f64,
) -> Result<Verdict> {
    let prec = ctx.precision;
    let qs = parse_reals(q, prec)?;
    let ns = parse_degrees(n)?;
    let lo = PrecReal::parse(lo, prec)?;
    let hi = PrecReal::parse(hi, prec)?;
    let opts = CheckOptions { tol_common };
    let tasks: Vec<(PrecReal, usize)> = qs
        .iter()
        .flat_map(|q| ns.iter().map(move |&n| (q.clone(), n)))
        .collect();
    let records: Vec<CommonZeroSearch> = tasks
        .par_iter()
        .map(|(q, n)| {
            let delta = find_common_zero_delta(kind, q, *n, (&lo, &hi), prec)?;
            let params = FamilyParams::new(q.clone(), delta.clone(), prec)?;
            let point = common_point(kind, *n, &params)?;
            let report = check_common_zero_with(kind, &params, *n, &Direct, &opts)?;
            Ok(CommonZeroSearch {
                kind,
                q: q.clone(),
                n: *n,
                lo: lo.clone(),
                hi: hi.clone(),
                delta,
                point,
                report,
            })
        })
        .collect::<Result<_>>()?;
    ctx.emit(&records)?;
    Ok(combined(records.iter().map(|r| r.report.verdict)))
}

fn run(cli: Cli) -> Result<Verdict> {
    qlag::precision::check_precision(cli.precision_bits)?;
    let ctx = Ctx {
        precision: cli.precision_bits,
        format: cli.format,
        out: cli.out,
        digits: cli.digits.max(1),
    };
    match cli.command {
        Command::Eval { grid, shift, z } => cmd_eval(&ctx, &grid, &shift, &z),
        Command::Zeros { grid, shift } => cmd_zeros(&ctx, &grid, &shift),
        Command::Check { list: true, .. } => {
            for id in CheckId::all() {
                println!("{id}");
            }
            Ok(Verdict::Holds)
        }
        Command::Check {
            theorem,
            q,
            delta,
            n,
            perturb,
            tol_common,
            ..
        } => {
            let (Some(t), Some(q), Some(d), Some(n)) = (theorem, q, delta, n) else {
                bail!("--theorem, --q, --delta and --n are required");
            };
            cmd_check(&ctx, &t, &q, &d, &n, perturb, tol_common)
        }
        Command::Bounds { grid } => cmd_bounds(&ctx, &grid),
        Command::Table1 {
            compare,
            q,
            delta,
            n,
        } => {
            let grid = match (q, delta, n) {
                (Some(q), Some(delta), Some(n)) => Some(GridArgs { q, delta, n }),
                _ => None,
            };
            cmd_table1(&ctx, compare, grid)
        }
        Command::Moments {
            grid,
            max_order,
            j_min,
            j_max,
        } => {
            let trunc = j_min
                .zip(j_max)
                .map(|(j_min, j_max)| Truncation { j_min, j_max });
            cmd_moments(&ctx, &grid, max_order, trunc)
        }
        Command::FindCommonZero {
            kind,
            q,
            n,
            lo,
            hi,
            tol_common,
        } => cmd_find_common_zero(&ctx, kind.into(), &q, &n, &lo, &hi, tol_common),
    }
}

/// Numerical give-ups exit 1; everything the caller can fix (including a
/// user truncation that is too short) exits 2.
fn error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::NonConvergence(_)
            | Error::BracketFailure { .. }
            | Error::Uncertified { .. }
            | Error::Cluster { .. }
            | Error::DivisionByZero(_),
        ) => 1,
        Some(_) => 2,
        None if err.downcast_ref::<std::io::Error>().is_some() => 1,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => ExitCode::from(v.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
