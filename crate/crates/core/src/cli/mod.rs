//! The `robustip` command line: `gen`, `graver`, `solve`, `verify`.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 infeasible,
//! 3 inconclusive (a cap was hit), 4 verification failure.

mod io;

pub use io::{auto_graver, cache_path, write_atomic, CacheOutcome, CACHE_DIR_ENV};

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::format::{
    instance_fingerprint, read_graver, read_instance, read_matrix, read_mcf_data, read_result, read_transport3_data,
    to_canonical_string, write_graver, write_instance, write_result, ResultFile,
};
use crate::graver::{compute_graver_with_stats, verify_graver, CheckStatus, CompletionLimits, GraverBasis, VerifyOptions};
use crate::instances::{
    build_mcf, build_transport3, gen_partition_maxmin, gen_partition_minmax, gen_random, Instance, RandomCosts, RandomParams,
};
use crate::linalg::IntVector;
use crate::objective::box_objective;
use crate::robust::{dual_profit_variant, inner_optimality, report_checks, solve, RobustCaps, Sense, StartPoint, Variant};
use crate::solver::{improving_step, SolveCaps};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;
pub const EXIT_VERIFY_FAILED: u8 = 4;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible(_) => EXIT_INFEASIBLE,
        Error::CapExceeded { .. } => EXIT_INCONCLUSIVE,
        Error::Dimension(_) | Error::Overflow(_) | Error::Invalid(_) | Error::Parse(_) | Error::Io(_) => EXIT_INVALID,
    }
}

#[derive(Parser, Debug)]
#[command(name = "robustip", version, about = "Exact robust integer programming over Graver bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Compute the Graver basis of an instance or matrix file.
    Graver(GraverArgs),
    /// Solve a robust variant.
    Solve(SolveArgs),
    /// Check a Graver file and/or a result file against an instance.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    PartitionMinmax,
    PartitionMaxmin,
    Mcf,
    Transport3,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CostKind {
    List,
    Box,
}

#[derive(Args, Debug)]
struct GenArgs {
    family: Family,
    /// Partition weights, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    a: Vec<i64>,
    /// Raw data file for mcf and transport3.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    rows: usize,
    #[arg(long, default_value_t = 5)]
    cols: usize,
    #[arg(long, default_value_t = 2)]
    entry_range: i64,
    #[arg(long, default_value_t = 2)]
    bound_width: i64,
    #[arg(long, default_value_t = 3)]
    center_range: i64,
    #[arg(long, value_enum, default_value = "box")]
    cost_kind: CostKind,
    #[arg(long, default_value_t = 3)]
    cost_count: usize,
    #[arg(long, default_value_t = 3)]
    cost_range: i64,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LimitArgs {
    #[arg(long, default_value_t = CompletionLimits::default().max_elements)]
    max_elements: u64,
    #[arg(long, default_value_t = CompletionLimits::default().max_pair_reductions)]
    max_pair_reductions: u64,
}

impl LimitArgs {
    fn limits(&self) -> CompletionLimits {
        CompletionLimits { max_elements: self.max_elements, max_pair_reductions: self.max_pair_reductions }
    }
}

#[derive(Args, Debug)]
struct GraverArgs {
    /// Instance file or matrix file.
    input: PathBuf,
    #[command(flatten)]
    limits: LimitArgs,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// minmax-box, maxmin-list, minmax-list-exact, or maxmin-box-exact.
    variant: String,
    instance: PathBuf,
    #[arg(long, conflicts_with = "auto_graver")]
    graver: Option<PathBuf>,
    /// Compute the basis, caching it by matrix hash beside the instance or
    /// in $ROBUSTIP_CACHE_DIR.
    #[arg(long)]
    auto_graver: bool,
    /// Treat the cost model as profits.
    #[arg(long)]
    profit: bool,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(long, default_value_t = SolveCaps::default().max_iterations)]
    max_iterations: u64,
    #[arg(long, default_value_t = RobustCaps::default().enumeration)]
    enumeration_cap: u64,
    #[arg(long, default_value_t = RobustCaps::default().search_nodes)]
    search_nodes: u64,
    /// Record wall time in the result file.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    instance: PathBuf,
    #[arg(long)]
    result: Option<PathBuf>,
    #[arg(long)]
    graver: Option<PathBuf>,
    /// Completeness radius; defaults to the largest entry of the basis.
    #[arg(long)]
    radius: Option<i64>,
    #[arg(long, default_value_t = VerifyOptions::default().point_cap)]
    point_cap: u64,
    /// Machine-readable report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<()> {
        match path {
            Some(p) => write_atomic(p, text),
            None => self.out.write_all(text.as_bytes()).map_err(Error::from),
        }
    }

    /// Human-readable lines go to stderr when stdout carries a file body.
    fn note(&mut self, to_stderr: bool, line: &str) {
        let w: &mut dyn Write = if to_stderr { &mut *self.err } else { &mut *self.out };
        let _ = writeln!(w, "{line}");
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { out, err };
    let outcome = match cli.command {
        Command::Gen(a) => cmd_gen(&a, &mut io),
        Command::Graver(a) => cmd_graver(&a, &mut io),
        Command::Solve(a) => cmd_solve(&a, &mut io),
        Command::Verify(a) => cmd_verify(&a, &mut io),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    read_instance(&io::read_text(path)?).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn cmd_gen(a: &GenArgs, io: &mut Io) -> Result<u8> {
    let need_data = || {
        a.data.as_deref().ok_or_else(|| Error::invalid("this family needs --data <file>")).and_then(io::read_text)
    };
    let inst = match a.family {
        Family::PartitionMinmax => gen_partition_minmax(&a.a)?.instance,
        Family::PartitionMaxmin => gen_partition_maxmin(&a.a)?.instance,
        Family::Mcf => build_mcf(read_mcf_data(&need_data()?)?)?.instance,
        Family::Transport3 => build_transport3(read_transport3_data(&need_data()?)?)?.instance,
        Family::Random => {
            let costs = match a.cost_kind {
                CostKind::List => RandomCosts::List { count: a.cost_count, range: a.cost_range },
                CostKind::Box => RandomCosts::Box { range: a.cost_range },
            };
            let params = RandomParams {
                rows: a.rows,
                cols: a.cols,
                entry_range: a.entry_range,
                bound_width: a.bound_width,
                center_range: a.center_range,
                costs,
                ..Default::default()
            };
            gen_random(&params, a.seed)?
        }
    };
    io.emit(a.out.as_deref(), &write_instance(&inst))?;
    if a.out.is_some() {
        io.note(false, &format!("wrote instance: {} variables, {} equations", inst.set.dim(), inst.set.matrix().rows()));
    }
    Ok(EXIT_OK)
}

fn cmd_graver(a: &GraverArgs, io: &mut Io) -> Result<u8> {
    let m = read_matrix(&io::read_text(&a.input)?)?;
    let (g, stats) = compute_graver_with_stats(&m, a.limits.limits())?;
    io.emit(a.out.as_deref(), &write_graver(&g))?;
    io.note(
        a.out.is_none(),
        &format!("{} elements ({} pair reductions, kernel rank {})", g.len(), stats.pair_reductions, stats.kernel_rank),
    );
    Ok(EXIT_OK)
}

fn load_basis(a: &SolveArgs, inst: &Instance, io: &mut Io) -> Result<Option<GraverBasis>> {
    let matrix = inst.set.matrix();
    if let Some(p) = &a.graver {
        let g = read_graver(&io::read_text(p)?)?;
        if !g.matches(matrix) {
            return Err(Error::invalid(format!("{} was computed for a different matrix", p.display())));
        }
        return Ok(Some(g));
    }
    if a.auto_graver {
        let (g, outcome, path) = auto_graver(&a.instance, matrix, a.limits.limits())?;
        let how = match outcome {
            CacheOutcome::Hit => "cached",
            CacheOutcome::Computed => "computed",
        };
        io.note(a.out.is_none(), &format!("graver basis {how}: {} elements at {}", g.len(), path.display()));
        return Ok(Some(g));
    }
    inst.known_graver.as_ref().map(|els| GraverBasis::for_matrix(matrix, els.clone())).transpose()
}

fn cmd_solve(a: &SolveArgs, io: &mut Io) -> Result<u8> {
    let variant: Variant = a.variant.parse()?;
    let inst = load_instance(&a.instance)?;
    let basis = if variant.needs_graver() {
        let b = load_basis(a, &inst, io)?;
        if b.is_none() {
            return Err(Error::invalid(format!("variant {variant} needs a Graver basis: pass --graver or --auto-graver")));
        }
        b
    } else {
        None
    };
    let caps = RobustCaps {
        solve: SolveCaps { max_iterations: a.max_iterations },
        enumeration: a.enumeration_cap,
        search_nodes: a.search_nodes,
    };
    let start = match &inst.feasible_hint {
        Some(h) => StartPoint::Hint(h.clone()),
        None => StartPoint::Search,
    };
    let t0 = Instant::now();
    let report = if a.profit {
        dual_profit_variant(variant, &inst.set, basis.as_ref(), &inst.costs, &start, &caps)?
    } else {
        solve(variant, &inst.set, basis.as_ref(), &inst.costs, &start, &caps)?
    };
    let elapsed = t0.elapsed().as_millis() as u64;
    let file = ResultFile {
        instance_fingerprint: instance_fingerprint(&inst.set, &inst.costs),
        report,
        wall_time_ms: a.timing.then_some(elapsed),
    };
    io.emit(a.out.as_deref(), &write_result(&file))?;
    let r = &file.report;
    let to_err = a.out.is_none();
    io.note(to_err, &format!("{} {}: value {} ({})", variant, sense_name(r.sense), r.value, r.method.as_str()));
    io.note(to_err, &format!("  x = {}", r.point()));
    io.note(to_err, &format!("  c = {}", r.cost()));
    Ok(EXIT_OK)
}

fn sense_name(s: Sense) -> &'static str {
    match s {
        Sense::Cost => "cost",
        Sense::Profit => "profit",
    }
}

struct Check {
    name: String,
    status: CheckStatus,
    detail: String,
    counterexample: Vec<IntVector>,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        let status = if passed { CheckStatus::Pass } else { CheckStatus::Fail };
        Check { name: name.to_string(), status, detail: detail.into(), counterexample: vec![] }
    }
}

fn verify_result(inst: &Instance, path: &Path, basis: Option<&GraverBasis>, checks: &mut Vec<Check>) -> Result<()> {
    let file = read_result(&io::read_text(path)?)?;
    let r = &file.report;
    let fp = instance_fingerprint(&inst.set, &inst.costs);
    checks.push(Check::new("result_fingerprint", file.instance_fingerprint == fp, format!("instance fingerprint {fp}")));
    let kind_ok = r.variant.uses_box() == matches!(inst.costs, CostModel::Box { .. });
    checks.push(Check::new("result_variant", kind_ok, format!("variant {} on a {} cost model", r.variant, cost_kind(&inst.costs))));
    let n = inst.set.dim();
    if r.optimizer.len() != n || r.witness.len() != n {
        checks.push(Check::new("result_dimension", false, format!("vectors must have length {n}")));
        return Ok(());
    }
    for c in report_checks(r, &inst.set, &inst.costs) {
        checks.push(Check::new(c.name, c.passed, c.detail));
    }
    let Some(g) = basis else { return Ok(()) };
    if !g.matches(inst.set.matrix()) || !inst.set.membership(r.point())? {
        return Ok(());
    }
    let found = match (r.variant, r.sense, &inst.costs) {
        (Variant::MinMaxBox, sense, CostModel::Box { lo, hi }) => {
            let (lo, hi) = match sense {
                Sense::Cost => (lo.clone(), hi.clone()),
                Sense::Profit => (hi.checked_neg()?, lo.checked_neg()?),
            };
            Some(("optimality", improving_step(&inst.set, g, &box_objective(&lo, &hi)?, r.point(), i64::MAX)?))
        }
        (Variant::MaxMinList | Variant::MaxMinBox, _, _) => Some(("inner_optimality", inner_optimality(r, &inst.set, g)?)),
        _ => None,
    };
    if let Some((name, step)) = found {
        let mut c = Check::new(name, step.is_none(), "no improving Graver step");
        if let Some((dir, lambda)) = step {
            c.detail = format!("improving step {lambda}·{dir}");
            c.counterexample = vec![dir];
        }
        checks.push(c);
    }
    Ok(())
}

fn cost_kind(c: &CostModel) -> &'static str {
    match c {
        CostModel::List(_) => "list",
        CostModel::Box { .. } => "box",
    }
}

fn cmd_verify(a: &VerifyArgs, io: &mut Io) -> Result<u8> {
    if a.result.is_none() && a.graver.is_none() {
        return Err(Error::invalid("verify needs --result and/or --graver"));
    }
    let inst = load_instance(&a.instance)?;
    let mut checks = Vec::new();
    let mut radius = None;
    let basis = match &a.graver {
        Some(p) => Some(read_graver(&io::read_text(p)?)?),
        None => None,
    };
    if let Some(g) = &basis {
        let m = inst.set.matrix();
        checks.push(Check::new("graver_matrix", g.matches(m), format!("basis for matrix {}", g.matrix_sha())));
        let r = a.radius.unwrap_or(g.max_abs_entry().min(i64::MAX as u64) as i64).max(1);
        radius = Some(r);
        let opts = VerifyOptions { point_cap: a.point_cap, ..Default::default() };
        for c in verify_graver(m, g, r, opts).checks {
            checks.push(Check {
                name: format!("graver_{}", c.name),
                status: c.status,
                detail: c.detail,
                counterexample: c.counterexample,
            });
        }
    }
    if let Some(p) = &a.result {
        let trusted = basis.as_ref().filter(|_| checks.iter().all(|c| c.status == CheckStatus::Pass));
        verify_result(&inst, p, trusted, &mut checks)?;
    }

    let failed = checks.iter().any(|c| c.status == CheckStatus::Fail);
    let inconclusive = checks.iter().any(|c| c.status == CheckStatus::Inconclusive);
    let report = json!({
        "schema": "robustip.verify/1",
        "passed": !failed && !inconclusive,
        "radius": radius,
        "checks": checks.iter().map(|c| json!({
            "name": c.name,
            "status": c.status.as_str(),
            "detail": c.detail,
            "counterexample": c.counterexample.iter().map(|v| v.to_vec()).collect::<Vec<_>>(),
        })).collect::<Vec<Value>>(),
    });
    io.emit(a.out.as_deref(), &to_canonical_string(&report))?;
    for c in &checks {
        io.note(a.out.is_none(), &format!("{:<12} {}: {}", c.status.as_str().to_uppercase(), c.name, c.detail));
    }
    Ok(if failed {
        EXIT_VERIFY_FAILED
    } else if inconclusive {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    })
}
