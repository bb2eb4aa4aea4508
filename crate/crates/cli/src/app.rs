//! Argument parsing and the four commands.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use knapsack_core::hinted::DEFAULT_BETA;
use knapsack_core::instance::normalize;
use knapsack_core::solver::{solve_bellman, SolverConfig, DEFAULT_C};
use knapsack_core::Error;

use crate::bench::{run_bench, summary, write_csv, BenchConfig, BenchError};
use crate::gen::{generate, Dist, GenParams};
use crate::io::parse_instance;
use crate::solvers::{run_solver, SolverKind};
use crate::suites::{run_all, Scale};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "knapsack", version, about = "Exact 0-1 knapsack solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance file and print the optimum.
    Solve(SolveArgs),
    /// Write a random instance to standard output.
    Gen(GenArgs),
    /// Time solvers over a range of w_max and write CSV rows.
    Bench(BenchArgs),
    /// Run the oracle-equivalence suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value_t = SolverKind::Fast)]
    pub solver: SolverKind,
    /// Structural constant C of the fast solver.
    #[arg(long, alias = "structural-constant", default_value_t = DEFAULT_C)]
    pub constant: f64,
    /// Cross-check the answer against Bellman when its budget allows.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub wmax: u64,
    #[arg(long, default_value_t = 1000)]
    pub pmax: u64,
    #[arg(long, default_value_t = 0.5)]
    pub t_frac: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Dist::Uniform)]
    pub dist: Dist,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "256,512,1024,2048,4096")]
    pub wmax_list: Vec<u64>,
    #[arg(long, default_value_t = 4)]
    pub n_per_w: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "fast,bellman")]
    pub solvers: Vec<SolverKind>,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.5)]
    pub t_frac: f64,
    #[arg(long, value_enum, default_value_t = Dist::Uniform)]
    pub dist: Dist,
    #[arg(long, alias = "structural-constant", default_value_t = DEFAULT_C)]
    pub constant: f64,
    /// Skip sizes whose projected time would exceed this many seconds.
    #[arg(long)]
    pub budget_secs: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Reduced instance counts; every suite still runs.
    #[arg(long)]
    pub quick: bool,
    /// Balls-and-bins constant used by the coloring-based suites.
    #[arg(long, default_value_t = DEFAULT_BETA)]
    pub beta: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

fn exit_code_of(e: &Error) -> i32 {
    match e {
        Error::Refused { .. } | Error::ProfitOverflow { .. } => EXIT_REFUSED,
        Error::Mismatch { .. } => EXIT_MISMATCH,
        Error::InvalidItem { .. } => EXIT_PARSE,
        Error::ColoringBound { .. } => EXIT_FAILURE,
    }
}

fn solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match fs::read_to_string(&args.path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", args.path.display());
            return EXIT_PARSE;
        }
    };
    let file = match parse_instance(&text) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", args.path.display());
            return EXIT_PARSE;
        }
    };
    if !(args.constant > 0.0 && args.constant.is_finite()) {
        let _ = writeln!(err, "error: --constant must be positive");
        return EXIT_PARSE;
    }
    let config = SolverConfig::with_c(args.constant);
    let items = file.items();
    let answer = match run_solver(args.solver, &items, file.capacity, &config) {
        Ok(o) => o.profit,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code_of(&e);
        }
    };
    if args.verify {
        match solve_bellman(&normalize(&items, file.capacity), config.bellman_budget) {
            Ok(expected) if expected != answer => {
                let _ = writeln!(
                    err,
                    "error: {} returned {answer}, bellman returned {expected}",
                    args.solver
                );
                return EXIT_MISMATCH;
            }
            Ok(_) => {}
            Err(e) => {
                let _ = writeln!(err, "warning: verification skipped: {e}");
            }
        }
    }
    let _ = writeln!(out, "{answer}");
    EXIT_OK
}

fn gen(args: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if args.wmax == 0 || args.pmax == 0 || args.t_frac.is_nan() || args.t_frac < 0.0 {
        let _ = writeln!(
            err,
            "error: --wmax and --pmax must be positive and --t-frac non-negative"
        );
        return EXIT_PARSE;
    }
    let file = generate(&GenParams {
        n: args.n,
        wmax: args.wmax,
        pmax: args.pmax,
        t_frac: args.t_frac,
        seed: args.seed,
        dist: args.dist,
    });
    let _ = out.write_all(file.to_text().as_bytes());
    EXIT_OK
}

fn bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if args.reps == 0 || args.wmax_list.contains(&0) || args.constant.is_nan() || args.constant <= 0.0 {
        let _ = writeln!(err, "error: --reps, every w_max and --constant must be positive");
        return EXIT_PARSE;
    }
    let config = BenchConfig {
        wmax_list: args.wmax_list.clone(),
        n_per_w: args.n_per_w,
        solvers: args.solvers.clone(),
        reps: args.reps,
        seed: args.seed,
        t_frac: args.t_frac,
        dist: args.dist,
        solver: SolverConfig::with_c(args.constant),
        budget: args.budget_secs.map(Duration::from_secs),
        ..BenchConfig::default()
    };
    let report = match run_bench(&config) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                BenchError::Mismatch { .. } => EXIT_MISMATCH,
                BenchError::Solver { error, .. } => exit_code_of(&error),
            };
        }
    };
    let written = match &args.out {
        Some(path) => fs::File::create(path)
            .map_err(csv::Error::from)
            .and_then(|f| write_csv(&report.rows, f)),
        None => write_csv(&report.rows, &mut *out),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: writing CSV: {e}");
        return EXIT_FAILURE;
    }
    for line in summary(&report, &config.solvers) {
        let _ = writeln!(err, "{line}");
    }
    EXIT_OK
}

fn selftest(args: &SelftestArgs, out: &mut dyn Write) -> i32 {
    let scale = if args.quick { Scale::QUICK } else { Scale::FULL };
    let reports = run_all(scale, args.seed, args.beta);
    let mut ok = true;
    for r in &reports {
        let _ = writeln!(out, "{}", r.line());
        for m in &r.messages {
            let _ = writeln!(out, "    {m}");
        }
        ok &= r.passed();
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let _ = writeln!(out, "{passed}/{} suites passed", reports.len());
    if ok {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

/// Runs one command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match &cli.command {
        Command::Solve(a) => solve(a, out, err),
        Command::Gen(a) => gen(a, out, err),
        Command::Bench(a) => bench(a, out, err),
        Command::Selftest(a) => selftest(a, out),
    }
}
