//! Timing sweeps over `w_max` with cross-solver agreement checks.

use std::io::Write;
use std::time::{Duration, Instant};

use knapsack_core::solver::SolverConfig;
use thiserror::Error;

use crate::gen::{generate, Dist, GenParams};
use crate::solvers::{run_solver, SolverKind};

pub const CSV_HEADER: [&str; 8] = [
    "instance_id",
    "n",
    "w_max",
    "t",
    "solver",
    "profit",
    "wall_time_ns",
    "peak_table_cells",
];

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub wmax_list: Vec<u64>,
    /// Items per unit of `w_max`: `n = n_per_w · w_max`.
    pub n_per_w: u64,
    pub solvers: Vec<SolverKind>,
    pub reps: usize,
    pub seed: u64,
    pub t_frac: f64,
    pub pmax: u64,
    pub dist: Dist,
    pub solver: SolverConfig,
    /// Stop before a size whose projected time would overrun this budget.
    /// The first size always runs.
    pub budget: Option<Duration>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            wmax_list: vec![256, 512, 1024, 2048, 4096],
            n_per_w: 4,
            solvers: vec![SolverKind::Fast, SolverKind::Bellman],
            reps: 1,
            seed: 1,
            t_frac: 0.5,
            pmax: 1000,
            dist: Dist::Uniform,
            solver: SolverConfig::default(),
            budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub instance_id: usize,
    pub n: usize,
    pub w_max: u64,
    pub t: u64,
    pub solver: SolverKind,
    pub profit: String,
    pub wall_time_ns: u128,
    pub peak_table_cells: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// `w_max` values that were skipped because of the time budget.
    pub skipped: Vec<u64>,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("instance {instance_id} (w_max = {w_max}): {a} returned {pa} but {b} returned {pb}")]
    Mismatch {
        instance_id: usize,
        w_max: u64,
        a: SolverKind,
        pa: String,
        b: SolverKind,
        pb: String,
    },
    #[error("instance {instance_id} (w_max = {w_max}): {error}")]
    Solver {
        instance_id: usize,
        w_max: u64,
        error: knapsack_core::Error,
    },
}

/// Seed of the instance for one `w_max`.
pub fn instance_seed(seed: u64, w_max: u64) -> u64 {
    seed ^ w_max.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Median wall time of `solver` at each `w_max`, in seconds.
pub fn median_times(rows: &[BenchRow], solver: SolverKind) -> Vec<(u64, f64)> {
    let mut sizes: Vec<u64> = rows.iter().filter(|r| r.solver == solver).map(|r| r.w_max).collect();
    sizes.dedup();
    sizes
        .into_iter()
        .map(|w| {
            let mut ts: Vec<u128> = rows
                .iter()
                .filter(|r| r.solver == solver && r.w_max == w)
                .map(|r| r.wall_time_ns)
                .collect();
            ts.sort_unstable();
            (w, ts[ts.len() / 2] as f64 * 1e-9)
        })
        .collect()
}

/// Least-squares slope of `ln t` against `ln w`, if at least two sizes exist.
pub fn loglog_slope(points: &[(u64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|&(w, _)| (w as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, t)| t.max(1e-9).ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Expected seconds to run every solver at `w`, extrapolated from the
/// measured sizes (exponent 3 when only one size is known).
fn projection(rows: &[BenchRow], solvers: &[SolverKind], w: u64, reps: usize) -> f64 {
    solvers
        .iter()
        .map(|&s| {
            let pts = median_times(rows, s);
            let Some(&(w_last, t_last)) = pts.last() else {
                return 0.0;
            };
            let slope = if pts.len() >= 2 {
                loglog_slope(&pts[pts.len() - 2..]).unwrap_or(3.0).max(1.0)
            } else {
                3.0
            };
            t_last * (w as f64 / w_last as f64).powf(slope) * reps as f64
        })
        .sum()
}

pub fn run_bench(config: &BenchConfig) -> Result<BenchReport, BenchError> {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (instance_id, &w_max) in config.wmax_list.iter().enumerate() {
        if let (Some(budget), false) = (config.budget, rows.is_empty()) {
            let projected = projection(&rows, &config.solvers, w_max, config.reps);
            if start.elapsed().as_secs_f64() + projected > budget.as_secs_f64() {
                skipped.extend_from_slice(&config.wmax_list[instance_id..]);
                break;
            }
        }
        let file = generate(&GenParams {
            n: (config.n_per_w * w_max) as usize,
            wmax: w_max,
            pmax: config.pmax,
            t_frac: config.t_frac,
            seed: instance_seed(config.seed, w_max),
            dist: config.dist,
        });
        let items = file.items();
        let mut first: Option<(SolverKind, String)> = None;
        for &solver in &config.solvers {
            for _ in 0..config.reps {
                let t0 = Instant::now();
                let out =
                    run_solver(solver, &items, file.capacity, &config.solver).map_err(|error| BenchError::Solver {
                        instance_id,
                        w_max,
                        error,
                    })?;
                let wall = t0.elapsed().as_nanos();
                let profit = out.profit.to_string();
                match &first {
                    None => first = Some((solver, profit.clone())),
                    Some((a, pa)) if *pa != profit => {
                        return Err(BenchError::Mismatch {
                            instance_id,
                            w_max,
                            a: *a,
                            pa: pa.clone(),
                            b: solver,
                            pb: profit,
                        })
                    }
                    Some(_) => {}
                }
                rows.push(BenchRow {
                    instance_id,
                    n: items.len(),
                    w_max,
                    t: file.capacity,
                    solver,
                    profit,
                    wall_time_ns: wall,
                    peak_table_cells: out.peak_table_cells,
                });
            }
        }
    }
    // instance, then solver in the order given; reps keep their run order
    let order = |s: SolverKind| config.solvers.iter().position(|&x| x == s).unwrap_or(usize::MAX);
    rows.sort_by_key(|r| (r.instance_id, order(r.solver)));
    Ok(BenchReport { rows, skipped })
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.instance_id.to_string(),
            r.n.to_string(),
            r.w_max.to_string(),
            r.t.to_string(),
            r.solver.to_string(),
            r.profit.clone(),
            r.wall_time_ns.to_string(),
            r.peak_table_cells.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One summary line per solver with its fitted exponent.
pub fn summary(report: &BenchReport, solvers: &[SolverKind]) -> Vec<String> {
    let mut lines: Vec<String> = solvers
        .iter()
        .map(|&s| {
            let pts = median_times(&report.rows, s);
            match (loglog_slope(&pts), pts.first(), pts.last()) {
                (Some(slope), Some(lo), Some(hi)) => {
                    format!("slope {s}: {slope:.3} (log-log fit over w_max {}..{})", lo.0, hi.0)
                }
                _ => format!("slope {s}: n/a (needs two sizes)"),
            }
        })
        .collect();
    if !report.skipped.is_empty() {
        lines.push(format!(
            "skipped w_max {:?}: projected time exceeds the budget",
            report.skipped
        ));
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_a_power_law() {
        let pts: Vec<(u64, f64)> = [8u64, 16, 32, 64].iter().map(|&w| (w, (w as f64).powf(2.5))).collect();
        assert!((loglog_slope(&pts).unwrap() - 2.5).abs() < 1e-9);
        assert_eq!(loglog_slope(&pts[..1]), None);
    }

    #[test]
    fn two_solvers_one_instance() {
        let cfg = BenchConfig {
            wmax_list: vec![8],
            n_per_w: 2,
            solvers: vec![SolverKind::Fast, SolverKind::Bellman],
            ..BenchConfig::default()
        };
        let rep = run_bench(&cfg).unwrap();
        assert_eq!(rep.rows.len(), 2);
        assert_eq!(rep.rows[0].profit, rep.rows[1].profit);
        assert_eq!(rep.rows[0].solver, SolverKind::Fast);
        let mut buf = Vec::new();
        write_csv(&rep.rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "instance_id,n,w_max,t,solver,profit,wall_time_ns,peak_table_cells"
        );
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn zero_budget_skips_everything_after_the_first_size() {
        let cfg = BenchConfig {
            wmax_list: vec![4, 8],
            n_per_w: 2,
            budget: Some(Duration::ZERO),
            ..BenchConfig::default()
        };
        let rep = run_bench(&cfg).unwrap();
        assert_eq!(rep.skipped, vec![8]);
        assert!(rep.rows.iter().all(|r| r.w_max == 4));
    }
}
