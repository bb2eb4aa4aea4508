//! The two-stage solver and its baselines.

mod baselines;
mod first_stage;
mod second_stage;

pub use baselines::{
    exhaustive_direct, exhaustive_split, solve_bellman, solve_exhaustive, solve_proximity_smawk,
    solve_proximity_smawk_with_stats, BELLMAN_DEFAULT_BUDGET, EXHAUSTIVE_DIRECT_MAX, EXHAUSTIVE_MAX,
};
pub use first_stage::{first_stage, propagate_phase, HintedDpTable};
pub use second_stage::second_stage;

use crate::error::{Error, Result};
use crate::greedy::greedy_split;
use crate::hinted::DEFAULT_BETA;
use crate::instance::{break_ties, normalize, Instance, Item};
use crate::partition::{phase_schedule, weight_partition};
use crate::profit::Profit;

/// Default structural constant `C`.
pub const DEFAULT_C: f64 = 2.0;

/// Default cap on the cells of any DP table of the fast solver.
pub const DEFAULT_MAX_TABLE_CELLS: usize = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Off,
    /// Re-solve with Bellman when its budget allows and fail on mismatch.
    CrossCheckBellman,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Structural constant `C`; larger values mean larger tables and hints.
    pub c: f64,
    /// Balls-and-bins constant `β`.
    pub beta: f64,
    pub verify: VerifyMode,
    /// Always answer with Bellman.
    pub force_fallback: bool,
    /// `n·t` budget of Bellman, as fallback and as cross-check.
    pub bellman_budget: u128,
    /// Refuse instances whose stage-one table would exceed this many cells.
    pub max_table_cells: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            c: DEFAULT_C,
            beta: DEFAULT_BETA,
            verify: VerifyMode::Off,
            force_fallback: false,
            bellman_budget: BELLMAN_DEFAULT_BUDGET,
            max_table_cells: DEFAULT_MAX_TABLE_CELLS,
        }
    }
}

impl SolverConfig {
    pub fn with_c(c: f64) -> SolverConfig {
        SolverConfig {
            c,
            ..SolverConfig::default()
        }
    }
}

/// Which path produced the answer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Route {
    #[default]
    Trivial,
    Bellman,
    TwoStage,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub route: Route,
    /// Largest number of cells of any DP table built.
    pub peak_table_cells: usize,
    pub hinted_calls: usize,
    /// Stage-one entries dropped for exceeding their hint budget.
    pub dropped_entries: usize,
    /// Number of weight layers.
    pub layers: usize,
    /// Number of weights in the first layer.
    pub first_layer: usize,
}

impl SolverStats {
    pub(crate) fn note_table(&mut self, cells: usize) {
        self.peak_table_cells = self.peak_table_cells.max(cells);
    }
}

/// Optimal profit of a 0-1 knapsack instance.
pub fn solve_fast(raw_items: &[Item], capacity: u64, config: &SolverConfig) -> Result<Profit> {
    solve_fast_with_stats(raw_items, capacity, config).map(|(p, _)| p)
}

pub fn solve_fast_with_stats(
    raw_items: &[Item],
    capacity: u64,
    config: &SolverConfig,
) -> Result<(Profit, SolverStats)> {
    assert!(
        config.c > 0.0 && config.beta >= 1.0,
        "C must be positive and β at least 1"
    );
    let mut stats = SolverStats::default();
    let instance = normalize(raw_items, capacity);
    if let Some(total) = instance.trivial_answer() {
        return Ok((Profit::new(total), stats));
    }
    let n = instance.len() as u128;
    if config.force_fallback || instance.w_max as u128 > n * n {
        stats.route = Route::Bellman;
        return Ok((solve_bellman(&instance, config.bellman_budget)?, stats));
    }
    stats.route = Route::TwoStage;
    let answer = two_stage(&instance, config, &mut stats)?;
    if config.verify == VerifyMode::CrossCheckBellman {
        if let Ok(expected) = solve_bellman(&instance, config.bellman_budget) {
            if expected != answer {
                return Err(Error::Mismatch {
                    solver: "fast",
                    got: answer.to_string(),
                    expected: expected.to_string(),
                });
            }
        }
    }
    Ok((answer, stats))
}

fn two_stage(instance: &Instance, config: &SolverConfig, stats: &mut SolverStats) -> Result<Profit> {
    if instance.w_max > u32::MAX as u64 {
        return Err(Error::Refused {
            solver: "fast",
            reason: format!("w_max = {} does not fit 32 bits", instance.w_max),
        });
    }
    let primed = break_ties(instance)?;
    let split = greedy_split(&primed);
    let partition = weight_partition(&primed, &split, config.c);
    let schedule = phase_schedule(primed.w_max, config.c, partition.first().len());
    stats.layers = partition.s();
    stats.first_layer = partition.first().len();
    let cells = 2 * schedule.l[schedule.k] + 1;
    if cells > config.max_table_cells {
        return Err(Error::Refused {
            solver: "fast",
            reason: format!("a table of {cells} cells exceeds the limit {}", config.max_table_cells),
        });
    }
    let table = first_stage(&primed, &split, partition.first(), &schedule, config.beta, stats)?;
    let best = second_stage(table, &primed, &split, &partition, &schedule, stats);
    Ok(primed.recover(best))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn items(pairs: &[(u64, u64)]) -> Vec<Item> {
        pairs.iter().map(|&(w, p)| Item::new(w, p)).collect()
    }

    #[test]
    fn empty_instance() {
        assert_eq!(solve_fast(&[], 5, &SolverConfig::default()).unwrap(), Profit::ZERO);
    }

    #[test]
    fn three_items() {
        let r = solve_fast(&items(&[(2, 30), (3, 40), (5, 50)]), 6, &SolverConfig::default()).unwrap();
        assert_eq!(r, Profit::new(70));
    }

    #[test]
    fn fallback_agrees() {
        let it = items(&[(2, 30), (3, 40), (5, 50), (1, 7), (4, 33)]);
        let cfg = SolverConfig {
            force_fallback: true,
            ..SolverConfig::default()
        };
        let (a, s) = solve_fast_with_stats(&it, 9, &cfg).unwrap();
        assert_eq!(s.route, Route::Bellman);
        assert_eq!(a, solve_fast(&it, 9, &SolverConfig::default()).unwrap());
    }

    #[test]
    fn large_weights_route_to_bellman() {
        let (_, s) = solve_fast_with_stats(&items(&[(50, 3), (60, 4)]), 70, &SolverConfig::default()).unwrap();
        assert_eq!(s.route, Route::Bellman);
    }
}
