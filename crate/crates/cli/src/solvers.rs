//! Solver selection shared by `solve`, `bench` and the suites.

use std::fmt;

use clap::ValueEnum;
use knapsack_core::instance::{normalize, Item};
use knapsack_core::solver::{
    solve_bellman, solve_exhaustive, solve_fast_with_stats, solve_proximity_smawk_with_stats, SolverConfig, SolverStats,
};
use knapsack_core::{Profit, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum SolverKind {
    Fast,
    Bellman,
    Proximity,
    Exhaustive,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Fast => "fast",
            SolverKind::Bellman => "bellman",
            SolverKind::Proximity => "proximity",
            SolverKind::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub profit: Profit,
    /// Largest DP table the solver allocated, in cells (0 for exhaustive search).
    pub peak_table_cells: usize,
}

pub fn run_solver(kind: SolverKind, items: &[Item], capacity: u64, config: &SolverConfig) -> Result<Outcome> {
    match kind {
        SolverKind::Fast => {
            let (profit, stats) = solve_fast_with_stats(items, capacity, config)?;
            Ok(Outcome {
                profit,
                peak_table_cells: stats.peak_table_cells,
            })
        }
        SolverKind::Bellman => {
            let inst = normalize(items, capacity);
            let profit = solve_bellman(&inst, config.bellman_budget)?;
            let cells = if inst.all_fit || inst.is_empty() {
                0
            } else {
                inst.capacity.min(inst.total_weight()) as usize + 1
            };
            Ok(Outcome {
                profit,
                peak_table_cells: cells,
            })
        }
        SolverKind::Proximity => {
            let mut stats = SolverStats::default();
            let profit = solve_proximity_smawk_with_stats(&normalize(items, capacity), &mut stats)?;
            Ok(Outcome {
                profit,
                peak_table_cells: stats.peak_table_cells,
            })
        }
        SolverKind::Exhaustive => Ok(Outcome {
            profit: solve_exhaustive(&normalize(items, capacity))?,
            peak_table_cells: 0,
        }),
    }
}
