//! Exact 0-1 knapsack with a deterministic `O(n + w_max² log⁴ w_max)`
//! pipeline, plus the reference solvers used to check it.
//!
//! The fast path breaks ties, splits the instance at the greedy solution,
//! and builds a DP table over signed weight offsets in two stages: a hinted
//! phase-by-phase propagation over the lightest weight layer, followed by
//! batch updates of the remaining weight classes.

pub mod concave;
pub mod dp;
pub mod error;
pub mod greedy;
pub mod hinted;
pub mod instance;
pub mod partition;
pub mod profit;
pub mod smawk;
pub mod solver;

pub use concave::ConcaveProfitFn;
pub use dp::DpTable;
pub use error::{Error, Result};
pub use greedy::{greedy_split, GreedySplit, WeightClass};
pub use hinted::{HintedExtendInstance, HintedExtendSolution};
pub use instance::{break_ties, normalize, recover_profit, Instance, Item, TieBreak};
pub use partition::{phase_schedule, rank_partition, weight_partition, PhaseSchedule, RankPartition, WeightPartition};
pub use profit::Profit;
pub use smawk::{
    batch_update_weight_class, concave_maxplus_conv, row_maxima, Direction, MatrixOracle, RowMaximaBreakpoints,
};
pub use solver::{
    solve_bellman, solve_exhaustive, solve_fast, solve_fast_with_stats, solve_proximity_smawk, SolverConfig,
    SolverStats, VerifyMode,
};
