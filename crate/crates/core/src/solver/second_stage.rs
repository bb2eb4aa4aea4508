//! Second stage: the remaining weight layers by batch updates, then the
//! final answer.

use crate::concave::ConcaveProfitFn;
use crate::dp::DpTable;
use crate::greedy::GreedySplit;
use crate::instance::Instance;
use crate::partition::{PhaseSchedule, WeightPartition};
use crate::profit::Profit;
use crate::smawk::{batch_update_weight_class, Direction};

use super::SolverStats;

/// Adds all items of one weight class, outside items first.
pub(crate) fn add_class(q: DpTable, items: &Instance, split: &GreedySplit, w: u64, half: usize) -> DpTable {
    let Some(class) = split.class_of(w) else {
        return q.resize(half);
    };
    let mut q = q;
    if !class.outside.is_empty() {
        let profits: Vec<i128> = class.outside.iter().map(|&i| items.items[i].profit).collect();
        q = batch_update_weight_class(&q, w, &ConcaveProfitFn::gains(&profits), half, Direction::Positive);
    }
    if !class.inside.is_empty() {
        let profits: Vec<i128> = class.inside.iter().map(|&i| items.items[i].profit).collect();
        q = batch_update_weight_class(&q, w, &ConcaveProfitFn::losses(&profits), half, Direction::Negative);
    }
    q.resize(half)
}

/// `P(G) + max_{z ≤ t − W(G)} q[z]`.
pub(crate) fn extract(q: &DpTable, items: &Instance, split: &GreedySplit) -> Profit {
    let best = q.max_up_to(split.slack(items.capacity) as i64);
    best + split.greedy_profit
}

/// Folds the layers `W_2..W_s` into the stage-one table and returns the best
/// total profit (in the instance's own units).
pub fn second_stage(
    table: DpTable,
    items: &Instance,
    split: &GreedySplit,
    partition: &WeightPartition,
    schedule: &PhaseSchedule,
    stats: &mut SolverStats,
) -> Profit {
    let mut q = table.resize(schedule.stage_two_size(1));
    stats.note_table(q.cells());
    for j in 2..=partition.s() {
        let half = q.half();
        for &w in &partition.parts[j - 1] {
            q = add_class(q, items, split, w, half);
        }
        q = q.resize(schedule.stage_two_size(j));
    }
    extract(&q, items, split)
}
