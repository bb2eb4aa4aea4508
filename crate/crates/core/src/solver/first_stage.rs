//! First stage: the lightest weight layer, propagated phase by phase over
//! dyadic rank groups with hinted DP tables.

use std::sync::Arc;

use crate::concave::ConcaveProfitFn;
use crate::dp::DpTable;
use crate::error::Result;
use crate::greedy::{GreedySplit, WeightClass};
use crate::hinted::{self, Handle, HintedExtendInstance, HintedExtendSolution, ProfitFns, SetStore, Weight, EMPTY};
use crate::instance::Instance;
use crate::partition::{rank_group, PhaseSchedule};
use crate::profit::Profit;
use crate::smawk::Direction;

use super::SolverStats;

/// A DP table whose finite entries carry two hints: `S⁺[z]`, the weights
/// from which further items may still be added, and `S⁻[z]`, the weights
/// from which further items may still be removed.
#[derive(Clone, Debug)]
pub struct HintedDpTable {
    pub q: DpTable,
    pub plus: Vec<Handle>,
    pub minus: Vec<Handle>,
    pub store: Arc<SetStore>,
}

impl HintedDpTable {
    /// `q[0] = 0` with `S⁺[0] = S⁻[0] = W₁`.
    pub fn initial(half: usize, w1: &[Weight]) -> HintedDpTable {
        let mut store = SetStore::new();
        let h = store.intern_unsorted(w1.to_vec());
        let mut plus = vec![EMPTY; 2 * half + 1];
        let mut minus = vec![EMPTY; 2 * half + 1];
        plus[half] = h;
        minus[half] = h;
        HintedDpTable {
            q: DpTable::trivial(half),
            plus,
            minus,
            store: Arc::new(store),
        }
    }

    pub fn half(&self) -> usize {
        self.q.half()
    }

    pub fn resize(&mut self, new_half: usize) {
        let old = self.q.half();
        if old == new_half {
            return;
        }
        let keep = old.min(new_half);
        let move_handles = |v: &[Handle]| {
            let mut out = vec![EMPTY; 2 * new_half + 1];
            out[new_half - keep..new_half + keep + 1].copy_from_slice(&v[old - keep..old + keep + 1]);
            out
        };
        self.plus = move_handles(&self.plus);
        self.minus = move_handles(&self.minus);
        self.q = self.q.resize(new_half);
    }

    fn largest(&self, hints: &[Handle]) -> usize {
        hints
            .iter()
            .zip(self.q.values())
            .filter(|(_, v)| v.is_finite())
            .map(|(&h, _)| self.store.get(h).len())
            .max()
            .unwrap_or(0)
    }

    /// Largest `|S⁺[z]|` over finite entries.
    pub fn max_plus(&self) -> usize {
        self.largest(&self.plus)
    }

    /// Largest `|S⁻[z]|` over finite entries.
    pub fn max_minus(&self) -> usize {
        self.largest(&self.minus)
    }
}

/// The items of one phase: per weight, the rank group as a concave
/// function and whether the next group is nonempty.
struct PhaseItems {
    universe: Vec<Weight>,
    fns: Arc<ProfitFns>,
    /// `(group size, next group nonempty)` indexed by weight.
    full: Vec<(u32, bool)>,
}

fn phase_items(items: &Instance, classes: &[&WeightClass], j: usize, direction: Direction) -> PhaseItems {
    let mut universe = Vec::new();
    let mut fns = Vec::new();
    let mut full = Vec::new();
    for class in classes {
        let list = match direction {
            Direction::Positive => &class.outside,
            Direction::Negative => &class.inside,
        };
        let group = rank_group(list, j);
        if group.is_empty() {
            continue;
        }
        let w = class.weight as Weight;
        let profits: Vec<i128> = group.iter().map(|&i| items.items[i].profit).collect();
        let f = match direction {
            Direction::Positive => ConcaveProfitFn::gains(&profits),
            Direction::Negative => ConcaveProfitFn::losses(&profits),
        };
        universe.push(w);
        fns.push((w, f));
        if full.len() <= w as usize {
            full.resize(w as usize + 1, (0, false));
        }
        full[w as usize] = (group.len() as u32, !rank_group(list, j + 1).is_empty());
    }
    PhaseItems {
        universe,
        fns: Arc::new(ProfitFns::new(fns)),
        full,
    }
}

/// Weights whose whole group was taken while the next group is nonempty:
/// the only classes an optimal extension may keep drawing from.
fn exhausted(x: &[(Weight, u32)], full: &[(u32, bool)]) -> Vec<Weight> {
    x.iter()
        .filter(|&&(w, c)| full.get(w as usize).is_some_and(|&(g, next)| next && g == c))
        .map(|&(w, _)| w)
        .collect()
}

/// Runs phase `j` in one direction. Positive phases add the `j`-th rank
/// group of the items outside the greedy set and grow the table to `L_j`;
/// negative phases remove the `j`-th group of the greedy items, by solving
/// the mirrored table. Entries whose new hint exceeds `b_{j+1}` are
/// dropped.
#[allow(clippy::too_many_arguments)]
pub fn propagate_phase(
    table: HintedDpTable,
    direction: Direction,
    j: usize,
    items: &Instance,
    classes: &[&WeightClass],
    schedule: &PhaseSchedule,
    beta: f64,
    stats: &mut SolverStats,
) -> Result<HintedDpTable> {
    let mut table = table;
    table.resize(schedule.l[j]);
    stats.note_table(table.q.cells());
    let phase = phase_items(items, classes, j, direction);
    let budget = schedule.b[j];
    let next_budget = schedule.b[j + 1];
    let cells = table.q.cells();

    let y: HintedExtendSolution = {
        let (q, hints) = match direction {
            Direction::Positive => (table.q.clone(), table.plus.clone()),
            Direction::Negative => {
                let mut h = table.minus.clone();
                h.reverse();
                (table.q.mirrored(), h)
            }
        };
        let inst =
            HintedExtendInstance::from_handles(&phase.universe, phase.fns.clone(), q, table.store.clone(), hints);
        stats.hinted_calls += 1;
        hinted::solve_with_beta(&inst, budget, beta)?
    };

    let store = Arc::make_mut(&mut table.store);
    let mut values = vec![Profit::BOTTOM; cells];
    let mut plus = vec![EMPTY; cells];
    let mut minus = vec![EMPTY; cells];
    for s in 0..cells {
        // slot of the solved table that describes real slot s
        let ys = match direction {
            Direction::Positive => s,
            Direction::Negative => cells - 1 - s,
        };
        if !y.r[ys].is_finite() {
            continue;
        }
        let base = match direction {
            Direction::Positive => y.slot(y.z[ys]),
            Direction::Negative => cells - 1 - y.slot(y.z[ys]),
        };
        let fresh = exhausted(&y.x[ys], &phase.full);
        if fresh.len() > next_budget {
            stats.dropped_entries += 1;
            continue;
        }
        let h = if fresh.is_empty() { EMPTY } else { store.intern(&fresh) };
        match direction {
            Direction::Positive => {
                plus[s] = h;
                minus[s] = table.minus[base];
            }
            Direction::Negative => {
                plus[s] = table.plus[base];
                minus[s] = h;
            }
        }
        values[s] = y.r[ys];
    }
    let out = HintedDpTable {
        q: DpTable::from_values(table.q.half(), values),
        plus,
        minus,
        store: table.store,
    };
    debug_assert!(match direction {
        Direction::Positive => out.max_plus() <= next_budget,
        Direction::Negative => out.max_minus() <= next_budget,
    });
    Ok(out)
}

/// Computes the stage-one table over the items of `W₁`: `k` positive and
/// `k` negative phases starting from the empty exchange.
pub fn first_stage(
    items: &Instance,
    split: &GreedySplit,
    w1: &[u64],
    schedule: &PhaseSchedule,
    beta: f64,
    stats: &mut SolverStats,
) -> Result<DpTable> {
    let classes: Vec<&WeightClass> = w1.iter().filter_map(|&w| split.class_of(w)).collect();
    let w1: Vec<Weight> = w1.iter().map(|&w| w as Weight).collect();
    let mut table = HintedDpTable::initial(schedule.l[0], &w1);
    stats.note_table(table.q.cells());
    for j in 1..=schedule.k {
        table = propagate_phase(table, Direction::Positive, j, items, &classes, schedule, beta, stats)?;
        table = propagate_phase(table, Direction::Negative, j, items, &classes, schedule, beta, stats)?;
    }
    Ok(table.q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greedy::greedy_split;
    use crate::instance::{break_ties, normalize, Item};
    use crate::partition::{phase_schedule, weight_partition};

    fn prepared(pairs: &[(u64, u64)], t: u64) -> (Instance, GreedySplit) {
        let items: Vec<Item> = pairs.iter().map(|&(w, p)| Item::new(w, p)).collect();
        let inst = break_ties(&normalize(&items, t)).unwrap();
        let split = greedy_split(&inst);
        (inst, split)
    }

    #[test]
    fn empty_first_layer_keeps_only_the_origin() {
        let (inst, split) = prepared(&[(2, 3), (3, 4)], 4);
        let schedule = phase_schedule(inst.w_max, 1.0, 0);
        let q = first_stage(&inst, &split, &[], &schedule, 12.0, &mut SolverStats::default()).unwrap();
        let finite: Vec<_> = q.finite_entries().collect();
        assert_eq!(finite, vec![(0, Profit::ZERO)]);
    }

    #[test]
    fn single_outside_item_is_added() {
        // G = {(1, 10)}; the item (2, 3) stays outside.
        let (inst, split) = prepared(&[(1, 10), (2, 3)], 2);
        let wp = weight_partition(&inst, &split, 1.0);
        let schedule = phase_schedule(inst.w_max, 1.0, wp.first().len());
        let q = first_stage(&inst, &split, wp.first(), &schedule, 12.0, &mut SolverStats::default()).unwrap();
        let outside = split.classes.iter().find(|c| c.weight == 2).unwrap().outside[0];
        assert!(q.get(2) >= Profit::new(inst.items[outside].profit));
    }

    #[test]
    fn phases_respect_budgets() {
        let pairs: Vec<(u64, u64)> = (0..60).map(|i| (1 + i % 7, 3 + (i * 13) % 29)).collect();
        let (inst, split) = prepared(&pairs, 90);
        let wp = weight_partition(&inst, &split, 1.0);
        let schedule = phase_schedule(inst.w_max, 1.0, wp.first().len());
        let classes: Vec<&WeightClass> = wp.first().iter().filter_map(|&w| split.class_of(w)).collect();
        let w1: Vec<Weight> = wp.first().iter().map(|&w| w as Weight).collect();
        let mut table = HintedDpTable::initial(schedule.l[0], &w1);
        let mut stats = SolverStats::default();
        for j in 1..=schedule.k {
            table = propagate_phase(
                table,
                Direction::Positive,
                j,
                &inst,
                &classes,
                &schedule,
                12.0,
                &mut stats,
            )
            .unwrap();
            assert_eq!(table.half(), schedule.l[j]);
            assert!(table.max_plus() <= schedule.b[j + 1]);
            table = propagate_phase(
                table,
                Direction::Negative,
                j,
                &inst,
                &classes,
                &schedule,
                12.0,
                &mut stats,
            )
            .unwrap();
            assert_eq!(table.half(), schedule.l[j]);
            assert!(table.max_minus() <= schedule.b[j + 1]);
        }
    }
}
