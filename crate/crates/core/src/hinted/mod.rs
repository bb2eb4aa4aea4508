//! The hinted table-extension problem: given `q[−L..L]`, hints `S[i]` and a
//! concave profit function per weight of a universe `U`, find for every `i`
//! a vector `x[i]` maximizing `q[z[i]] + Σ Q_w(x[i]_w)` with
//! `z[i] + Σ w·x[i]_w = i`. The answer only has to be exact at indices where
//! every maximizer draws from `S[z[i]]`.

mod algebra;
mod checker;
mod coloring;
mod engine;
mod store;

use std::sync::Arc;

use smallvec::SmallVec;

use crate::concave::ConcaveProfitFn;
use crate::dp::DpTable;
use crate::profit::Profit;

pub use algebra::{apply_update, compose, entrywise_max_instances, entrywise_max_solutions, restrict};
pub use checker::{relaxed_checker, Verdict, Violation};
pub use coloring::{det_balls_and_bins, det_isolating_colorings, det_set_balancing, discrepancy_bound, max_color_load};
pub use engine::{solve, solve_singleton, solve_singleton_with_stats, solve_small_b, solve_with_beta, SingletonStats};
pub use store::{Handle, SetStore, EMPTY};

/// Item weights inside the hinted problem.
pub type Weight = u32;

/// Default `β` of the balls-and-bins layer.
pub const DEFAULT_BETA: f64 = 12.0;

/// `x[i]` as `(weight, multiplicity)` pairs sorted by weight, zeros omitted.
pub type SparseVec = SmallVec<[(Weight, u32); 4]>;

/// Concave profit functions indexed by weight.
#[derive(Clone, Debug, Default)]
pub struct ProfitFns {
    by_weight: Vec<Option<ConcaveProfitFn>>,
}

impl ProfitFns {
    pub fn new(fns: impl IntoIterator<Item = (Weight, ConcaveProfitFn)>) -> ProfitFns {
        let mut by_weight: Vec<Option<ConcaveProfitFn>> = Vec::new();
        for (w, f) in fns {
            assert!(w >= 1, "weights are positive");
            let w = w as usize;
            if by_weight.len() <= w {
                by_weight.resize(w + 1, None);
            }
            by_weight[w] = Some(f);
        }
        ProfitFns { by_weight }
    }

    #[inline]
    pub fn get(&self, w: Weight) -> Option<&ConcaveProfitFn> {
        self.by_weight.get(w as usize).and_then(Option::as_ref)
    }

    pub fn weights(&self) -> impl Iterator<Item = Weight> + '_ {
        self.by_weight
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_some())
            .map(|(w, _)| w as Weight)
    }

    /// `Σ_w Q_w(x_w)`; bottom when some `x_w` exceeds its cap.
    pub fn total(&self, x: &[(Weight, u32)]) -> Profit {
        x.iter().fold(Profit::ZERO, |acc, &(w, c)| {
            acc + self.get(w).map_or(Profit::BOTTOM, |f| f.eval(c as usize))
        })
    }
}

/// An instance `(U, {Q_w}, S[], q[])`. Hints are handles into a shared
/// [`SetStore`]; the effective hint of slot `s` is `store[hints[s]] ∩ U`,
/// so restricting the universe never touches the hints.
#[derive(Clone, Debug)]
pub struct HintedExtendInstance {
    universe: Vec<bool>,
    profits: Arc<ProfitFns>,
    q: DpTable,
    store: Arc<SetStore>,
    hints: Vec<Handle>,
}

impl HintedExtendInstance {
    /// Builds an instance from explicit hint sets, one per slot of `q`.
    pub fn new(
        universe: &[Weight],
        profits: Arc<ProfitFns>,
        q: DpTable,
        hints: &[Vec<Weight>],
    ) -> HintedExtendInstance {
        assert_eq!(hints.len(), q.cells(), "one hint per table entry");
        let mut store = SetStore::new();
        let handles = hints.iter().map(|s| store.intern_unsorted(s.clone())).collect();
        Self::from_handles(universe, profits, q, Arc::new(store), handles)
    }

    pub fn from_handles(
        universe: &[Weight],
        profits: Arc<ProfitFns>,
        q: DpTable,
        store: Arc<SetStore>,
        hints: Vec<Handle>,
    ) -> HintedExtendInstance {
        assert_eq!(hints.len(), q.cells(), "one hint per table entry");
        let mut mask = Vec::new();
        for &w in universe {
            assert!(profits.get(w).is_some(), "weight {w} has no profit function");
            if mask.len() <= w as usize {
                mask.resize(w as usize + 1, false);
            }
            mask[w as usize] = true;
        }
        HintedExtendInstance {
            universe: mask,
            profits,
            q,
            store,
            hints,
        }
    }

    #[inline]
    pub fn half(&self) -> usize {
        self.q.half()
    }

    pub fn q(&self) -> &DpTable {
        &self.q
    }

    pub fn profits(&self) -> &Arc<ProfitFns> {
        &self.profits
    }

    pub fn store(&self) -> &Arc<SetStore> {
        &self.store
    }

    pub fn handles(&self) -> &[Handle] {
        &self.hints
    }

    #[inline]
    pub fn contains(&self, w: Weight) -> bool {
        self.universe.get(w as usize).copied().unwrap_or(false)
    }

    pub fn universe(&self) -> Vec<Weight> {
        self.universe
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(w, _)| w as Weight)
            .collect()
    }

    /// `Q_w` for `w ∈ U`.
    #[inline]
    pub fn profit(&self, w: Weight) -> Option<&ConcaveProfitFn> {
        if self.contains(w) {
            self.profits.get(w)
        } else {
            None
        }
    }

    /// Effective hint `S[s] ∩ U` of a slot.
    pub fn hint(&self, slot: usize) -> Vec<Weight> {
        self.hint_of_handle(self.hints[slot])
    }

    pub fn hint_of_handle(&self, h: Handle) -> Vec<Weight> {
        self.store
            .get(h)
            .iter()
            .copied()
            .filter(|&w| self.contains(w))
            .collect()
    }

    /// Largest effective hint over finite entries.
    pub fn max_hint_size(&self) -> usize {
        let mut seen = vec![false; self.store.len()];
        let mut best = 0;
        for (slot, &h) in self.hints.iter().enumerate() {
            if self.q.values()[slot].is_finite() && !seen[h as usize] {
                seen[h as usize] = true;
                best = best.max(self.store.get(h).iter().filter(|&&w| self.contains(w)).count());
            }
        }
        best
    }
}

/// A solution `(x[], z[], r[])`, indexed by slot `i + L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HintedExtendSolution {
    pub half: usize,
    pub x: Vec<SparseVec>,
    /// Base offsets `z[i]`.
    pub z: Vec<i64>,
    pub r: Vec<Profit>,
}

impl HintedExtendSolution {
    /// `x = 0`, `z[i] = i`, `r = q`.
    pub fn trivial(q: &DpTable) -> HintedExtendSolution {
        let half = q.half();
        HintedExtendSolution {
            half,
            x: vec![SparseVec::new(); q.cells()],
            z: (0..q.cells()).map(|s| q.offset(s)).collect(),
            r: q.values().to_vec(),
        }
    }

    pub fn cells(&self) -> usize {
        self.r.len()
    }

    /// Slot of offset `i`.
    #[inline]
    pub fn slot(&self, i: i64) -> usize {
        (i + self.half as i64) as usize
    }

    pub fn objectives(&self) -> DpTable {
        DpTable::from_values(self.half, self.r.clone())
    }

    /// `x[s]_w`.
    pub fn count(&self, slot: usize, w: Weight) -> u32 {
        self.x[slot].iter().find(|&&(v, _)| v == w).map_or(0, |&(_, c)| c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn effective_hints_follow_the_universe() {
        let fns = Arc::new(ProfitFns::new([
            (2, ConcaveProfitFn::gains(&[1])),
            (3, ConcaveProfitFn::gains(&[1])),
        ]));
        let q = DpTable::trivial(1);
        let hints = vec![vec![], vec![3, 2], vec![2]];
        let k = HintedExtendInstance::new(&[2, 3], fns.clone(), q.clone(), &hints);
        assert_eq!(k.hint(1), vec![2, 3]);
        assert_eq!(k.max_hint_size(), 2);
        let k3 = restrict(&k, &[3]);
        assert_eq!(k3.hint(1), vec![3]);
        assert_eq!(k3.universe(), vec![3]);
    }

    #[test]
    fn total_profit_of_vectors() {
        let fns = ProfitFns::new([(2, ConcaveProfitFn::gains(&[5, 3]))]);
        assert_eq!(fns.total(&[(2, 2)]), Profit::new(8));
        assert_eq!(fns.total(&[(2, 3)]), Profit::BOTTOM);
        assert_eq!(fns.total(&[(4, 1)]), Profit::BOTTOM);
        assert_eq!(fns.total(&[]), Profit::ZERO);
    }
}
