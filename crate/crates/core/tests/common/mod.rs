#![allow(dead_code)]

use std::sync::Arc;

use knapsack_core::concave::ConcaveProfitFn;
use knapsack_core::dp::DpTable;
use knapsack_core::hinted::{HintedExtendInstance, ProfitFns, Weight};
use knapsack_core::profit::Profit;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random concave function with up to `max_cap` increments, gains or losses.
pub fn random_fn(rng: &mut ChaCha8Rng, max_cap: usize) -> ConcaveProfitFn {
    let cap = rng.gen_range(0..=max_cap);
    let mut inc: Vec<i128> = (0..cap).map(|_| rng.gen_range(-20..=30)).collect();
    inc.sort_unstable_by(|a, b| b.cmp(a));
    ConcaveProfitFn::from_increments(inc)
}

/// Random instance with `L ≤ max_half`, `|U| ≤ 6` and hints of size at most `b`.
pub fn random_instance(rng: &mut ChaCha8Rng, max_half: usize, b: usize) -> HintedExtendInstance {
    let half = rng.gen_range(0..=max_half);
    let pool: Vec<Weight> = (1..=12).collect();
    let u_len = rng.gen_range(1..=6);
    let mut universe: Vec<Weight> = pool.choose_multiple(rng, u_len).copied().collect();
    universe.sort_unstable();
    let fns = Arc::new(ProfitFns::new(
        universe.iter().map(|&w| (w, random_fn(rng, 4))).collect::<Vec<_>>(),
    ));
    let density = rng.gen_range(0.05..0.8);
    let mut q = DpTable::bottom(half);
    let mut hints = Vec::with_capacity(2 * half + 1);
    for s in 0..2 * half + 1 {
        if rng.gen_bool(density) {
            q.values_mut()[s] = Profit::new(rng.gen_range(-40..=40));
            let k = rng.gen_range(0..=b.min(universe.len()));
            hints.push(universe.choose_multiple(rng, k).copied().collect());
        } else {
            hints.push(Vec::new());
        }
    }
    HintedExtendInstance::new(&universe, fns, q, &hints)
}
