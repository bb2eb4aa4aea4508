//! Reference solvers: Bellman's capacity DP, the proximity + SMAWK
//! `O(n + w_max³)` algorithm, and exhaustive search.

use crate::dp::DpTable;
use crate::error::{Error, Result};
use crate::greedy::greedy_split;
use crate::instance::{break_ties, Instance};
use crate::profit::Profit;

use super::second_stage::{add_class, extract};
use super::SolverStats;

/// Default cap on `n·t` for [`solve_bellman`].
pub const BELLMAN_DEFAULT_BUDGET: u128 = 1 << 40;

/// Largest capacity (table length) Bellman will allocate.
const BELLMAN_MAX_CAPACITY: u64 = 1 << 31;

/// Exact optimum by the capacity-indexed DP over a normalized instance.
/// Refuses when `n·t'` exceeds `budget`, with `t' = min(t, Σw)`.
pub fn solve_bellman(instance: &Instance, budget: u128) -> Result<Profit> {
    let t = instance.capacity.min(instance.total_weight());
    let work = instance.len() as u128 * t as u128;
    let refuse = |reason: String| Error::Refused {
        solver: "bellman",
        reason,
    };
    if work > budget {
        return Err(refuse(format!("n·t = {work} exceeds the budget {budget}")));
    }
    if t > BELLMAN_MAX_CAPACITY {
        return Err(refuse(format!("capacity {t} is too large for a table")));
    }
    let total = instance.total_profit();
    if total <= i64::MAX as i128 {
        let mut dp = vec![0i64; t as usize + 1];
        for it in &instance.items {
            let (w, p) = (it.weight as usize, it.profit as i64);
            for c in (w..dp.len()).rev() {
                let cand = dp[c - w] + p;
                if cand > dp[c] {
                    dp[c] = cand;
                }
            }
        }
        Ok(Profit::new(dp[t as usize] as i128))
    } else {
        let mut dp = vec![0i128; t as usize + 1];
        for it in &instance.items {
            let w = it.weight as usize;
            for c in (w..dp.len()).rev() {
                dp[c] = dp[c].max(dp[c - w] + it.profit);
            }
        }
        Ok(Profit::new(dp[t as usize]))
    }
}

/// Greedy split plus one batch update per weight class on a table of half
/// size `2·w_max²`.
pub fn solve_proximity_smawk(instance: &Instance) -> Result<Profit> {
    solve_proximity_smawk_with_stats(instance, &mut SolverStats::default())
}

pub fn solve_proximity_smawk_with_stats(instance: &Instance, stats: &mut SolverStats) -> Result<Profit> {
    if let Some(total) = instance.trivial_answer() {
        return Ok(Profit::new(total));
    }
    let primed = if instance.tie_break.is_some() {
        instance.clone()
    } else {
        break_ties(instance)?
    };
    let split = greedy_split(&primed);
    let w = primed.w_max as usize;
    let half = 2 * w * w;
    let mut q = DpTable::trivial(half);
    stats.note_table(q.cells());
    for class in &split.classes {
        q = add_class(q, &primed, &split, class.weight, half);
    }
    Ok(primed.recover(extract(&q, &primed, &split)))
}

/// Largest `n` for direct enumeration.
pub const EXHAUSTIVE_DIRECT_MAX: usize = 24;
/// Largest `n` for meet-in-the-middle.
pub const EXHAUSTIVE_MAX: usize = 40;

/// Exact optimum by trying every subset (`n ≤ 24`) or by meet-in-the-middle
/// (`n ≤ 40`).
pub fn solve_exhaustive(instance: &Instance) -> Result<Profit> {
    let n = instance.len();
    if n <= EXHAUSTIVE_DIRECT_MAX {
        Ok(exhaustive_direct(instance))
    } else if n <= EXHAUSTIVE_MAX {
        Ok(exhaustive_split(instance))
    } else {
        Err(Error::Refused {
            solver: "exhaustive",
            reason: format!("{n} items exceed the limit of {EXHAUSTIVE_MAX}"),
        })
    }
}

/// Gray-code walk over all subsets.
pub fn exhaustive_direct(instance: &Instance) -> Profit {
    let items = &instance.items;
    assert!(
        items.len() <= EXHAUSTIVE_DIRECT_MAX,
        "too many items for direct enumeration"
    );
    let t = instance.capacity as i128;
    let (mut w, mut p) = (0i128, 0i128);
    let mut best = 0i128;
    let mut chosen = 0u64;
    for step in 1u64..(1u64 << items.len()) {
        let bit = step.trailing_zeros() as usize;
        chosen ^= 1 << bit;
        let sign = if chosen & (1 << bit) != 0 { 1 } else { -1 };
        w += sign * items[bit].weight as i128;
        p += sign * items[bit].profit;
        if w <= t && p > best {
            best = p;
        }
    }
    Profit::new(best)
}

/// Meet-in-the-middle: all half-subsets of each side, the second sorted by
/// weight with running profit maxima.
pub fn exhaustive_split(instance: &Instance) -> Profit {
    let items = &instance.items;
    assert!(items.len() <= EXHAUSTIVE_MAX, "too many items for meet-in-the-middle");
    let mid = items.len() / 2;
    let sums = |part: &[crate::instance::Item]| -> Vec<(u128, i128)> {
        let mut out = vec![(0u128, 0i128)];
        for it in part {
            let len = out.len();
            for k in 0..len {
                let (w, p) = out[k];
                out.push((w + it.weight as u128, p + it.profit));
            }
        }
        out
    };
    let left = sums(&items[..mid]);
    let mut right = sums(&items[mid..]);
    right.sort_unstable();
    let mut best_upto = Vec::with_capacity(right.len());
    let mut run = i128::MIN;
    for &(_, p) in &right {
        run = run.max(p);
        best_upto.push(run);
    }
    let t = instance.capacity as u128;
    let mut best = 0i128;
    for (w, p) in left {
        if w > t {
            continue;
        }
        let k = right.partition_point(|&(rw, _)| rw <= t - w);
        if k > 0 {
            best = best.max(p + best_upto[k - 1]);
        }
    }
    Profit::new(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{normalize, Item};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inst(pairs: &[(u64, u64)], t: u64) -> Instance {
        let items: Vec<Item> = pairs.iter().map(|&(w, p)| Item::new(w, p)).collect();
        normalize(&items, t)
    }

    #[test]
    fn bellman_examples() {
        assert_eq!(
            solve_bellman(&inst(&[(2, 3), (3, 4), (5, 5)], 6), u128::MAX).unwrap(),
            Profit::new(7)
        );
        assert_eq!(solve_bellman(&inst(&[(2, 3)], 0), u128::MAX).unwrap(), Profit::ZERO);
        assert_eq!(solve_bellman(&inst(&[(4, 9)], 7), u128::MAX).unwrap(), Profit::new(9));
    }

    #[test]
    fn bellman_refuses_over_budget() {
        let r = solve_bellman(&inst(&[(2, 3), (3, 4), (5, 5)], 6), 5);
        assert!(matches!(r, Err(Error::Refused { .. })));
    }

    #[test]
    fn exhaustive_examples() {
        assert_eq!(solve_exhaustive(&inst(&[], 5)).unwrap(), Profit::ZERO);
        assert_eq!(
            solve_exhaustive(&inst(&[(2, 3), (3, 4), (5, 5)], 6)).unwrap(),
            Profit::new(7)
        );
    }

    #[test]
    fn proximity_example() {
        let i = inst(&[(2, 30), (3, 40), (5, 50)], 6);
        assert_eq!(solve_proximity_smawk(&i).unwrap(), Profit::new(70));
    }

    #[test]
    fn meet_in_the_middle_agrees_with_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(0..=20);
            let pairs: Vec<(u64, u64)> = (0..n).map(|_| (rng.gen_range(1..=30), rng.gen_range(1..=50))).collect();
            let i = inst(&pairs, rng.gen_range(0..=200));
            assert_eq!(exhaustive_split(&i), exhaustive_direct(&i));
        }
    }

    #[test]
    fn baselines_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let n = rng.gen_range(0..=14);
            let pairs: Vec<(u64, u64)> = (0..n).map(|_| (rng.gen_range(1..=12), rng.gen_range(1..=20))).collect();
            let i = inst(&pairs, rng.gen_range(0..=60));
            let e = solve_exhaustive(&i).unwrap();
            assert_eq!(solve_bellman(&i, u128::MAX).unwrap(), e);
            assert_eq!(solve_proximity_smawk(&i).unwrap(), e);
        }
    }
}
