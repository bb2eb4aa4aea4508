//! Greedy (maximal prefix) solution, weight classes and ranks.

use std::cmp::Ordering;

use crate::instance::Instance;

/// Items of one weight, split by side of the greedy solution and listed in
/// rank order. Each list keeps at most `2·w_max` items; an optimal exchange
/// never touches a higher rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightClass {
    pub weight: u64,
    /// Items outside `G`, by decreasing profit (rank 1 first).
    pub outside: Vec<usize>,
    /// Items inside `G`, by increasing profit (rank 1 first).
    pub inside: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedySplit {
    /// Item indices by strictly decreasing efficiency.
    pub order: Vec<usize>,
    /// `i*`: the greedy set is `order[..break_index]`.
    pub break_index: usize,
    pub in_greedy: Vec<bool>,
    pub greedy_weight: u64,
    pub greedy_profit: i128,
    /// 1-based rank of every item inside its weight class and side.
    pub rank: Vec<u32>,
    /// One entry per distinct weight, sorted by weight.
    pub classes: Vec<WeightClass>,
}

impl GreedySplit {
    pub fn greedy_set(&self) -> &[usize] {
        &self.order[..self.break_index]
    }

    pub fn class_of(&self, weight: u64) -> Option<&WeightClass> {
        self.classes
            .binary_search_by_key(&weight, |c| c.weight)
            .ok()
            .map(|i| &self.classes[i])
    }

    /// Slack `t − W(G)` left by the greedy solution.
    pub fn slack(&self, capacity: u64) -> u64 {
        capacity - self.greedy_weight
    }
}

/// Compares efficiencies `p_a / w_a` and `p_b / w_b` exactly.
pub fn cmp_efficiency(pa: i128, wa: u64, pb: i128, wb: u64) -> Ordering {
    (pa * wb as i128).cmp(&(pb * wa as i128))
}

/// Builds the greedy split of an instance whose efficiencies are pairwise
/// distinct (use [`crate::instance::break_ties`] first).
pub fn greedy_split(instance: &Instance) -> GreedySplit {
    let items = &instance.items;
    let n = items.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        cmp_efficiency(items[b].profit, items[b].weight, items[a].profit, items[a].weight).then(a.cmp(&b))
    });
    debug_assert!(order.windows(2).all(|p| cmp_efficiency(
        items[p[0]].profit,
        items[p[0]].weight,
        items[p[1]].profit,
        items[p[1]].weight
    ) == Ordering::Greater));

    let mut break_index = 0;
    let mut greedy_weight = 0u64;
    let mut greedy_profit = 0i128;
    for &i in &order {
        if greedy_weight + items[i].weight > instance.capacity {
            break;
        }
        greedy_weight += items[i].weight;
        greedy_profit += items[i].profit;
        break_index += 1;
    }
    let mut in_greedy = vec![false; n];
    for &i in &order[..break_index] {
        in_greedy[i] = true;
    }

    let mut by_weight: Vec<usize> = (0..n).collect();
    by_weight.sort_by_key(|&i| (items[i].weight, i));
    let cap = (2 * instance.w_max) as usize;
    let mut rank = vec![0u32; n];
    let mut classes = Vec::new();
    for group in by_weight.chunk_by(|&a, &b| items[a].weight == items[b].weight) {
        let mut outside: Vec<usize> = group.iter().copied().filter(|&i| !in_greedy[i]).collect();
        let mut inside: Vec<usize> = group.iter().copied().filter(|&i| in_greedy[i]).collect();
        outside.sort_by(|&a, &b| items[b].profit.cmp(&items[a].profit).then(a.cmp(&b)));
        inside.sort_by(|&a, &b| items[a].profit.cmp(&items[b].profit).then(a.cmp(&b)));
        for (r, &i) in outside.iter().enumerate() {
            rank[i] = r as u32 + 1;
        }
        for (r, &i) in inside.iter().enumerate() {
            rank[i] = r as u32 + 1;
        }
        outside.truncate(cap);
        inside.truncate(cap);
        classes.push(WeightClass {
            weight: items[group[0]].weight,
            outside,
            inside,
        });
    }

    GreedySplit {
        order,
        break_index,
        in_greedy,
        greedy_weight,
        greedy_profit,
        rank,
        classes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{break_ties, normalize, Item};

    fn inst(pairs: &[(u64, u64)], t: u64) -> Instance {
        let items: Vec<Item> = pairs.iter().map(|&(w, p)| Item::new(w, p)).collect();
        normalize(&items, t)
    }

    #[test]
    fn greedy_prefix_example() {
        let split = greedy_split(&inst(&[(2, 30), (3, 40), (5, 50)], 6));
        assert_eq!(split.order, vec![0, 1, 2]);
        assert_eq!(split.break_index, 2);
        assert_eq!(split.greedy_set(), &[0, 1]);
        assert_eq!(split.greedy_weight, 5);
        assert_eq!(split.greedy_profit, 70);
    }

    #[test]
    fn ranks_outside_decrease_with_profit() {
        // One weight-1 item fills the knapsack; three weight-3 items stay out.
        let split = greedy_split(&inst(&[(1, 100), (3, 9), (3, 5), (3, 7)], 3));
        assert_eq!(split.greedy_set(), &[0]);
        assert_eq!(split.rank[1], 1);
        assert_eq!(split.rank[3], 2);
        assert_eq!(split.rank[2], 3);
        let class = split.class_of(3).unwrap();
        assert_eq!(class.outside, vec![1, 3, 2]);
        assert!(class.inside.is_empty());
    }

    #[test]
    fn ranks_inside_increase_with_profit() {
        let split = greedy_split(&inst(&[(2, 20), (2, 16), (2, 18), (5, 1)], 6));
        assert_eq!(split.break_index, 3);
        let class = split.class_of(2).unwrap();
        assert_eq!(class.inside, vec![1, 2, 0]);
        assert_eq!(split.rank[1], 1);
        assert_eq!(split.rank[0], 3);
    }

    #[test]
    fn greedy_weight_is_within_w_max_of_capacity() {
        let base = inst(&[(4, 7), (3, 3), (5, 9), (2, 2), (4, 4), (1, 1)], 11);
        let primed = break_ties(&base).unwrap();
        let split = greedy_split(&primed);
        assert!(split.greedy_weight <= 11);
        assert!(split.greedy_weight + primed.w_max > 11);
        assert!(split.break_index >= 1 && split.break_index < primed.len());
    }
}
