//! Instance model: normalization, tie-breaking and profit recovery.

use crate::error::{Error, Result};
use crate::profit::Profit;

/// Upper bound on the total (tie-broken) profit of an instance. Keeps every DP
/// value and every staircase penalty used by the SMAWK routines well inside
/// the 128-bit range.
pub const TOTAL_PROFIT_LIMIT: i128 = 1 << 80;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Item {
    pub weight: u64,
    pub profit: i128,
}

impl Item {
    pub fn new(weight: u64, profit: u64) -> Item {
        Item {
            weight,
            profit: profit as i128,
        }
    }

    /// Checks `weight ≥ 1` and `profit ≥ 1`.
    pub fn checked(index: usize, weight: u64, profit: u64) -> Result<Item> {
        if weight == 0 || profit == 0 {
            return Err(Error::InvalidItem { index, weight, profit });
        }
        Ok(Item::new(weight, profit))
    }
}

/// Recovery data of the tie-breaking reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TieBreak {
    /// `M = 1 + n + n(n+1)/2`.
    pub multiplier: i128,
    pub w_max: u64,
}

impl TieBreak {
    pub fn divisor(&self) -> i128 {
        self.multiplier * self.w_max as i128
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub items: Vec<Item>,
    pub capacity: u64,
    pub w_max: u64,
    /// Every remaining item fits at once; the optimum is the total profit.
    pub all_fit: bool,
    pub tie_break: Option<TieBreak>,
}

impl Instance {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn total_weight(&self) -> u64 {
        self.items.iter().map(|it| it.weight).sum()
    }

    pub fn total_profit(&self) -> i128 {
        self.items.iter().map(|it| it.profit).sum()
    }

    pub fn p_max(&self) -> i128 {
        self.items.iter().map(|it| it.profit).max().unwrap_or(0)
    }

    /// The optimum when `all_fit` holds, in the instance's own profit units.
    pub fn trivial_answer(&self) -> Option<i128> {
        self.all_fit.then(|| self.total_profit())
    }

    /// Maps a total in this instance's profit units back to original units.
    pub fn recover(&self, total: Profit) -> Profit {
        match self.tie_break {
            Some(tb) => recover_profit(total, tb.multiplier, tb.w_max),
            None => total,
        }
    }
}

/// Drops items heavier than `capacity` and records whether the rest all fit.
pub fn normalize(raw_items: &[Item], capacity: u64) -> Instance {
    let items: Vec<Item> = raw_items.iter().copied().filter(|it| it.weight <= capacity).collect();
    debug_assert!(items.iter().all(|it| it.weight >= 1 && it.profit >= 1));
    let w_max = items.iter().map(|it| it.weight).max().unwrap_or(0);
    let total: u128 = items.iter().map(|it| it.weight as u128).sum();
    Instance {
        all_fit: total <= capacity as u128,
        items,
        capacity,
        w_max,
        tie_break: None,
    }
}

/// Replaces profits by `p'_i = (p_i·M + i)·w_max + 1` (1-based `i`), which makes
/// profits and efficiencies pairwise distinct while preserving every subset's
/// original profit as `⌊Σp' / (M·w_max)⌋`.
pub fn break_ties(instance: &Instance) -> Result<Instance> {
    let n = instance.items.len();
    let w_max = instance.w_max;
    let overflow = || Error::ProfitOverflow {
        n,
        w_max,
        p_max: u64::try_from(instance.p_max()).unwrap_or(u64::MAX),
    };
    let n_i = n as i128;
    let multiplier = n_i.checked_mul(n_i + 1).map(|v| 1 + n_i + v / 2).ok_or_else(overflow)?;
    let mut items = Vec::with_capacity(n);
    let mut total: i128 = 0;
    for (idx, it) in instance.items.iter().enumerate() {
        let primed = it
            .profit
            .checked_mul(multiplier)
            .and_then(|v| v.checked_add(idx as i128 + 1))
            .and_then(|v| v.checked_mul(w_max as i128))
            .and_then(|v| v.checked_add(1))
            .ok_or_else(overflow)?;
        total = total.checked_add(primed).ok_or_else(overflow)?;
        items.push(Item {
            weight: it.weight,
            profit: primed,
        });
    }
    if total > TOTAL_PROFIT_LIMIT {
        return Err(overflow());
    }
    Ok(Instance {
        items,
        capacity: instance.capacity,
        w_max,
        all_fit: instance.all_fit,
        tie_break: Some(TieBreak { multiplier, w_max }),
    })
}

/// `⌊total / (M·w_max)⌋`; bottom stays bottom. An empty instance has
/// `w_max = 0` and only the total 0, which maps to itself.
pub fn recover_profit(total_primed: Profit, multiplier: i128, w_max: u64) -> Profit {
    match total_primed.value() {
        None => Profit::BOTTOM,
        Some(v) => Profit::new(v.div_euclid(multiplier * w_max.max(1) as i128)),
    }
}
