//! Weight partitioning, rank partitioning and the phase schedule.

use std::collections::HashSet;

use crate::greedy::GreedySplit;
use crate::instance::Instance;

/// `log₂ w` clamped to at least 1 so that `w = 1` stays well defined.
fn log2_clamped(w: u64) -> f64 {
    (w.max(2) as f64).log2()
}

/// `2C·√(w·log₂ w)·2^j`, the distinct-weight budget of layer `j`.
pub fn layer_threshold(w_max: u64, c: f64, j: u32) -> f64 {
    2.0 * c * (w_max as f64 * log2_clamped(w_max)).sqrt() * 2f64.powi(j as i32)
}

/// `W = W₁ ⊎ … ⊎ W_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPartition {
    /// `parts[j − 1] = W_j`, each sorted.
    pub parts: Vec<Vec<u64>>,
    /// Item ranges `[ℓ_j, r_j]` in efficiency order (0-based, inclusive),
    /// one per layer.
    pub ranges: Vec<(usize, usize)>,
}

impl WeightPartition {
    pub fn s(&self) -> usize {
        self.parts.len()
    }

    pub fn first(&self) -> &[u64] {
        &self.parts[0]
    }

    /// 1-based layer of a weight.
    pub fn layer_of(&self, w: u64) -> Option<usize> {
        self.parts
            .iter()
            .position(|p| p.binary_search(&w).is_ok())
            .map(|j| j + 1)
    }
}

/// Number of layers: the smallest `s ≥ 1` whose threshold reaches `w_max`.
pub fn layer_count(w_max: u64, c: f64) -> usize {
    let mut s = 1;
    while layer_threshold(w_max, c, s) < w_max as f64 {
        s += 1;
    }
    s as usize
}

/// Builds the layers by growing windows around the break index with
/// distinct-weight counters.
pub fn weight_partition(instance: &Instance, split: &GreedySplit, c: f64) -> WeightPartition {
    let order = &split.order;
    let n = order.len();
    let bi = split.break_index;
    let w_max = instance.w_max;
    let s = layer_count(w_max, c);
    let weight = |pos: usize| instance.items[order[pos]].weight;

    let mut parts = Vec::with_capacity(s);
    let mut ranges = Vec::with_capacity(s);
    let mut seen: HashSet<u64> = HashSet::new();

    // Left window grows downwards from bi − 1, right window upwards from bi.
    let mut left_set: HashSet<u64> = HashSet::new();
    let mut right_set: HashSet<u64> = HashSet::new();
    let mut lo = bi; // window is [lo, bi)
    let mut hi = bi; // window is [bi, hi)
    for j in 1..=s {
        let thr = layer_threshold(w_max, c, j as u32);
        let last = j == s;
        while lo > 0 {
            let w = weight(lo - 1);
            let grows = !left_set.contains(&w);
            if !last && grows && (left_set.len() + 1) as f64 > thr {
                break;
            }
            left_set.insert(w);
            lo -= 1;
        }
        while hi < n {
            let w = weight(hi);
            let grows = !right_set.contains(&w);
            if !last && grows && (right_set.len() + 1) as f64 > thr {
                break;
            }
            right_set.insert(w);
            hi += 1;
        }
        let mut part: Vec<u64> = left_set
            .iter()
            .chain(right_set.iter())
            .copied()
            .filter(|w| seen.insert(*w))
            .collect();
        part.sort_unstable();
        parts.push(part);
        ranges.push((lo, hi.max(lo + 1) - 1));
    }
    WeightPartition { parts, ranges }
}

/// Dyadic rank groups `J_j^±` over the items of `W₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankPartition {
    pub k: usize,
    /// `positive[j − 1] = J_j⁺`.
    pub positive: Vec<Vec<usize>>,
    /// `negative[j − 1] = J_j⁻`.
    pub negative: Vec<Vec<usize>>,
}

/// `k = ⌈log₂(2·w_max + 1)⌉`, at least 1.
pub fn phase_count(w_max: u64) -> usize {
    let target = 2 * w_max + 1;
    let mut k = 0;
    while (1u64 << k) < target {
        k += 1;
    }
    k.max(1)
}

/// Items of a rank-ordered list that fall in group `j`: ranks
/// `2^{j−1} ..= 2^j − 1`.
pub fn rank_group(list: &[usize], j: usize) -> &[usize] {
    let start = (1usize << (j - 1)) - 1;
    let end = ((1usize << j) - 1).min(list.len());
    if start >= end {
        &[]
    } else {
        &list[start..end]
    }
}

pub fn rank_partition(instance: &Instance, split: &GreedySplit, w1: &[u64]) -> RankPartition {
    let k = phase_count(instance.w_max);
    let mut positive = vec![Vec::new(); k];
    let mut negative = vec![Vec::new(); k];
    for &w in w1 {
        let Some(class) = split.class_of(w) else {
            continue;
        };
        for j in 1..=k {
            positive[j - 1].extend_from_slice(rank_group(&class.outside, j));
            negative[j - 1].extend_from_slice(rank_group(&class.inside, j));
        }
    }
    RankPartition { k, positive, negative }
}

/// Table sizes and hint budgets of both stages.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSchedule {
    pub c: f64,
    pub w_max: u64,
    pub k: usize,
    /// `m[j]` for `j = 0..=k`.
    pub m: Vec<usize>,
    /// `b[j]` for `j = 0..=k+1`.
    pub b: Vec<usize>,
    /// `l[j] = m[j]·w_max` for `j = 0..=k`.
    pub l: Vec<usize>,
}

impl PhaseSchedule {
    /// Stage-two table size `L'_j = ⌊4C·w^{3/2}/2^j⌋ + w`, capped at
    /// `2w² + w`.
    pub fn stage_two_size(&self, j: usize) -> usize {
        let w = self.w_max as f64;
        let raw = (4.0 * self.c * w.powf(1.5) / 2f64.powi(j as i32)).floor() as usize;
        let cap = 2 * (self.w_max as usize).pow(2);
        raw.min(cap) + self.w_max as usize
    }
}

/// `√(w·log₂(2w))`.
fn base_scale(w_max: u64) -> f64 {
    let w = w_max as f64;
    (w * (2.0 * w).log2()).sqrt()
}

/// `m_j` rounded up, between 1 and `2·w_max` (no optimal exchange moves
/// more than `2·w_max` items).
pub fn m_value(w_max: u64, c: f64, j: usize) -> usize {
    let v = (c * 2f64.powf(j as f64 / 2.0) * base_scale(w_max)).ceil() as usize;
    v.clamp(1, (2 * w_max as usize).max(1))
}

/// `b_j` rounded up, at least 1.
pub fn b_value(w_max: u64, c: f64, j: usize) -> usize {
    let v = (c * 2f64.powf(-(j as f64) / 2.0) * base_scale(w_max)).ceil() as usize;
    v.max(1)
}

pub fn phase_schedule(w_max: u64, c: f64, w1_len: usize) -> PhaseSchedule {
    assert!(w_max >= 1 && c > 0.0);
    let k = phase_count(w_max);
    let m: Vec<usize> = (0..=k).map(|j| m_value(w_max, c, j)).collect();
    let mut b: Vec<usize> = (0..=k + 1).map(|j| b_value(w_max, c, j)).collect();
    b[1] = b[1].max(w1_len);
    b[0] = b[0].max(b[1]);
    let l = m.iter().map(|&mj| mj * w_max as usize).collect();
    PhaseSchedule { c, w_max, k, m, b, l }
}
