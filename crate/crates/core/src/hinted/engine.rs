//! Solvers for the hinted extension problem.
//!
//! Partial solutions live in a node arena: slot `i` either holds its own
//! `q[i]` (no node) or points at a node `(parent, w, count, base)` meaning
//! `x[i] = x[parent] + count·e_w` and `z[i] = base`. Chaining singleton steps
//! therefore costs one node per improved entry instead of a vector copy.

use std::collections::HashMap;

use super::coloring::{balls_and_bins_weighted, det_isolating_colorings};
use super::{Handle, HintedExtendInstance, HintedExtendSolution, SparseVec, Weight, DEFAULT_BETA};
use crate::error::Result;
use crate::profit::Profit;
use crate::smawk::{overflow_penalty, row_maxima, spread, FnMatrix};

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct Node {
    parent: u32,
    weight: Weight,
    count: u32,
    base: u32,
}

/// Work counters of the singleton steps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SingletonStats {
    /// Singleton steps run.
    pub steps: usize,
    /// Arithmetic progressions produced by the row-maxima stage.
    pub aps: usize,
    /// Offers made to target slots.
    pub insertions: usize,
    /// Slots offered as columns.
    pub columns: usize,
}

struct Change {
    slot: u32,
    from: u32,
    weight: Weight,
    count: u32,
    value: Profit,
}

/// A weight coloring and the class to keep.
type Filter<'f> = Option<(&'f [u32], u32)>;

struct Engine<'a> {
    inst: &'a HintedExtendInstance,
    arena: Vec<Node>,
    r: Vec<Profit>,
    node: Vec<u32>,
    /// `(epoch, value, w, j)` of the best offer per slot in the current step.
    best: Vec<(u32, Profit, Weight, u32)>,
    epoch: u32,
    stats: SingletonStats,
}

impl<'a> Engine<'a> {
    fn new(inst: &'a HintedExtendInstance) -> Engine<'a> {
        assert!(inst.q().cells() < NONE as usize, "table too large for 32-bit slots");
        Engine {
            inst,
            arena: Vec::new(),
            r: inst.q().values().to_vec(),
            node: vec![NONE; inst.q().cells()],
            best: Vec::new(),
            epoch: 0,
            stats: SingletonStats::default(),
        }
    }

    #[inline]
    fn base(&self, node: u32, slot: usize) -> usize {
        if node == NONE {
            slot
        } else {
            self.arena[node as usize].base as usize
        }
    }

    fn restricted(&self, h: Handle, filter: Filter) -> Vec<Weight> {
        self.inst
            .store()
            .get(h)
            .iter()
            .copied()
            .filter(|&w| self.inst.contains(w))
            .filter(|&w| filter.is_none_or(|(col, c)| col.get(w as usize) == Some(&c)))
            .collect()
    }

    /// One singleton step: every column `(w, j)` may extend `r[j]` by copies
    /// of `w`. Returns the improvements over `r`, all computed from the
    /// state before the step.
    fn singleton_step(&mut self, columns: &mut [(Weight, u32)], r: &[Profit]) -> Vec<Change> {
        let len = r.len();
        self.stats.steps += 1;
        self.stats.columns += columns.len();
        let mut keyed: Vec<(u64, u32)> = columns
            .iter()
            .map(|&(w, s)| (((w as u64) << 32) | (s % w) as u64, s))
            .collect();
        keyed.sort_unstable();
        for (c, &(k, s)) in columns.iter_mut().zip(&keyed) {
            *c = ((k >> 32) as Weight, s);
        }

        // (start, end, w, j): target slots start, start+w, …, end.
        let mut aps: Vec<(u32, u32, Weight, u32)> = Vec::new();
        for group in columns.chunk_by(|a, b| a.0 == b.0 && a.1 % a.0 == b.1 % b.0) {
            let w = group[0].0;
            let f = self.inst.profit(w).expect("hint outside the universe");
            let cap = f.cap();
            if cap == 0 {
                continue;
            }
            let ws = w as usize;
            let prefix = f.prefix();
            let j0 = group[0].1 as usize;
            let jl = group[group.len() - 1].1 as usize;
            let last = (len - 1).min(jl.saturating_add(cap.saturating_mul(ws)));
            if last <= j0 {
                continue;
            }
            let rows = (last - j0) / ws + 1;
            // short progressions are cheaper to scan in full
            if group.len().saturating_mul(cap) <= 2 * (rows + group.len()) {
                for &(_, j) in group {
                    let tj = (j as usize - j0) / ws;
                    let b = rows.min(tj + cap + 1);
                    if tj + 1 < b {
                        aps.push(((j as usize + ws) as u32, (j0 + (b - 1) * ws) as u32, w, j));
                    }
                }
                continue;
            }
            let penalty = overflow_penalty(&[
                spread(group.iter().map(|&(_, j)| r[j as usize])),
                spread(prefix.iter().copied()),
            ]);
            let qcap = prefix[cap];
            let entry = |t: usize, c: usize| -> Profit {
                let i = j0 + t * ws;
                let j = group[c].1 as usize;
                if i < j {
                    return Profit::BOTTOM;
                }
                let x = (i - j) / ws;
                if x <= cap {
                    r[j] + prefix[x]
                } else {
                    r[j] + qcap + (-(penalty * (x - cap) as i128))
                }
            };
            let maxima = row_maxima(&FnMatrix::new(rows, group.len(), entry));
            for (c, &(_, j)) in group.iter().enumerate() {
                let tj = (j as usize - j0) / ws;
                let span = maxima.rows_of(c);
                let a = span.start.max(tj + 1);
                let b = span.end.min(tj + cap + 1);
                if a < b {
                    aps.push(((j0 + a * ws) as u32, (j0 + (b - 1) * ws) as u32, w, j));
                }
            }
        }
        self.stats.aps += aps.len();

        // Best offer per target slot; ties go to the smallest (w, j).
        if self.best.len() < len {
            self.best.resize(len, (0, Profit::BOTTOM, 0, 0));
        }
        self.epoch += 1;
        let epoch = self.epoch;
        let mut targets: Vec<u32> = Vec::new();
        for &(start, end, w, j) in &aps {
            let prefix = self.inst.profit(w).expect("hint outside the universe").prefix();
            let (mut pos, mut x) = (start, ((start - j) / w) as usize);
            loop {
                self.stats.insertions += 1;
                let v = r[j as usize] + prefix[x];
                let cell = &mut self.best[pos as usize];
                if cell.0 != epoch {
                    *cell = (epoch, v, w, j);
                    targets.push(pos);
                } else if v > cell.1 || (v == cell.1 && (w, j) < (cell.2, cell.3)) {
                    *cell = (epoch, v, w, j);
                }
                if pos >= end {
                    break;
                }
                pos += w;
                x += 1;
            }
        }
        targets.sort_unstable();
        targets
            .into_iter()
            .filter_map(|pos| {
                let (_, v, w, j) = self.best[pos as usize];
                (v > r[pos as usize]).then(|| Change {
                    slot: pos,
                    from: j,
                    weight: w,
                    count: (pos - j) / w,
                    value: v,
                })
            })
            .collect()
    }

    /// Solves the instance restricted to the filter's class, assuming every
    /// restricted hint of a finite entry has at most `b` elements, and
    /// merges the result into the current state entrywise.
    fn small_b(&mut self, filter: Filter) {
        let len = self.r.len();
        let mut set_of_handle: HashMap<Handle, u32> = HashMap::new();
        let mut sets: Vec<Vec<Weight>> = Vec::new();
        let mut set_of_base = vec![u32::MAX; len];
        // (slot, set, r, node) of every slot that can be extended
        let mut active: Vec<(usize, u32, Profit, u32)> = Vec::new();
        for slot in 0..len {
            if !self.r[slot].is_finite() {
                continue;
            }
            let base = self.base(self.node[slot], slot);
            let h = self.inst.handles()[base];
            let sid = match set_of_handle.get(&h) {
                Some(&sid) => sid,
                None => {
                    let s = self.restricted(h, filter);
                    sets.push(s);
                    let sid = (sets.len() - 1) as u32;
                    set_of_handle.insert(h, sid);
                    sid
                }
            };
            set_of_base[base] = sid;
            if !sets[sid as usize].is_empty() {
                active.push((slot, sid, self.r[slot], self.node[slot]));
            }
        }
        if active.is_empty() {
            return;
        }
        let b = sets.iter().map(Vec::len).max().unwrap_or(0);
        let n = sets.iter().flatten().map(|&w| w as usize + 1).max().unwrap_or(0);
        let colorings = det_isolating_colorings(n, &sets, b);
        let first: Vec<usize> = sets
            .iter()
            .map(|s| {
                colorings
                    .iter()
                    .position(|h| {
                        let mut c: Vec<u32> = s.iter().map(|&w| h[w as usize]).collect();
                        c.sort_unstable();
                        c.windows(2).all(|p| p[0] != p[1])
                    })
                    .expect("every set is isolated by some coloring")
            })
            .collect();
        let colors = (b * b).max(1);

        let mut r_loc = vec![Profit::BOTTOM; len];
        let mut node_loc = vec![NONE; len];
        let mut in_touched = vec![false; len];
        let mut touched: Vec<usize> = Vec::new();
        let mut stamp = vec![0u32; len];
        let mut epoch = 0u32;

        for (cj, h) in colorings.iter().enumerate() {
            // Sorted (color, weight) lists of the sets this coloring handles.
            let colored: Vec<Vec<(u32, Weight)>> = sets
                .iter()
                .enumerate()
                .map(|(sid, s)| {
                    if first[sid] != cj {
                        return Vec::new();
                    }
                    let mut v: Vec<(u32, Weight)> = s.iter().map(|&w| (h[w as usize], w)).collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            let next_color = |sid: u32, after: Option<u32>| -> Option<u32> {
                let cl = &colored[sid as usize];
                let k = match after {
                    None => 0,
                    Some(c) => cl.partition_point(|&(col, _)| col <= c),
                };
                cl.get(k).map(|&(col, _)| col)
            };
            let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); colors];
            for &(slot, sid, r0, n0) in &active {
                if first[sid as usize] != cj {
                    continue;
                }
                r_loc[slot] = r0;
                node_loc[slot] = n0;
                in_touched[slot] = true;
                touched.push(slot);
                if let Some(c) = next_color(sid, None) {
                    buckets[c as usize].push(slot as u32);
                }
            }
            let mut columns: Vec<(Weight, u32)> = Vec::new();
            for col in 0..colors {
                if buckets[col].is_empty() {
                    continue;
                }
                let list = std::mem::take(&mut buckets[col]);
                epoch += 1;
                columns.clear();
                for slot in list {
                    let s = slot as usize;
                    if stamp[s] == epoch {
                        continue;
                    }
                    stamp[s] = epoch;
                    let sid = set_of_base[self.base(node_loc[s], s)];
                    let cl = &colored[sid as usize];
                    if let Ok(k) = cl.binary_search_by_key(&(col as u32), |&(c, _)| c) {
                        columns.push((cl[k].1, slot));
                    }
                }
                let changes = self.singleton_step(&mut columns, &r_loc);
                let first_node = self.arena.len() as u32;
                for ch in &changes {
                    let j = ch.from as usize;
                    self.arena.push(Node {
                        parent: node_loc[j],
                        weight: ch.weight,
                        count: ch.count,
                        base: self.base(node_loc[j], j) as u32,
                    });
                }
                for (k, ch) in changes.iter().enumerate() {
                    let i = ch.slot as usize;
                    r_loc[i] = ch.value;
                    node_loc[i] = first_node + k as u32;
                    if !in_touched[i] {
                        in_touched[i] = true;
                        touched.push(i);
                    }
                }
                let after = Some(col as u32);
                for &(_, slot) in columns.iter() {
                    let s = slot as usize;
                    let sid = set_of_base[self.base(node_loc[s], s)];
                    if let Some(c) = next_color(sid, after) {
                        buckets[c as usize].push(slot);
                    }
                }
                for ch in &changes {
                    let s = ch.slot as usize;
                    let sid = set_of_base[self.base(node_loc[s], s)];
                    if let Some(c) = next_color(sid, after) {
                        buckets[c as usize].push(ch.slot);
                    }
                }
            }
            for &s in &touched {
                if r_loc[s].is_finite() && !(self.r[s] > r_loc[s]) {
                    self.r[s] = r_loc[s];
                    self.node[s] = node_loc[s];
                }
                r_loc[s] = Profit::BOTTOM;
                node_loc[s] = NONE;
                in_touched[s] = false;
            }
            touched.clear();
        }
    }

    fn into_solution(self) -> HintedExtendSolution {
        let q = self.inst.q();
        let mut x = Vec::with_capacity(self.r.len());
        let mut z = Vec::with_capacity(self.r.len());
        for slot in 0..self.r.len() {
            let mut v = SparseVec::new();
            let mut cur = self.node[slot];
            while cur != NONE {
                let nd = self.arena[cur as usize];
                v.push((nd.weight, nd.count));
                cur = nd.parent;
            }
            v.sort_unstable();
            x.push(v);
            z.push(q.offset(self.base(self.node[slot], slot)));
        }
        HintedExtendSolution {
            half: q.half(),
            x,
            z,
            r: self.r,
        }
    }
}

/// Solves an instance whose hints have at most one element each.
pub fn solve_singleton(inst: &HintedExtendInstance) -> HintedExtendSolution {
    solve_singleton_with_stats(inst).0
}

pub fn solve_singleton_with_stats(inst: &HintedExtendInstance) -> (HintedExtendSolution, SingletonStats) {
    let mut eng = Engine::new(inst);
    let mut columns: Vec<(Weight, u32)> = Vec::new();
    for slot in 0..eng.r.len() {
        if !eng.r[slot].is_finite() {
            continue;
        }
        let hint = inst.hint(slot);
        assert!(hint.len() <= 1, "singleton solver needs hints of size at most 1");
        if let Some(&w) = hint.first() {
            columns.push((w, slot as u32));
        }
    }
    let r = eng.r.clone();
    let changes = eng.singleton_step(&mut columns, &r);
    for ch in changes {
        let j = ch.from as usize;
        eng.arena.push(Node {
            parent: NONE,
            weight: ch.weight,
            count: ch.count,
            base: j as u32,
        });
        eng.r[ch.slot as usize] = ch.value;
        eng.node[ch.slot as usize] = (eng.arena.len() - 1) as u32;
    }
    let stats = eng.stats;
    (eng.into_solution(), stats)
}

/// Solves an instance with hints of size at most `b` through isolating
/// colorings, one singleton step per color.
pub fn solve_small_b(inst: &HintedExtendInstance, b: usize) -> HintedExtendSolution {
    debug_assert!(inst.max_hint_size() <= b, "hint larger than b");
    let mut eng = Engine::new(inst);
    eng.small_b(None);
    eng.into_solution()
}

/// Solves an instance with hints of size at most `b`, splitting large
/// hints with a balls-and-bins coloring of the universe first.
pub fn solve(inst: &HintedExtendInstance, b: usize) -> Result<HintedExtendSolution> {
    solve_with_beta(inst, b, DEFAULT_BETA)
}

pub fn solve_with_beta(inst: &HintedExtendInstance, b: usize, beta: f64) -> Result<HintedExtendSolution> {
    let b_eff = inst.max_hint_size();
    debug_assert!(b_eff <= b, "hint larger than b");
    let mut eng = Engine::new(inst);
    if b_eff == 0 {
        return Ok(eng.into_solution());
    }
    let log_l = ((4 * inst.half() + 2) as f64).log2();
    if (b_eff as f64) <= 2.0 * log_l {
        eng.small_b(None);
        return Ok(eng.into_solution());
    }
    let r = ((b_eff as f64 / log_l).floor() as usize).max(2);
    let r = 1usize << (usize::BITS - 1 - r.leading_zeros());

    // One set per distinct hint, weighted by the number of finite entries
    // carrying it; the bounds count one set per index.
    let mut index: HashMap<Handle, usize> = HashMap::new();
    let mut sets: Vec<Vec<Weight>> = Vec::new();
    let mut mult: Vec<u64> = Vec::new();
    for (slot, &h) in inst.handles().iter().enumerate() {
        if !inst.q().values()[slot].is_finite() {
            continue;
        }
        let k = *index.entry(h).or_insert_with(|| {
            sets.push(inst.hint_of_handle(h));
            mult.push(0);
            sets.len() - 1
        });
        mult[k] += 1;
    }
    let n = sets.iter().flatten().map(|&w| w as usize + 1).max().unwrap_or(0);
    let coloring = balls_and_bins_weighted(n, &sets, &mult, inst.q().cells() as u64, r, beta)?;
    for c in 0..r as u32 {
        eng.small_b(Some((&coloring, c)));
    }
    Ok(eng.into_solution())
}
