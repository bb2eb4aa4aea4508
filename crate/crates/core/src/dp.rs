//! DP tables `q[−L..L]` over signed weight offsets.

use crate::profit::Profit;

/// Best partial-exchange profit per weight offset `z ∈ [−L, L]`. Offsets
/// outside the range read as bottom.
#[derive(Clone, PartialEq, Eq)]
pub struct DpTable {
    half: usize,
    values: Vec<Profit>,
}

impl DpTable {
    /// All entries bottom.
    pub fn bottom(half: usize) -> DpTable {
        DpTable {
            half,
            values: vec![Profit::BOTTOM; 2 * half + 1],
        }
    }

    /// `q[0] = 0`, everything else bottom: the empty partial solution.
    pub fn trivial(half: usize) -> DpTable {
        let mut t = DpTable::bottom(half);
        t.values[half] = Profit::ZERO;
        t
    }

    pub fn from_values(half: usize, values: Vec<Profit>) -> DpTable {
        assert_eq!(values.len(), 2 * half + 1, "table length must be 2L+1");
        DpTable { half, values }
    }

    #[inline]
    pub fn half(&self) -> usize {
        self.half
    }

    /// Number of stored cells, `2L+1`.
    #[inline]
    pub fn cells(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn get(&self, z: i64) -> Profit {
        match self.slot(z) {
            Some(s) => self.values[s],
            None => Profit::BOTTOM,
        }
    }

    /// Panics when `z` is outside `[−L, L]`.
    #[inline]
    pub fn set(&mut self, z: i64, value: Profit) {
        let s = self.slot(z).expect("offset outside the table");
        self.values[s] = value;
    }

    #[inline]
    pub fn slot(&self, z: i64) -> Option<usize> {
        let s = z + self.half as i64;
        (0..self.values.len() as i64).contains(&s).then_some(s as usize)
    }

    #[inline]
    pub fn offset(&self, slot: usize) -> i64 {
        slot as i64 - self.half as i64
    }

    pub fn values(&self) -> &[Profit] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Profit] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Profit> {
        self.values
    }

    /// `(z, q[z])` for every finite entry.
    pub fn finite_entries(&self) -> impl Iterator<Item = (i64, Profit)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_finite())
            .map(|(s, &v)| (self.offset(s), v))
    }

    /// Copies the entries with `|z| ≤ min(L, L')` into a table of size `L'`.
    pub fn resize(&self, new_half: usize) -> DpTable {
        let mut out = DpTable::bottom(new_half);
        let keep = self.half.min(new_half);
        let src = self.half - keep;
        let dst = new_half - keep;
        out.values[dst..dst + 2 * keep + 1].copy_from_slice(&self.values[src..src + 2 * keep + 1]);
        out
    }

    /// The table with `z ↦ −z`.
    pub fn mirrored(&self) -> DpTable {
        let mut values = self.values.clone();
        values.reverse();
        DpTable {
            half: self.half,
            values,
        }
    }

    /// Largest entry with `z ≤ limit`.
    pub fn max_up_to(&self, limit: i64) -> Profit {
        let end = (limit + self.half as i64 + 1).clamp(0, self.values.len() as i64) as usize;
        self.values[..end].iter().copied().max().unwrap_or(Profit::BOTTOM)
    }
}

impl std::fmt::Debug for DpTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.finite_entries()).finish()
    }
}
