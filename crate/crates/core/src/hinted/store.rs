//! Interned hint sets addressed by handles.

use std::collections::HashMap;

use super::Weight;

/// Handle of an interned set. Handle 0 is always the empty set.
pub type Handle = u32;

pub const EMPTY: Handle = 0;

/// Registry of sorted weight sets. Equal sets share one handle, so copying a
/// hint is copying a `u32`.
#[derive(Clone, Debug)]
pub struct SetStore {
    offsets: Vec<u32>,
    elements: Vec<Weight>,
    index: HashMap<Box<[Weight]>, Handle>,
}

impl Default for SetStore {
    fn default() -> Self {
        Self::new()
    }
}

impl SetStore {
    pub fn new() -> SetStore {
        let mut index = HashMap::new();
        index.insert(Box::<[Weight]>::default(), EMPTY);
        SetStore {
            offsets: vec![0, 0],
            elements: Vec::new(),
            index,
        }
    }

    /// Number of distinct sets, the empty set included.
    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Interns a strictly increasing slice.
    pub fn intern(&mut self, set: &[Weight]) -> Handle {
        debug_assert!(set.windows(2).all(|p| p[0] < p[1]), "sets must be sorted and distinct");
        if let Some(&h) = self.index.get(set) {
            return h;
        }
        let h = self.len() as Handle;
        self.elements.extend_from_slice(set);
        self.offsets.push(self.elements.len() as u32);
        self.index.insert(set.into(), h);
        h
    }

    /// Sorts and deduplicates before interning.
    pub fn intern_unsorted(&mut self, mut set: Vec<Weight>) -> Handle {
        set.sort_unstable();
        set.dedup();
        self.intern(&set)
    }

    #[inline]
    pub fn get(&self, h: Handle) -> &[Weight] {
        let h = h as usize;
        &self.elements[self.offsets[h] as usize..self.offsets[h + 1] as usize]
    }
}
