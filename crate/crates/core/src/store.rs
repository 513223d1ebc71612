//! Packed state encoding and the deduplicating state store used by every
//! breadth-first search in the crate.
//!
//! A state is a fixed-length sequence of small integers (a person id or a
//! color class per location, or one bit per constraint-logic edge). It is
//! packed `bits` at a time into `u64` words without straddling word
//! boundaries. The store keeps every state in one flat arena in insertion
//! order, which for BFS is layer order, plus a parent pointer and the move
//! that produced it.

use std::hash::{BuildHasher, Hasher};

use hashbrown::HashTable;
use rustc_hash::FxBuildHasher;

/// Fixed-width packing of `len` values, each below `2^bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Packer {
    len: usize,
    bits: u32,
    per_word: usize,
    width: usize,
}

impl Packer {
    /// Packing for `len` values each strictly below `bound`.
    pub fn new(len: usize, bound: usize) -> Self {
        let bits = (usize::BITS - bound.saturating_sub(1).leading_zeros()).max(1);
        assert!(bits <= 32, "value bound too large to pack");
        let per_word = (64 / bits) as usize;
        let width = len.div_ceil(per_word).max(1);
        Packer {
            len,
            bits,
            per_word,
            width,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Words per packed state.
    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    fn slot(&self, i: usize) -> (usize, u32) {
        (i / self.per_word, (i % self.per_word) as u32 * self.bits)
    }

    #[inline]
    fn mask(&self) -> u64 {
        (1u64 << self.bits) - 1
    }

    #[inline]
    pub fn get(&self, words: &[u64], i: usize) -> u32 {
        let (w, s) = self.slot(i);
        ((words[w] >> s) & self.mask()) as u32
    }

    #[inline]
    pub fn set(&self, words: &mut [u64], i: usize, value: u32) {
        let (w, s) = self.slot(i);
        words[w] = (words[w] & !(self.mask() << s)) | ((value as u64) << s);
    }

    pub fn encode(&self, values: &[u32]) -> Vec<u64> {
        debug_assert_eq!(values.len(), self.len);
        let mut words = vec![0u64; self.width];
        for (i, &v) in values.iter().enumerate() {
            self.set(&mut words, i, v);
        }
        words
    }

    pub fn decode_into(&self, words: &[u64], out: &mut Vec<u32>) {
        out.clear();
        out.extend((0..self.len).map(|i| self.get(words, i)));
    }

    pub fn decode(&self, words: &[u64]) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len);
        self.decode_into(words, &mut out);
        out
    }
}

pub(crate) const NO_PARENT: u32 = u32::MAX;

/// Arena of packed states with hash-based deduplication.
pub struct StateStore {
    width: usize,
    arena: Vec<u64>,
    parents: Vec<u32>,
    moves: Vec<u32>,
    table: HashTable<u32>,
    hasher: FxBuildHasher,
}

impl StateStore {
    pub fn new(width: usize) -> Self {
        StateStore {
            width,
            arena: Vec::new(),
            parents: Vec::new(),
            moves: Vec::new(),
            table: HashTable::new(),
            hasher: FxBuildHasher,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.parents.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn state(&self, idx: u32) -> &[u64] {
        let start = idx as usize * self.width;
        &self.arena[start..start + self.width]
    }

    #[inline]
    fn hash(&self, key: &[u64]) -> u64 {
        let mut h = self.hasher.build_hasher();
        for &w in key {
            h.write_u64(w);
        }
        h.finish()
    }

    pub fn find(&self, key: &[u64]) -> Option<u32> {
        let hash = self.hash(key);
        self.table
            .find(hash, |&idx| self.state(idx) == key)
            .copied()
    }

    /// Inserts `key` unless present. Returns its index and whether it is new.
    pub fn insert(&mut self, key: &[u64], parent: u32, mv: u32) -> (u32, bool) {
        debug_assert_eq!(key.len(), self.width);
        let hash = self.hash(key);
        let arena = &self.arena;
        let width = self.width;
        let eq = |&idx: &u32| {
            let s = idx as usize * width;
            &arena[s..s + width] == key
        };
        if let Some(&idx) = self.table.find(hash, eq) {
            return (idx, false);
        }
        let idx = u32::try_from(self.parents.len()).expect("state store overflow");
        self.arena.extend_from_slice(key);
        self.parents.push(parent);
        self.moves.push(mv);
        let (arena, width, hasher) = (&self.arena, self.width, &self.hasher);
        self.table.insert_unique(hash, idx, |&i| {
            let s = i as usize * width;
            let mut h = hasher.build_hasher();
            for &w in &arena[s..s + width] {
                h.write_u64(w);
            }
            h.finish()
        });
        (idx, true)
    }

    pub fn parent(&self, idx: u32) -> Option<u32> {
        let p = self.parents[idx as usize];
        (p != NO_PARENT).then_some(p)
    }

    /// Move ids from the root to `idx`.
    pub fn path_to(&self, mut idx: u32) -> Vec<u32> {
        let mut path = Vec::new();
        while self.parents[idx as usize] != NO_PARENT {
            path.push(self.moves[idx as usize]);
            idx = self.parents[idx as usize];
        }
        path.reverse();
        path
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.arena.chunks_exact(self.width.max(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn packer_widths() {
        assert_eq!(Packer::new(6, 6).width(), 1);
        // 8 colors need 3 bits, 21 per word.
        assert_eq!(Packer::new(64, 8).width(), 4);
        assert_eq!(Packer::new(0, 1).width(), 1);
        // 8 bits per value, 8 per word.
        assert_eq!(Packer::new(130, 130).width(), 17);
    }

    #[test]
    fn store_dedups_and_tracks_paths() {
        let mut store = StateStore::new(2);
        assert_eq!(store.insert(&[1, 2], NO_PARENT, 0), (0, true));
        assert_eq!(store.insert(&[3, 4], 0, 7), (1, true));
        assert_eq!(store.insert(&[1, 2], 1, 9), (0, false));
        assert_eq!(store.insert(&[5, 6], 1, 8), (2, true));
        assert_eq!(store.len(), 3);
        assert_eq!(store.find(&[3, 4]), Some(1));
        assert_eq!(store.find(&[9, 9]), None);
        assert_eq!(store.path_to(2), vec![7, 8]);
        assert!(store.path_to(0).is_empty());
    }

    proptest! {
        #[test]
        fn packing_round_trips(bound in 1usize..300, values in proptest::collection::vec(any::<u32>(), 0..80)) {
            let values: Vec<u32> = values.into_iter().map(|v| v % bound as u32).collect();
            let p = Packer::new(values.len(), bound);
            prop_assert_eq!(p.decode(&p.encode(&values)), values);
        }
    }
}
