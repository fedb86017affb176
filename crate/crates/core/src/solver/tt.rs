//! Write-once memo table keyed by (Zobrist key, remaining plies, tag).

use rustc_hash::FxHashMap;

use crate::board::Position;

#[derive(Clone, PartialEq, Eq, Hash)]
struct FullKey {
    placement: [u8; 64],
    side: u8,
    castling: u8,
    ep: u8,
}

impl FullKey {
    fn of(pos: &Position) -> Self {
        FullKey {
            placement: pos.placement_bytes(),
            side: pos.side_to_move().index() as u8,
            castling: pos.castling().bits(),
            ep: pos.ep_target().map_or(u8::MAX, |s| s.index() as u8),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    hash: u64,
    depth: u32,
    tag: u8,
    full: Option<Box<FullKey>>,
}

pub struct Tt<V> {
    map: FxHashMap<Key, V>,
    max_entries: usize,
    paranoid: bool,
    pub hits: u64,
}

impl<V: Clone> Tt<V> {
    /// `capacity` in bytes; zero disables memoization.
    pub fn new(capacity: usize, paranoid: bool) -> Self {
        Tt { map: FxHashMap::default(), max_entries: Self::entries_within(capacity, paranoid), paranoid, hits: 0 }
    }

    /// Bytes one slot of the map costs: the pair, a control byte, and the
    /// boxed full key when paranoid.
    pub fn slot_bytes(paranoid: bool) -> usize {
        std::mem::size_of::<(Key, V)>() + 1 + if paranoid { std::mem::size_of::<FullKey>() } else { 0 }
    }

    /// Most entries whose bucket array fits in `capacity`. The map keeps
    /// a power-of-two bucket count at most 7/8 full.
    pub fn entries_within(capacity: usize, paranoid: bool) -> usize {
        let slots = capacity / Self::slot_bytes(paranoid);
        if slots < 8 {
            return slots.min(3);
        }
        let buckets = 1usize << (usize::BITS - 1 - slots.leading_zeros());
        buckets / 8 * 7
    }

    fn key(&self, pos: &Position, depth: u32, tag: u8) -> Key {
        Key {
            hash: pos.hash(),
            depth,
            tag,
            full: self.paranoid.then(|| Box::new(FullKey::of(pos))),
        }
    }

    pub fn get(&mut self, pos: &Position, depth: u32, tag: u8) -> Option<V> {
        if self.max_entries == 0 {
            return None;
        }
        let v = self.map.get(&self.key(pos, depth, tag)).cloned();
        if v.is_some() {
            self.hits += 1;
        }
        v
    }

    /// Stores unless full; an existing entry is never overwritten.
    pub fn put(&mut self, pos: &Position, depth: u32, tag: u8, value: V) {
        if self.map.len() >= self.max_entries {
            return;
        }
        let key = self.key(pos, depth, tag);
        self.map.entry(key).or_insert(value);
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
