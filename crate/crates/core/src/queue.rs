//! Monotone min-queue on `f64` keys (a radix heap with per-bucket minima).
//!
//! Keys pushed must be no smaller than the last key popped. Peeking never
//! restructures the queue, so a peek may be followed by a push smaller than
//! the peeked key.

use alloc::vec::Vec;

const BUCKETS: usize = 65;
const EMPTY: (u64, u32) = (u64::MAX, u32::MAX);

/// Order-preserving map from `f64` (by `total_cmp`) to `u64`.
fn key(x: f64) -> u64 {
    let b = x.to_bits();
    if b >> 63 == 0 {
        b | 1 << 63
    } else {
        !b
    }
}

fn unkey(k: u64) -> f64 {
    if k >> 63 == 1 {
        f64::from_bits(k & !(1 << 63))
    } else {
        f64::from_bits(!k)
    }
}

/// Index of the highest bit where `k` and `last` differ, plus one.
fn bucket_of(k: u64, last: u64) -> usize {
    64 - (k ^ last).leading_zeros() as usize
}

#[derive(Debug, Clone)]
pub(crate) struct MonotoneQueue {
    last: u64,
    buckets: [Vec<(u64, u32)>; BUCKETS],
    mins: [(u64, u32); BUCKETS],
    nonempty: u128,
}

impl MonotoneQueue {
    pub(crate) fn new() -> Self {
        Self {
            last: 0,
            buckets: core::array::from_fn(|_| Vec::new()),
            mins: [EMPTY; BUCKETS],
            nonempty: 0,
        }
    }

    fn insert(&mut self, k: u64, tag: u32) {
        let i = bucket_of(k, self.last);
        self.buckets[i].push((k, tag));
        self.mins[i] = self.mins[i].min((k, tag));
        self.nonempty |= 1 << i;
    }

    /// Adds `tag` with key `at`; `at` must not be below the last popped key.
    pub(crate) fn push(&mut self, at: f64, tag: u32) {
        let k = key(at);
        debug_assert!(k >= self.last, "monotone queue key went backwards");
        self.insert(k, tag);
    }

    /// Smallest key and, among equal keys, smallest tag.
    pub(crate) fn peek(&self) -> Option<(f64, u32)> {
        if self.nonempty == 0 {
            return None;
        }
        let i = self.nonempty.trailing_zeros() as usize;
        let (k, tag) = self.mins[i];
        Some((unkey(k), tag))
    }

    /// Removes and returns what [`peek`](Self::peek) would return.
    pub(crate) fn pop(&mut self) -> Option<(f64, u32)> {
        if self.nonempty == 0 {
            return None;
        }
        let i = self.nonempty.trailing_zeros() as usize;
        if i > 0 {
            // everything in bucket i is below every higher bucket; rebase on its minimum
            self.last = self.mins[i].0;
            let moved = core::mem::take(&mut self.buckets[i]);
            self.mins[i] = EMPTY;
            self.nonempty &= !(1 << i);
            for &(k, tag) in &moved {
                self.insert(k, tag);
            }
            // hand the allocation back for reuse
            self.buckets[i] = moved;
            self.buckets[i].clear();
        }
        let b = &mut self.buckets[0];
        let pos = (0..b.len())
            .min_by_key(|&p| b[p].1)
            .expect("bucket 0 is nonempty");
        let (k, tag) = b.swap_remove(pos);
        // bucket 0 holds only keys equal to `last`
        self.mins[0] = b.iter().copied().min().unwrap_or(EMPTY);
        if b.is_empty() {
            self.nonempty &= !1;
        }
        Some((unkey(k), tag))
    }
}
