//! The online stacking algorithm, its offline twin, and coloring checks.
//!
//! Both algorithms build the minimum chain partition, cut every chain
//! bottom-up into blocks of at most `h` intervals, color the block bottoms
//! like an interval graph (reuse an expired color when possible) and let the
//! rest of each block inherit its bottom's color. When several colors have
//! expired, the one that expired first is reused.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};
use core::fmt;
use core::num::NonZeroUsize;

use crate::interval::{clique_number, EmptyInstance, Instance, Interval};
use crate::patience::min_chain_partition;
use crate::queue::MonotoneQueue;

/// Stack height bound `h >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Capacity(NonZeroUsize);

/// `h = 0` was requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("stack capacity must be at least 1")]
pub struct ZeroCapacity;

impl Capacity {
    /// Returns `None` for zero.
    pub const fn new(h: usize) -> Option<Self> {
        match NonZeroUsize::new(h) {
            Some(h) => Some(Self(h)),
            None => None,
        }
    }

    /// The bound as a plain integer.
    pub const fn get(self) -> usize {
        self.0.get()
    }
}

impl TryFrom<usize> for Capacity {
    type Error = ZeroCapacity;

    fn try_from(h: usize) -> Result<Self, ZeroCapacity> {
        Self::new(h).ok_or(ZeroCapacity)
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A color (stack id) per item.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coloring {
    /// `colors[id]` is the color of item `id`; colors start at 1.
    pub colors: Vec<u32>,
    /// Number of distinct colors, `χ′_h`.
    pub num_colors: u32,
}

impl Coloring {
    /// Color of item `id`.
    pub fn color_of(&self, id: usize) -> u32 {
        self.colors[id]
    }

    /// Number of colored items.
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    /// True if no item is colored.
    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// Why the online solver refused an arrival.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum OnlineError {
    /// Arrivals must come in strictly increasing start order.
    #[error("item {id} arrives at {start}, not after the previous arrival at {previous}")]
    OutOfOrder {
        /// The rejected item.
        id: usize,
        /// Its start.
        start: f64,
        /// Start of the latest accepted item.
        previous: f64,
    },
    /// An endpoint repeats one already seen.
    #[error("item {id} repeats endpoint {value}")]
    DuplicateEndpoint {
        /// The rejected item.
        id: usize,
        /// The repeated value.
        value: f64,
    },
    /// Start not strictly before end, or a non-finite endpoint.
    #[error("item {id} is not a proper finite interval")]
    Malformed {
        /// The rejected item.
        id: usize,
    },
}

/// Where one arrival was placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    /// Color (stack) assigned to the item.
    pub color: u32,
    /// Index of the chain the item was put on, in chain creation order.
    pub chain: usize,
    /// True if the item starts a new block (and so picked its color from the pool).
    pub block_bottom: bool,
}

#[derive(Debug, Clone, Copy)]
struct ChainTop {
    color: u32,
    block_len: usize,
}

/// A departure time tagged with an item id.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Expiry {
    at: f64,
    tag: u32,
}

impl Eq for Expiry {}

impl PartialOrd for Expiry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Expiry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.at.total_cmp(&other.at).then(self.tag.cmp(&other.tag))
    }
}

/// State of the online algorithm between arrivals.
///
/// Chains are kept in creation order, which is also increasing order of
/// their top departure times, so the target chain is found by binary search.
/// Every color ever used sits in a min-queue keyed by the departure of its
/// most recent block bottom.
#[derive(Debug, Clone)]
pub struct OnlineSolver {
    h: usize,
    top_ends: Vec<f64>,
    tops: Vec<ChainTop>,
    expiry: MonotoneQueue,
    chi: u32,
    last_start: Option<f64>,
    seen: BTreeSet<u64>,
    colors: Vec<u32>,
}

fn endpoint_key(v: f64) -> u64 {
    // folds -0.0 onto +0.0
    (v + 0.0).to_bits()
}

impl OnlineSolver {
    /// An empty solver for stacks of height at most `h`.
    pub fn new(h: Capacity) -> Self {
        Self {
            h: h.get(),
            top_ends: Vec::new(),
            tops: Vec::new(),
            expiry: MonotoneQueue::new(),
            chi: 0,
            last_start: None,
            seen: BTreeSet::new(),
            colors: Vec::new(),
        }
    }

    /// Places the next arrival, checking it against everything seen so far.
    pub fn push(&mut self, item: &Interval) -> Result<Step, OnlineError> {
        if !(item.start.is_finite() && item.end.is_finite() && item.start < item.end) {
            return Err(OnlineError::Malformed { id: item.id });
        }
        if let Some(previous) = self.last_start {
            if item.start <= previous {
                return Err(OnlineError::OutOfOrder {
                    id: item.id,
                    start: item.start,
                    previous,
                });
            }
        }
        for v in [item.start, item.end] {
            if self.seen.contains(&endpoint_key(v)) {
                return Err(OnlineError::DuplicateEndpoint {
                    id: item.id,
                    value: v,
                });
            }
        }
        self.seen.insert(endpoint_key(item.start));
        self.seen.insert(endpoint_key(item.end));
        Ok(self.place(item))
    }

    fn place(&mut self, item: &Interval) -> Step {
        self.last_start = Some(item.start);
        // chains whose top contains the item are exactly those with top end > item.end;
        // the first of them has the smallest top end
        let chain = self.top_ends.partition_point(|&e| e < item.end);
        let inherited = if chain == self.top_ends.len() {
            self.top_ends.push(item.end);
            self.tops.push(ChainTop {
                color: 0,
                block_len: 0,
            });
            None
        } else {
            self.top_ends[chain] = item.end;
            let top = self.tops[chain];
            (top.block_len < self.h).then_some(top)
        };

        let step = match inherited {
            Some(top) => {
                self.tops[chain].block_len = top.block_len + 1;
                Step {
                    color: top.color,
                    chain,
                    block_bottom: false,
                }
            }
            None => {
                let color = match self.expiry.peek() {
                    Some((at, c)) if at < item.start => {
                        self.expiry.pop();
                        c
                    }
                    _ => {
                        self.chi += 1;
                        self.chi
                    }
                };
                self.expiry.push(item.end, color);
                self.tops[chain] = ChainTop {
                    color,
                    block_len: 1,
                };
                Step {
                    color,
                    chain,
                    block_bottom: true,
                }
            }
        };
        self.colors.push(step.color);
        step
    }

    /// Colors used so far, `χ`.
    pub fn num_colors(&self) -> u32 {
        self.chi
    }

    /// Chains opened so far.
    pub fn chain_count(&self) -> usize {
        self.tops.len()
    }

    /// Departure time of each chain's current top, in chain order.
    pub fn top_ends(&self) -> &[f64] {
        &self.top_ends
    }

    /// Colors assigned so far, in arrival order.
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Finishes the run.
    pub fn into_coloring(self) -> Coloring {
        Coloring {
            colors: self.colors,
            num_colors: self.chi,
        }
    }
}

/// Runs the online algorithm over an instance, one arrival at a time.
pub fn solve_online(inst: &Instance, h: Capacity) -> Coloring {
    let mut solver = OnlineSolver::new(h);
    solver.colors.reserve(inst.len());
    for item in inst {
        // validated instances are sorted with distinct endpoints
        solver.place(item);
    }
    solver.into_coloring()
}

/// The offline algorithm: partition, split, color the block bottoms, propagate.
pub fn solve_offline(inst: &Instance, h: Capacity) -> Coloring {
    let chains = min_chain_partition(inst);

    let mut bottom_of = alloc::vec![usize::MAX; inst.len()];
    let mut bottoms = Vec::new();
    for chain in &chains.chains {
        for block in chain.chunks(h.get()) {
            bottoms.push(block[0]);
            for &id in block {
                bottom_of[id] = block[0];
            }
        }
    }
    // ids are arrival positions, so this is start order
    bottoms.sort_unstable();

    // greedy interval-graph coloring of the bottoms; reuse the color that expired earliest
    let mut color_ends: Vec<f64> = Vec::new();
    let mut bottom_color = alloc::vec![0u32; inst.len()];
    for &b in &bottoms {
        let it = &inst[b];
        let reusable = color_ends
            .iter()
            .enumerate()
            .filter(|(_, &e)| e < it.start)
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, _)| k);
        let k = match reusable {
            Some(k) => k,
            None => {
                color_ends.push(0.0);
                color_ends.len() - 1
            }
        };
        color_ends[k] = it.end;
        bottom_color[b] = k as u32 + 1;
    }

    Coloring {
        colors: bottom_of.iter().map(|&b| bottom_color[b]).collect(),
        num_colors: color_ends.len() as u32,
    }
}

/// A broken coloring condition.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ColoringViolation {
    /// The coloring does not have one entry per item.
    #[error("coloring has {got} entries for {expected} items")]
    WrongLength {
        /// Items in the instance.
        expected: usize,
        /// Entries in the coloring.
        got: usize,
    },
    /// A color is 0 or above `num_colors`.
    #[error("item {id} has color {color} outside 1..={num_colors}")]
    OutOfRange {
        /// The item.
        id: usize,
        /// Its color.
        color: u32,
        /// Declared color count.
        num_colors: u32,
    },
    /// A color in `1..=num_colors` is never used.
    #[error("color {color} is unused")]
    UnusedColor {
        /// The color.
        color: u32,
    },
    /// Two crossing intervals share a color.
    #[error("crossing items {first} and {second} share color {color}")]
    Overlap {
        /// Shared color.
        color: u32,
        /// Earlier item.
        first: usize,
        /// Later item.
        second: usize,
    },
    /// More than `h` intervals of one color contain a point.
    #[error("{count} items of color {color} contain t = {at}")]
    OverCapacity {
        /// The color.
        color: u32,
        /// A point inside the offending region.
        at: f64,
        /// Number of same-colored intervals containing it.
        count: usize,
    },
}

/// Checks that `col` is a valid stacking of `inst` with height bound `h`.
///
/// One sweep per color in start order: intervals still active when a new one
/// starts either contain it or cross it, and the active count just after each
/// start is the largest same-colored depth in that region.
pub fn validate_coloring(
    inst: &Instance,
    h: Capacity,
    col: &Coloring,
) -> Result<(), Vec<ColoringViolation>> {
    let mut out = Vec::new();
    if col.colors.len() != inst.len() {
        out.push(ColoringViolation::WrongLength {
            expected: inst.len(),
            got: col.colors.len(),
        });
        return Err(out);
    }

    let mut by_color: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (id, &color) in col.colors.iter().enumerate() {
        if color == 0 || color > col.num_colors {
            out.push(ColoringViolation::OutOfRange {
                id,
                color,
                num_colors: col.num_colors,
            });
        } else {
            by_color.entry(color).or_default().push(id);
        }
    }
    for color in 1..=col.num_colors {
        if !by_color.contains_key(&color) {
            out.push(ColoringViolation::UnusedColor { color });
        }
    }

    let endpoints = inst.sorted_endpoints();
    for (&color, ids) in &by_color {
        let mut active: BinaryHeap<Reverse<Expiry>> = BinaryHeap::new();
        for &id in ids {
            let it = &inst[id];
            while matches!(active.peek(), Some(Reverse(e)) if e.at < it.start) {
                active.pop();
            }
            if let Some(Reverse(e)) = active.peek() {
                if e.at < it.end {
                    out.push(ColoringViolation::Overlap {
                        color,
                        first: e.tag as usize,
                        second: id,
                    });
                }
            }
            active.push(Reverse(Expiry {
                at: it.end,
                tag: id as u32,
            }));
            if active.len() > h.get() {
                let next = endpoints[endpoints.partition_point(|&p| p <= it.start)];
                out.push(ColoringViolation::OverCapacity {
                    color,
                    at: 0.5 * (it.start + next),
                    count: active.len(),
                });
            }
        }
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Per-instance quantities behind the performance guarantee.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    /// Minimum number of chains.
    pub c: usize,
    /// Clique number of the interval graph.
    pub omega_prime: usize,
    /// Colors used by the algorithm.
    pub chi_prime_h: u32,
    /// `ceil(ω′ / h)`, a lower bound on the optimum.
    pub lower_bound: usize,
    /// `ω′ / h + c`, an upper bound on `chi_prime_h`.
    pub upper_bound: f64,
    /// `χ′_h · h / ω′`, an upper bound on the competitive ratio.
    pub ratio_ub: f64,
}

/// Assembles a [`BoundReport`] for a coloring of `inst`.
pub fn bound_report(
    inst: &Instance,
    h: Capacity,
    col: &Coloring,
) -> Result<BoundReport, EmptyInstance> {
    let omega_prime = clique_number(inst)?.omega_prime;
    let c = min_chain_partition(inst).c();
    let h = h.get();
    Ok(BoundReport {
        c,
        omega_prime,
        chi_prime_h: col.num_colors,
        lower_bound: omega_prime.div_ceil(h),
        upper_bound: omega_prime as f64 / h as f64 + c as f64,
        ratio_ub: col.num_colors as f64 * h as f64 / omega_prime as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cap(h: usize) -> Capacity {
        Capacity::new(h).unwrap()
    }

    fn nested4() -> Instance {
        Instance::from_pairs(&[(0.0, 10.0), (1.0, 9.0), (2.0, 8.0), (3.0, 7.0)]).unwrap()
    }

    #[test]
    fn zero_capacity_is_rejected() {
        assert!(Capacity::new(0).is_none());
        assert_eq!(Capacity::try_from(0), Err(ZeroCapacity));
    }

    #[test]
    fn nested_family_splits_into_blocks() {
        let inst = nested4();
        let col = solve_online(&inst, cap(2));
        assert_eq!(col.colors, vec![1, 1, 2, 2]);
        assert_eq!(col.num_colors, 2);
        assert_eq!(solve_offline(&inst, cap(2)), col);
    }

    #[test]
    fn expired_color_is_reused() {
        let inst = Instance::from_pairs(&[(0.0, 1.0), (2.0, 3.0)]).unwrap();
        assert_eq!(solve_online(&inst, cap(1)).colors, vec![1, 1]);
    }

    #[test]
    fn crossing_pair_needs_two_colors() {
        let inst = Instance::from_pairs(&[(0.0, 2.0), (1.0, 3.0)]).unwrap();
        for h in [1, 2, 7] {
            assert_eq!(solve_online(&inst, cap(h)).colors, vec![1, 2]);
        }
    }

    #[test]
    fn small_solve_examples() {
        let nested3 = Instance::from_pairs(&[(0.0, 10.0), (1.0, 9.0), (2.0, 8.0)]).unwrap();
        assert_eq!(solve_online(&nested3, cap(3)).num_colors, 1);
        assert_eq!(solve_offline(&nested3, cap(5)).num_colors, 1);

        let crossing = Instance::from_pairs(&[(0.0, 2.0), (1.0, 3.0), (1.5, 4.0)]).unwrap();
        assert_eq!(solve_online(&crossing, cap(5)).num_colors, 3);

        let disjoint = Instance::from_pairs(&[(0.0, 1.0), (2.0, 3.0), (4.0, 5.0)]).unwrap();
        assert_eq!(solve_offline(&disjoint, cap(1)).num_colors, 1);
    }

    #[test]
    fn push_rejects_bad_arrivals() {
        let mut s = OnlineSolver::new(cap(2));
        s.push(&Interval::new(0, 1.0, 4.0)).unwrap();
        assert_eq!(
            s.push(&Interval::new(1, 0.5, 2.0)),
            Err(OnlineError::OutOfOrder {
                id: 1,
                start: 0.5,
                previous: 1.0
            })
        );
        assert_eq!(
            s.push(&Interval::new(2, 2.0, 4.0)),
            Err(OnlineError::DuplicateEndpoint { id: 2, value: 4.0 })
        );
        assert_eq!(
            s.push(&Interval::new(3, 5.0, 5.0)),
            Err(OnlineError::Malformed { id: 3 })
        );
        let step = s.push(&Interval::new(4, 2.0, 3.0)).unwrap();
        assert_eq!(
            step,
            Step {
                color: 1,
                chain: 0,
                block_bottom: false
            }
        );
        assert_eq!(s.colors(), &[1, 1]);
    }

    #[test]
    fn validation_catches_shared_color_on_crossing_pair() {
        let inst = Instance::from_pairs(&[(0.0, 2.0), (1.0, 3.0)]).unwrap();
        let col = Coloring {
            colors: vec![1, 1],
            num_colors: 1,
        };
        assert_eq!(
            validate_coloring(&inst, cap(5), &col),
            Err(vec![ColoringViolation::Overlap {
                color: 1,
                first: 0,
                second: 1
            }])
        );
    }

    #[test]
    fn validation_catches_overfull_stack() {
        let inst = Instance::from_pairs(&[(0.0, 10.0), (1.0, 9.0), (2.0, 8.0)]).unwrap();
        let col = Coloring {
            colors: vec![1, 1, 1],
            num_colors: 1,
        };
        assert_eq!(
            validate_coloring(&inst, cap(2), &col),
            Err(vec![ColoringViolation::OverCapacity {
                color: 1,
                at: 5.0,
                count: 3
            }])
        );
        assert_eq!(validate_coloring(&inst, cap(3), &col), Ok(()));
    }

    #[test]
    fn validation_catches_bookkeeping_errors() {
        let inst = Instance::from_pairs(&[(0.0, 1.0), (2.0, 3.0)]).unwrap();
        let short = Coloring {
            colors: vec![1],
            num_colors: 1,
        };
        assert!(matches!(
            validate_coloring(&inst, cap(1), &short).unwrap_err()[..],
            [ColoringViolation::WrongLength {
                expected: 2,
                got: 1
            }]
        ));
        let gap = Coloring {
            colors: vec![1, 3],
            num_colors: 3,
        };
        assert_eq!(
            validate_coloring(&inst, cap(1), &gap),
            Err(vec![ColoringViolation::UnusedColor { color: 2 }])
        );
        let zero = Coloring {
            colors: vec![0, 1],
            num_colors: 1,
        };
        assert!(matches!(
            validate_coloring(&inst, cap(1), &zero).unwrap_err()[..],
            [ColoringViolation::OutOfRange {
                id: 0,
                color: 0,
                ..
            }]
        ));
    }

    #[test]
    fn bound_report_examples() {
        let inst = nested4();
        let r = bound_report(&inst, cap(2), &solve_online(&inst, cap(2))).unwrap();
        assert_eq!(
            (r.c, r.omega_prime, r.chi_prime_h, r.lower_bound),
            (1, 4, 2, 2)
        );
        assert_eq!(r.ratio_ub, 1.0);
        assert_eq!(r.upper_bound, 3.0);

        let one = Instance::from_pairs(&[(0.0, 1.0)]).unwrap();
        let r = bound_report(&one, cap(1), &solve_online(&one, cap(1))).unwrap();
        assert_eq!((r.c, r.omega_prime, r.chi_prime_h), (1, 1, 1));
        assert_eq!(r.upper_bound, 2.0);

        assert!(bound_report(&Instance::default(), cap(1), &Coloring::default()).is_err());
    }
}
