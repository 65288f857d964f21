//! Storage intervals, validated instances and the interval-graph clique number.

use alloc::vec::Vec;
use core::fmt;

/// The storage time window `[start, end]` of one item.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    /// Zero-based item index. Inside an [`Instance`] this is the arrival position.
    pub id: usize,
    /// Arrival time.
    pub start: f64,
    /// Departure time.
    pub end: f64,
}

impl Interval {
    /// Creates an interval without checking anything; see [`validate_instance`].
    pub const fn new(id: usize, start: f64, end: f64) -> Self {
        Self { id, start, end }
    }

    /// `end - start`.
    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    /// True if `t` lies strictly inside the interval.
    pub fn covers(&self, t: f64) -> bool {
        self.start < t && t < self.end
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}[{}, {}]", self.id, self.start, self.end)
    }
}

/// True iff `a` and `b` cross: they intersect but neither contains the other.
///
/// Endpoints are assumed pairwise distinct.
pub fn overlaps(a: &Interval, b: &Interval) -> bool {
    (a.start < b.start && b.start < a.end && a.end < b.end)
        || (b.start < a.start && a.start < b.end && b.end < a.end)
}

/// True iff `inner` is strictly nested inside `outer`.
pub fn contains(outer: &Interval, inner: &Interval) -> bool {
    outer.start < inner.start && inner.end < outer.end
}

/// A single reason why a raw interval list is not a valid instance.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Violation {
    /// An endpoint is NaN or infinite.
    #[error("item {id}: endpoint is not a finite number")]
    NonFinite {
        /// Offending item.
        id: usize,
    },
    /// `start >= end`.
    #[error("item {id}: start {start} is not before end {end}")]
    EmptyInterval {
        /// Offending item.
        id: usize,
        /// Its start.
        start: f64,
        /// Its end.
        end: f64,
    },
    /// Two endpoints (from different items) are equal.
    #[error("duplicate endpoint {value} shared by items {first} and {second}")]
    DuplicateEndpoint {
        /// The repeated value.
        value: f64,
        /// One item carrying the value.
        first: usize,
        /// Another item carrying the value.
        second: usize,
    },
}

/// Every violation found while validating a raw interval list.
#[derive(Debug, Clone, PartialEq)]
pub struct InvalidInstance {
    /// All violations, in discovery order.
    pub violations: Vec<Violation>,
}

impl fmt::Display for InvalidInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid instance ({} violation(s))",
            self.violations.len()
        )?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

impl core::error::Error for InvalidInstance {}

/// Returned by operations that need at least one interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("instance is empty")]
pub struct EmptyInstance;

/// A validated problem instance.
///
/// Items are sorted by strictly increasing start, all `2n` endpoints are
/// finite and pairwise distinct, and each item's `id` equals its position.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Instance {
    items: Vec<Interval>,
}

/// Checks a raw interval list and returns the canonical (start-sorted) instance.
///
/// Nothing is repaired: every problem is reported, with the ids the caller
/// supplied. The returned instance renumbers items by arrival order.
pub fn validate_instance<I>(raw: I) -> Result<Instance, InvalidInstance>
where
    I: IntoIterator<Item = Interval>,
{
    let mut items: Vec<Interval> = raw.into_iter().collect();
    let mut violations = Vec::new();

    for it in &items {
        if !it.start.is_finite() || !it.end.is_finite() {
            violations.push(Violation::NonFinite { id: it.id });
        } else if it.start >= it.end {
            violations.push(Violation::EmptyInterval {
                id: it.id,
                start: it.start,
                end: it.end,
            });
        }
    }

    let mut endpoints: Vec<(f64, usize)> = items
        .iter()
        .flat_map(|it| [(it.start, it.id), (it.end, it.id)])
        .filter(|(v, _)| v.is_finite())
        .collect();
    endpoints.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    for w in endpoints.windows(2) {
        let ((v, first), (u, second)) = (w[0], w[1]);
        // a degenerate [t, t] is already reported as EmptyInterval
        if v == u && first != second {
            violations.push(Violation::DuplicateEndpoint {
                value: v,
                first,
                second,
            });
        }
    }

    if !violations.is_empty() {
        return Err(InvalidInstance { violations });
    }

    items.sort_by(|a, b| a.start.total_cmp(&b.start));
    for (pos, it) in items.iter_mut().enumerate() {
        it.id = pos;
    }
    Ok(Instance { items })
}

impl Instance {
    /// Builds an instance from `(start, end)` pairs, ids taken from the slice position.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self, InvalidInstance> {
        validate_instance(
            pairs
                .iter()
                .enumerate()
                .map(|(id, &(s, e))| Interval::new(id, s, e)),
        )
    }

    /// Number of items.
    pub fn len(&self) -> usize {
        self.items.len()
    }

    /// True if there are no items.
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Items in arrival (start) order.
    pub fn items(&self) -> &[Interval] {
        &self.items
    }

    /// Iterates over the items in arrival order.
    pub fn iter(&self) -> core::slice::Iter<'_, Interval> {
        self.items.iter()
    }

    /// The first `k` arrivals as an instance of their own.
    pub fn prefix(&self, k: usize) -> Instance {
        Instance {
            items: self.items[..k.min(self.items.len())].to_vec(),
        }
    }

    /// All endpoints in increasing order.
    pub fn sorted_endpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.items.iter().flat_map(|i| [i.start, i.end]).collect();
        pts.sort_by(f64::total_cmp);
        pts
    }
}

impl core::ops::Index<usize> for Instance {
    type Output = Interval;

    fn index(&self, idx: usize) -> &Interval {
        &self.items[idx]
    }
}

impl<'a> IntoIterator for &'a Instance {
    type Item = &'a Interval;
    type IntoIter = core::slice::Iter<'a, Interval>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// Clique number of the interval graph and a point attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceStats {
    /// Maximum number of intervals sharing a common point (`ω′`).
    pub omega_prime: usize,
    /// Midpoint of the first maximal region in sweep order.
    pub witness_t: f64,
}

/// Sweeps the sorted endpoints (+1 at a start, -1 at an end) to find `ω′`.
pub fn clique_number(inst: &Instance) -> Result<InstanceStats, EmptyInstance> {
    if inst.is_empty() {
        return Err(EmptyInstance);
    }
    let mut events: Vec<(f64, bool)> = inst
        .iter()
        .flat_map(|i| [(i.start, true), (i.end, false)])
        .collect();
    events.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut depth = 0usize;
    let mut best = (0usize, 0usize);
    for (k, &(_, is_start)) in events.iter().enumerate() {
        if is_start {
            depth += 1;
            if depth > best.0 {
                best = (depth, k);
            }
        } else {
            depth -= 1;
        }
    }
    let (omega_prime, k) = best;
    // a start is never the last event, so k + 1 is in range
    let witness_t = 0.5 * (events[k].0 + events[k + 1].0);
    Ok(InstanceStats {
        omega_prime,
        witness_t,
    })
}

/// Number of intervals containing `t`; linear scan.
pub fn depth_at(inst: &Instance, t: f64) -> usize {
    inst.iter().filter(|i| i.covers(t)).count()
}
