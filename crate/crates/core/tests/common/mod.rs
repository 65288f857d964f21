#![allow(dead_code)]

use proptest::prelude::*;
use stacking_core::{Capacity, DistributionSpec, Instance, Interval};

/// Any combinatorial type of instance with up to `max_n` items: a shuffled
/// list of the endpoint ranks `0..2n`, read off in pairs.
pub fn arb_instance(max_n: usize) -> impl Strategy<Value = Instance> {
    (1..=max_n)
        .prop_flat_map(|n| Just((0..2 * n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|ranks| {
            let pairs: Vec<(f64, f64)> = ranks
                .chunks(2)
                .map(|p| {
                    let (a, b) = (p[0].min(p[1]) as f64, p[0].max(p[1]) as f64);
                    (a, b)
                })
                .collect();
            Instance::from_pairs(&pairs).unwrap()
        })
}

pub fn cap(h: usize) -> Capacity {
    Capacity::new(h).unwrap()
}

/// One of each generator variant.
pub fn variants() -> Vec<DistributionSpec> {
    ["usq", "u:0.3", "g:0:1:1:0.4", "g:0:5:1:0.2", "fixed:0.1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

/// Largest number of intervals sharing a point, evaluated at the midpoints
/// between consecutive endpoints.
pub fn brute_clique(inst: &Instance) -> usize {
    let pts = inst.sorted_endpoints();
    pts.windows(2)
        .map(|w| {
            let t = 0.5 * (w[0] + w[1]);
            inst.iter().filter(|i| i.start < t && t < i.end).count()
        })
        .max()
        .unwrap_or(0)
}

/// Definition-level check of a coloring: pairwise crossing test plus
/// same-color depth at every midpoint.
pub fn brute_valid(inst: &Instance, h: usize, colors: &[u32]) -> bool {
    let items = inst.items();
    for a in items {
        for b in items {
            let crossing = a.start < b.start && b.start < a.end && a.end < b.end;
            if crossing && colors[a.id] == colors[b.id] {
                return false;
            }
        }
    }
    let pts = inst.sorted_endpoints();
    for w in pts.windows(2) {
        let t = 0.5 * (w[0] + w[1]);
        let mut per_color = std::collections::HashMap::new();
        for i in items
            .iter()
            .filter(|i: &&Interval| i.start < t && t < i.end)
        {
            *per_color.entry(colors[i.id]).or_insert(0usize) += 1;
        }
        if per_color.values().any(|&c| c > h) {
            return false;
        }
    }
    true
}
