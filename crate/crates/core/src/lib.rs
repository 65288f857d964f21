//! Online stacking with bounded-capacity stacks.
//!
//! Items arrive one at a time with a known departure time and must be put on
//! a LIFO stack of height at most `h` without ever being relocated. Viewing
//! each item as a storage interval, this is a coloring problem: two crossing
//! intervals may not share a stack (color), and no more than `h` intervals of
//! one color may be present at any instant.
//!
//! The crate provides:
//! - [`interval`]: interval and instance types, overlap/containment predicates
//!   and the sweep-line clique number `ω′`.
//! - [`patience`]: Patience Sorting, an independent LIS oracle, minimum chain
//!   partitions and Monte-Carlo statistics of the pile count.
//! - [`solver`]: the online stacking algorithm, its offline twin, coloring
//!   validation and per-instance bounds.
//! - [`exact`]: a branch-and-bound exact solver for small instances.
//! - [`generate`]: seeded instance generators for the uniform, bounded-length,
//!   Gaussian and fixed-length models.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod exact;
pub mod generate;
pub mod interval;
pub mod patience;
mod queue;
mod seed;
pub mod solver;

pub use exact::{chi_exact, ExactError, ExactResult, DEFAULT_EXACT_LIMIT};
pub use generate::{
    generate, DistributionSpec, GenerateError, SpecParseError, REJECTION_LIMIT, STUDY_PRESETS,
};
pub use interval::{
    clique_number, contains, depth_at, overlaps, validate_instance, EmptyInstance, Instance,
    InstanceStats, Interval, InvalidInstance, Violation,
};
pub use patience::{
    lis_length, ln_sample, ln_statistics, min_chain_partition, patience_sort, ChainSet,
    DuplicateValue, LnStats, PileSet,
};
pub use seed::mix_seed;
pub use solver::{
    bound_report, solve_offline, solve_online, validate_coloring, BoundReport, Capacity, Coloring,
    ColoringViolation, OnlineError, OnlineSolver, Step, ZeroCapacity,
};
