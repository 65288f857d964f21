//! Exact minimum number of stacks for small instances, by branch and bound.

use alloc::vec;
use alloc::vec::Vec;

use crate::interval::{clique_number, Instance};
use crate::solver::{solve_online, Capacity, Coloring};

/// Largest instance [`chi_exact`] accepts unless told otherwise.
pub const DEFAULT_EXACT_LIMIT: usize = 14;

/// Optimal stacking of a small instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult {
    /// Minimum number of stacks, `χ_h`.
    pub chi_h: u32,
    /// A coloring that attains it.
    pub witness: Coloring,
    /// Search nodes visited.
    pub nodes_explored: u64,
}

/// Refusal to start an exponential search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    /// The instance is larger than the configured limit.
    #[error("instance has {n} items; the exact search is limited to {limit}")]
    TooLarge {
        /// Items in the instance.
        n: usize,
        /// The limit in force.
        limit: usize,
    },
}

struct Search<'a> {
    inst: &'a Instance,
    h: usize,
    assign: Vec<u32>,
    best: u32,
    best_assign: Vec<u32>,
    lower: u32,
    nodes: u64,
}

impl Search<'_> {
    /// Can item `i` take color `k` given the colors of items `0..i`?
    ///
    /// Items arrive in start order, so only earlier items still active at
    /// `start_i` matter: each must contain item `i`, and together with it
    /// there may be at most `h` of them.
    fn fits(&self, i: usize, k: u32) -> bool {
        let it = &self.inst[i];
        let mut depth = 1;
        for j in 0..i {
            if self.assign[j] != k {
                continue;
            }
            let other = &self.inst[j];
            if other.end > it.start {
                if other.end < it.end {
                    return false;
                }
                depth += 1;
                if depth > self.h {
                    return false;
                }
            }
        }
        true
    }

    fn descend(&mut self, i: usize, used: u32) {
        self.nodes += 1;
        if self.best == self.lower {
            return;
        }
        if i == self.assign.len() {
            // pruning guarantees used < best here
            self.best = used;
            self.best_assign.clone_from(&self.assign);
            return;
        }
        // a fresh color is only tried as `used + 1`, which breaks color symmetry
        let top = if used + 1 < self.best { used + 1 } else { used };
        for k in 1..=top {
            if self.fits(i, k) {
                self.assign[i] = k;
                self.descend(i + 1, used.max(k));
                self.assign[i] = 0;
                if self.best == self.lower {
                    return;
                }
            }
        }
    }
}

/// Minimum number of stacks of height `h` for `inst`, found by exhaustive search.
///
/// The search starts from the online solution as an upper bound and stops
/// early once it reaches `ceil(ω′ / h)`.
pub fn chi_exact(inst: &Instance, h: Capacity, limit: usize) -> Result<ExactResult, ExactError> {
    let n = inst.len();
    if n > limit {
        return Err(ExactError::TooLarge { n, limit });
    }
    if n == 0 {
        return Ok(ExactResult {
            chi_h: 0,
            witness: Coloring::default(),
            nodes_explored: 0,
        });
    }

    let online = solve_online(inst, h);
    let omega = clique_number(inst).expect("nonempty").omega_prime;
    let mut search = Search {
        inst,
        h: h.get(),
        assign: vec![0; n],
        best: online.num_colors,
        best_assign: online.colors,
        lower: omega.div_ceil(h.get()) as u32,
        nodes: 0,
    };
    search.descend(0, 0);

    Ok(ExactResult {
        chi_h: search.best,
        witness: Coloring {
            colors: search.best_assign,
            num_colors: search.best,
        },
        nodes_explored: search.nodes,
    })
}
