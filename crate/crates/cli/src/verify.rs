//! Randomized self-checks of a build, runnable from the command line.
//!
//! Every case derives its instance from a printed seed so failures can be
//! replayed with `stacking generate --dist <d> --n <n> --seed <seed>`.

use std::fmt;

use stacking_core::{
    bound_report, chi_exact, clique_number, generate, lis_length, ln_statistics, mix_seed,
    patience_sort, solve_offline, solve_online, validate_coloring, Capacity, Coloring,
    DistributionSpec, Instance,
};

const VERIFY_SEED: u64 = 0x5eed_57ac_c0de;
const SHOWN_FAILURES: usize = 5;
const VARIANTS: [&str; 5] = ["usq", "u:0.3", "g:0:1:1:0.2", "g:0:5:1:0.4", "fixed:0.1"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    /// Seconds.
    Quick,
    /// Minutes.
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {:<18} {} cases, {} failures",
            self.name,
            self.cases,
            self.failures.len()
        )?;
        for c in self.failures.iter().take(SHOWN_FAILURES) {
            write!(f, "\n    seed {}: {}", c.seed, c.detail)?;
        }
        Ok(())
    }
}

pub type SolveFn<'a> = &'a (dyn Fn(&Instance, Capacity) -> Coloring + Sync);

/// The two solvers under test. Swappable so the suites themselves can be
/// checked against deliberately broken implementations.
pub struct Solvers<'a> {
    pub online: SolveFn<'a>,
    pub offline: SolveFn<'a>,
}

impl Default for Solvers<'static> {
    fn default() -> Self {
        Self {
            online: &solve_online,
            offline: &solve_offline,
        }
    }
}

/// A reproducible random case: distribution, size and capacity all follow from `seed`.
#[derive(Debug, Clone)]
pub struct Case {
    pub seed: u64,
    pub dist: DistributionSpec,
    pub n: usize,
    pub h: Capacity,
    pub inst: Instance,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dist {} n {} h {}", self.dist, self.n, self.h)
    }
}

pub fn random_case(seed: u64, max_n: usize, heights: &[usize]) -> Case {
    let pick = |k: u64| mix_seed(seed, &[k]);
    let dist: DistributionSpec = VARIANTS[(pick(0) % VARIANTS.len() as u64) as usize]
        .parse()
        .expect("variant");
    let n = 1 + (pick(1) % max_n as u64) as usize;
    let h = heights[(pick(2) % heights.len() as u64) as usize];
    let inst = generate(&dist, n, seed).expect("variants are valid");
    Case {
        seed,
        dist,
        n,
        h: Capacity::new(h).expect("positive"),
        inst,
    }
}

fn case_seed(suite: u64, k: usize) -> u64 {
    mix_seed(VERIFY_SEED, &[suite, k as u64])
}

/// Online and offline colorings agree item by item.
pub fn suite_equivalence(level: Level, solvers: &Solvers) -> SuiteReport {
    let cases = match level {
        Level::Quick => 500,
        Level::Full => 5000,
    };
    let mut failures = Vec::new();
    for k in 0..cases {
        let case = random_case(case_seed(1, k), 500, &[1, 2, 3, 5, 10]);
        let a = (solvers.online)(&case.inst, case.h);
        let b = (solvers.offline)(&case.inst, case.h);
        if a != b {
            let first = a
                .colors
                .iter()
                .zip(&b.colors)
                .position(|(x, y)| x != y)
                .unwrap_or(a.colors.len().min(b.colors.len()));
            failures.push(Counterexample {
                seed: case.seed,
                detail: format!("{case}: colorings differ first at item {first}"),
            });
        }
    }
    SuiteReport {
        name: "online-offline",
        cases,
        failures,
    }
}

/// Every coloring is valid and satisfies `ω′/h <= χ′_h <= ω′/h + c` and `χ′_h <= ω′`.
pub fn suite_bounds(level: Level, solvers: &Solvers) -> SuiteReport {
    let cases = match level {
        Level::Quick => 500,
        Level::Full => 5000,
    };
    let mut failures = Vec::new();
    for k in 0..cases {
        let case = random_case(case_seed(2, k), 500, &[1, 2, 3, 5, 10]);
        let col = (solvers.online)(&case.inst, case.h);
        let mut fail = |detail: String| {
            failures.push(Counterexample {
                seed: case.seed,
                detail: format!("{case}: {detail}"),
            })
        };
        if let Err(v) = validate_coloring(&case.inst, case.h, &col) {
            fail(format!("invalid coloring: {}", v[0]));
            continue;
        }
        let r = bound_report(&case.inst, case.h, &col).expect("nonempty");
        if r.chi_prime_h as f64 > r.upper_bound {
            fail(format!(
                "{} colors > omega'/h + c = {}",
                r.chi_prime_h, r.upper_bound
            ));
        }
        if (r.chi_prime_h as usize) < r.lower_bound || r.chi_prime_h as usize > r.omega_prime {
            fail(format!(
                "{} colors outside [{}, {}]",
                r.chi_prime_h, r.lower_bound, r.omega_prime
            ));
        }
        if case.h.get() == 1 && r.chi_prime_h as usize != r.omega_prime {
            fail(format!(
                "h = 1 used {} colors, omega' = {}",
                r.chi_prime_h, r.omega_prime
            ));
        }
    }
    SuiteReport {
        name: "bounds",
        cases,
        failures,
    }
}

/// `ceil(ω′/h) <= χ_h <= χ′_h <= ω′` against the exact search, and `χ_1 = ω′`.
pub fn suite_oracle(level: Level, solvers: &Solvers) -> SuiteReport {
    let cases = match level {
        Level::Quick => 200,
        Level::Full => 2000,
    };
    let mut failures = Vec::new();
    for k in 0..cases {
        let case = random_case(case_seed(3, k), 10, &[1, 2, 3]);
        let h = case.h.get();
        let omega = clique_number(&case.inst).expect("nonempty").omega_prime;
        let online = (solvers.online)(&case.inst, case.h).num_colors as usize;
        let exact = chi_exact(&case.inst, case.h, 14).expect("small").chi_h as usize;
        let ok = omega.div_ceil(h) <= exact
            && exact <= online
            && online <= omega
            && (h != 1 || (exact == omega && online == omega));
        if !ok {
            failures.push(Counterexample {
                seed: case.seed,
                detail: format!(
                    "{case}: lower {} exact {exact} online {online} omega' {omega}",
                    omega.div_ceil(h)
                ),
            });
        }
    }
    SuiteReport {
        name: "oracle-sandwich",
        cases,
        failures,
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Pile count equals the LIS dynamic program.
pub fn suite_piles(level: Level) -> SuiteReport {
    let (max_exhaustive, random) = match level {
        Level::Quick => (7, 1000),
        Level::Full => (8, 10_000),
    };
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=max_exhaustive {
        let mut perm: Vec<u32> = (1..=n).collect();
        loop {
            let seq: Vec<f64> = perm.iter().map(|&v| f64::from(v)).collect();
            cases += 1;
            if patience_sort(&seq).map(|p| p.len()) != lis_length(&seq) {
                failures.push(Counterexample {
                    seed: 0,
                    detail: format!("permutation {perm:?}"),
                });
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    for k in 0..random {
        let seed = case_seed(4, k);
        let len = 1 + (mix_seed(seed, &[0]) % 200) as usize;
        let seq: Vec<f64> = (0..len)
            .map(|i| (mix_seed(seed, &[1, i as u64]) >> 11) as f64)
            .collect();
        cases += 1;
        if patience_sort(&seq).map(|p| p.len()) != lis_length(&seq) {
            failures.push(Counterexample {
                seed,
                detail: format!("random sequence of length {len}"),
            });
        }
    }
    SuiteReport {
        name: "piles-vs-lis",
        cases,
        failures,
    }
}

/// Mean pile count of random permutations stays below `2 sqrt(n)`.
pub fn suite_ln_mean(level: Level) -> SuiteReport {
    let (sizes, trials): (&[usize], usize) = match level {
        Level::Quick => (&[100, 1000], 200),
        Level::Full => (&[100, 1000, 10_000, 100_000], 200),
    };
    let mut failures = Vec::new();
    for &n in sizes {
        let stats = ln_statistics(n, trials, VERIFY_SEED);
        let bound = 2.0 * (n as f64).sqrt();
        if stats.mean > bound {
            failures.push(Counterexample {
                seed: VERIFY_SEED,
                detail: format!("n {n}: mean {} > {bound}", stats.mean),
            });
        }
    }
    SuiteReport {
        name: "pile-mean-bound",
        cases: sizes.len(),
        failures,
    }
}

pub fn run_all(level: Level, solvers: &Solvers) -> Vec<SuiteReport> {
    vec![
        suite_piles(level),
        suite_equivalence(level, solvers),
        suite_bounds(level, solvers),
        suite_oracle(level, solvers),
        suite_ln_mean(level),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_are_reproducible() {
        let a = random_case(99, 50, &[1, 2]);
        let b = random_case(99, 50, &[1, 2]);
        assert_eq!(a.inst, b.inst);
        assert_eq!(a.h, b.h);
        assert!(a.n >= 1 && a.n <= 50);
    }

    #[test]
    fn permutation_stepper_visits_all() {
        let mut p = vec![1, 2, 3, 4];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(p, vec![4, 3, 2, 1]);
    }

    #[test]
    fn report_lists_counterexamples() {
        let r = SuiteReport {
            name: "x",
            cases: 3,
            failures: vec![Counterexample {
                seed: 7,
                detail: "bad".into(),
            }],
        };
        let s = r.to_string();
        assert!(s.starts_with("FAIL"));
        assert!(s.contains("seed 7: bad"));
    }
}
