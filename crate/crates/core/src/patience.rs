//! Patience Sorting, minimum chain partitions and pile-count statistics.
//!
//! Dealing a deck onto piles (each card goes on the leftmost pile whose top is
//! larger, otherwise on a new pile to the right) partitions the deck into the
//! minimum number of decreasing subsequences, and that number equals the
//! length of the longest increasing subsequence. Applied to the departure
//! times of an instance taken in arrival order, each pile is a chain of
//! nested intervals.

use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::interval::{Instance, Interval};
use crate::seed::mix_seed;

/// Rejected input sequence for [`patience_sort`] and [`lis_length`].
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum DuplicateValue {
    /// A value occurs more than once.
    #[error("value {0} occurs more than once")]
    Repeated(f64),
    /// NaN cannot be ordered.
    #[error("sequence contains NaN")]
    NotANumber,
}

/// Piles produced by Patience Sorting.
#[derive(Debug, Clone, PartialEq)]
pub struct PileSet {
    /// Each pile listed bottom to top (strictly decreasing).
    pub piles: Vec<Vec<f64>>,
    /// The top card of each pile, strictly increasing from left to right.
    pub tops: Vec<f64>,
}

impl PileSet {
    /// Number of piles.
    pub fn len(&self) -> usize {
        self.piles.len()
    }

    /// True if no card was dealt.
    pub fn is_empty(&self) -> bool {
        self.piles.is_empty()
    }
}

fn check_distinct(seq: &[f64]) -> Result<(), DuplicateValue> {
    if seq.iter().any(|v| v.is_nan()) {
        return Err(DuplicateValue::NotANumber);
    }
    let mut sorted = seq.to_vec();
    sorted.sort_by(f64::total_cmp);
    match sorted.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(DuplicateValue::Repeated(w[0])),
        None => Ok(()),
    }
}

/// Deals `values` in order; returns the piles as position lists (bottom to top).
///
/// Values must be distinct and not NaN.
fn deal(values: impl Iterator<Item = f64>) -> Vec<Vec<usize>> {
    let mut piles: Vec<Vec<usize>> = Vec::new();
    let mut tops: Vec<f64> = Vec::new();
    for (pos, v) in values.enumerate() {
        let k = tops.partition_point(|&t| t < v);
        if k == tops.len() {
            tops.push(v);
            piles.push(alloc::vec![pos]);
        } else {
            tops[k] = v;
            piles[k].push(pos);
        }
    }
    piles
}

/// Patience Sorting of a deck read front to back.
pub fn patience_sort(deck: &[f64]) -> Result<PileSet, DuplicateValue> {
    check_distinct(deck)?;
    let piles: Vec<Vec<f64>> = deal(deck.iter().copied())
        .into_iter()
        .map(|p| p.into_iter().map(|i| deck[i]).collect())
        .collect();
    let tops = piles.iter().map(|p: &Vec<f64>| p[p.len() - 1]).collect();
    Ok(PileSet { piles, tops })
}

/// Length of the longest strictly increasing subsequence.
///
/// Quadratic dynamic program, kept independent of [`patience_sort`] so the
/// two can check each other.
pub fn lis_length(seq: &[f64]) -> Result<usize, DuplicateValue> {
    check_distinct(seq)?;
    let mut best = alloc::vec![1usize; seq.len()];
    for i in 0..seq.len() {
        for j in 0..i {
            if seq[j] < seq[i] && best[j] + 1 > best[i] {
                best[i] = best[j] + 1;
            }
        }
    }
    Ok(best.into_iter().max().unwrap_or(0))
}

/// A partition of an instance into chains of nested intervals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChainSet {
    /// Item ids of each chain, bottom (outermost) to top (innermost).
    pub chains: Vec<Vec<usize>>,
}

impl ChainSet {
    /// Number of chains, `c`.
    pub fn c(&self) -> usize {
        self.chains.len()
    }

    /// The intervals of chain `k`, bottom to top.
    pub fn chain<'a>(&'a self, inst: &'a Instance, k: usize) -> impl Iterator<Item = &'a Interval> {
        self.chains[k].iter().map(move |&id| &inst[id])
    }
}

/// Minimum chain partition: Patience Sorting over departure times in arrival order.
pub fn min_chain_partition(inst: &Instance) -> ChainSet {
    ChainSet {
        chains: deal(inst.iter().map(|i| i.end)),
    }
}

/// Sample statistics of the Patience Sorting pile count `L_n` for uniform random permutations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LnStats {
    /// Permutation length.
    pub n: usize,
    /// Number of sampled permutations.
    pub trials: usize,
    /// Sample mean of the pile count.
    pub mean: f64,
    /// Sample standard deviation (`trials - 1` denominator; 0 for one trial).
    pub std: f64,
    /// Base seed.
    pub seed: u64,
}

/// Pile count of one uniform random permutation of `1..=n` for trial `trial`.
///
/// Each trial shuffles with its own Xoshiro256++ stream seeded from
/// `(seed, trial)`, so trials are independent of evaluation order.
pub fn ln_sample(n: usize, seed: u64, trial: u64) -> usize {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(mix_seed(seed, &[trial]));
    let mut deck: Vec<u32> = (1..=n as u32).collect();
    deck.shuffle(&mut rng);
    deal(deck.into_iter().map(f64::from)).len()
}

/// Monte-Carlo mean and standard deviation of `L_n`.
///
/// # Panics
/// If `n == 0` or `trials == 0`.
pub fn ln_statistics(n: usize, trials: usize, seed: u64) -> LnStats {
    assert!(
        n >= 1 && trials >= 1,
        "ln_statistics needs n >= 1 and trials >= 1"
    );
    let samples: Vec<f64> = (0..trials as u64)
        .map(|t| ln_sample(n, seed, t) as f64)
        .collect();
    let mean = samples.iter().sum::<f64>() / trials as f64;
    let std = if trials > 1 {
        let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
        libm::sqrt(ss / (trials - 1) as f64)
    } else {
        0.0
    };
    LnStats {
        n,
        trials,
        mean,
        std,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn card_deck_example() {
        let deck = [9.0, 2.0, 4.0, 8.0, 1.0, 7.0, 6.0, 3.0, 5.0, 10.0];
        let p = patience_sort(&deck).unwrap();
        assert_eq!(
            p.piles,
            vec![
                vec![9.0, 2.0, 1.0],
                vec![4.0, 3.0],
                vec![8.0, 7.0, 6.0, 5.0],
                vec![10.0]
            ]
        );
        assert_eq!(p.tops, vec![1.0, 3.0, 5.0, 10.0]);
        assert_eq!(lis_length(&deck), Ok(4));
    }

    #[test]
    fn monotone_decks() {
        assert_eq!(patience_sort(&[3.0, 2.0, 1.0]).unwrap().len(), 1);
        assert_eq!(patience_sort(&[1.0, 2.0, 3.0]).unwrap().len(), 3);
        assert!(patience_sort(&[]).unwrap().is_empty());
    }

    #[test]
    fn lis_examples() {
        assert_eq!(lis_length(&[1.0]), Ok(1));
        assert_eq!(lis_length(&[5.0, 1.0, 6.0, 2.0, 7.0]), Ok(3));
        assert_eq!(lis_length(&[]), Ok(0));
    }

    #[test]
    fn duplicates_and_nan_are_rejected() {
        assert_eq!(
            patience_sort(&[1.0, 2.0, 1.0]),
            Err(DuplicateValue::Repeated(1.0))
        );
        assert_eq!(lis_length(&[0.5, 0.5]), Err(DuplicateValue::Repeated(0.5)));
        assert_eq!(lis_length(&[f64::NAN]), Err(DuplicateValue::NotANumber));
    }

    #[test]
    fn chain_partition_examples() {
        let nested = Instance::from_pairs(&[(0.0, 10.0), (1.0, 9.0), (2.0, 8.0)]).unwrap();
        assert_eq!(min_chain_partition(&nested).chains, vec![vec![0, 1, 2]]);

        let disjoint = Instance::from_pairs(&[(0.0, 1.0), (2.0, 3.0), (4.0, 5.0)]).unwrap();
        assert_eq!(min_chain_partition(&disjoint).c(), 3);

        let mixed = Instance::from_pairs(&[(0.0, 10.0), (1.0, 5.0), (2.0, 9.0)]).unwrap();
        let cs = min_chain_partition(&mixed);
        assert_eq!(cs.chains, vec![vec![0, 1], vec![2]]);
        let ends: Vec<f64> = mixed.iter().map(|i| i.end).collect();
        assert_eq!(cs.c(), lis_length(&ends).unwrap());
    }

    #[test]
    fn single_card_statistics() {
        let s = ln_statistics(1, 10, 1234);
        assert_eq!(s.mean, 1.0);
        assert_eq!(s.std, 0.0);
    }

    #[test]
    fn statistics_are_reproducible() {
        assert_eq!(ln_statistics(50, 20, 3), ln_statistics(50, 20, 3));
    }
}
