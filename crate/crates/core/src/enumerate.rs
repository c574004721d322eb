//! Enumerating and counting fixed and periodic stacks, plus period witnesses.
//!
//! Fixed stacks are the monotone labelings of the fixed poset with one label
//! per cycle; periodic stacks are the monotone labelings of the periodic
//! poset with one label per subscript. Counting goes through the level DP in
//! [`crate::ideal`] rather than enumeration, so the flagship instances stay
//! exact and fast.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::deck::Deck;
use crate::error::{Error, Result};
use crate::ideal::LeveledDag;
use crate::poset::{cycle_length_stats, FixedPoset, PeriodicPoset, ShufflingPoset};
use crate::shuffle::find_orbit;

fn fixed_dag(fp: &FixedPoset) -> LeveledDag {
    LeveledDag {
        levels: fp.levels().to_vec(),
        covers: fp.cover_edges().to_vec(),
    }
}

fn periodic_dag(pp: &PeriodicPoset) -> LeveledDag {
    LeveledDag {
        levels: pp.levels().to_vec(),
        covers: pp.cover_edges().to_vec(),
    }
}

/// Every fixed deck over a `j`-letter alphabet, in lexicographic deck order.
/// The output is materialized; call [`count_fixed`] first when the size is
/// in doubt.
pub fn enumerate_fixed(fp: &FixedPoset, j: u32) -> Vec<Deck> {
    let mut decks: Vec<Deck> = fixed_dag(fp)
        .monotone_labelings(j)
        .into_iter()
        .map(|labels| fp.expand_labeling(&labels))
        .collect();
    decks.sort();
    decks
}

/// Number of fixed decks over a `j`-letter alphabet, without enumeration.
pub fn count_fixed(fp: &FixedPoset, j: u32) -> Result<BigUint> {
    fixed_dag(fp).count_monotone(j).map(BigUint::from)
}

/// Every periodic deck over a `j`-letter alphabet, in lexicographic order.
/// Materialized like [`enumerate_fixed`]; [`count_periodic`] bounds the size.
pub fn enumerate_periodic(pp: &PeriodicPoset, j: u32) -> Vec<Deck> {
    let mut decks: Vec<Deck> = periodic_dag(pp)
        .monotone_labelings(j)
        .into_iter()
        .map(Deck::new)
        .collect();
    decks.sort();
    decks
}

/// Number of periodic decks over a `j`-letter alphabet.
pub fn count_periodic(pp: &PeriodicPoset, j: u32) -> Result<BigUint> {
    periodic_dag(pp).count_monotone(j).map(BigUint::from)
}

/// The possible shuffle periods: divisors of the lcm of the cycle lengths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodSet {
    pub lcm_cycles: u64,
    pub divisors: Vec<u64>,
}

fn divisors_of(value: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= value {
        if value.is_multiple_of(d) {
            small.push(d);
            if d != value / d {
                large.push(value / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Computes the cycle-length lcm of a shuffling poset and lists its divisors.
pub fn possible_periods(poset: &ShufflingPoset) -> Result<PeriodSet> {
    let stats = cycle_length_stats(poset)?;
    Ok(PeriodSet {
        lcm_cycles: stats.lcm,
        divisors: divisors_of(stats.lcm),
    })
}

/// Builds a two-label deck whose orbit has settle 0 and period exactly `d`.
///
/// Seeds one cycle whose length is a multiple of `d` with the pattern
/// `0^(d-1) 1` repeated around it, puts label 1 on every level below that
/// cycle and label 0 everywhere else, checks the result against the periodic
/// poset, and verifies the period by simulation.
pub fn construct_period_stack(
    poset: &ShufflingPoset,
    pp: &PeriodicPoset,
    d: u64,
) -> Result<Deck> {
    let stats = cycle_length_stats(poset)?;
    if d == 0 || stats.lcm % d != 0 {
        return Err(Error::PeriodNotRealizable { d, lcm: stats.lcm });
    }
    // shortest qualifying cycle, earliest on ties
    let seed = poset
        .cycles()
        .iter()
        .enumerate()
        .filter(|(_, members)| (members.len() as u64).is_multiple_of(d))
        .min_by_key(|(id, members)| (members.len(), *id))
        .map(|(id, _)| id)
        .ok_or(Error::NoCycleForPeriod { d })?;
    let seed_level = poset.cycle_levels()[seed];

    let params = *poset.params();
    let wf = poset.weight_function();
    let mut labels = vec![0u32; params.n_cards];
    for (a, label) in labels.iter_mut().enumerate() {
        if wf.value(a) < seed_level {
            *label = 1;
        }
    }
    for (s, &a) in poset.cycles()[seed].iter().enumerate() {
        labels[a] = if (s as u64 + 1).is_multiple_of(d) { 1 } else { 0 };
    }
    let deck = Deck::new(labels);

    for &(low, high) in pp.cover_edges() {
        if deck[low] < deck[high] {
            return Err(Error::ConstructionFailed {
                d,
                detail: format!(
                    "periodic-poset edge ({low}, {high}) violated by deck {deck}"
                ),
            });
        }
    }
    let orbit = find_orbit(&deck, &params)?;
    if orbit.settle != 0 || orbit.period as u64 != d {
        return Err(Error::ConstructionFailed {
            d,
            detail: format!(
                "deck {deck} has settle {} and period {}",
                orbit.settle, orbit.period
            ),
        });
    }
    Ok(deck)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::{
        brute_force_fixed_decks, brute_force_periodic_decks, DEFAULT_ENUMERATION_BUDGET,
    };
    use crate::params::ShuffleParams;
    use crate::poset::{build_fixed_poset, build_periodic_poset, build_shuffling_poset};
    use crate::weight::{algorithm_up, base_k_weight, symmetric_weight};
    use std::collections::BTreeSet;

    fn params(n: usize, k: usize) -> ShuffleParams {
        ShuffleParams::new(n, k).unwrap()
    }

    fn base_k_poset(n: usize, k: usize) -> ShufflingPoset {
        build_shuffling_poset(&base_k_weight(&params(n, k)).unwrap())
    }

    #[test]
    fn fixed_enumeration_matches_brute_force() {
        let poset = base_k_poset(8, 2);
        let fp = build_fixed_poset(&poset);
        let ours: BTreeSet<Deck> = enumerate_fixed(&fp, 2).into_iter().collect();
        let oracle = brute_force_fixed_decks(&params(8, 2), 2, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(ours, oracle);
    }

    #[test]
    fn periodic_enumeration_matches_brute_force() {
        let poset = base_k_poset(12, 3);
        let pp = build_periodic_poset(&poset);
        let ours: BTreeSet<Deck> = enumerate_periodic(&pp, 2).into_iter().collect();
        let oracle =
            brute_force_periodic_decks(&params(12, 3), 2, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(ours, oracle);
    }

    #[test]
    fn single_label_gives_one_deck() {
        let poset = base_k_poset(8, 2);
        let fp = build_fixed_poset(&poset);
        let decks = enumerate_fixed(&fp, 1);
        assert_eq!(decks, vec![Deck::constant(8, 0)]);
        assert_eq!(count_fixed(&fp, 1).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn chain_instance_yields_sorted_decks() {
        // N = k: fixed decks are exactly the k+1 sorted two-label decks
        let p = params(4, 4);
        let poset = build_shuffling_poset(&algorithm_up(&p));
        let fp = build_fixed_poset(&poset);
        let decks: Vec<String> = enumerate_fixed(&fp, 2)
            .iter()
            .map(Deck::to_string)
            .collect();
        assert_eq!(decks, vec!["0000", "1000", "1100", "1110", "1111"]);
    }

    #[test]
    fn count_agrees_with_enumeration() {
        for (n, k) in [(8, 2), (12, 3), (12, 2), (8, 4)] {
            let p = params(n, k);
            let poset = build_shuffling_poset(&algorithm_up(&p));
            let fp = build_fixed_poset(&poset);
            let pp = build_periodic_poset(&poset);
            for j in 1..=3u32 {
                assert_eq!(
                    count_fixed(&fp, j).unwrap(),
                    BigUint::from(enumerate_fixed(&fp, j).len()),
                    "fixed N={n} k={k} j={j}"
                );
                assert_eq!(
                    count_periodic(&pp, j).unwrap(),
                    BigUint::from(enumerate_periodic(&pp, j).len()),
                    "periodic N={n} k={k} j={j}"
                );
            }
        }
    }

    #[test]
    fn count_is_monotone_in_alphabet_size() {
        let poset = base_k_poset(12, 2);
        let fp = build_fixed_poset(&poset);
        let counts: Vec<BigUint> = (1..=5).map(|j| count_fixed(&fp, j).unwrap()).collect();
        for pair in counts.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn fixed_decks_are_periodic_decks() {
        let poset = base_k_poset(12, 3);
        let fp = build_fixed_poset(&poset);
        let pp = build_periodic_poset(&poset);
        let fixed: BTreeSet<Deck> = enumerate_fixed(&fp, 2).into_iter().collect();
        let periodic: BTreeSet<Deck> = enumerate_periodic(&pp, 2).into_iter().collect();
        assert!(fixed.is_subset(&periodic));
    }

    #[test]
    fn fixed_decks_satisfy_periodic_constraints() {
        // the periodic poset constrains no more than the fixed decks allow,
        // checked edge by edge so no large enumeration is needed
        let poset = base_k_poset(24, 2);
        let fp = build_fixed_poset(&poset);
        let pp = build_periodic_poset(&poset);
        for deck in enumerate_fixed(&fp, 2) {
            for &(low, high) in pp.cover_edges() {
                assert!(deck[low] >= deck[high], "deck {deck} edge ({low},{high})");
            }
        }
    }

    #[test]
    fn reference_counts() {
        let poset = base_k_poset(972, 2);
        let fp = build_fixed_poset(&poset);
        assert_eq!(count_fixed(&fp, 2).unwrap(), BigUint::from(128u32));
    }

    #[test]
    fn flip_symmetry_of_counts() {
        // with a symmetric weight function the fixed poset counts the same
        // upside down
        for (n, k) in [(12, 3), (24, 2), (24, 6)] {
            let poset = build_shuffling_poset(&symmetric_weight(&params(n, k)));
            let fp = build_fixed_poset(&poset);
            let dag = fixed_dag(&fp);
            let flipped = LeveledDag {
                levels: dag.levels.iter().map(|&v| -v).collect(),
                covers: dag.covers.iter().map(|&(a, b)| (b, a)).collect(),
            };
            for j in 2..=3u32 {
                assert_eq!(
                    dag.count_monotone(j).unwrap(),
                    flipped.count_monotone(j).unwrap(),
                    "N={n} k={k} j={j}"
                );
            }
        }
    }

    #[test]
    fn possible_periods_examples() {
        let poset = base_k_poset(12, 3);
        let ps = possible_periods(&poset).unwrap();
        assert_eq!(ps.lcm_cycles, 2);
        assert_eq!(ps.divisors, vec![1, 2]);

        let poset = base_k_poset(24, 2);
        let ps = possible_periods(&poset).unwrap();
        assert_eq!(ps.lcm_cycles, 6);
        assert_eq!(ps.divisors, vec![1, 2, 3, 6]);

        let poset = build_shuffling_poset(&algorithm_up(&params(3, 3)));
        let ps = possible_periods(&poset).unwrap();
        assert_eq!(ps.divisors, vec![1]);
    }

    #[test]
    fn period_witness_construction() {
        let poset = base_k_poset(12, 3);
        let pp = build_periodic_poset(&poset);
        for d in [1u64, 2] {
            let deck = construct_period_stack(&poset, &pp, d).unwrap();
            let orbit = find_orbit(&deck, poset.params()).unwrap();
            assert_eq!((orbit.settle, orbit.period as u64), (0, d));
        }
        assert!(matches!(
            construct_period_stack(&poset, &pp, 5),
            Err(Error::PeriodNotRealizable { .. })
        ));

        let poset = base_k_poset(24, 2);
        let pp = build_periodic_poset(&poset);
        for d in [1u64, 2, 3, 6] {
            let deck = construct_period_stack(&poset, &pp, d).unwrap();
            let orbit = find_orbit(&deck, poset.params()).unwrap();
            assert_eq!((orbit.settle, orbit.period as u64), (0, d), "d={d}");
        }
    }

    #[test]
    fn periodic_deck_periods_divide_cycle_lcm() {
        for (n, k) in [(12, 3), (8, 2), (12, 2)] {
            let poset = base_k_poset(n, k);
            let pp = build_periodic_poset(&poset);
            let lcm = possible_periods(&poset).unwrap().lcm_cycles;
            for deck in enumerate_periodic(&pp, 2) {
                let orbit = find_orbit(&deck, poset.params()).unwrap();
                assert_eq!(orbit.settle, 0, "deck {deck}");
                assert_eq!(lcm % orbit.period as u64, 0, "deck {deck}");
            }
        }
    }

    #[test]
    fn divisor_listing() {
        assert_eq!(divisors_of(1), vec![1]);
        assert_eq!(divisors_of(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors_of(49), vec![1, 7, 49]);
    }
}
