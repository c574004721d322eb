//! Exhaustive-search oracles over the full `j^N` deck space.
//!
//! These ground-truth the poset constructions at small scale. All of them
//! enumerate every deck over a `j`-letter alphabet, so they are guarded by an
//! explicit state budget ([`DEFAULT_ENUMERATION_BUDGET`] unless overridden).

use std::collections::BTreeSet;

use crate::deck::Deck;
use crate::error::{Error, Result};
use crate::params::ShuffleParams;
use crate::shuffle::shuffle_once;

/// Default cap on `j^N` for the brute-force oracles.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 24;

fn checked_state_count(params: &ShuffleParams, j: u32, budget: u64) -> Result<usize> {
    assert!(j >= 1, "alphabet size must be at least 1");
    let mut states: u128 = 1;
    for _ in 0..params.n_cards {
        states = states.saturating_mul(j as u128);
        if states > budget as u128 {
            return Err(Error::BudgetExceeded { states, budget });
        }
    }
    // the table below indexes states with u32
    if states > u32::MAX as u128 {
        return Err(Error::BudgetExceeded { states, budget });
    }
    Ok(states as usize)
}

/// Bijection between decks over `{0..j-1}` and indices `0..j^N`. Position 0
/// is the most significant digit, so index order is lexicographic deck order.
struct DeckIndexer {
    n_cards: usize,
    j: u32,
}

impl DeckIndexer {
    fn decode_into(&self, mut index: usize, labels: &mut [u32]) {
        for slot in labels.iter_mut().rev() {
            *slot = (index % self.j as usize) as u32;
            index /= self.j as usize;
        }
        debug_assert_eq!(index, 0);
    }

    fn decode(&self, index: usize) -> Deck {
        let mut labels = vec![0u32; self.n_cards];
        self.decode_into(index, &mut labels);
        Deck::new(labels)
    }

    fn encode(&self, labels: &[u32]) -> usize {
        labels
            .iter()
            .fold(0usize, |acc, &v| acc * self.j as usize + v as usize)
    }
}

/// The shuffle viewed as a functional graph on all `j^N` decks, with its
/// cyclic core (the periodic decks) marked.
struct StateSpace {
    indexer: DeckIndexer,
    succ: Vec<u32>,
    on_core: Vec<bool>,
}

impl StateSpace {
    fn build(params: &ShuffleParams, j: u32, budget: u64) -> Result<Self> {
        let states = checked_state_count(params, j, budget)?;
        let indexer = DeckIndexer {
            n_cards: params.n_cards,
            j,
        };
        let mut succ = vec![0u32; states];
        let mut labels = vec![0u32; params.n_cards];
        for (s, slot) in succ.iter_mut().enumerate() {
            indexer.decode_into(s, &mut labels);
            let image = shuffle_once(&Deck::new(labels.clone()), params)?;
            *slot = indexer.encode(image.labels()) as u32;
        }

        // peel non-periodic decks off with Kahn's algorithm; what survives
        // is the cyclic core
        let mut indegree = vec![0u32; states];
        for &to in &succ {
            indegree[to as usize] += 1;
        }
        let mut queue: Vec<u32> = (0..states as u32)
            .filter(|&s| indegree[s as usize] == 0)
            .collect();
        let mut on_core = vec![true; states];
        while let Some(s) = queue.pop() {
            on_core[s as usize] = false;
            let to = succ[s as usize] as usize;
            indegree[to] -= 1;
            if indegree[to] == 0 {
                queue.push(to as u32);
            }
        }
        Ok(StateSpace {
            indexer,
            succ,
            on_core,
        })
    }

    /// Shuffles until first entering the core, memoized across states.
    fn settle_counts(&self) -> Vec<u32> {
        let states = self.succ.len();
        const UNKNOWN: u32 = u32::MAX;
        let mut settle = vec![UNKNOWN; states];
        for (s, &core) in self.on_core.iter().enumerate() {
            if core {
                settle[s] = 0;
            }
        }
        let mut path: Vec<usize> = Vec::new();
        for s in 0..states {
            if settle[s] != UNKNOWN {
                continue;
            }
            let mut v = s;
            while settle[v] == UNKNOWN {
                path.push(v);
                v = self.succ[v] as usize;
            }
            let mut d = settle[v];
            while let Some(u) = path.pop() {
                d += 1;
                settle[u] = d;
            }
        }
        settle
    }

    /// Lengths of the cycles making up the core, i.e. every deck period that
    /// occurs in the state space.
    fn cycle_lengths(&self) -> BTreeSet<u64> {
        let mut lengths = BTreeSet::new();
        let mut visited = vec![false; self.succ.len()];
        for s in 0..self.succ.len() {
            if !self.on_core[s] || visited[s] {
                continue;
            }
            let mut len = 0u64;
            let mut v = s;
            loop {
                visited[v] = true;
                len += 1;
                v = self.succ[v] as usize;
                if v == s {
                    break;
                }
            }
            lengths.insert(len);
        }
        lengths
    }
}

/// Every deck fixed by one shuffle, by exhaustive scan.
pub fn brute_force_fixed_decks(
    params: &ShuffleParams,
    j: u32,
    budget: u64,
) -> Result<BTreeSet<Deck>> {
    let states = checked_state_count(params, j, budget)?;
    let indexer = DeckIndexer {
        n_cards: params.n_cards,
        j,
    };
    let mut out = BTreeSet::new();
    let mut labels = vec![0u32; params.n_cards];
    for s in 0..states {
        indexer.decode_into(s, &mut labels);
        let deck = Deck::new(labels.clone());
        if shuffle_once(&deck, params)? == deck {
            out.insert(deck);
        }
    }
    Ok(out)
}

/// Every deck with settle 0, i.e. the cyclic core of the shuffle graph.
pub fn brute_force_periodic_decks(
    params: &ShuffleParams,
    j: u32,
    budget: u64,
) -> Result<BTreeSet<Deck>> {
    let space = StateSpace::build(params, j, budget)?;
    Ok(space
        .on_core
        .iter()
        .enumerate()
        .filter(|&(_, &core)| core)
        .map(|(s, _)| space.indexer.decode(s))
        .collect())
}

/// Every period realized by some deck over a `j`-letter alphabet.
pub fn brute_force_periods(params: &ShuffleParams, j: u32, budget: u64) -> Result<BTreeSet<u64>> {
    let space = StateSpace::build(params, j, budget)?;
    Ok(space.cycle_lengths())
}

/// The maximum settle count over all decks, with the lexicographically
/// smallest witness attaining it.
pub fn max_settle(params: &ShuffleParams, j: u32, budget: u64) -> Result<(usize, Deck)> {
    let space = StateSpace::build(params, j, budget)?;
    let settle = space.settle_counts();
    let mut best = 0u32;
    let mut witness = 0usize;
    for (s, &d) in settle.iter().enumerate() {
        if d > best {
            best = d;
            witness = s;
        }
    }
    Ok((best as usize, space.indexer.decode(witness)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffle::find_orbit;

    fn params(n: usize, k: usize) -> ShuffleParams {
        ShuffleParams::new(n, k).unwrap()
    }

    const BUDGET: u64 = DEFAULT_ENUMERATION_BUDGET;

    #[test]
    fn single_label_alphabet() {
        let p = params(8, 2);
        let fixed = brute_force_fixed_decks(&p, 1, BUDGET).unwrap();
        assert_eq!(fixed.len(), 1);
        assert!(fixed.contains(&Deck::constant(8, 0)));
        let (max, witness) = max_settle(&p, 1, BUDGET).unwrap();
        assert_eq!(max, 0);
        assert_eq!(witness, Deck::constant(8, 0));
    }

    #[test]
    fn fixed_decks_are_shuffle_invariant() {
        let p = params(12, 3);
        let fixed = brute_force_fixed_decks(&p, 2, BUDGET).unwrap();
        assert!(!fixed.is_empty());
        for d in &fixed {
            assert_eq!(&shuffle_once(d, &p).unwrap(), d);
        }
        // the period-2 deck from the worked example is not fixed
        let periodic: Deck = "200210111210".parse().unwrap();
        assert!(!fixed.contains(&periodic));
    }

    #[test]
    fn periodic_core_matches_orbit_detection() {
        let p = params(12, 3);
        let periodic = brute_force_periodic_decks(&p, 2, BUDGET).unwrap();
        for d in &periodic {
            assert_eq!(find_orbit(d, &p).unwrap().settle, 0, "deck {d}");
        }
        // constant decks are always in the core
        assert!(periodic.contains(&Deck::constant(12, 0)));
        assert!(periodic.contains(&Deck::constant(12, 1)));
    }

    #[test]
    fn twelve_card_periods_are_one_or_two() {
        let p = params(12, 3);
        let periods = brute_force_periods(&p, 2, BUDGET).unwrap();
        assert_eq!(periods.into_iter().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn settle_counts_agree_with_orbit_detection() {
        let p = params(6, 2);
        let space = StateSpace::build(&p, 3, BUDGET).unwrap();
        let settle = space.settle_counts();
        for (s, &d) in settle.iter().enumerate() {
            let deck = space.indexer.decode(s);
            let orbit = find_orbit(&deck, &p).unwrap();
            assert_eq!(d as usize, orbit.settle, "deck {deck}");
        }
    }

    #[test]
    fn budget_guard_trips() {
        let p = params(32, 2);
        assert!(matches!(
            brute_force_fixed_decks(&p, 3, BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn indexer_is_lexicographic() {
        let ix = DeckIndexer { n_cards: 3, j: 3 };
        let mut previous: Option<Deck> = None;
        for s in 0..27 {
            let d = ix.decode(s);
            assert_eq!(ix.encode(d.labels()), s);
            if let Some(prev) = previous {
                assert!(prev < d);
            }
            previous = Some(d);
        }
    }
}
