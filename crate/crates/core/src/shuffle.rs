//! The shuffle step and orbit detection.
//!
//! One shuffle fills a `k x n` matrix row-major from the deck, sorts every
//! column so larger labels move toward row 0, and reads the columns back out
//! left to right, top to bottom. Column `l` of the matrix holds the cards at
//! subscripts `{l, l+n, ..., l+(k-1)n}` and lands in the block
//! `{kl, ..., kl+k-1}` of the shuffled deck.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::deck::Deck;
use crate::error::Result;
use crate::params::ShuffleParams;

/// Applies one shuffle. Ties between equal labels do not affect the output
/// deck; the sort is stable in the original row order so that card-identity
/// traces stay deterministic.
pub fn shuffle_once(deck: &Deck, params: &ShuffleParams) -> Result<Deck> {
    deck.check_len(params)?;
    let k = params.k;
    let n = params.stack_size;
    let mut out = vec![0u32; params.n_cards];
    let mut column: Vec<u32> = Vec::with_capacity(k);
    for l in 0..n {
        column.clear();
        column.extend(params.column_members(l).map(|a| deck[a]));
        // descending, stable by row index
        column.sort_by(|a, b| b.cmp(a));
        for (i, &v) in column.iter().enumerate() {
            out[k * l + i] = v;
        }
    }
    Ok(Deck::new(out))
}

/// The eventual cycle of a deck under repeated shuffling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// Shuffles taken before the deck first enters the cycle.
    pub settle: usize,
    /// Length of the cycle.
    pub period: usize,
    /// The cycle in shuffle order; `cycle_decks[0]` is the deck reached
    /// after `settle` shuffles.
    pub cycle_decks: Vec<Deck>,
}

/// Iterates the shuffle until a deck repeats, returning the minimal settle
/// count and cycle. Termination is guaranteed: the state space is finite and
/// shuffling is deterministic.
pub fn find_orbit(deck: &Deck, params: &ShuffleParams) -> Result<Orbit> {
    deck.check_len(params)?;
    let mut seen: HashMap<Deck, usize> = HashMap::new();
    let mut trace: Vec<Deck> = Vec::new();
    let mut current = deck.clone();
    loop {
        if let Some(&settle) = seen.get(&current) {
            let period = trace.len() - settle;
            return Ok(Orbit {
                settle,
                period,
                cycle_decks: trace[settle..].to_vec(),
            });
        }
        seen.insert(current.clone(), trace.len());
        trace.push(current.clone());
        current = shuffle_once(&current, params)?;
    }
}
