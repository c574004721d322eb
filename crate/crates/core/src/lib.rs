//! Shuffling decks of ordered cards.
//!
//! Split `N = k^t q` cards into `k` stacks, repeatedly take the top card of
//! each stack, sort those `k` cards by label, and append them to the new
//! stack. This crate implements that shuffle together with the structures
//! that explain it: shuffling weight functions on subscripts, the shuffling
//! poset built from a weight function, the fixed and periodic posets whose
//! monotone labelings are exactly the fixed and periodic decks, cycle-length
//! analysis through multiplicative orders, and exhaustive brute-force oracles
//! that cross-check all of it at small scale.

#![forbid(unsafe_code)]

pub mod brute;
pub mod deck;
pub mod dot;
pub mod enumerate;
pub mod error;
mod ideal;
pub mod params;
pub mod poset;
pub mod shuffle;
pub mod weight;

pub use brute::{
    brute_force_fixed_decks, brute_force_periodic_decks, brute_force_periods, max_settle,
    DEFAULT_ENUMERATION_BUDGET,
};
pub use deck::Deck;
pub use enumerate::{
    construct_period_stack, count_fixed, count_periodic, enumerate_fixed, enumerate_periodic,
    possible_periods, PeriodSet,
};
pub use error::{Error, Result, WeightCondition};
pub use params::ShuffleParams;
pub use poset::{
    build_fixed_poset, build_periodic_poset, build_shuffling_poset, complement_symmetry_check,
    cycle_length_stats, mapping_rule_gcd1, mult_order, verify_cycle_theorem, CycleStats,
    FixedPoset, PeriodicPoset, ShufflingPoset, TheoremReport,
};
pub use shuffle::{find_orbit, shuffle_once, Orbit};
pub use weight::{
    algorithm_down, algorithm_up, base_k_weight, conjecture_scan, generalized_weight,
    symmetric_weight, ConjectureCounterexample, ConjectureScan, WeightFunction,
};
