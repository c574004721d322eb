//! Shuffling weight functions: validation, the cycle-extraction generator in
//! both directions, the digit-sum closed forms, and symmetry checks.
//!
//! A weight function assigns an integer to every subscript so that (i) each
//! column carries the same weight multiset as the block it shuffles into and
//! (ii) weights strictly increase inside a block. Weights are only meaningful
//! relative to each other, so every constructor normalizes its output to have
//! minimum weight 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, WeightCondition};
use crate::params::ShuffleParams;

/// A validated shuffling weight function on subscripts `0..N-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    values: Vec<i64>,
    params: ShuffleParams,
}

impl WeightFunction {
    /// Checks both weight-function conditions, reporting the first failure in
    /// (condition, column) lexicographic order.
    pub fn validate(values: Vec<i64>, params: ShuffleParams) -> Result<Self> {
        if values.len() != params.n_cards {
            return Err(Error::WeightLengthMismatch {
                expected: params.n_cards,
                actual: values.len(),
            });
        }
        for l in 0..params.stack_size {
            let mut column: Vec<i64> = params.column_members(l).map(|a| values[a]).collect();
            let mut block: Vec<i64> = params.block_members(l).map(|a| values[a]).collect();
            column.sort_unstable();
            block.sort_unstable();
            if column != block {
                return Err(Error::InvalidWeight {
                    condition: WeightCondition::ColumnBlockMultiset,
                    column: l,
                });
            }
        }
        for l in 0..params.stack_size {
            let strictly_increasing = params
                .block_members(l)
                .map(|a| values[a])
                .collect::<Vec<_>>()
                .windows(2)
                .all(|w| w[0] < w[1]);
            if !strictly_increasing {
                return Err(Error::InvalidWeight {
                    condition: WeightCondition::BlockIncreasing,
                    column: l,
                });
            }
        }
        Ok(WeightFunction { values, params })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    #[inline]
    pub fn value(&self, subscript: usize) -> i64 {
        self.values[subscript]
    }

    pub fn params(&self) -> &ShuffleParams {
        &self.params
    }

    /// True iff `phi(i) + phi(N-1-i)` does not depend on `i`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.values.len();
        let total = self.values[0] + self.values[n - 1];
        (0..n).all(|i| self.values[i] + self.values[n - 1 - i] == total)
    }

    /// Two-row text table matching the usual presentation: subscripts on the
    /// first row, weights on the second.
    pub fn table(&self) -> String {
        let cells: Vec<(String, String)> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| (i.to_string(), v.to_string()))
            .collect();
        let width = cells
            .iter()
            .map(|(i, v)| i.len().max(v.len()))
            .max()
            .unwrap_or(1);
        let head = "n     ";
        let mut top = String::from(head);
        let mut bottom = String::from("phi(n)");
        for (i, v) in &cells {
            top.push_str(&format!(" {i:>width$}"));
            bottom.push_str(&format!(" {v:>width$}"));
        }
        format!("{top}\n{bottom}\n")
    }
}

fn normalized(mut values: Vec<i64>) -> Vec<i64> {
    let min = values.iter().copied().min().unwrap_or(0);
    for v in &mut values {
        *v -= min;
    }
    values
}

/// Which end of each array column the generator consumes first.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    /// Lowest cells first, weight counting up.
    Up,
    /// Highest cells first, weight counting down.
    Down,
}

/// Cycle-extraction weight generator.
///
/// Builds the `k x n` array whose cell `(i, j)` is `a:b` with `a = i + kj`
/// and `b = a mod n`, then repeatedly: draw the digraph on `{0..n-1}` sending
/// each array column to the `b` entry of its first unconsumed cell, pull out
/// every directed cycle, give the `a` of each cycle-generating cell the
/// current weight, and step the weight.
fn run_generator(params: &ShuffleParams, direction: Direction) -> Vec<i64> {
    let k = params.k;
    let n = params.stack_size;
    // next[j]: row of the first unconsumed cell of array column j
    let mut next: Vec<i32> = match direction {
        Direction::Up => vec![0; n],
        Direction::Down => vec![k as i32 - 1; n],
    };
    let in_range = |row: i32| row >= 0 && row < k as i32;
    let mut values = vec![0i64; params.n_cards];
    let mut weight: i64 = 0;
    let mut remaining = params.n_cards;
    while remaining > 0 {
        let out: Vec<Option<usize>> = (0..n)
            .map(|j| {
                in_range(next[j]).then(|| {
                    let a = next[j] as usize + k * j;
                    a % n
                })
            })
            .collect();
        let on_cycle = functional_cycles(&out);
        assert!(
            !on_cycle.is_empty(),
            "weight generator stalled with {remaining} cells left"
        );
        for &j in &on_cycle {
            let a = next[j] as usize + k * j;
            values[a] = weight;
            match direction {
                Direction::Up => next[j] += 1,
                Direction::Down => next[j] -= 1,
            }
            remaining -= 1;
        }
        weight += match direction {
            Direction::Up => 1,
            Direction::Down => -1,
        };
    }
    normalized(values)
}

/// Vertices lying on a directed cycle of the partial functional graph `out`,
/// in ascending discovery order.
fn functional_cycles(out: &[Option<usize>]) -> Vec<usize> {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; out.len()];
    let mut cyclic = Vec::new();
    for start in 0..out.len() {
        if color[start] != WHITE {
            continue;
        }
        let mut path = Vec::new();
        let mut v = start;
        let entry = loop {
            match color[v] {
                BLACK => break None,
                GRAY => break Some(v),
                _ => match out[v] {
                    None => {
                        color[v] = BLACK;
                        break None;
                    }
                    Some(w) => {
                        color[v] = GRAY;
                        path.push(v);
                        v = w;
                    }
                },
            }
        };
        if let Some(entry) = entry {
            let pos = path.iter().position(|&x| x == entry).expect("on path");
            cyclic.extend_from_slice(&path[pos..]);
        }
        for &u in &path {
            color[u] = BLACK;
        }
    }
    cyclic
}

/// Weight function from the generator running bottom-up.
pub fn algorithm_up(params: &ShuffleParams) -> WeightFunction {
    let values = run_generator(params, Direction::Up);
    WeightFunction::validate(values, *params).expect("generator output must validate")
}

/// Weight function from the mirrored generator running top-down. Equals the
/// bottom-up run of the array rotated 180 degrees under `i -> N-1-i`, up to
/// the min-zero shift.
pub fn algorithm_down(params: &ShuffleParams) -> WeightFunction {
    let values = run_generator(params, Direction::Down);
    WeightFunction::validate(values, *params).expect("generator output must validate")
}

/// Digit-sum weight function `phi(A) = A_0 + ... + A_{t-1}` over the base-k
/// expansion of `A`. Requires `gcd(q, k) = 1`.
pub fn base_k_weight(params: &ShuffleParams) -> Result<WeightFunction> {
    let g = num_integer::gcd(params.q, params.k);
    if g != 1 {
        return Err(Error::QkNotCoprime {
            q: params.q,
            k: params.k,
            gcd: g,
        });
    }
    let values = (0..params.n_cards)
        .map(|a| (0..params.t).map(|i| params.digit(a, i) as i64).sum())
        .collect();
    WeightFunction::validate(values, *params)
}

/// Digit-sum weight function with the extra term `A_t mod gcd(k, q)`, valid
/// whenever `gcd(q / gcd(q,k), gcd(q,k)) = 1`. Coincides with
/// [`base_k_weight`] when `gcd(q, k) = 1`.
pub fn generalized_weight(params: &ShuffleParams) -> Result<WeightFunction> {
    let g = num_integer::gcd(params.q, params.k);
    if num_integer::gcd(params.q / g, g) != 1 {
        return Err(Error::GeneralizedPrecondition {
            q: params.q,
            k: params.k,
        });
    }
    let values = (0..params.n_cards)
        .map(|a| {
            let low: i64 = (0..params.t).map(|i| params.digit(a, i) as i64).sum();
            low + (params.digit(a, params.t) % g) as i64
        })
        .collect();
    WeightFunction::validate(values, *params)
}

/// Pointwise sum of the up and down generator outputs; symmetric for every
/// instance because the two runs mirror each other.
pub fn symmetric_weight(params: &ShuffleParams) -> WeightFunction {
    let up = algorithm_up(params);
    let down = algorithm_down(params);
    let values = normalized(
        up.values()
            .iter()
            .zip(down.values())
            .map(|(a, b)| a + b)
            .collect(),
    );
    WeightFunction::validate(values, *params).expect("sum of weight functions must validate")
}

/// One (N, k) instance whose generated weight function is not symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureCounterexample {
    pub n_cards: usize,
    pub k: usize,
    pub values: Vec<i64>,
}

/// Outcome of scanning the generator for symmetry over a range of instances.
/// The scan only records what it saw; whether the generator is symmetric
/// everywhere is an open question, and the first asymmetric instance it
/// finds is (N, k) = (192, 6).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureScan {
    pub max_n: usize,
    pub instances_checked: usize,
    pub counterexamples: Vec<ConjectureCounterexample>,
}

/// Runs [`algorithm_up`] for every `k | N` with `2 <= k <= N <= max_n` and
/// reports any instance whose output fails [`WeightFunction::is_symmetric`],
/// counterexample values included verbatim.
pub fn conjecture_scan(max_n: usize) -> ConjectureScan {
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for n in 2..=max_n {
        for k in 2..=n {
            if n % k != 0 {
                continue;
            }
            let params = ShuffleParams::new(n, k).expect("k divides n");
            let wf = algorithm_up(&params);
            checked += 1;
            if !wf.is_symmetric() {
                counterexamples.push(ConjectureCounterexample {
                    n_cards: n,
                    k,
                    values: wf.values().to_vec(),
                });
            }
        }
    }
    ConjectureScan {
        max_n,
        instances_checked: checked,
        counterexamples,
    }
}
