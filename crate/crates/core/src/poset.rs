//! The shuffling poset and its two derived posets.
//!
//! A weight function matches each column onto its block weight-for-weight,
//! which glues all columns into one bijection on subscripts (the successor).
//! Successor orbits are the cycles; levels come from the common weight of a
//! cycle; same-column pairs give the inter-level edges. The fixed poset
//! quotients the cycles, the periodic poset keeps individual subscripts, and
//! monotone labelings of those two produce exactly the fixed and periodic
//! decks; brute force over small instances is the ground truth for both.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::deck::Deck;
use crate::error::{Error, Result};
use crate::params::ShuffleParams;
use crate::weight::WeightFunction;

/// Subscripts partitioned into weight-preserving cycles, leveled by weight.
#[derive(Debug, Clone)]
pub struct ShufflingPoset {
    params: ShuffleParams,
    wf: WeightFunction,
    successor: Vec<usize>,
    predecessor: Vec<usize>,
    /// Cycle members in successor order, each starting at its smallest
    /// subscript; cycles ordered by that smallest subscript.
    cycles: Vec<Vec<usize>>,
    cycle_levels: Vec<i64>,
    cycle_of: Vec<usize>,
}

/// Matches every column onto its block by equal weight and decomposes the
/// resulting bijection into cycles.
pub fn build_shuffling_poset(wf: &WeightFunction) -> ShufflingPoset {
    let params = *wf.params();
    let n_cards = params.n_cards;
    let mut successor = vec![usize::MAX; n_cards];
    for l in 0..params.stack_size {
        let mut column: Vec<usize> = params.column_members(l).collect();
        let mut block: Vec<usize> = params.block_members(l).collect();
        column.sort_by_key(|&a| wf.value(a));
        block.sort_by_key(|&a| wf.value(a));
        for (&from, &to) in column.iter().zip(&block) {
            debug_assert_eq!(wf.value(from), wf.value(to));
            successor[from] = to;
        }
    }
    let mut predecessor = vec![usize::MAX; n_cards];
    for (a, &b) in successor.iter().enumerate() {
        debug_assert_eq!(predecessor[b], usize::MAX, "successor not injective");
        predecessor[b] = a;
    }

    let mut cycles = Vec::new();
    let mut cycle_levels = Vec::new();
    let mut cycle_of = vec![usize::MAX; n_cards];
    for start in 0..n_cards {
        if cycle_of[start] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut members = Vec::new();
        let mut a = start;
        loop {
            cycle_of[a] = id;
            members.push(a);
            a = successor[a];
            if a == start {
                break;
            }
        }
        cycle_levels.push(wf.value(start));
        cycles.push(members);
    }
    ShufflingPoset {
        params,
        wf: wf.clone(),
        successor,
        predecessor,
        cycles,
        cycle_levels,
        cycle_of,
    }
}

impl ShufflingPoset {
    pub fn params(&self) -> &ShuffleParams {
        &self.params
    }

    pub fn weight_function(&self) -> &WeightFunction {
        &self.wf
    }

    #[inline]
    pub fn successor(&self, a: usize) -> usize {
        self.successor[a]
    }

    #[inline]
    pub fn predecessor(&self, a: usize) -> usize {
        self.predecessor[a]
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle_levels(&self) -> &[i64] {
        &self.cycle_levels
    }

    #[inline]
    pub fn cycle_of(&self, a: usize) -> usize {
        self.cycle_of[a]
    }

    /// All unordered same-column subscript pairs, the inter-level edges of
    /// the drawn poset.
    pub fn column_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for l in 0..self.params.stack_size {
            let members: Vec<usize> = self.params.column_members(l).collect();
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    edges.push((members[i], members[j]));
                }
            }
        }
        edges
    }

    /// Shuffles a deck inside the poset: settle each column's labels along
    /// its levels (heavier labels toward lower weight), then advance every
    /// card one step along its cycle. Agrees with the matrix shuffle.
    pub fn shuffle_deck(&self, deck: &Deck) -> Result<Deck> {
        deck.check_len(&self.params)?;
        let n_cards = self.params.n_cards;
        let mut settled = vec![0u32; n_cards];
        for l in 0..self.params.stack_size {
            let mut members: Vec<usize> = self.params.column_members(l).collect();
            members.sort_by_key(|&a| self.wf.value(a));
            let mut labels: Vec<u32> = members.iter().map(|&a| deck[a]).collect();
            labels.sort_by(|a, b| b.cmp(a));
            for (&a, &v) in members.iter().zip(&labels) {
                settled[a] = v;
            }
        }
        let mut out = vec![0u32; n_cards];
        for (a, &v) in settled.iter().enumerate() {
            out[self.successor[a]] = v;
        }
        Ok(Deck::new(out))
    }
}

/// Smallest `M >= 1` with `k^M = 1 (mod s)`. Defined for `gcd(k, s) = 1`;
/// `s = 1` gives 1.
pub fn mult_order(k: u64, s: u64) -> Result<u64> {
    if s == 0 || num_integer::gcd(k, s) != 1 {
        return Err(Error::OrderUndefined { k, s });
    }
    if s == 1 {
        return Ok(1);
    }
    let mut cur = k % s;
    let mut order = 1u64;
    while cur != 1 {
        cur = ((cur as u128 * (k % s) as u128) % s as u128) as u64;
        order += 1;
        debug_assert!(order <= s, "order search runaway");
    }
    Ok(order)
}

/// The closed-form successor `A -> kA + A_{t-1} (mod N)` available when
/// `gcd(q, k) = 1`; agrees with the poset successor under the base-k weight.
pub fn mapping_rule_gcd1(a: usize, params: &ShuffleParams) -> Result<usize> {
    let g = num_integer::gcd(params.q, params.k);
    if g != 1 {
        return Err(Error::QkNotCoprime {
            q: params.q,
            k: params.k,
            gcd: g,
        });
    }
    debug_assert!(a < params.n_cards);
    Ok((params.k * a + params.digit(a, params.t - 1)) % params.n_cards)
}

/// Histogram and aggregates of the cycle lengths of a shuffling poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleStats {
    /// cycle length -> number of cycles of that length
    pub histogram: std::collections::BTreeMap<u64, usize>,
    pub lcm: u64,
    pub max_length: u64,
    /// The open question probe: does the lcm equal the longest cycle?
    pub lcm_equals_max: bool,
}

pub fn cycle_length_stats(poset: &ShufflingPoset) -> Result<CycleStats> {
    let mut histogram = std::collections::BTreeMap::new();
    let mut lcm: u128 = 1;
    let mut max_length = 0u64;
    for cycle in poset.cycles() {
        let len = cycle.len() as u64;
        *histogram.entry(len).or_insert(0) += 1;
        max_length = max_length.max(len);
        lcm = num_integer::lcm(lcm, len as u128);
        if lcm > u64::MAX as u128 {
            return Err(Error::CountOverflow);
        }
    }
    let lcm = lcm as u64;
    Ok(CycleStats {
        histogram,
        lcm,
        max_length,
        lcm_equals_max: lcm == max_length,
    })
}

/// Cycle-length checks for the coprime case, under the base-k weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub params: ShuffleParams,
    /// `ord_k(N - q)`
    pub order: u64,
    pub stats: CycleStats,
    pub all_lengths_divide_order: bool,
    pub order_is_attained: bool,
    pub t_divides_order: bool,
    pub pass: bool,
}

/// Builds the base-k poset and checks that every cycle length divides
/// `ord_k(N-q)`, that some cycle attains it, and that `t` divides it.
pub fn verify_cycle_theorem(params: &ShuffleParams) -> Result<TheoremReport> {
    let wf = crate::weight::base_k_weight(params)?;
    let poset = build_shuffling_poset(&wf);
    let stats = cycle_length_stats(&poset)?;
    let order = mult_order(params.k as u64, (params.n_cards - params.q) as u64)?;
    let all_lengths_divide_order = stats.histogram.keys().all(|&len| order % len == 0);
    let order_is_attained = stats.max_length == order;
    let t_divides_order = order % params.t as u64 == 0;
    let pass = all_lengths_divide_order && order_is_attained && t_divides_order;
    Ok(TheoremReport {
        params: *params,
        order,
        stats,
        all_lengths_divide_order,
        order_is_attained,
        t_divides_order,
        pass,
    })
}

/// True iff the successor commutes with the flip `i -> N-1-i`.
pub fn complement_symmetry_check(poset: &ShufflingPoset) -> bool {
    let n = poset.params.n_cards;
    (0..n).all(|i| poset.successor(n - 1 - i) == n - 1 - poset.successor(i))
}

/// Cycles of the shuffling poset with weight-adjacent same-column cover
/// edges; monotone labelings are the fixed decks.
#[derive(Debug, Clone)]
pub struct FixedPoset {
    params: ShuffleParams,
    /// member subscripts per node (one node per shuffling-poset cycle)
    cycles: Vec<Vec<usize>>,
    levels: Vec<i64>,
    /// (lower node, upper node) by level, deduplicated and sorted
    cover_edges: Vec<(usize, usize)>,
}

/// Quotients the shuffling poset by its cycles. For every column, each pair
/// of weight-adjacent members contributes a cover edge between the cycles
/// containing them.
pub fn build_fixed_poset(poset: &ShufflingPoset) -> FixedPoset {
    let params = *poset.params();
    let mut edges = BTreeSet::new();
    for l in 0..params.stack_size {
        let mut members: Vec<usize> = params.column_members(l).collect();
        members.sort_by_key(|&a| poset.weight_function().value(a));
        for pair in members.windows(2) {
            let low = poset.cycle_of(pair[0]);
            let high = poset.cycle_of(pair[1]);
            if low != high {
                edges.insert((low, high));
            }
        }
    }
    FixedPoset {
        params,
        cycles: poset.cycles().to_vec(),
        levels: poset.cycle_levels().to_vec(),
        cover_edges: edges.into_iter().collect(),
    }
}

impl FixedPoset {
    pub fn params(&self) -> &ShuffleParams {
        &self.params
    }

    pub fn node_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycle_members(&self, node: usize) -> &[usize] {
        &self.cycles[node]
    }

    pub fn levels(&self) -> &[i64] {
        &self.levels
    }

    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.cover_edges
    }

    /// Writes one label per node out to the node's member subscripts.
    pub fn expand_labeling(&self, labels: &[u32]) -> Deck {
        debug_assert_eq!(labels.len(), self.node_count());
        let mut out = vec![0u32; self.params.n_cards];
        for (node, members) in self.cycles.iter().enumerate() {
            for &a in members {
                out[a] = labels[node];
            }
        }
        Deck::new(out)
    }
}

/// Subscripts at their weight levels, with an edge wherever two cards can
/// ever meet weight-adjacent in a column as their cycles rotate; monotone
/// labelings are the periodic decks.
#[derive(Debug, Clone)]
pub struct PeriodicPoset {
    params: ShuffleParams,
    levels: Vec<i64>,
    /// (lower subscript, upper subscript) by level
    cover_edges: Vec<(usize, usize)>,
}

/// For each weight-adjacent column pair (x, y) and every phase `s` up to the
/// lcm of the two cycle lengths, connect the subscripts that reach (x, y)
/// after `s` shuffles, i.e. (pred^s(x), pred^s(y)).
pub fn build_periodic_poset(poset: &ShufflingPoset) -> PeriodicPoset {
    let params = *poset.params();
    let wf = poset.weight_function();
    let mut edges = BTreeSet::new();
    for l in 0..params.stack_size {
        let mut members: Vec<usize> = params.column_members(l).collect();
        members.sort_by_key(|&a| wf.value(a));
        for pair in members.windows(2) {
            let (x, y) = (pair[0], pair[1]);
            let len_x = poset.cycles()[poset.cycle_of(x)].len();
            let len_y = poset.cycles()[poset.cycle_of(y)].len();
            let bound = num_integer::lcm(len_x, len_y);
            let (mut a, mut b) = (x, y);
            for _ in 0..bound {
                edges.insert((a, b));
                a = poset.predecessor(a);
                b = poset.predecessor(b);
            }
        }
    }
    PeriodicPoset {
        params,
        levels: (0..params.n_cards).map(|a| wf.value(a)).collect(),
        cover_edges: edges.into_iter().collect(),
    }
}

impl PeriodicPoset {
    pub fn params(&self) -> &ShuffleParams {
        &self.params
    }

    pub fn node_count(&self) -> usize {
        self.params.n_cards
    }

    pub fn levels(&self) -> &[i64] {
        &self.levels
    }

    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.cover_edges
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffle::shuffle_once;
    use crate::weight::{algorithm_up, base_k_weight};
    use rand::{Rng, SeedableRng};

    fn params(n: usize, k: usize) -> ShuffleParams {
        ShuffleParams::new(n, k).unwrap()
    }

    fn base_k_poset(n: usize, k: usize) -> ShufflingPoset {
        build_shuffling_poset(&base_k_weight(&params(n, k)).unwrap())
    }

    #[test]
    fn worked_column_matching() {
        let poset = base_k_poset(12, 3);
        assert_eq!(poset.successor(2), 8);
        assert_eq!(poset.successor(6), 6);
        assert_eq!(poset.successor(10), 7);
    }

    #[test]
    fn twelve_card_cycles_and_levels() {
        let poset = base_k_poset(12, 3);
        let got: Vec<(Vec<usize>, i64)> = poset
            .cycles()
            .iter()
            .cloned()
            .zip(poset.cycle_levels().iter().copied())
            .collect();
        let expected = vec![
            (vec![0], 0),
            (vec![1, 4], 1),
            (vec![2, 8], 2),
            (vec![3, 9], 0),
            (vec![5], 2),
            (vec![6], 0),
            (vec![7, 10], 1),
            (vec![11], 2),
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn single_column_instance_has_identity_successor() {
        let p = params(6, 6);
        let poset = build_shuffling_poset(&algorithm_up(&p));
        assert_eq!(poset.cycles().len(), 6);
        for a in 0..6 {
            assert_eq!(poset.successor(a), a);
        }
    }

    #[test]
    fn successor_is_weight_preserving_bijection() {
        for (n, k) in [(12, 3), (32, 4), (24, 6), (12, 2)] {
            let p = params(n, k);
            let wf = algorithm_up(&p);
            let poset = build_shuffling_poset(&wf);
            let mut image: Vec<usize> = (0..n).map(|a| poset.successor(a)).collect();
            for a in 0..n {
                assert_eq!(wf.value(poset.successor(a)), wf.value(a));
            }
            image.sort_unstable();
            assert_eq!(image, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn mapping_rule_examples() {
        let p = params(12, 3);
        assert_eq!(mapping_rule_gcd1(1, &p).unwrap(), 4);
        assert_eq!(mapping_rule_gcd1(4, &p).unwrap(), 1);
        assert_eq!(mapping_rule_gcd1(0, &p).unwrap(), 0);

        let p = params(8, 2);
        assert_eq!(mapping_rule_gcd1(1, &p).unwrap(), 2);
        assert_eq!(mapping_rule_gcd1(2, &p).unwrap(), 4);
        assert_eq!(mapping_rule_gcd1(4, &p).unwrap(), 1);

        assert!(mapping_rule_gcd1(0, &params(32, 4)).is_err());
    }

    #[test]
    fn mapping_rule_matches_successor() {
        for (n, k) in [(12, 3), (8, 2), (12, 2), (24, 3), (50, 5)] {
            let p = params(n, k);
            let poset = base_k_poset(n, k);
            for a in 0..n {
                assert_eq!(
                    poset.successor(a),
                    mapping_rule_gcd1(a, &p).unwrap(),
                    "N={n} k={k} a={a}"
                );
            }
        }
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(3, 8).unwrap(), 2);
        assert_eq!(mult_order(7, 1).unwrap(), 1);
        assert_eq!(mult_order(2, 1023).unwrap(), 10);
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert!(mult_order(4, 6).is_err());
        assert!(mult_order(2, 0).is_err());
    }

    #[test]
    fn theorem_holds_on_worked_instances() {
        let report = verify_cycle_theorem(&params(12, 3)).unwrap();
        assert_eq!(report.order, 2);
        assert!(report.pass);
        assert_eq!(report.stats.max_length, 2);

        let report = verify_cycle_theorem(&params(8, 2)).unwrap();
        assert_eq!(report.order, 3);
        assert!(report.pass);
        let lengths: Vec<u64> = report.stats.histogram.keys().copied().collect();
        assert_eq!(lengths, vec![1, 3]);

        // N = k: all cycles trivial
        let report = verify_cycle_theorem(&params(6, 6)).unwrap();
        assert_eq!(report.order, 1);
        assert!(report.pass);
    }

    #[test]
    fn appendix_instance_cycle_lengths() {
        let p = params(32, 4);
        let poset = build_shuffling_poset(&algorithm_up(&p));
        let stats = cycle_length_stats(&poset).unwrap();
        let cycle_with_one = &poset.cycles()[poset.cycle_of(1)];
        assert_eq!(cycle_with_one.len(), 3);
        assert_eq!(stats.max_length, 6);
    }

    #[test]
    fn complement_symmetry_on_generated_weights() {
        for (n, k) in [(12, 3), (32, 4), (24, 6), (8, 8)] {
            let p = params(n, k);
            let poset = build_shuffling_poset(&algorithm_up(&p));
            assert!(complement_symmetry_check(&poset), "N={n} k={k}");
        }
    }

    #[test]
    fn fixed_poset_twelve_cards() {
        let poset = base_k_poset(12, 3);
        let fp = build_fixed_poset(&poset);
        assert_eq!(fp.node_count(), 8);
        let mut levels: Vec<i64> = fp.levels().to_vec();
        levels.sort_unstable();
        levels.dedup();
        assert_eq!(levels, vec![0, 1, 2]);
        for &(low, high) in fp.cover_edges() {
            assert!(fp.levels()[low] < fp.levels()[high]);
        }
    }

    #[test]
    fn fixed_poset_chain_for_single_column() {
        let poset = build_shuffling_poset(&algorithm_up(&params(5, 5)));
        let fp = build_fixed_poset(&poset);
        assert_eq!(fp.node_count(), 5);
        assert_eq!(fp.cover_edges().len(), 4);
    }

    #[test]
    fn periodic_poset_edges_cross_levels() {
        let poset = base_k_poset(24, 2);
        let pp = build_periodic_poset(&poset);
        assert_eq!(pp.node_count(), 24);
        for &(low, high) in pp.cover_edges() {
            assert!(pp.levels()[low] < pp.levels()[high]);
        }
    }

    #[test]
    fn periodic_poset_contains_quotient_of_fixed_constraints() {
        // every s = 0 edge, collapsed onto cycles, is a fixed-poset relation
        let poset = base_k_poset(12, 3);
        let fp = build_fixed_poset(&poset);
        let pp = build_periodic_poset(&poset);
        let fixed_edges: BTreeSet<(usize, usize)> = fp.cover_edges().iter().copied().collect();
        let p = *poset.params();
        for &(a, b) in pp.cover_edges() {
            if p.column_of(a) == p.column_of(b) {
                let pair = (poset.cycle_of(a), poset.cycle_of(b));
                assert!(fixed_edges.contains(&pair), "missing quotient edge {pair:?}");
            }
        }
    }

    #[test]
    fn poset_shuffle_matches_matrix_shuffle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (n, k) in [(12, 3), (32, 4), (24, 6), (8, 2)] {
            let p = params(n, k);
            let poset = build_shuffling_poset(&algorithm_up(&p));
            for _ in 0..200 {
                let deck = Deck::new((0..n).map(|_| rng.gen_range(0..3u32)).collect());
                assert_eq!(
                    poset.shuffle_deck(&deck).unwrap(),
                    shuffle_once(&deck, &p).unwrap()
                );
            }
        }
    }
}
