//! Counting and enumerating monotone labelings of a leveled poset.
//!
//! Posets arrive as cover edges `(low, high)` between nodes at strictly
//! increasing levels. A `j`-labeling is monotone when every edge satisfies
//! `label(low) >= label(high)`; for two labels these are exactly the order
//! ideals (label 1 on a down-closed set). Counting sweeps the levels from the
//! bottom with a bitmask state over the frontier, folding levels out of the
//! state with a superset-sum transform as soon as nothing above needs them.
//! Cover edges may skip levels; skipped lower endpoints simply stay in the
//! frontier until their last upper neighbor has been processed.

use crate::error::{Error, Result};

/// Widest bitmask state the level sweep will allocate (`8 << MAX_STATE_BITS`
/// bytes at peak).
pub(crate) const MAX_STATE_BITS: u32 = 26;

/// A poset given by per-node levels and cover edges (lower node first).
#[derive(Debug, Clone)]
pub(crate) struct LeveledDag {
    pub levels: Vec<i64>,
    pub covers: Vec<(usize, usize)>,
}

impl LeveledDag {
    pub fn node_count(&self) -> usize {
        self.levels.len()
    }

    /// Dense level index per node (0 = bottom level).
    fn level_indices(&self) -> (Vec<usize>, usize) {
        let mut distinct: Vec<i64> = self.levels.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let idx = self
            .levels
            .iter()
            .map(|v| distinct.binary_search(v).expect("own level"))
            .collect();
        (idx, distinct.len())
    }

    /// Number of monotone 2-labelings, i.e. order ideals.
    pub fn count_ideals(&self) -> Result<u64> {
        let n = self.node_count();
        if n == 0 {
            return Ok(1);
        }
        let (level_idx, n_levels) = self.level_indices();
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n_levels];
        for v in 0..n {
            groups[level_idx[v]].push(v);
        }

        let mut lowcov: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut max_upper_idx: Vec<Option<usize>> = vec![None; n];
        for &(low, high) in &self.covers {
            assert!(
                level_idx[low] < level_idx[high],
                "cover edge must cross levels upward"
            );
            lowcov[high].push(low);
            let li = level_idx[high];
            max_upper_idx[low] = Some(max_upper_idx[low].map_or(li, |m: usize| m.max(li)));
        }

        // frontier: processed nodes still needed by levels above
        let mut frontier: Vec<usize> = Vec::new();
        let mut pos_of: Vec<usize> = vec![usize::MAX; n];
        let mut g: Vec<u64> = vec![1];

        for (li, group) in groups.iter().enumerate() {
            let width = group.len() as u32;

            let kept_positions: Vec<usize> = (0..frontier.len())
                .filter(|&p| matches!(max_upper_idx[frontier[p]], Some(m) if m > li))
                .collect();
            let kept_mask: u64 = kept_positions.iter().map(|&p| 1u64 << p).sum();
            let kept = kept_positions.len() as u32;
            if width + kept > MAX_STATE_BITS {
                return Err(Error::PosetTooWide {
                    bits: width + kept,
                    limit: MAX_STATE_BITS,
                });
            }

            // fold dropped frontier coordinates into superset sums
            for p in 0..frontier.len() {
                if kept_mask & (1u64 << p) != 0 {
                    continue;
                }
                let bit = 1usize << p;
                for mask in 0..g.len() {
                    if mask & bit == 0 {
                        g[mask] = g[mask]
                            .checked_add(g[mask | bit])
                            .ok_or(Error::CountOverflow)?;
                    }
                }
            }

            // new frontier: kept nodes first, then this level's nodes that
            // still matter above
            let mut new_frontier: Vec<usize> =
                kept_positions.iter().map(|&p| frontier[p]).collect();
            let mut kept_new_bit: Vec<u64> = vec![0; frontier.len()];
            for (new_p, &old_p) in kept_positions.iter().enumerate() {
                kept_new_bit[old_p] = 1u64 << new_p;
            }
            let mut group_new_bit: Vec<u64> = vec![0; group.len()];
            for (gi, &v) in group.iter().enumerate() {
                if matches!(max_upper_idx[v], Some(m) if m > li) {
                    group_new_bit[gi] = 1u64 << new_frontier.len();
                    new_frontier.push(v);
                }
            }
            if new_frontier.len() as u32 > MAX_STATE_BITS {
                return Err(Error::PosetTooWide {
                    bits: new_frontier.len() as u32,
                    limit: MAX_STATE_BITS,
                });
            }

            let req_masks: Vec<u64> = group
                .iter()
                .map(|&v| {
                    lowcov[v]
                        .iter()
                        .map(|&u| {
                            debug_assert!(pos_of[u] != usize::MAX, "lower cover left frontier");
                            1u64 << pos_of[u]
                        })
                        .fold(0, |acc, b| acc | b)
                })
                .collect();

            let mut g_new: Vec<u64> = vec![0; 1usize << new_frontier.len()];
            let remap_kept = |kappa: u64| -> u64 {
                let mut out = 0;
                let mut rest = kappa;
                while rest != 0 {
                    let p = rest.trailing_zeros() as usize;
                    out |= kept_new_bit[p];
                    rest &= rest - 1;
                }
                out
            };

            // walk every subset of this level, carrying its requirement mask
            // in old-frontier coordinates and its new-frontier bits
            struct Walk<'a> {
                req_masks: &'a [u64],
                group_new_bit: &'a [u64],
                kept_mask: u64,
                g: &'a [u64],
                g_new: &'a mut [u64],
                remap: &'a dyn Fn(u64) -> u64,
            }
            impl Walk<'_> {
                fn run(&mut self, gi: usize, req: u64, new_bits: u64) -> Result<()> {
                    if gi == self.req_masks.len() {
                        let req_kept = req & self.kept_mask;
                        let req_dropped = req & !self.kept_mask;
                        let free = self.kept_mask & !req_kept;
                        let mut extra = free;
                        loop {
                            let kappa = req_kept | extra;
                            let val = self.g[(kappa | req_dropped) as usize];
                            if val != 0 {
                                let target = ((self.remap)(kappa) | new_bits) as usize;
                                self.g_new[target] = self.g_new[target]
                                    .checked_add(val)
                                    .ok_or(Error::CountOverflow)?;
                            }
                            if extra == 0 {
                                break;
                            }
                            extra = (extra - 1) & free;
                        }
                        return Ok(());
                    }
                    self.run(gi + 1, req, new_bits)?;
                    self.run(
                        gi + 1,
                        req | self.req_masks[gi],
                        new_bits | self.group_new_bit[gi],
                    )
                }
            }
            Walk {
                req_masks: &req_masks,
                group_new_bit: &group_new_bit,
                kept_mask,
                g: &g,
                g_new: &mut g_new,
                remap: &remap_kept,
            }
            .run(0, 0, 0)?;

            for &v in frontier.iter() {
                pos_of[v] = usize::MAX;
            }
            for (p, &v) in new_frontier.iter().enumerate() {
                pos_of[v] = p;
            }
            frontier = new_frontier;
            g = g_new;
        }

        g.into_iter()
            .try_fold(0u64, |acc, v| acc.checked_add(v))
            .ok_or(Error::CountOverflow)
    }

    /// The poset `self x chain(m)`, whose ideals are the monotone
    /// `(m+1)`-labelings of `self`.
    pub fn product_with_chain(&self, m: usize) -> LeveledDag {
        assert!(m >= 1);
        let (level_idx, _) = self.level_indices();
        let n = self.node_count();
        let mut levels = Vec::with_capacity(n * m);
        for &li in &level_idx {
            for c in 0..m {
                levels.push(li as i64 + c as i64);
            }
        }
        let mut covers = Vec::with_capacity(self.covers.len() * m + n * (m - 1));
        for &(low, high) in &self.covers {
            for c in 0..m {
                covers.push((low * m + c, high * m + c));
            }
        }
        for v in 0..n {
            for c in 1..m {
                covers.push((v * m + c - 1, v * m + c));
            }
        }
        LeveledDag { levels, covers }
    }

    /// Number of monotone `j`-labelings.
    pub fn count_monotone(&self, j: u32) -> Result<u64> {
        assert!(j >= 1, "alphabet size must be at least 1");
        if j == 1 || self.node_count() == 0 {
            return Ok(1);
        }
        self.product_with_chain(j as usize - 1).count_ideals()
    }

    /// Every monotone `j`-labeling, as a label vector per node. Order of the
    /// output follows the bottom-up search, not deck order; callers sort.
    pub fn monotone_labelings(&self, j: u32) -> Vec<Vec<u32>> {
        assert!(j >= 1, "alphabet size must be at least 1");
        let n = self.node_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (self.levels[v], v));
        let mut lowcov: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(low, high) in &self.covers {
            lowcov[high].push(low);
        }
        let mut labels = vec![0u32; n];
        let mut out = Vec::new();
        fn dfs(
            depth: usize,
            order: &[usize],
            lowcov: &[Vec<usize>],
            j: u32,
            labels: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
        ) {
            if depth == order.len() {
                out.push(labels.clone());
                return;
            }
            let v = order[depth];
            let cap = lowcov[v]
                .iter()
                .map(|&u| labels[u])
                .min()
                .unwrap_or(j - 1)
                .min(j - 1);
            for label in 0..=cap {
                labels[v] = label;
                dfs(depth + 1, order, lowcov, j, labels, out);
            }
        }
        dfs(0, &order, &lowcov, j, &mut labels, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(len: usize) -> LeveledDag {
        LeveledDag {
            levels: (0..len as i64).collect(),
            covers: (1..len).map(|v| (v - 1, v)).collect(),
        }
    }

    fn antichain(len: usize) -> LeveledDag {
        LeveledDag {
            levels: vec![0; len],
            covers: Vec::new(),
        }
    }

    /// Independent oracle: count by brute force over all label vectors.
    fn count_by_enumeration(dag: &LeveledDag, j: u32) -> u64 {
        let n = dag.node_count();
        let mut count = 0u64;
        let mut labels = vec![0u32; n];
        'outer: loop {
            if dag
                .covers
                .iter()
                .all(|&(low, high)| labels[low] >= labels[high])
            {
                count += 1;
            }
            for slot in labels.iter_mut() {
                *slot += 1;
                if *slot < j {
                    continue 'outer;
                }
                *slot = 0;
            }
            return count;
        }
    }

    #[test]
    fn chain_and_antichain_counts() {
        assert_eq!(chain(3).count_ideals().unwrap(), 4);
        assert_eq!(antichain(4).count_ideals().unwrap(), 16);
        assert_eq!(chain(0).count_ideals().unwrap(), 1);
        // j labels on an m-chain: binomial(m + j - 1, m)
        assert_eq!(chain(3).count_monotone(3).unwrap(), 10);
        assert_eq!(antichain(3).count_monotone(3).unwrap(), 27);
    }

    #[test]
    fn diamond_with_skip_edge() {
        // 0 at bottom; 1, 2 in the middle; 3 on top; plus a direct 0 -> 3
        // edge skipping the middle level
        let dag = LeveledDag {
            levels: vec![0, 1, 1, 2],
            covers: vec![(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)],
        };
        assert_eq!(dag.count_ideals().unwrap(), count_by_enumeration(&dag, 2));
        assert_eq!(dag.count_monotone(3).unwrap(), count_by_enumeration(&dag, 3));
    }

    #[test]
    fn skip_edges_force_kept_frontier_nodes() {
        // long skips across several levels
        let dag = LeveledDag {
            levels: vec![0, 1, 2, 3, 3],
            covers: vec![(0, 3), (1, 2), (2, 3), (0, 4), (1, 4)],
        };
        assert_eq!(dag.count_ideals().unwrap(), count_by_enumeration(&dag, 2));
        assert_eq!(dag.count_monotone(4).unwrap(), count_by_enumeration(&dag, 4));
    }

    #[test]
    fn matches_brute_force_on_random_dags() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for round in 0..200 {
            let n = rng.gen_range(1..12usize);
            let spread = rng.gen_range(2..6);
            let levels: Vec<i64> = (0..n).map(|_| rng.gen_range(0..spread)).collect();
            // dense enough that frontiers regularly mix kept, dropped, and
            // fresh nodes
            let p = rng.gen_range(0.2..0.7);
            let mut covers = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if levels[a] < levels[b] && rng.gen_bool(p) {
                        covers.push((a, b));
                    }
                }
            }
            let dag = LeveledDag { levels, covers };
            for j in 1..=4u32 {
                assert_eq!(
                    dag.count_monotone(j).unwrap(),
                    count_by_enumeration(&dag, j),
                    "round {round} dag {dag:?} j={j}"
                );
            }
        }
    }

    #[test]
    fn labelings_are_monotone_and_complete() {
        let dag = LeveledDag {
            levels: vec![0, 1, 1, 2],
            covers: vec![(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)],
        };
        let labelings = dag.monotone_labelings(3);
        assert_eq!(labelings.len() as u64, dag.count_monotone(3).unwrap());
        for labels in &labelings {
            for &(low, high) in &dag.covers {
                assert!(labels[low] >= labels[high]);
            }
        }
        let mut unique = labelings.clone();
        unique.sort();
        unique.dedup();
        assert_eq!(unique.len(), labelings.len());
    }

    #[test]
    fn width_guard_trips() {
        assert!(matches!(
            antichain(40).count_ideals(),
            Err(Error::PosetTooWide { .. })
        ));
    }
}
