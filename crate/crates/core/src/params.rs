use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Instance parameters for shuffling `N = k^t * q` cards in `k` stacks of
/// `n = N / k`, where `t >= 1` is the largest power of `k` dividing `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShuffleParams {
    /// Deck size `N`.
    pub n_cards: usize,
    /// Number of stacks `k` the deck is split into.
    pub k: usize,
    /// Largest `t` with `k^t | N`.
    pub t: u32,
    /// Cofactor `q = N / k^t`; `k` does not divide `q`.
    pub q: usize,
    /// Stack size `n = N / k`.
    pub stack_size: usize,
}

impl ShuffleParams {
    /// Splits `n_cards` into `k` stacks, computing the maximal `t` and the
    /// cofactor `q`. Rejects `k < 2` and `k` not dividing `n_cards`.
    pub fn new(n_cards: usize, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::StackCountTooSmall { k });
        }
        if n_cards == 0 {
            return Err(Error::EmptyDeck);
        }
        if !n_cards.is_multiple_of(k) {
            return Err(Error::StackCountDoesNotDivide { n_cards, k });
        }
        let mut t = 0u32;
        let mut q = n_cards;
        while q.is_multiple_of(k) {
            q /= k;
            t += 1;
        }
        Ok(ShuffleParams {
            n_cards,
            k,
            t,
            q,
            stack_size: n_cards / k,
        })
    }

    /// The column a subscript belongs to before shuffling: `a mod n`.
    #[inline]
    pub fn column_of(&self, subscript: usize) -> usize {
        subscript % self.stack_size
    }

    /// Subscripts `{l, l+n, ..., l+(k-1)n}` forming column `l`.
    pub fn column_members(&self, l: usize) -> impl Iterator<Item = usize> + '_ {
        debug_assert!(l < self.stack_size);
        (0..self.k).map(move |i| l + i * self.stack_size)
    }

    /// Subscripts `{kl, kl+1, ..., kl+k-1}` forming the block column `l`
    /// shuffles into.
    pub fn block_members(&self, l: usize) -> impl Iterator<Item = usize> + '_ {
        debug_assert!(l < self.stack_size);
        (0..self.k).map(move |i| self.k * l + i)
    }

    /// Base-`k` digit `i` of `a` (digit 0 is least significant).
    #[inline]
    pub fn digit(&self, a: usize, i: u32) -> usize {
        (a / self.k.pow(i)) % self.k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_instances() {
        let p = ShuffleParams::new(12, 3).unwrap();
        assert_eq!((p.t, p.q, p.stack_size), (1, 4, 4));

        let p = ShuffleParams::new(32, 4).unwrap();
        assert_eq!((p.t, p.q, p.stack_size), (2, 2, 8));

        let p = ShuffleParams::new(8, 8).unwrap();
        assert_eq!((p.t, p.q, p.stack_size), (1, 1, 1));
    }

    #[test]
    fn t_is_maximal() {
        for n in 1..200usize {
            for k in 2..=n {
                if n % k != 0 {
                    assert!(ShuffleParams::new(n, k).is_err());
                    continue;
                }
                let p = ShuffleParams::new(n, k).unwrap();
                assert_eq!(p.n_cards, k.pow(p.t) * p.q);
                assert_ne!(p.q % k, 0, "t not maximal for N={n} k={k}");
                assert_eq!(p.stack_size * k, n);
            }
        }
    }

    #[test]
    fn rejects_bad_k() {
        assert!(matches!(
            ShuffleParams::new(12, 1),
            Err(Error::StackCountTooSmall { .. })
        ));
        assert!(matches!(
            ShuffleParams::new(12, 5),
            Err(Error::StackCountDoesNotDivide { .. })
        ));
        assert!(matches!(ShuffleParams::new(0, 2), Err(Error::EmptyDeck)));
    }

    #[test]
    fn columns_and_blocks_partition_subscripts() {
        let p = ShuffleParams::new(12, 3).unwrap();
        let mut from_columns: Vec<usize> = (0..p.stack_size)
            .flat_map(|l| p.column_members(l).collect::<Vec<_>>())
            .collect();
        from_columns.sort_unstable();
        assert_eq!(from_columns, (0..12).collect::<Vec<_>>());

        let mut from_blocks: Vec<usize> = (0..p.stack_size)
            .flat_map(|l| p.block_members(l).collect::<Vec<_>>())
            .collect();
        from_blocks.sort_unstable();
        assert_eq!(from_blocks, (0..12).collect::<Vec<_>>());
    }
}
