//! Set partitions and ordered set partitions.

use std::collections::BTreeMap;

/// A surjection from a ground set onto ranks `0..blocks.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedPartition<T: Ord> {
    blocks: Vec<Vec<T>>,
    rank: BTreeMap<T, usize>,
}

impl<T: Ord + Clone> OrderedPartition<T> {
    /// Builds the partition from its ordered blocks. Returns `None` if a block
    /// is empty or two blocks share an element.
    pub fn from_blocks(blocks: Vec<Vec<T>>) -> Option<Self> {
        let mut rank = BTreeMap::new();
        let mut sorted = Vec::with_capacity(blocks.len());
        for (i, mut b) in blocks.into_iter().enumerate() {
            if b.is_empty() {
                return None;
            }
            b.sort();
            for x in &b {
                if rank.insert(x.clone(), i).is_some() {
                    return None;
                }
            }
            sorted.push(b);
        }
        Some(OrderedPartition {
            blocks: sorted,
            rank,
        })
    }

    /// Groups elements by rank. Ranks need not be contiguous; they are
    /// compressed to `0..r`.
    pub fn from_ranks(ranked: impl IntoIterator<Item = (T, usize)>) -> Self {
        let mut by_rank: BTreeMap<usize, Vec<T>> = BTreeMap::new();
        for (x, r) in ranked {
            by_rank.entry(r).or_default().push(x);
        }
        Self::from_blocks(by_rank.into_values().collect()).expect("ranks define disjoint blocks")
    }

    pub fn blocks(&self) -> &[Vec<T>] {
        &self.blocks
    }

    pub fn rank(&self, x: &T) -> Option<usize> {
        self.rank.get(x).copied()
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }
}

/// Calls `visit` with every set partition of `0..n`, encoded as a restricted
/// growth string (`labels[0] = 0`, `labels[i] <= 1 + max(labels[..i])`).
/// Returns early if `visit` returns `false`.
pub fn for_each_set_partition(n: usize, mut visit: impl FnMut(&[usize], usize) -> bool) -> bool {
    if n == 0 {
        return visit(&[], 0);
    }
    let mut labels = vec![0usize; n];
    let mut maxes = vec![0usize; n];
    loop {
        if !visit(&labels, maxes[n - 1] + 1) {
            return false;
        }
        // advance the rightmost position that can still grow
        let mut i = n - 1;
        loop {
            if i == 0 {
                return true;
            }
            if labels[i] <= maxes[i - 1] {
                labels[i] += 1;
                maxes[i] = maxes[i - 1].max(labels[i]);
                for j in i + 1..n {
                    labels[j] = 0;
                    maxes[j] = maxes[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Calls `visit` with every permutation of `0..k` in lexicographic order.
pub fn for_each_permutation(k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&p) {
            return false;
        }
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
            return true;
        };
        let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Calls `visit` with the rank vector of every ordered partition of `0..n`:
/// an unordered partition followed by every ordering of its blocks. Each
/// ordered partition is produced exactly once.
pub fn for_each_ordered_partition(n: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    let mut ranks = vec![0usize; n];
    for_each_set_partition(n, |labels, k| {
        for_each_permutation(k, |perm| {
            for (r, &l) in ranks.iter_mut().zip(labels) {
                *r = perm[l];
            }
            visit(&ranks)
        })
    })
}

/// All ordered partitions of `ground`.
pub fn enumerate_ordered_partitions<T: Ord + Clone>(ground: &[T]) -> Vec<OrderedPartition<T>> {
    let mut out = Vec::new();
    for_each_ordered_partition(ground.len(), |ranks| {
        out.push(OrderedPartition::from_ranks(
            ground.iter().cloned().zip(ranks.iter().copied()),
        ));
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Oracle: every function `0..n -> 0..n`, kept when its image is an
    /// initial segment, deduplicated.
    fn brute_ordered_partitions(n: usize) -> HashSet<Vec<usize>> {
        let mut out = HashSet::new();
        let total = n.pow(n as u32);
        for code in 0..total.max(1) {
            let mut c = code;
            let f: Vec<usize> = (0..n)
                .map(|_| {
                    let d = c % n.max(1);
                    c /= n.max(1);
                    d
                })
                .collect();
            let max = f.iter().copied().max().map_or(0, |m| m + 1);
            if (0..max).all(|r| f.contains(&r)) {
                out.insert(f);
            }
        }
        out
    }

    #[test]
    fn ordered_partition_counts_match_brute_force() {
        for n in 1..=5 {
            let mut seen = HashSet::new();
            for_each_ordered_partition(n, |r| {
                assert!(seen.insert(r.to_vec()), "duplicate {r:?}");
                true
            });
            assert_eq!(seen, brute_ordered_partitions(n), "n = {n}");
        }
    }

    #[test]
    fn frozen_counts() {
        // Values computed by `brute_ordered_partitions`.
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate_ordered_partitions(&(0..n).collect::<Vec<_>>()).len())
            .collect();
        assert_eq!(counts, vec![1, 3, 13, 75, 541]);
    }

    #[test]
    fn set_partitions_are_bell_numbers() {
        let bell: Vec<usize> = (0..=6)
            .map(|n| {
                let mut c = 0;
                for_each_set_partition(n, |_, _| {
                    c += 1;
                    true
                });
                c
            })
            .collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn from_blocks_rejects_overlap_and_empty() {
        assert!(OrderedPartition::from_blocks(vec![vec![1], vec![1]]).is_none());
        assert!(OrderedPartition::<u8>::from_blocks(vec![vec![]]).is_none());
        let p = OrderedPartition::from_blocks(vec![vec!['b'], vec!['a', 'c']]).unwrap();
        assert_eq!(p.rank(&'a'), Some(1));
        assert_eq!(p.rank(&'b'), Some(0));
    }
}
