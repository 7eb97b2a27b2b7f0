//! Satisfiability of point-algebra constraint sets over the rationals.
//!
//! Equalities are merged with a union-find; strict edges between the
//! resulting classes must form a DAG. A topological order of the classes
//! (smallest element first on ties) yields the ranks of a realizing model.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::partition::OrderedPartition;
use crate::network::{AtomicNetwork, Var};

pub const LT: u16 = 0;
pub const EQ: u16 = 1;
pub const GT: u16 = 2;

pub(crate) fn rel_of(o: Ordering) -> u16 {
    match o {
        Ordering::Less => LT,
        Ordering::Equal => EQ,
        Ordering::Greater => GT,
    }
}

pub(crate) fn ordering_of(rel: u16) -> Ordering {
    match rel {
        LT => Ordering::Less,
        EQ => Ordering::Equal,
        _ => Ordering::Greater,
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            // keep the smaller index as representative for determinism
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.0[hi] = lo;
        }
    }
}

/// Ranks `0..r` for points `0..n` such that every `(a, ord, b)` holds as
/// `rank[a].cmp(&rank[b]) == ord`, or `None` if no such assignment exists.
/// Distinct equality classes receive distinct ranks.
pub(crate) fn order_points(n: usize, constraints: &[(usize, Ordering, usize)]) -> Option<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for &(a, o, b) in constraints {
        if o == Ordering::Equal {
            uf.union(a, b);
        }
    }
    let class: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();

    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(a, o, b) in constraints {
        let (lo, hi) = match o {
            Ordering::Less => (class[a], class[b]),
            Ordering::Greater => (class[b], class[a]),
            Ordering::Equal => continue,
        };
        if lo == hi {
            return None;
        }
        succ[lo].push(hi);
        indeg[hi] += 1;
    }

    let mut heap: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&x| class[x] == x && indeg[x] == 0)
        .map(Reverse)
        .collect();
    let mut class_rank = vec![usize::MAX; n];
    let mut next = 0;
    while let Some(Reverse(c)) = heap.pop() {
        class_rank[c] = next;
        next += 1;
        for &s in &succ[c] {
            indeg[s] -= 1;
            if indeg[s] == 0 {
                heap.push(Reverse(s));
            }
        }
    }
    let classes = (0..n).filter(|&x| class[x] == x).count();
    if next < classes {
        return None; // strict cycle
    }
    Some(class.iter().map(|&c| class_rank[c]).collect())
}

/// Decides a point-algebra network over `{<, =, >}` and returns an ordered
/// partition of its variables realizing it.
pub fn pa_decide(net: &AtomicNetwork) -> Option<OrderedPartition<Var>> {
    let vars = net.vars();
    let pos = |v: Var| vars.binary_search(&v).expect("entry variable in network");
    let constraints: Vec<(usize, Ordering, usize)> = net
        .entries()
        .iter()
        .map(|(t, r)| (pos(t[0]), ordering_of(*r), pos(t[1])))
        .collect();
    let ranks = order_points(vars.len(), &constraints)?;
    Some(OrderedPartition::from_ranks(
        vars.iter().copied().zip(ranks),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::tuple;

    fn net(entries: &[(u32, u16, u32)]) -> AtomicNetwork {
        AtomicNetwork::from_entries(
            [],
            entries
                .iter()
                .map(|&(a, r, b)| (tuple(&[Var(a), Var(b)]), r)),
        )
        .unwrap()
    }

    #[test]
    fn chain_gives_singleton_blocks() {
        // w<x, x<y, y<z with w..z = 0..3
        let p = pa_decide(&net(&[(0, LT, 1), (1, LT, 2), (2, LT, 3)])).unwrap();
        assert_eq!(
            p.blocks(),
            &[vec![Var(0)], vec![Var(1)], vec![Var(2)], vec![Var(3)]]
        );
    }

    #[test]
    fn equality_merges() {
        let p = pa_decide(&net(&[(0, EQ, 1), (1, EQ, 0)])).unwrap();
        assert_eq!(p.blocks().len(), 1);
    }

    #[test]
    fn cycle_is_unsat() {
        assert!(pa_decide(&net(&[(0, LT, 1), (1, LT, 2), (2, LT, 0)])).is_none());
        assert!(pa_decide(&net(&[(0, EQ, 1), (1, LT, 0)])).is_none());
        assert!(pa_decide(&net(&[(0, LT, 0)])).is_none());
    }

    #[test]
    fn greater_is_reversed_less() {
        let p = pa_decide(&net(&[(0, GT, 1)])).unwrap();
        assert!(p.rank(&Var(1)).unwrap() < p.rank(&Var(0)).unwrap());
    }
}
