//! The phylogeny structure: leaves of rooted binary trees under the ternary
//! relations
//!
//! * `R1(x,y,z)`: `x|yz`
//! * `R2(x,y,z)`: `y|xz`
//! * `R3(x,y,z)`: `z|xy`
//! * `R4(x,y,z)`: `x = y = z`
//!
//! where `x|yz` holds when the youngest common ancestor of `y` and `z` lies
//! strictly below that of all three. Several variables may share a leaf.

use std::collections::BTreeMap;

use super::partition::for_each_set_partition;
use crate::network::{AtomicNetwork, RelId, Tuple, Var};

pub const PHYLO_NAMES: [&str; 4] = ["R1", "R2", "R3", "R4"];
pub const R1: RelId = 0;
pub const R2: RelId = 1;
pub const R3: RelId = 2;
pub const R4: RelId = 3;

/// A rooted binary tree plus the leaf each variable is mapped to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhyloTreeModel {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    root: usize,
    leaf_of: BTreeMap<Var, usize>,
}

impl PhyloTreeModel {
    fn single_leaf() -> Self {
        PhyloTreeModel {
            parent: vec![None],
            children: vec![Vec::new()],
            depth: vec![0],
            root: 0,
            leaf_of: BTreeMap::new(),
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.node_count())
            .filter(|&n| self.children[n].is_empty())
            .collect()
    }

    pub fn leaf_of(&self, v: Var) -> Option<usize> {
        self.leaf_of.get(&v).copied()
    }

    pub fn assignment(&self) -> &BTreeMap<Var, usize> {
        &self.leaf_of
    }

    /// Root has 0 or 2 children, other internal nodes 2 children (degree 3),
    /// and variables sit on leaves.
    pub fn is_binary(&self) -> bool {
        let shape_ok = (0..self.node_count()).all(|n| {
            let c = self.children[n].len();
            c == 0 || c == 2
        });
        let leaves_ok = self
            .leaf_of
            .values()
            .all(|&l| self.children[l].is_empty());
        shape_ok && leaves_ok && self.parent[self.root].is_none()
    }

    fn recompute_depth(&mut self) {
        let mut stack = vec![(self.root, 0)];
        while let Some((n, d)) = stack.pop() {
            self.depth[n] = d;
            for &c in &self.children[n] {
                stack.push((c, d + 1));
            }
        }
    }

    pub fn yca(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }

    /// Relation between three leaves.
    pub fn relation_of_leaves(&self, x: usize, y: usize, z: usize) -> RelId {
        if x == y && y == z {
            return R4;
        }
        let top = self.yca(self.yca(x, y), z);
        if self.yca(y, z) != top {
            R1
        } else if self.yca(x, z) != top {
            R2
        } else {
            debug_assert_ne!(self.yca(x, y), top);
            R3
        }
    }

    pub fn relation(&self, t: &[Var]) -> Option<RelId> {
        Some(self.relation_of_leaves(
            self.leaf_of(t[0])?,
            self.leaf_of(t[1])?,
            self.leaf_of(t[2])?,
        ))
    }

    /// Complete network over the mapped variables.
    pub fn to_network(&self) -> AtomicNetwork {
        let vars: Vec<Var> = self.leaf_of.keys().copied().collect();
        let leaves: Vec<usize> = self.leaf_of.values().copied().collect();
        let m = vars.len();
        let mut entries = Vec::with_capacity(m * m * m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let r = self.relation_of_leaves(leaves[i], leaves[j], leaves[k]);
                    entries.push((Tuple::from_slice(&[vars[i], vars[j], vars[k]]), r));
                }
            }
        }
        AtomicNetwork::from_sorted_unchecked(vars, entries)
    }

    /// Copy of the tree with a new leaf hung on the edge above `node` (a new
    /// root when `node` is the root). Returns the tree and the new leaf.
    fn with_leaf_above(&self, node: usize) -> (Self, usize) {
        let mut t = self.clone();
        let inner = t.parent.len();
        let leaf = inner + 1;
        t.parent.push(t.parent[node]);
        t.children.push(vec![node, leaf]);
        t.parent.push(Some(inner));
        t.children.push(Vec::new());
        t.depth.extend([0, 0]);
        match t.parent[node] {
            Some(p) => {
                for c in t.children[p].iter_mut() {
                    if *c == node {
                        *c = inner;
                    }
                }
            }
            None => t.root = inner,
        }
        t.parent[node] = Some(inner);
        t.recompute_depth();
        (t, leaf)
    }
}

/// Every rooted binary topology on leaves labeled `0..c`, as a tree plus the
/// node of each label.
fn topologies(c: usize) -> Vec<(PhyloTreeModel, Vec<usize>)> {
    if c == 0 {
        return Vec::new();
    }
    let mut out = vec![(PhyloTreeModel::single_leaf(), vec![0usize])];
    for _ in 1..c {
        let mut next = Vec::new();
        for (t, labels) in &out {
            for node in 0..t.node_count() {
                let (nt, leaf) = t.with_leaf_above(node);
                let mut nl = labels.clone();
                nl.push(leaf);
                next.push((nt, nl));
            }
        }
        out = next;
    }
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
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
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Decides an atomic phylogeny network: collapse `R4` equalities, then run
/// the BUILD recursion on the remaining rooted triples. Returns a witnessing
/// tree on success.
pub fn phylo_decide(net: &AtomicNetwork) -> Option<PhyloTreeModel> {
    let vars = net.vars();
    let n = vars.len();
    let pos = |v: Var| vars.binary_search(&v).unwrap();
    let mut uf = UnionFind((0..n).collect());
    for (t, r) in net.entries() {
        if *r == R4 {
            uf.union(pos(t[0]), pos(t[1]));
            uf.union(pos(t[1]), pos(t[2]));
        }
    }
    let class_of: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
    let mut reps: Vec<usize> = class_of.clone();
    reps.sort_unstable();
    reps.dedup();
    let dense = |c: usize| reps.binary_search(&c).unwrap();

    // (outgroup, pair) triples over dense class ids
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for (t, r) in net.entries() {
        let [x, y, z] = [t[0], t[1], t[2]].map(|v| dense(class_of[pos(v)]));
        let (a, b, c) = match *r {
            R1 => (x, y, z),
            R2 => (y, x, z),
            R3 => (z, x, y),
            _ => continue,
        };
        if a == b || a == c {
            return None;
        }
        if b != c {
            triples.push((a, b, c));
        }
    }

    let mut tree = PhyloTreeModel {
        parent: Vec::new(),
        children: Vec::new(),
        depth: Vec::new(),
        root: 0,
        leaf_of: BTreeMap::new(),
    };
    let mut leaf_of_class = vec![usize::MAX; reps.len()];
    if reps.is_empty() {
        let mut t = PhyloTreeModel::single_leaf();
        t.leaf_of.clear();
        return Some(t);
    }
    let all: Vec<usize> = (0..reps.len()).collect();
    let root = build(&all, &triples, &mut tree, &mut leaf_of_class)?;
    tree.root = root;
    tree.depth = vec![0; tree.parent.len()];
    tree.recompute_depth();
    for (i, &v) in vars.iter().enumerate() {
        tree.leaf_of.insert(v, leaf_of_class[dense(class_of[i])]);
    }
    Some(tree)
}

fn build(
    set: &[usize],
    triples: &[(usize, usize, usize)],
    tree: &mut PhyloTreeModel,
    leaf_of_class: &mut [usize],
) -> Option<usize> {
    if set.len() == 1 {
        let id = tree.parent.len();
        tree.parent.push(None);
        tree.children.push(Vec::new());
        leaf_of_class[set[0]] = id;
        return Some(id);
    }
    // components of the Aho graph restricted to `set`
    let local: BTreeMap<usize, usize> = set.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut uf = UnionFind((0..set.len()).collect());
    let inside: Vec<(usize, usize, usize)> = triples
        .iter()
        .copied()
        .filter(|(a, b, c)| local.contains_key(a) && local.contains_key(b) && local.contains_key(c))
        .collect();
    for &(_, b, c) in &inside {
        uf.union(local[&b], local[&c]);
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in set.iter().enumerate() {
        comps.entry(uf.find(i)).or_default().push(c);
    }
    if comps.len() == 1 {
        return None;
    }
    let mut subtrees = Vec::with_capacity(comps.len());
    for comp in comps.values() {
        subtrees.push(build(comp, &inside, tree, leaf_of_class)?);
    }
    // resolve the multifurcation left-deep; every separated triple survives
    let mut acc = subtrees[0];
    for &s in &subtrees[1..] {
        let id = tree.parent.len();
        tree.parent.push(None);
        tree.children.push(vec![acc, s]);
        tree.parent[acc] = Some(id);
        tree.parent[s] = Some(id);
        acc = id;
    }
    Some(acc)
}

/// Every complete satisfiable phylogeny network over `vars`: equality
/// classes times leaf-labeled binary topologies on the classes.
pub(crate) fn for_each_complete(vars: &[Var], visit: &mut dyn FnMut(AtomicNetwork) -> bool) -> bool {
    if vars.is_empty() {
        return visit(AtomicNetwork::new([]));
    }
    let m = vars.len();
    let mut cache: BTreeMap<usize, Vec<(PhyloTreeModel, Vec<usize>)>> = BTreeMap::new();
    for_each_set_partition(m, |labels, c| {
        let topos = cache.entry(c).or_insert_with(|| topologies(c));
        for (t, class_leaf) in topos.iter() {
            let mut model = t.clone();
            model.leaf_of = vars
                .iter()
                .zip(labels)
                .map(|(&v, &l)| (v, class_leaf[l]))
                .collect();
            if !visit(model.to_network()) {
                return false;
            }
        }
        true
    })
}

/// Every complete satisfiable extension of the complete network `net` by the
/// fresh variable `v`: `v` either joins an existing leaf or hangs on a new
/// leaf above some node.
pub(crate) fn for_each_extension(
    net: &AtomicNetwork,
    v: Var,
    visit: &mut dyn FnMut(&[(Tuple, RelId)]),
) {
    let Some(tree) = phylo_decide(net) else {
        return;
    };
    let vars = net.vars().to_vec();
    let mut used: Vec<usize> = tree.leaf_of.values().copied().collect();
    used.sort_unstable();
    used.dedup();

    let mut candidates: Vec<PhyloTreeModel> = Vec::new();
    for &leaf in &used {
        let mut t = tree.clone();
        t.leaf_of.insert(v, leaf);
        candidates.push(t);
    }
    if vars.is_empty() {
        let mut t = PhyloTreeModel::single_leaf();
        t.leaf_of.insert(v, 0);
        candidates.push(t);
    } else {
        for node in 0..tree.node_count() {
            let (mut t, leaf) = tree.with_leaf_above(node);
            t.leaf_of.insert(v, leaf);
            candidates.push(t);
        }
    }

    let mut all = vars.clone();
    all.push(v);
    all.sort_unstable();
    let mut buf: Vec<(Tuple, RelId)> = Vec::new();
    for t in &candidates {
        buf.clear();
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    if a == v || b == v || c == v {
                        let tup = Tuple::from_slice(&[a, b, c]);
                        let r = t.relation(&tup).unwrap();
                        buf.push((tup, r));
                    }
                }
            }
        }
        visit(&buf);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::tuple;

    fn net(entries: &[(u32, u32, u32, RelId)]) -> AtomicNetwork {
        AtomicNetwork::from_entries(
            [],
            entries
                .iter()
                .map(|&(a, b, c, r)| (tuple(&[Var(a), Var(b), Var(c)]), r)),
        )
        .unwrap()
    }

    #[test]
    fn topology_counts() {
        // (2c-3)!! rooted binary trees on c labeled leaves
        let counts: Vec<usize> = (1..=5).map(|c| topologies(c).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 15, 105]);
        for (t, _) in topologies(4) {
            assert!(t.is_binary());
        }
    }

    #[test]
    fn single_triple_is_sat() {
        let t = phylo_decide(&net(&[(0, 1, 2, R1)])).unwrap();
        assert!(t.is_binary());
        assert_eq!(t.relation(&[Var(0), Var(1), Var(2)]), Some(R1));
        let (x, y, z) = (t.leaf_of(Var(0)).unwrap(), t.leaf_of(Var(1)).unwrap(), t.leaf_of(Var(2)).unwrap());
        // y and z share the root child that x does not
        assert_ne!(t.yca(y, z), t.root());
        assert_eq!(t.yca(x, y), t.root());
        assert_eq!(t.yca(x, z), t.root());
    }

    #[test]
    fn conflicting_triples_are_unsat() {
        // x|yz and y|xz
        assert!(phylo_decide(&net(&[(0, 1, 2, R1), (2, 1, 0, R2)])).is_none());
        assert!(phylo_decide(&net(&[(0, 1, 2, R1), (1, 0, 2, R1)])).is_none());
    }

    #[test]
    fn total_equality_collapses_to_one_leaf() {
        let t = phylo_decide(&net(&[(0, 1, 2, R4)])).unwrap();
        let l = t.leaf_of(Var(0)).unwrap();
        assert_eq!(t.leaf_of(Var(1)), Some(l));
        assert_eq!(t.leaf_of(Var(2)), Some(l));
    }

    #[test]
    fn outgroup_cannot_equal_pair_member() {
        // x|yz with x = y forced by R4
        assert!(phylo_decide(&net(&[(0, 1, 2, R1), (0, 1, 1, R4)])).is_none());
        // x|xz is never true
        assert!(phylo_decide(&net(&[(0, 0, 2, R1)])).is_none());
        // z|xx holds whenever z differs from x
        assert!(phylo_decide(&net(&[(0, 0, 2, R3)])).is_some());
    }

    #[test]
    fn complete_network_counts() {
        let count = |m: u32| {
            let vars: Vec<Var> = (0..m).map(Var).collect();
            let mut c = 0;
            for_each_complete(&vars, &mut |_| {
                c += 1;
                true
            });
            c
        };
        // partitions x topologies: 1, 1+1, 1+3+3, 1+7*1+6*3+15
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 2);
        assert_eq!(count(3), 7);
        assert_eq!(count(4), 41);
    }
}
