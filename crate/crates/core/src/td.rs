//! Tree decompositions: construction from elimination orderings (min-fill
//! or exact branch and bound), validation, and conversion to nice form.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::network::Var;

/// A rooted tree with a bag of vertex labels per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    parent: Vec<Option<usize>>,
    bags: Vec<Vec<Var>>,
    root: usize,
}

impl TreeDecomposition {
    /// Checks that `parent` describes a single rooted tree.
    pub fn new(parent: Vec<Option<usize>>, mut bags: Vec<Vec<Var>>) -> Result<Self> {
        if parent.len() != bags.len() || parent.is_empty() {
            return Err(Error::InvalidDecomposition("need one bag per node and at least one node".into()));
        }
        let roots: Vec<usize> = (0..parent.len()).filter(|&i| parent[i].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidDecomposition(format!("expected one root, found {}", roots.len())));
        }
        if parent.iter().flatten().any(|&p| p >= parent.len()) {
            return Err(Error::InvalidDecomposition("parent out of range".into()));
        }
        // every node must reach the root
        let mut state = vec![0u8; parent.len()]; // 0 new, 1 on path, 2 ok
        state[roots[0]] = 2;
        for start in 0..parent.len() {
            let mut path = Vec::new();
            let mut cur = start;
            while state[cur] == 0 {
                state[cur] = 1;
                path.push(cur);
                cur = parent[cur].unwrap();
            }
            if state[cur] == 1 {
                return Err(Error::InvalidDecomposition(format!("cycle through node {cur}")));
            }
            for p in path {
                state[p] = 2;
            }
        }
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        Ok(TreeDecomposition {
            parent,
            bags,
            root: roots[0],
        })
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn bag(&self, t: usize) -> &[Var] {
        &self.bags[t]
    }

    pub fn bags(&self) -> &[Vec<Var>] {
        &self.bags
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.len()];
        for (t, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(t);
            }
        }
        ch
    }

    /// Largest bag size minus one; `-1` when every bag is empty.
    pub fn width(&self) -> isize {
        self.bags.iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
    }

    /// Builds a decomposition from an elimination ordering of graph
    /// positions: each vertex's bag is itself plus its later neighbours in
    /// the filled graph; its parent is the bag of the earliest of those.
    pub fn from_elimination_order(g: &Graph, order: &[usize]) -> Self {
        let n = g.len();
        if n == 0 {
            return TreeDecomposition {
                parent: vec![None],
                bags: vec![Vec::new()],
                root: 0,
            };
        }
        debug_assert_eq!(order.len(), n);
        let mut pos = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
        let mut parent = vec![None; n];
        let mut bags = Vec::with_capacity(n);
        for (i, &v) in order.iter().enumerate() {
            let later: Vec<usize> = adj[v].iter().copied().filter(|&u| pos[u] > i).collect();
            for (a, &x) in later.iter().enumerate() {
                for &y in &later[a + 1..] {
                    adj[x].insert(y);
                    adj[y].insert(x);
                }
            }
            parent[i] = later.iter().map(|&u| pos[u]).min();
            let mut bag: Vec<Var> = later.iter().map(|&u| g.label(u)).collect();
            bag.push(g.label(v));
            bags.push(bag);
        }
        // join the trees of different components under the last node
        let root = n - 1;
        for (i, p) in parent.iter_mut().enumerate() {
            if p.is_none() && i != root {
                *p = Some(root);
            }
        }
        TreeDecomposition::new(parent, bags).expect("elimination yields a tree")
    }

    /// One line per node: `id parent bag...`, with `-` as the root's parent.
    pub fn to_text(&self, name: &dyn Fn(Var) -> String) -> String {
        let mut out = String::new();
        for t in 0..self.len() {
            let p = self.parent[t].map_or("-".to_string(), |p| p.to_string());
            out.push_str(&format!("{t} {p}"));
            for &v in &self.bags[t] {
                out.push(' ');
                out.push_str(&name(v));
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format. Node ids may be any distinct tokens;
    /// `#` starts a comment.
    pub fn parse_text(text: &str, lookup: &dyn Fn(&str) -> Option<Var>) -> Result<Self> {
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut rows: Vec<(usize, String, Vec<Var>)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            let mut parts = line.split_whitespace();
            let Some(id) = parts.next() else { continue };
            let err = |msg: String| Error::InvalidDecomposition(format!("line {}: {msg}", lineno + 1));
            let parent = parts.next().ok_or_else(|| err("missing parent".into()))?;
            let bag = parts
                .map(|n| lookup(n).ok_or_else(|| err(format!("unknown variable `{n}`"))))
                .collect::<Result<Vec<Var>>>()?;
            if ids.insert(id.to_string(), rows.len()).is_some() {
                return Err(err(format!("duplicate node id `{id}`")));
            }
            rows.push((lineno + 1, parent.to_string(), bag));
        }
        let mut parent = Vec::with_capacity(rows.len());
        let mut bags = Vec::with_capacity(rows.len());
        for (lineno, p, bag) in rows {
            parent.push(match p.as_str() {
                "-" => None,
                p => Some(*ids.get(p).ok_or_else(|| {
                    Error::InvalidDecomposition(format!("line {lineno}: unknown parent `{p}`"))
                })?),
            });
            bags.push(bag);
        }
        TreeDecomposition::new(parent, bags)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TdMode {
    /// Min-fill elimination ordering.
    Heuristic,
    /// Branch and bound over elimination orderings; at most 64 vertices.
    Exact,
}

pub fn decompose(g: &Graph, mode: TdMode) -> Result<TreeDecomposition> {
    let order = match mode {
        TdMode::Heuristic => min_fill_order(g),
        TdMode::Exact => exact_order(g)?,
    };
    Ok(TreeDecomposition::from_elimination_order(g, &order))
}

/// Greedy min-fill ordering; ties go to lower degree, then lower position.
/// Fill counts are maintained incrementally as edges appear and vertices
/// disappear.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.len();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    // |a's neighbours outside b's neighbourhood|, excluding b itself
    let outside = |adj: &[BTreeSet<usize>], a: usize, b: usize| {
        adj[a].iter().filter(|&&x| x != b && !adj[b].contains(&x)).count()
    };
    let mut fill: Vec<usize> = (0..n)
        .map(|v| {
            let ns: Vec<usize> = adj[v].iter().copied().collect();
            let present: usize = ns.iter().map(|&a| adj[a].iter().filter(|x| adj[v].contains(x)).count()).sum();
            ns.len() * ns.len().saturating_sub(1) / 2 - present / 2
        })
        .collect();
    let mut key: Vec<(usize, usize, usize)> = (0..n).map(|v| (fill[v], adj[v].len(), v)).collect();
    let mut queue: BTreeSet<(usize, usize, usize)> = key.iter().copied().collect();
    let mut order = Vec::with_capacity(n);
    let mut touched = BTreeSet::new();
    while let Some((_, _, v)) = queue.pop_first() {
        order.push(v);
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if adj[a].contains(&b) {
                    continue;
                }
                let (small, large) = if adj[a].len() <= adj[b].len() { (a, b) } else { (b, a) };
                for &c in &adj[small] {
                    if adj[large].contains(&c) {
                        fill[c] -= 1;
                        touched.insert(c);
                    }
                }
                fill[a] += outside(&adj, a, b);
                fill[b] += outside(&adj, b, a);
                adj[a].insert(b);
                adj[b].insert(a);
                touched.insert(a);
                touched.insert(b);
            }
        }
        for &u in &ns {
            fill[u] -= outside(&adj, u, v);
            adj[u].remove(&v);
            touched.insert(u);
        }
        adj[v].clear();
        for u in std::mem::take(&mut touched) {
            if queue.remove(&key[u]) {
                key[u] = (fill[u], adj[u].len(), u);
                queue.insert(key[u]);
            }
        }
    }
    order
}

/// Width of an elimination ordering.
pub fn order_width(g: &Graph, order: &[usize]) -> isize {
    TreeDecomposition::from_elimination_order(g, order).width()
}

/// An elimination ordering of minimum width, by depth-first branch and
/// bound. States are memoized on the set of remaining vertices, which
/// determines the filled graph.
pub fn exact_order(g: &Graph) -> Result<Vec<usize>> {
    let n = g.len();
    if n > 64 {
        return Err(Error::InvalidDecomposition(format!(
            "exact mode supports at most 64 vertices, graph has {n}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let heuristic = min_fill_order(g);
    let mut search = Exact {
        best_width: order_width(g, &heuristic).max(0) as u32,
        best: heuristic,
        memo: HashMap::new(),
        order: Vec::with_capacity(n),
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.go(&adj, all, 0);
    Ok(search.best)
}

struct Exact {
    best_width: u32,
    best: Vec<usize>,
    memo: HashMap<u64, u32>,
    order: Vec<usize>,
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn eliminate(adj: &[u64], v: usize) -> Vec<u64> {
    let mut next = adj.to_vec();
    let nv = adj[v];
    for u in bits(nv) {
        next[u] = (next[u] | nv) & !(1 << u) & !(1 << v);
    }
    next[v] = 0;
    next
}

/// Degeneracy of the graph induced by `remaining`: a treewidth lower bound.
fn degeneracy(adj: &[u64], mut remaining: u64) -> u32 {
    let mut best = 0;
    while remaining != 0 {
        let (v, d) = bits(remaining)
            .map(|v| (v, (adj[v] & remaining).count_ones()))
            .min_by_key(|&(_, d)| d)
            .unwrap();
        best = best.max(d);
        remaining &= !(1 << v);
    }
    best
}

impl Exact {
    fn go(&mut self, adj: &[u64], remaining: u64, width: u32) {
        let r = remaining.count_ones();
        if r == 0 || r - 1 <= width {
            // any completion keeps the width
            let w = width.max(r.saturating_sub(1));
            if w < self.best_width {
                self.best_width = w;
                let mut order = self.order.clone();
                order.extend(bits(remaining));
                self.best = order;
            }
            return;
        }
        if let Some(&seen) = self.memo.get(&remaining) {
            if seen <= width {
                return;
            }
        }
        self.memo.insert(remaining, width);
        if width.max(degeneracy(adj, remaining)) >= self.best_width {
            return;
        }
        // a simplicial vertex can always be eliminated first
        let simplicial = bits(remaining).find(|&v| {
            let nv = adj[v];
            bits(nv).all(|u| (adj[u] | 1 << u) & nv == nv)
        });
        let mut candidates: Vec<usize> = match simplicial {
            Some(v) => vec![v],
            None => bits(remaining).collect(),
        };
        candidates.sort_by_key(|&v| adj[v].count_ones());
        for v in candidates {
            let w = width.max(adj[v].count_ones());
            if w >= self.best_width {
                continue;
            }
            let next = eliminate(adj, v);
            self.order.push(v);
            self.go(&next, remaining & !(1 << v), w);
            self.order.pop();
        }
    }
}

/// A property of tree decompositions that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UncoveredVertex(Var),
    UncoveredEdge(Var, Var),
    Disconnected(Var),
    UnknownVertex(Var),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UncoveredVertex(v) => write!(f, "vertex {v} is in no bag"),
            Violation::UncoveredEdge(u, v) => write!(f, "edge {u}-{v} is in no bag"),
            Violation::Disconnected(v) => write!(f, "bags containing {v} are not connected"),
            Violation::UnknownVertex(v) => write!(f, "bag member {v} is not a graph vertex"),
        }
    }
}

/// Checks vertex coverage, edge coverage and connectedness of occurrences.
pub fn validate(td: &TreeDecomposition, g: &Graph) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let mut occ: HashMap<Var, Vec<usize>> = HashMap::new();
    for (t, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            occ.entry(v).or_default().push(t);
        }
    }
    let known: BTreeSet<Var> = g.labels().iter().copied().collect();
    let mut unknown: Vec<Var> = occ.keys().copied().filter(|v| !known.contains(v)).collect();
    unknown.sort_unstable();
    out.extend(unknown.into_iter().map(Violation::UnknownVertex));
    for &v in g.labels() {
        if !occ.contains_key(&v) {
            out.push(Violation::UncoveredVertex(v));
        }
    }
    for (u, v) in g.labeled_edges() {
        let covered = occ
            .get(&u)
            .map_or(false, |ts| ts.iter().any(|&t| td.bags[t].binary_search(&v).is_ok()));
        if !covered {
            out.push(Violation::UncoveredEdge(u, v));
        }
    }
    // occurrences are connected iff exactly one of them has its parent
    // outside the occurrence set
    for &v in g.labels() {
        if let Some(ts) = occ.get(&v) {
            let tops = ts
                .iter()
                .filter(|&&t| td.parent[t].map_or(true, |p| td.bags[p].binary_search(&v).is_err()))
                .count();
            if tops != 1 {
                out.push(Violation::Disconnected(v));
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(Var),
    Forget(Var),
    Join,
}

impl NodeKind {
    pub fn label(&self) -> &'static str {
        match self {
            NodeKind::Leaf => "leaf",
            NodeKind::Introduce(_) => "introduce",
            NodeKind::Forget(_) => "forget",
            NodeKind::Join => "join",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    pub bag: Vec<Var>,
    pub children: Vec<usize>,
    pub parent: Option<usize>,
}

/// Nice tree decomposition. Nodes are numbered so that children come
/// before their parent; the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn node(&self, t: usize) -> &NiceNode {
        &self.nodes[t]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> isize {
        self.nodes.iter().map(|n| n.bag.len() as isize).max().unwrap_or(0) - 1
    }

    /// The underlying plain decomposition.
    pub fn as_tree_decomposition(&self) -> TreeDecomposition {
        TreeDecomposition::new(
            self.nodes.iter().map(|n| n.parent).collect(),
            self.nodes.iter().map(|n| n.bag.clone()).collect(),
        )
        .expect("nice decomposition is a tree")
    }

    /// Variables occurring in bags of the subtree rooted at `t`.
    pub fn subtree_vars(&self, t: usize) -> Vec<Var> {
        let mut out = BTreeSet::new();
        let mut stack = vec![t];
        while let Some(s) = stack.pop() {
            out.extend(self.nodes[s].bag.iter().copied());
            stack.extend(self.nodes[s].children.iter().copied());
        }
        out.into_iter().collect()
    }

    /// Checks the node-kind rules: empty root and leaf bags, introduce and
    /// forget change the bag by one variable, join children share the bag.
    pub fn check_nice(&self) -> Result<()> {
        let bad = |t: usize, msg: &str| Err(Error::InvalidDecomposition(format!("node {t}: {msg}")));
        let root = self.root();
        if !self.nodes[root].bag.is_empty() || self.nodes[root].parent.is_some() {
            return bad(root, "root must have an empty bag");
        }
        for (t, n) in self.nodes.iter().enumerate() {
            if n.children.iter().any(|&c| c >= t || self.nodes[c].parent != Some(t)) {
                return bad(t, "children must precede their parent");
            }
            let child_bag = |i: usize| &self.nodes[n.children[i]].bag;
            match n.kind {
                NodeKind::Leaf => {
                    if !n.children.is_empty() || !n.bag.is_empty() {
                        return bad(t, "leaf must be childless with an empty bag");
                    }
                }
                NodeKind::Introduce(v) => {
                    let mut expect = child_bag(0).clone();
                    expect.push(v);
                    expect.sort_unstable();
                    if n.children.len() != 1 || child_bag(0).contains(&v) || expect != n.bag {
                        return bad(t, "introduce must add exactly its variable");
                    }
                }
                NodeKind::Forget(v) => {
                    let mut expect = n.bag.clone();
                    expect.push(v);
                    expect.sort_unstable();
                    if n.children.len() != 1 || n.bag.contains(&v) || &expect != child_bag(0) {
                        return bad(t, "forget must remove exactly its variable");
                    }
                }
                NodeKind::Join => {
                    if n.children.len() != 2 || child_bag(0) != &n.bag || child_bag(1) != &n.bag {
                        return bad(t, "join needs two children with the same bag");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn kind_counts(&self) -> [usize; 4] {
        let mut c = [0; 4];
        for n in &self.nodes {
            c[match n.kind {
                NodeKind::Leaf => 0,
                NodeKind::Introduce(_) => 1,
                NodeKind::Forget(_) => 2,
                NodeKind::Join => 3,
            }] += 1;
        }
        c
    }
}

struct NiceBuilder {
    nodes: Vec<NiceNode>,
    /// Weighted neighbours by label, when weights guide the introduce order.
    adj: HashMap<Var, Vec<(Var, f64)>>,
}

impl NiceBuilder {
    fn push(&mut self, kind: NodeKind, bag: Vec<Var>, children: Vec<usize>) -> usize {
        let id = self.nodes.len();
        for &c in &children {
            self.nodes[c].parent = Some(id);
        }
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
            parent: None,
        });
        id
    }

    /// Forget what `target` lacks, then introduce what it adds: next the
    /// variable with the most edge weight into the bag, ties by id.
    /// Returns the new top node.
    fn chain(&mut self, mut top: usize, target: &[Var]) -> usize {
        let current = self.nodes[top].bag.clone();
        for &v in current.iter().filter(|v| target.binary_search(v).is_err()) {
            let bag: Vec<Var> = self.nodes[top].bag.iter().copied().filter(|&x| x != v).collect();
            top = self.push(NodeKind::Forget(v), bag, vec![top]);
        }
        let mut pending: Vec<Var> = target.iter().copied().filter(|v| current.binary_search(v).is_err()).collect();
        while !pending.is_empty() {
            let bag = &self.nodes[top].bag;
            // weight towards the bag; on an empty bag, total weight
            let score = |v: &Var| -> f64 {
                self.adj.get(v).map_or(0.0, |ns| {
                    ns.iter()
                        .filter(|(u, _)| bag.is_empty() || bag.binary_search(u).is_ok())
                        .map(|(_, w)| w)
                        .sum()
                })
            };
            let best = (0..pending.len())
                .max_by(|&i, &j| {
                    score(&pending[i])
                        .total_cmp(&score(&pending[j]))
                        .then(pending[j].cmp(&pending[i]))
                })
                .unwrap();
            let v = pending.remove(best);
            let mut bag = self.nodes[top].bag.clone();
            let i = bag.binary_search(&v).unwrap_err();
            bag.insert(i, v);
            top = self.push(NodeKind::Introduce(v), bag, vec![top]);
        }
        top
    }
}

/// Converts a decomposition to nice form of the same width: introduce and
/// forget chains along tree edges, left-deep binary joins, and a forget
/// chain above the old root. Introduce chains follow variable order.
pub fn make_nice(td: &TreeDecomposition) -> NiceDecomposition {
    build_nice(td, HashMap::new())
}

/// Like [`make_nice`], but each introduce chain next brings in the
/// variable with the largest total weight of edges into the current bag.
/// Weights of repeated edges add up.
pub fn make_nice_weighted(td: &TreeDecomposition, edges: impl IntoIterator<Item = (Var, Var, f64)>) -> NiceDecomposition {
    let mut adj: HashMap<Var, Vec<(Var, f64)>> = HashMap::new();
    for (u, v, w) in edges {
        if u != v {
            adj.entry(u).or_default().push((v, w));
            adj.entry(v).or_default().push((u, w));
        }
    }
    build_nice(td, adj)
}

fn build_nice(td: &TreeDecomposition, adj: HashMap<Var, Vec<(Var, f64)>>) -> NiceDecomposition {
    let children = td.children();
    // iterative post-order over the original tree
    let mut post = Vec::with_capacity(td.len());
    let mut stack = vec![(td.root, false)];
    while let Some((t, done)) = stack.pop() {
        if done {
            post.push(t);
        } else {
            stack.push((t, true));
            for &c in children[t].iter().rev() {
                stack.push((c, false));
            }
        }
    }
    let mut b = NiceBuilder { nodes: Vec::new(), adj };
    let mut top = vec![usize::MAX; td.len()];
    for t in post {
        let bag = &td.bags[t];
        let tops: Vec<usize> = if children[t].is_empty() {
            let leaf = b.push(NodeKind::Leaf, Vec::new(), Vec::new());
            vec![b.chain(leaf, bag)]
        } else {
            children[t].iter().map(|&c| b.chain(top[c], bag)).collect()
        };
        let mut acc = tops[0];
        for &other in &tops[1..] {
            acc = b.push(NodeKind::Join, bag.clone(), vec![acc, other]);
        }
        top[t] = acc;
    }
    b.chain(top[td.root], &[]);
    NiceDecomposition { nodes: b.nodes }
}
