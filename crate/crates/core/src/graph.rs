//! Simple undirected graphs with labeled vertices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::network::Var;

/// Undirected simple graph. Vertices are positions `0..n`, each carrying a
/// variable label; adjacency lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<Var>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on vertices labeled `Var(0)..Var(n-1)`.
    pub fn new(n: usize) -> Self {
        Self::with_labels((0..n as u32).map(Var).collect())
    }

    pub fn with_labels(labels: Vec<Var>) -> Self {
        let n = labels.len();
        Graph {
            labels,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Var] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Var {
        self.labels[v]
    }

    pub fn position(&self, label: Var) -> Option<usize> {
        // labels are sorted for graphs built from instances, but not in general
        if self.labels.windows(2).all(|w| w[0] < w[1]) {
            self.labels.binary_search(&label).ok()
        } else {
            self.labels.iter().position(|&l| l == label)
        }
    }

    /// Adds `u - v`. Self-loops are ignored; duplicate edges are merged.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        for (a, b) in [(u, v), (v, u)] {
            if let Err(i) = self.adj[a].binary_search(&b) {
                self.adj[a].insert(i, b);
            }
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as label pairs.
    pub fn labeled_edges(&self) -> Vec<(Var, Var)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| (self.labels[u], self.labels[v]))
            .collect()
    }

    /// k-colourability by exhaustive search; only for small graphs.
    pub fn is_colourable(&self, k: usize) -> bool {
        fn go(g: &Graph, colour: &mut Vec<usize>, v: usize, k: usize) -> bool {
            if v == g.len() {
                return true;
            }
            // symmetry: vertex v may only open one new colour
            let used = colour[..v].iter().copied().max().map_or(0, |m| m + 1);
            for c in 0..k.min(used + 1) {
                if g.neighbors(v).iter().all(|&u| u >= v || colour[u] != c) {
                    colour[v] = c;
                    if go(g, colour, v + 1, k) {
                        return true;
                    }
                }
            }
            false
        }
        let mut colour = vec![usize::MAX; self.len()];
        go(self, &mut colour, 0, k)
    }
}

/// A graph read from edge-list text, with the original vertex names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub names: Vec<String>,
    pub graph: Graph,
}

/// Parses an edge list: one `u v` pair per line, `#` starts a comment. A line
/// with a single name declares an isolated vertex. Vertices are numbered in
/// order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<NamedGraph> {
    let mut names: Vec<String> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let parts: Vec<&str> = line.split_whitespace().collect();
        let mut id = |name: &str| {
            *index.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            })
        };
        match parts.as_slice() {
            [] => {}
            [a] => {
                id(a);
            }
            [a, b] => {
                let (u, v) = (id(a), id(b));
                if u == v {
                    return Err(Error::Syntax {
                        line: lineno + 1,
                        column: 1,
                        msg: format!("self-loop on `{a}`"),
                    });
                }
                edges.push((u, v));
            }
            _ => {
                return Err(Error::Syntax {
                    line: lineno + 1,
                    column: 1,
                    msg: "expected `u v`".into(),
                })
            }
        }
    }
    let graph = Graph::from_edges(names.len(), &edges);
    Ok(NamedGraph { names, graph })
}

pub fn write_edge_list(g: &NamedGraph) -> String {
    let mut out = String::new();
    let edges = g.graph.edges();
    for v in 0..g.graph.len() {
        if g.graph.degree(v) == 0 {
            out.push_str(&g.names[v]);
            out.push('\n');
        }
    }
    for (u, v) in edges {
        out.push_str(&format!("{} {}\n", g.names[u], g.names[v]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_symmetric_and_deduplicated() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        g.add_edge(2, 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(1, 0));
    }

    #[test]
    fn colourability() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(!k3.is_colourable(2));
        assert!(k3.is_colourable(3));
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(!c5.is_colourable(2));
        assert!(c5.is_colourable(3));
        assert!(Graph::new(0).is_colourable(1));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = parse_edge_list("# triangle\na b\nb c\nc a\nd\n").unwrap();
        assert_eq!(g.names, vec!["a", "b", "c", "d"]);
        assert_eq!(g.graph.edge_count(), 3);
        let again = parse_edge_list(&write_edge_list(&g)).unwrap();
        assert_eq!(again.graph.edge_count(), 3);
        assert_eq!(again.graph.len(), 4);
        assert!(parse_edge_list("a b c").is_err());
        assert!(parse_edge_list("a a").is_err());
    }
}
