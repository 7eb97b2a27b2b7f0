//! Instance generators from the lower-bound reductions: graph colouring to
//! cardinal directions, and cardinal directions to intervals.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::calculus::{Calculus, CalculusKind};
use crate::error::{Error, Result};
use crate::graph::NamedGraph;
use crate::instance::{Constraint, Instance};
use crate::network::Var;
use crate::td::{decompose, TdMode, TreeDecomposition};

/// A cardinal-direction instance satisfiable iff `g` is `k`-colourable.
///
/// Colour `i` is the point `c_i`; the `c_i` run diagonally south-west to
/// north-east, and each `h_j` sits in the corner between `c_j` and
/// `c_{j+1}` so that no vertex point can fall strictly between two colours.
pub fn coloring_to_cdc(g: &NamedGraph, k: usize) -> Result<Instance> {
    if k < 2 {
        return Err(Error::invalid("k", "at least two colours are required"));
    }
    let calc = Arc::new(Calculus::new(CalculusKind::Cardinal));
    let z: Vec<String> = g.names.iter().map(|n| format!("z_{n}")).collect();
    let c: Vec<String> = (1..=k).map(|i| format!("c{i}")).collect();
    let h: Vec<String> = (1..k).map(|i| format!("h{i}")).collect();
    let mut inst = Instance::with_variables(calc, z.iter().chain(&c).chain(&h).cloned())
        .map_err(|e| Error::invalid("graph", format!("vertex names clash with colour points: {e}")))?;

    for i in 0..k - 1 {
        inst.constrain(&[&c[i], &c[i + 1]], &["SW"])?;
        inst.constrain(&[&h[i], &c[i]], &["N"])?;
        inst.constrain(&[&h[i], &c[i + 1]], &["W"])?;
    }
    for zv in &z {
        inst.constrain(&[zv, &c[0]], &["=", "NE"])?;
        inst.constrain(&[zv, &c[k - 1]], &["=", "SW"])?;
    }
    for zv in &z {
        for ci in &c[1..k - 1] {
            inst.constrain(&[zv, ci], &["SW", "=", "NE"])?;
        }
    }
    for zv in &z {
        for hj in &h {
            inst.constrain(&[zv, hj], &["S", "SW", "W", "NW", "N", "NE", "E", "="])?;
        }
    }
    for (u, v) in g.graph.edges() {
        inst.constrain(&[&z[u], &z[v]], &["SW", "NE"])?;
    }
    Ok(inst)
}

/// A decomposition of the primal graph of `coloring_to_cdc(g, k)`: a
/// decomposition of `g` with every colour and corner point added to each
/// bag. Its width is the width found for `g` plus `2k - 1`.
pub fn coloring_decomposition(g: &NamedGraph, k: usize, mode: TdMode) -> Result<TreeDecomposition> {
    let td = decompose(&g.graph, mode)?;
    let n = g.graph.len();
    let shared = (n..n + 2 * k - 1).map(|i| Var(i as u32));
    let bags = (0..td.len())
        .map(|t| {
            td.bag(t)
                .iter()
                .map(|&x| Var(g.graph.position(x).expect("bag vertex in graph") as u32))
                .chain(shared.clone())
                .collect()
        })
        .collect();
    TreeDecomposition::new((0..td.len()).map(|t| td.parent(t)).collect(), bags)
}

/// Interval relations equivalent to each cardinal relation when the point
/// `(a, b)` is read as the interval `[a, b]`.
pub const CDC_TO_IA: [(&str, &[&str]); 9] = [
    ("=", &["e"]),
    ("N", &["si"]),
    ("E", &["f"]),
    ("S", &["s"]),
    ("W", &["fi"]),
    ("NE", &["oi", "mi", "pi"]),
    ("SE", &["d"]),
    ("SW", &["p", "m", "o"]),
    ("NW", &["di"]),
];

/// Rewrites a cardinal-direction instance of plain disjunctions into an
/// interval instance with the same variables and scopes.
pub fn cdc_to_ia(inst: &Instance) -> Result<Instance> {
    let src = inst.calculus();
    if src.kind() != CalculusKind::Cardinal {
        return Err(Error::invalid("calculus", format!("expected cdc, found {}", src.name())));
    }
    let ia = Arc::new(Calculus::new(CalculusKind::Interval));
    let mut out = Instance::new(ia.clone());
    for &v in inst.vars() {
        let w = out.add_variable(inst.name(v))?;
        debug_assert_eq!(v, w);
    }
    for (i, c) in inst.constraints().iter().enumerate() {
        let rels = c
            .relations()
            .ok_or_else(|| Error::invalid(format!("constraints[{i}]"), "only plain disjunctions can be translated"))?;
        let mut mapped = BTreeSet::new();
        for r in rels {
            let name = src.relation_name(r);
            let (_, targets) = CDC_TO_IA.iter().find(|(n, _)| *n == name).expect("every cdc relation is mapped");
            mapped.extend(targets.iter().map(|t| ia.relation_id(t).expect("ia relation")));
        }
        let mapped: Vec<_> = mapped.into_iter().collect();
        out.add_constraint(Constraint::disjunction(&ia, c.scope(), &mapped)?)?;
    }
    Ok(out)
}
