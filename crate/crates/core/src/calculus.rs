//! Calculus descriptors and the calculus-independent certificate machinery:
//! implication, completion and enumeration of complete satisfiable networks.

use std::fmt;
use std::path::Path;

use crate::calculi::cardinal::{cardinal_ordinal, point_ordinal, CDC_NAMES};
use crate::calculi::interval::{block_ordinal, IA_NAMES};
use crate::calculi::ordinal::Ordinal;
use crate::calculi::phylo::{self, PHYLO_NAMES};
use crate::calculi::region::{CompositionTable, RegionAlgebra};
use crate::error::{Error, Result};
use crate::instance::{Constraint, Instance};
use crate::network::{all_tuples, AtomicNetwork, RelId, Tuple, Var};

/// The shipped calculi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CalculusKind {
    /// `(Q; <, =, >)`
    Point,
    /// Allen's interval algebra
    Interval,
    /// Block algebra of the given dimension (1..=3)
    Block(usize),
    /// Cardinal direction calculus
    Cardinal,
    Rcc5,
    Rcc8,
    /// Rooted binary trees under `x|yz`
    Phylogeny,
}

impl CalculusKind {
    pub const ALL: [CalculusKind; 9] = [
        CalculusKind::Point,
        CalculusKind::Interval,
        CalculusKind::Block(1),
        CalculusKind::Block(2),
        CalculusKind::Block(3),
        CalculusKind::Cardinal,
        CalculusKind::Rcc5,
        CalculusKind::Rcc8,
        CalculusKind::Phylogeny,
    ];

    pub fn name(self) -> String {
        match self {
            CalculusKind::Point => "pa".into(),
            CalculusKind::Interval => "ia".into(),
            CalculusKind::Block(d) => format!("ba{d}"),
            CalculusKind::Cardinal => "cdc".into(),
            CalculusKind::Rcc5 => "rcc5".into(),
            CalculusKind::Rcc8 => "rcc8".into(),
            CalculusKind::Phylogeny => "phylo".into(),
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        Ok(match lower.as_str() {
            "pa" | "point" => CalculusKind::Point,
            "ia" | "allen" | "interval" => CalculusKind::Interval,
            "cdc" | "cardinal" => CalculusKind::Cardinal,
            "rcc5" => CalculusKind::Rcc5,
            "rcc8" => CalculusKind::Rcc8,
            "phylo" | "phylogeny" => CalculusKind::Phylogeny,
            _ => match lower.strip_prefix("ba").and_then(|d| d.parse().ok()) {
                Some(d @ 1..=3) => CalculusKind::Block(d),
                _ => return Err(Error::UnknownCalculus(name.to_string())),
            },
        })
    }

    pub fn arity(self) -> usize {
        match self {
            CalculusKind::Phylogeny => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CalculusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicRelation {
    pub id: RelId,
    pub name: String,
    pub arity: usize,
    pub is_diagonal: bool,
}

#[derive(Clone, Debug)]
enum Backend {
    Ordinal(Ordinal),
    Region(RegionAlgebra),
    Phylo,
}

/// A JEPD structure of basic relations together with its decider,
/// enumerators and (where available) model realizer.
#[derive(Clone, Debug)]
pub struct Calculus {
    kind: CalculusKind,
    relations: Vec<BasicRelation>,
    arity: usize,
    diagonal: RelId,
    backend: Backend,
}

impl Calculus {
    /// The calculus with its embedded tables.
    pub fn new(kind: CalculusKind) -> Self {
        let (names, backend): (Vec<String>, Backend) = match kind {
            CalculusKind::Point => (owned(&["<", "=", ">"]), Backend::Ordinal(point_ordinal())),
            CalculusKind::Interval => (owned(&IA_NAMES), Backend::Ordinal(block_ordinal(1).0)),
            CalculusKind::Block(d) => {
                let (ord, names) = block_ordinal(d);
                (names, Backend::Ordinal(ord))
            }
            CalculusKind::Cardinal => (owned(&CDC_NAMES), Backend::Ordinal(cardinal_ordinal())),
            CalculusKind::Rcc5 => return Self::from_table(kind, &CompositionTable::rcc5()).unwrap(),
            CalculusKind::Rcc8 => return Self::from_table(kind, &CompositionTable::rcc8()).unwrap(),
            CalculusKind::Phylogeny => (owned(&PHYLO_NAMES), Backend::Phylo),
        };
        let diagonal = match kind {
            CalculusKind::Point => 1,
            CalculusKind::Cardinal => 0,
            CalculusKind::Phylogeny => phylo::R4,
            _ => names.len() as RelId - 1, // e, (e,e), ...
        };
        Self::assemble(kind, names, diagonal, backend)
    }

    /// RCC5 or RCC8 over a custom composition table.
    pub fn from_table(kind: CalculusKind, table: &CompositionTable) -> Result<Self> {
        if !matches!(kind, CalculusKind::Rcc5 | CalculusKind::Rcc8) {
            return Err(Error::invalid("table", format!("{kind} is not table-driven")));
        }
        let algebra = RegionAlgebra::from_table(table)?;
        let diagonal = algebra.identity;
        Ok(Self::assemble(
            kind,
            table.relations.clone(),
            diagonal,
            Backend::Region(algebra),
        ))
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(Self::new(CalculusKind::from_name(name)?))
    }

    /// Like [`Calculus::by_name`], but RCC tables are read from
    /// `<dir>/<name>.json` when such a file exists.
    pub fn load(name: &str, table_dir: Option<&Path>) -> Result<Self> {
        let kind = CalculusKind::from_name(name)?;
        if let (Some(dir), CalculusKind::Rcc5 | CalculusKind::Rcc8) = (table_dir, kind) {
            let path = dir.join(format!("{}.json", kind.name()));
            if path.exists() {
                let text = std::fs::read_to_string(&path)?;
                let table: CompositionTable = serde_json::from_str(&text).map_err(|e| {
                    Error::invalid(path.display().to_string(), e.to_string())
                })?;
                return Self::from_table(kind, &table);
            }
        }
        Ok(Self::new(kind))
    }

    fn assemble(kind: CalculusKind, names: Vec<String>, diagonal: RelId, backend: Backend) -> Self {
        let arity = kind.arity();
        let relations = names
            .into_iter()
            .enumerate()
            .map(|(i, name)| BasicRelation {
                id: i as RelId,
                name,
                arity,
                is_diagonal: i as RelId == diagonal,
            })
            .collect();
        Calculus {
            kind,
            relations,
            arity,
            diagonal,
            backend,
        }
    }

    pub fn kind(&self) -> CalculusKind {
        self.kind
    }

    pub fn name(&self) -> String {
        self.kind.name()
    }

    pub fn relations(&self) -> &[BasicRelation] {
        &self.relations
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    /// Every shipped calculus has relations of a single arity.
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn arities(&self) -> Vec<usize> {
        vec![self.arity]
    }

    pub fn relation_id(&self, name: &str) -> Option<RelId> {
        self.relations
            .iter()
            .position(|r| r.name == name)
            .map(|i| i as RelId)
    }

    pub fn relation_name(&self, id: RelId) -> &str {
        &self.relations[id as usize].name
    }

    pub fn diagonal(&self) -> RelId {
        self.diagonal
    }

    pub(crate) fn ordinal(&self) -> Option<&Ordinal> {
        match &self.backend {
            Backend::Ordinal(o) => Some(o),
            _ => None,
        }
    }

    fn region(&self) -> Option<&RegionAlgebra> {
        match &self.backend {
            Backend::Region(r) => Some(r),
            _ => None,
        }
    }

    fn names(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.name.clone()).collect()
    }

    /// The composition table in use, for table-driven calculi.
    pub fn composition_table(&self) -> Option<CompositionTable> {
        self.region().map(|r| r.to_table(&self.names()))
    }

    /// Relation-algebra self-consistency problems of the composition table;
    /// `None` for calculi that are not table-driven.
    pub fn table_problems(&self) -> Option<Vec<String>> {
        self.region().map(|r| r.consistency_problems(&self.names()))
    }

    /// Converse of a binary relation.
    pub fn converse(&self, rel: RelId) -> Option<RelId> {
        if self.arity != 2 {
            return None;
        }
        match &self.backend {
            Backend::Ordinal(o) => {
                // swap the roles of both objects in every dimension
                let locals: Vec<u8> = o
                    .locals(rel)
                    .iter()
                    .map(|&l| match o.shape {
                        crate::calculi::ordinal::Shape::Point => 2 - l,
                        crate::calculi::ordinal::Shape::Interval => {
                            crate::calculi::interval::ia_converse(l)
                        }
                    })
                    .collect();
                Some(o.combine(&locals))
            }
            Backend::Region(r) => Some(r.converse[rel as usize]),
            Backend::Phylo => None,
        }
    }

    /// Decides satisfiability of an atomic network. Tuples without an entry
    /// are unconstrained.
    pub fn is_satisfiable(&self, net: &AtomicNetwork) -> bool {
        if net
            .entries()
            .iter()
            .any(|(t, r)| t.len() != self.arity || *r as usize >= self.relations.len())
        {
            return false;
        }
        match &self.backend {
            Backend::Ordinal(o) => o.decide(net).is_some(),
            Backend::Region(r) => r.decide(net),
            Backend::Phylo => phylo::phylo_decide(net).is_some(),
        }
    }

    /// Whether every tuple over the network's variables has an entry.
    pub fn is_complete(&self, net: &AtomicNetwork) -> bool {
        net.len() == net.vars().len().pow(self.arity as u32)
    }

    /// Whether [`Calculus::for_each_complete`] uses a dedicated enumerator
    /// rather than the generic filter.
    pub fn has_specialized_enumerator(&self) -> bool {
        !matches!(self.backend, Backend::Region(_))
    }

    /// Visits every complete satisfiable network over `vars` exactly once.
    /// Stops early when `visit` returns `false`; returns `false` in that case.
    pub fn for_each_complete(&self, vars: &[Var], visit: &mut dyn FnMut(AtomicNetwork) -> bool) -> bool {
        let vars = sorted(vars);
        match &self.backend {
            Backend::Ordinal(o) => {
                if vars.is_empty() {
                    return visit(AtomicNetwork::new([]));
                }
                o.for_each_complete(&vars, visit)
            }
            Backend::Phylo => phylo::for_each_complete(&vars, visit),
            Backend::Region(_) => self.generic_complete(&vars, None, visit),
        }
    }

    /// Generic filter enumerator: assigns relations to tuples in
    /// lexicographic order and cuts partial assignments the decider rejects.
    /// Entries of `fixed` are kept as given.
    pub fn generic_complete(
        &self,
        vars: &[Var],
        fixed: Option<&AtomicNetwork>,
        visit: &mut dyn FnMut(AtomicNetwork) -> bool,
    ) -> bool {
        let vars = sorted(vars);
        let tuples = all_tuples(&vars, self.arity);
        let mut entries: Vec<(Tuple, RelId)> = Vec::with_capacity(tuples.len());
        self.generic_dfs(&vars, &tuples, fixed, &mut entries, visit)
    }

    fn generic_dfs(
        &self,
        vars: &[Var],
        tuples: &[Tuple],
        fixed: Option<&AtomicNetwork>,
        entries: &mut Vec<(Tuple, RelId)>,
        visit: &mut dyn FnMut(AtomicNetwork) -> bool,
    ) -> bool {
        let i = entries.len();
        if i == tuples.len() {
            return visit(AtomicNetwork::from_sorted_unchecked(vars.to_vec(), entries.clone()));
        }
        let t = &tuples[i];
        let choices: Vec<RelId> = match fixed.and_then(|f| f.get(t)) {
            Some(r) => vec![r],
            None => (0..self.relations.len() as RelId).collect(),
        };
        for r in choices {
            entries.push((t.clone(), r));
            let partial = AtomicNetwork::from_sorted_unchecked(vars.to_vec(), entries.clone());
            let ok = self.is_satisfiable(&partial)
                && fixed.map_or(true, |f| self.is_satisfiable(&merge(&partial, f)));
            if ok && !self.generic_dfs(vars, tuples, fixed, entries, visit) {
                entries.pop();
                return false;
            }
            entries.pop();
        }
        true
    }

    /// Visits every complete satisfiable extension of the complete network
    /// `net` by a fresh variable `v`, passing the new entries (all tuples
    /// that mention `v`) in lexicographic order.
    pub fn for_each_extension(&self, net: &AtomicNetwork, v: Var, visit: &mut dyn FnMut(&[(Tuple, RelId)])) {
        self.for_each_extension_within(net, v, &[], visit)
    }

    /// Like [`Calculus::for_each_extension`], but extensions that put a
    /// relation outside `allowed[u]` on `(u, v)` may be left out. Only
    /// calculi with coordinates use the hint.
    pub fn for_each_extension_within(
        &self,
        net: &AtomicNetwork,
        v: Var,
        allowed: &[(Var, Vec<RelId>)],
        visit: &mut dyn FnMut(&[(Tuple, RelId)]),
    ) {
        debug_assert!(!net.contains_var(v));
        match &self.backend {
            Backend::Ordinal(o) => o.for_each_extension(net, v, allowed, visit),
            Backend::Phylo => phylo::for_each_extension(net, v, visit),
            Backend::Region(_) => self.generic_extension(net, v, visit),
        }
    }

    /// Extension by search over the new tuples with decider pruning.
    pub(crate) fn generic_extension(&self, net: &AtomicNetwork, v: Var, visit: &mut dyn FnMut(&[(Tuple, RelId)])) {
        let mut vars = net.vars().to_vec();
        vars.push(v);
        vars.sort_unstable();
        let fresh: Vec<Tuple> = all_tuples(&vars, self.arity)
            .into_iter()
            .filter(|t| t.contains(&v))
            .collect();
        let mut new: Vec<(Tuple, RelId)> = Vec::with_capacity(fresh.len());
        self.extension_dfs(net, &vars, &fresh, &mut new, visit);
    }

    fn extension_dfs(
        &self,
        net: &AtomicNetwork,
        vars: &[Var],
        fresh: &[Tuple],
        new: &mut Vec<(Tuple, RelId)>,
        visit: &mut dyn FnMut(&[(Tuple, RelId)]),
    ) {
        if new.len() == fresh.len() {
            visit(new);
            return;
        }
        let t = fresh[new.len()].clone();
        for r in 0..self.relations.len() as RelId {
            new.push((t.clone(), r));
            let partial = AtomicNetwork::from_sorted_unchecked(vars.to_vec(), new.clone());
            if self.is_satisfiable(&merge(net, &partial)) {
                self.extension_dfs(net, vars, fresh, new, visit);
            }
            new.pop();
        }
    }

    /// Extends a satisfiable network to a complete one over the same
    /// variables. Uses the realizer when there is one, otherwise fixes one
    /// tuple at a time under the decider.
    pub fn complete_network(&self, net: &AtomicNetwork) -> Result<AtomicNetwork> {
        if !self.is_satisfiable(net) {
            return Err(Error::Unsat);
        }
        if self.is_complete(net) {
            return Ok(net.clone());
        }
        match self.realize(net) {
            Ok(model) => return Ok(model.network(self, net.vars())),
            Err(Error::NoRealizer(_)) => {}
            Err(e) => return Err(e),
        }
        let mut out = None;
        self.generic_complete(net.vars(), Some(net), &mut |n| {
            out = Some(n);
            false
        });
        out.ok_or(Error::Unsat)
    }
}

fn owned(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn sorted(vars: &[Var]) -> Vec<Var> {
    let mut v = vars.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Union of two networks known not to conflict.
pub(crate) fn merge(a: &AtomicNetwork, b: &AtomicNetwork) -> AtomicNetwork {
    let mut vars: Vec<Var> = a.vars().iter().chain(b.vars()).copied().collect();
    vars.sort_unstable();
    vars.dedup();
    let (x, y) = (a.entries(), b.entries());
    let mut entries = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            std::cmp::Ordering::Less => {
                entries.push(x[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                entries.push(y[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                entries.push(x[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    entries.extend_from_slice(&x[i..]);
    entries.extend_from_slice(&y[j..]);
    AtomicNetwork::from_sorted_unchecked(vars, entries)
}

/// Whether some DNF term of `constraint` has all its atoms in `network`.
/// Errors if the scope is not covered by the network's variables.
pub fn implies(network: &AtomicNetwork, constraint: &Constraint) -> Result<bool> {
    if let Some(v) = constraint.scope().iter().find(|v| !network.contains_var(**v)) {
        return Err(Error::Contract(format!("scope variable {v} not in network")));
    }
    Ok(constraint.implied_by(network))
}

/// Complete satisfiable networks on `vars` implying every constraint of
/// `instance` whose scope lies inside `vars`.
pub fn for_each_certificate(
    calc: &Calculus,
    instance: &Instance,
    vars: &[Var],
    visit: &mut dyn FnMut(AtomicNetwork) -> bool,
) -> bool {
    let local: Vec<&Constraint> = instance
        .constraints()
        .iter()
        .filter(|c| c.scope().iter().all(|v| vars.contains(v)))
        .collect();
    calc.for_each_complete(vars, &mut |n| {
        if local.iter().all(|c| c.implied_by(&n)) {
            visit(n)
        } else {
            true
        }
    })
}

pub fn enumerate_certificates(calc: &Calculus, instance: &Instance, vars: &[Var]) -> Vec<AtomicNetwork> {
    let mut out = Vec::new();
    for_each_certificate(calc, instance, vars, &mut |n| {
        out.push(n);
        true
    });
    out
}
