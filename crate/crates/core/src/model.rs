//! Concrete models and the semantics of basic relations over them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::calculi::cardinal::{CDC_NAMES, CDC_PAIRS};
use crate::calculi::interval::{block_name, IA_SIGNATURES};
use crate::calculi::ordinal::Shape;
use crate::calculi::phylo::{phylo_decide, PhyloTreeModel, PHYLO_NAMES};
use crate::calculi::point::rel_of;
use crate::calculi::region::{rcc5_drpo_model, rcc5_relation_of_sets, Rcc5SetModel, RCC5_NAMES};
use crate::calculus::{Calculus, CalculusKind};
use crate::error::{Error, Result};
use crate::network::{all_tuples, AtomicNetwork, RelId, Var};

/// A satisfying assignment for one of the calculi with a realizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    /// Rational points (integers suffice for finite networks).
    Point(BTreeMap<Var, i64>),
    /// Intervals `[start, end]` with `start < end`.
    Interval(BTreeMap<Var, (i64, i64)>),
    /// Points of the plane.
    Plane(BTreeMap<Var, (i64, i64)>),
    /// One interval per dimension.
    Box(BTreeMap<Var, Vec<(i64, i64)>>),
    Sets(Rcc5SetModel),
    Tree(PhyloTreeModel),
}

fn ia_of(a: (i64, i64), b: (i64, i64)) -> u8 {
    let sig = [a.0.cmp(&b.0), a.0.cmp(&b.1), a.1.cmp(&b.0), a.1.cmp(&b.1)];
    IA_SIGNATURES.iter().position(|s| *s == sig).expect("proper intervals") as u8
}

impl Model {
    pub fn vars(&self) -> Vec<Var> {
        match self {
            Model::Point(m) => m.keys().copied().collect(),
            Model::Interval(m) | Model::Plane(m) => m.keys().copied().collect(),
            Model::Box(m) => m.keys().copied().collect(),
            Model::Sets(s) => s.sets.keys().copied().collect(),
            Model::Tree(t) => t.assignment().keys().copied().collect(),
        }
    }

    /// Structural invariants: proper intervals, non-empty sets, binary tree.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Model::Point(_) | Model::Plane(_) => true,
            Model::Interval(m) => m.values().all(|(a, b)| a < b),
            Model::Box(m) => m.values().all(|b| b.iter().all(|(a, c)| a < c)),
            Model::Sets(s) => s.sets.values().all(|x| !x.is_empty()),
            Model::Tree(t) => t.is_binary(),
        }
    }

    /// The basic relation of `calc` holding on `t` in this model, derived
    /// from coordinates, sets or the tree directly.
    pub fn relation(&self, calc: &Calculus, t: &[Var]) -> Option<RelId> {
        let name: String = match self {
            Model::Point(m) => match m.get(&t[0])?.cmp(m.get(&t[1])?) {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            }
            .to_string(),
            Model::Interval(m) => {
                block_name(&[ia_of(*m.get(&t[0])?, *m.get(&t[1])?)])
            }
            Model::Plane(m) => {
                let (a, b) = (m.get(&t[0])?, m.get(&t[1])?);
                let pair = (rel_of(a.0.cmp(&b.0)), rel_of(a.1.cmp(&b.1)));
                let i = CDC_PAIRS.iter().position(|p| *p == pair)?;
                CDC_NAMES[i].to_string()
            }
            Model::Box(m) => {
                let (a, b) = (m.get(&t[0])?, m.get(&t[1])?);
                let locals: Vec<u8> = a.iter().zip(b).map(|(x, y)| ia_of(*x, *y)).collect();
                block_name(&locals)
            }
            Model::Sets(s) => {
                let r = rcc5_relation_of_sets(s.sets.get(&t[0])?, s.sets.get(&t[1])?);
                RCC5_NAMES[r as usize].to_string()
            }
            Model::Tree(tree) => PHYLO_NAMES[tree.relation(t)? as usize].to_string(),
        };
        calc.relation_id(&name)
    }

    /// The complete network this model induces on `vars`.
    pub fn network(&self, calc: &Calculus, vars: &[Var]) -> AtomicNetwork {
        let mut vars = vars.to_vec();
        vars.sort_unstable();
        let entries = all_tuples(&vars, calc.arity())
            .into_iter()
            .map(|t| {
                let r = self.relation(calc, &t).expect("model covers the variables");
                (t, r)
            })
            .collect();
        AtomicNetwork::from_sorted_unchecked(vars, entries)
    }

    /// Human-readable listing, one variable per line.
    pub fn describe(&self, name: &dyn Fn(Var) -> String) -> String {
        let mut out = String::new();
        match self {
            Model::Point(m) => {
                for (v, x) in m {
                    let _ = writeln!(out, "{} = {x}", name(*v));
                }
            }
            Model::Interval(m) => {
                for (v, (a, b)) in m {
                    let _ = writeln!(out, "{} = [{a}, {b}]", name(*v));
                }
            }
            Model::Plane(m) => {
                for (v, (a, b)) in m {
                    let _ = writeln!(out, "{} = ({a}, {b})", name(*v));
                }
            }
            Model::Box(m) => {
                for (v, dims) in m {
                    let parts: Vec<String> = dims.iter().map(|(a, b)| format!("[{a}, {b}]")).collect();
                    let _ = writeln!(out, "{} = {}", name(*v), parts.join(" x "));
                }
            }
            Model::Sets(s) => {
                for (v, set) in &s.sets {
                    let parts: Vec<String> = set
                        .iter()
                        .map(|r| match r {
                            crate::calculi::Region::X(i) => format!("X{i}"),
                            crate::calculi::Region::Y(i, j) => format!("Y{i}_{j}"),
                        })
                        .collect();
                    let _ = writeln!(out, "{} = {{{}}}", name(*v), parts.join(", "));
                }
            }
            Model::Tree(t) => {
                let _ = writeln!(out, "tree: {}", newick(t, name));
                for (v, leaf) in t.assignment() {
                    let _ = writeln!(out, "{} -> leaf {leaf}", name(*v));
                }
            }
        }
        out
    }
}

/// Newick-style rendering; leaves list the variables mapped to them.
pub fn newick(t: &PhyloTreeModel, name: &dyn Fn(Var) -> String) -> String {
    let mut at_leaf: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (v, l) in t.assignment() {
        at_leaf.entry(*l).or_default().push(name(*v));
    }
    // iterative post-order
    let mut done: BTreeMap<usize, String> = BTreeMap::new();
    let mut stack = vec![(t.root(), false)];
    while let Some((n, expanded)) = stack.pop() {
        let kids = t.children(n);
        if kids.is_empty() {
            let label = at_leaf.get(&n).map_or("_".to_string(), |v| v.join("="));
            done.insert(n, label);
        } else if expanded {
            let parts: Vec<String> = kids.iter().map(|c| done.remove(c).unwrap()).collect();
            done.insert(n, format!("({})", parts.join(",")));
        } else {
            stack.push((n, true));
            stack.extend(kids.iter().map(|&c| (c, false)));
        }
    }
    done.remove(&t.root()).unwrap_or_default() + ";"
}

impl Calculus {
    /// Builds a concrete model of a satisfiable atomic network.
    ///
    /// RCC8 has no realizer; RCC5 is realized only for networks whose
    /// off-diagonal entries are DR or PO.
    pub fn realize(&self, net: &AtomicNetwork) -> Result<Model> {
        if let Some(o) = self.ordinal() {
            let ranks = o.decide(net).ok_or(Error::Unsat)?;
            let coords = o.coords(net.vars().len(), &ranks);
            let vars = net.vars().iter().copied();
            return Ok(match (self.kind(), o.shape) {
                (CalculusKind::Point, _) => Model::Point(vars.zip(coords).map(|(v, c)| (v, c[0].0)).collect()),
                (CalculusKind::Cardinal, _) => {
                    Model::Plane(vars.zip(coords).map(|(v, c)| (v, (c[0].0, c[1].0))).collect())
                }
                (CalculusKind::Interval, _) => Model::Interval(vars.zip(coords).map(|(v, c)| (v, c[0])).collect()),
                (_, Shape::Interval) => Model::Box(vars.zip(coords).map(|(v, c)| (v, c.to_vec())).collect()),
                (kind, Shape::Point) => unreachable!("{kind} is not point-shaped"),
            });
        }
        match self.kind() {
            CalculusKind::Phylogeny => phylo_decide(net).map(Model::Tree).ok_or(Error::Unsat),
            CalculusKind::Rcc5 => {
                if !self.is_satisfiable(net) {
                    return Err(Error::Unsat);
                }
                let (dr, po, eq) = (
                    self.relation_id("DR"),
                    self.relation_id("PO"),
                    self.relation_id("EQ"),
                );
                let drpo = net.entries().iter().all(|(t, r)| {
                    if t[0] == t[1] {
                        Some(*r) == eq
                    } else {
                        Some(*r) == dr || Some(*r) == po
                    }
                });
                if !drpo || dr.is_none() || po.is_none() {
                    return Err(Error::NoRealizer("rcc5 (beyond DR/PO networks)".into()));
                }
                // the set construction assumes the embedded relation order
                let remapped = AtomicNetwork::from_entries(
                    net.vars().iter().copied(),
                    net.entries().iter().map(|(t, r)| {
                        let name = self.relation_name(*r);
                        let id = RCC5_NAMES.iter().position(|n| *n == name).unwrap() as RelId;
                        (t.clone(), id)
                    }),
                )?;
                Ok(Model::Sets(rcc5_drpo_model(&remapped)?))
            }
            _ => Err(Error::NoRealizer(self.name())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::tuple;

    fn net(calc: &Calculus, entries: &[(u32, &str, u32)]) -> AtomicNetwork {
        AtomicNetwork::from_entries(
            [],
            entries
                .iter()
                .map(|&(a, r, b)| (tuple(&[Var(a), Var(b)]), calc.relation_id(r).unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn meets_shares_an_endpoint() {
        let ia = Calculus::new(CalculusKind::Interval);
        let m = ia.realize(&net(&ia, &[(0, "m", 1)])).unwrap();
        let Model::Interval(iv) = &m else { panic!() };
        assert_eq!(iv[&Var(0)].1, iv[&Var(1)].0);
        assert!(m.is_well_formed());
        assert!(ia.realize(&net(&ia, &[(0, "p", 1), (1, "p", 0)])).is_err());
        assert!(ia.realize(&net(&ia, &[(0, "p", 1), (1, "pi", 0)])).is_ok());
    }

    #[test]
    fn cardinal_northeast() {
        let cdc = Calculus::new(CalculusKind::Cardinal);
        let m = cdc.realize(&net(&cdc, &[(0, "NE", 1)])).unwrap();
        let Model::Plane(p) = &m else { panic!() };
        assert!(p[&Var(0)].0 > p[&Var(1)].0 && p[&Var(0)].1 > p[&Var(1)].1);
        assert!(cdc.realize(&net(&cdc, &[(0, "N", 1), (1, "N", 0)])).is_err());
    }

    #[test]
    fn block_pp() {
        let ba = Calculus::new(CalculusKind::Block(2));
        let m = ba.realize(&net(&ba, &[(0, "(p,p)", 1)])).unwrap();
        assert!(m.is_well_formed());
        assert_eq!(m.relation(&ba, &[Var(0), Var(1)]), ba.relation_id("(p,p)"));
    }

    #[test]
    fn rcc8_has_no_realizer() {
        let rcc8 = Calculus::new(CalculusKind::Rcc8);
        assert!(matches!(
            rcc8.realize(&net(&rcc8, &[(0, "EQ", 1)])),
            Err(Error::NoRealizer(_))
        ));
    }

    #[test]
    fn rcc5_po_model() {
        let rcc5 = Calculus::new(CalculusKind::Rcc5);
        let n = net(&rcc5, &[(0, "PO", 1), (1, "PO", 0)]);
        let m = rcc5.realize(&n).unwrap();
        assert_eq!(m.network(&rcc5, &[Var(0), Var(1)]).get(&[Var(0), Var(1)]), rcc5.relation_id("PO"));
        let pp = net(&rcc5, &[(0, "PP", 1)]);
        assert!(matches!(rcc5.realize(&pp), Err(Error::NoRealizer(_))));
    }

    #[test]
    fn newick_shape() {
        let phylo = Calculus::new(CalculusKind::Phylogeny);
        let n = AtomicNetwork::from_entries([], [(tuple(&[Var(0), Var(1), Var(2)]), 0)]).unwrap();
        let Model::Tree(t) = phylo.realize(&n).unwrap() else { panic!() };
        let s = newick(&t, &|v| format!("{v}"));
        assert!(s == "(v0,(v1,v2));" || s == "((v1,v2),v0);", "{s}");
    }
}
