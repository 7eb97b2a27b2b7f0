//! CSP instances over DNF-defined relations.

mod format;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

pub use format::{parse_instance, parse_instance_with_tables, serialize_instance};

use crate::calculus::Calculus;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::network::{tuple, RelId, RelationLookup, Tuple, Var};

/// A basic relation applied to an argument tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub rel: RelId,
    pub args: Tuple,
}

impl Atom {
    pub fn new(rel: RelId, args: &[Var]) -> Self {
        Atom { rel, args: tuple(args) }
    }
}

/// An atom or its negation, as written in an input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Literal {
    pub atom: Atom,
    pub neg: bool,
}

/// A negation-free DNF over basic atoms, on an ordered scope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    scope: Vec<Var>,
    dnf: Vec<Vec<Atom>>,
}

impl Constraint {
    /// `R1(scope) or ... or Rp(scope)`.
    pub fn disjunction(calc: &Calculus, scope: &[Var], rels: &[RelId]) -> Result<Self> {
        let terms = rels
            .iter()
            .map(|&r| vec![Literal { atom: Atom::new(r, scope), neg: false }])
            .collect();
        Self::from_literals(calc, scope, terms)
    }

    /// Builds a constraint from terms that may contain negated atoms. A
    /// negated atom is replaced by the disjunction of all other basic
    /// relations on its tuple, and the result is multiplied out.
    pub fn from_literals(calc: &Calculus, scope: &[Var], terms: Vec<Vec<Literal>>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("constraint", "empty disjunction"));
        }
        let mut dnf: BTreeSet<Vec<Atom>> = BTreeSet::new();
        for (i, term) in terms.into_iter().enumerate() {
            if term.is_empty() {
                return Err(Error::invalid(format!("term {i}"), "empty conjunction"));
            }
            let mut expanded: Vec<Vec<Atom>> = vec![Vec::new()];
            for lit in term {
                check_atom(calc, scope, &lit.atom)?;
                let options: Vec<RelId> = if lit.neg {
                    (0..calc.relation_count() as RelId)
                        .filter(|&r| r != lit.atom.rel)
                        .collect()
                } else {
                    vec![lit.atom.rel]
                };
                let mut next = Vec::with_capacity(expanded.len() * options.len());
                for prefix in &expanded {
                    for &r in &options {
                        let mut t = prefix.clone();
                        t.push(Atom { rel: r, args: lit.atom.args.clone() });
                        next.push(t);
                    }
                }
                expanded = next;
            }
            for mut t in expanded {
                t.sort();
                t.dedup();
                dnf.insert(t);
            }
        }
        Ok(Constraint {
            scope: scope.to_vec(),
            dnf: dnf.into_iter().collect(),
        })
    }

    pub fn scope(&self) -> &[Var] {
        &self.scope
    }

    pub fn dnf(&self) -> &[Vec<Atom>] {
        &self.dnf
    }

    /// Pure disjunction of basic relations over the whole scope.
    pub fn is_sugar(&self) -> bool {
        self.dnf
            .iter()
            .all(|t| t.len() == 1 && t[0].args.as_slice() == self.scope.as_slice())
    }

    /// The relations of a pure disjunction.
    pub fn relations(&self) -> Option<Vec<RelId>> {
        self.is_sugar()
            .then(|| self.dnf.iter().map(|t| t[0].rel).collect())
    }

    /// Some term has all of its atoms present in `net`.
    pub fn implied_by(&self, net: &impl RelationLookup) -> bool {
        self.dnf
            .iter()
            .any(|term| term.iter().all(|a| net.relation(&a.args) == Some(a.rel)))
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.scope.contains(&v)
    }
}

fn check_atom(calc: &Calculus, scope: &[Var], atom: &Atom) -> Result<()> {
    if atom.rel as usize >= calc.relation_count() {
        return Err(Error::invalid("atom", format!("relation id {} out of range", atom.rel)));
    }
    if atom.args.len() != calc.arity() {
        return Err(Error::ArityMismatch {
            at: "atom".into(),
            name: calc.relation_name(atom.rel).to_string(),
            expected: calc.arity(),
            found: atom.args.len(),
        });
    }
    if let Some(v) = atom.args.iter().find(|v| !scope.contains(v)) {
        return Err(Error::invalid("atom", format!("argument {v} outside the constraint scope")));
    }
    Ok(())
}

#[derive(Clone, Debug, Default)]
struct NameTable {
    names: Vec<String>,
    index: HashMap<String, Var>,
}

/// `(V, C)` over one calculus. Variable ids index a name table shared with
/// every subinstance, so ids stay stable under restriction.
#[derive(Clone, Debug)]
pub struct Instance {
    calculus: Arc<Calculus>,
    names: Arc<NameTable>,
    vars: Vec<Var>,
    constraints: Vec<Constraint>,
}

impl Instance {
    pub fn new(calculus: Arc<Calculus>) -> Self {
        Instance {
            calculus,
            names: Arc::default(),
            vars: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn with_variables<S: Into<String>>(
        calculus: Arc<Calculus>,
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let mut inst = Instance::new(calculus);
        for n in names {
            inst.add_variable(n)?;
        }
        Ok(inst)
    }

    pub fn add_variable(&mut self, name: impl Into<String>) -> Result<Var> {
        let name = name.into();
        let table = Arc::make_mut(&mut self.names);
        if table.index.contains_key(&name) {
            return Err(Error::DuplicateVariable {
                at: format!("variables[{}]", table.names.len()),
                name,
            });
        }
        let v = Var(table.names.len() as u32);
        table.index.insert(name.clone(), v);
        table.names.push(name);
        self.vars.push(v);
        Ok(v)
    }

    pub fn add_constraint(&mut self, c: Constraint) -> Result<()> {
        if let Some(v) = c.scope().iter().find(|v| self.vars.binary_search(v).is_err()) {
            return Err(Error::UnknownVariable {
                at: format!("constraints[{}]", self.constraints.len()),
                name: v.to_string(),
            });
        }
        self.constraints.push(c);
        Ok(())
    }

    /// Adds the disjunction of the named relations over the named scope.
    pub fn constrain(&mut self, scope: &[&str], relations: &[&str]) -> Result<()> {
        let at = format!("constraints[{}]", self.constraints.len());
        let scope: Vec<Var> = scope
            .iter()
            .map(|n| {
                self.var(n).ok_or_else(|| Error::UnknownVariable {
                    at: at.clone(),
                    name: n.to_string(),
                })
            })
            .collect::<Result<_>>()?;
        let rels: Vec<RelId> = relations
            .iter()
            .map(|r| {
                self.calculus.relation_id(r).ok_or_else(|| Error::UnknownRelation {
                    at: at.clone(),
                    name: r.to_string(),
                    calculus: self.calculus.name(),
                })
            })
            .collect::<Result<_>>()?;
        let c = Constraint::disjunction(&self.calculus, &scope, &rels)?;
        self.add_constraint(c)
    }

    pub fn calculus(&self) -> &Calculus {
        &self.calculus
    }

    pub fn calculus_arc(&self) -> Arc<Calculus> {
        self.calculus.clone()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn var(&self, name: &str) -> Option<Var> {
        self.names
            .index
            .get(name)
            .copied()
            .filter(|v| self.vars.binary_search(v).is_ok())
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names.names[v.index()]
    }

    /// `I[U]`: variables `U` and the constraints whose scope lies in `U`.
    pub fn subinstance(&self, u: &[Var]) -> Instance {
        let keep: BTreeSet<Var> = u.iter().copied().filter(|v| self.vars.binary_search(v).is_ok()).collect();
        Instance {
            calculus: self.calculus.clone(),
            names: self.names.clone(),
            vars: keep.iter().copied().collect(),
            constraints: self
                .constraints
                .iter()
                .filter(|c| c.scope().iter().all(|v| keep.contains(v)))
                .cloned()
                .collect(),
        }
    }

    /// Vertices are the instance variables (labels) in id order; `u - v` is
    /// an edge iff `u != v` share a constraint scope.
    pub fn primal_graph(&self) -> Graph {
        let mut g = Graph::with_labels(self.vars.clone());
        let pos = |v: &Var| self.vars.binary_search(v).unwrap();
        for c in &self.constraints {
            let s = c.scope();
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    g.add_edge(pos(&s[i]), pos(&s[j]));
                }
            }
        }
        g
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::calculus::CalculusKind;
    use crate::network::AtomicNetwork;

    fn pa() -> Arc<Calculus> {
        Arc::new(Calculus::new(CalculusKind::Point))
    }

    /// `B(w,x,y)` and `B(x,y,z)` with `B(a,b,c) = a<b<c or c<b<a`.
    pub(crate) fn betweenness() -> Instance {
        let calc = pa();
        let mut inst = Instance::with_variables(calc.clone(), ["w", "x", "y", "z"]).unwrap();
        let lt = calc.relation_id("<").unwrap();
        for names in [["w", "x", "y"], ["x", "y", "z"]] {
            let [a, b, c] = names.map(|n| inst.var(n).unwrap());
            let lit = |x, y| Literal { atom: Atom::new(lt, &[x, y]), neg: false };
            let terms = vec![vec![lit(a, b), lit(b, c)], vec![lit(c, b), lit(b, a)]];
            let con = Constraint::from_literals(&calc, &[a, b, c], terms).unwrap();
            inst.add_constraint(con).unwrap();
        }
        inst
    }

    #[test]
    fn subinstance_keeps_contained_scopes() {
        let inst = betweenness();
        let [w, x, y] = ["w", "x", "y"].map(|n| inst.var(n).unwrap());
        let sub = inst.subinstance(&[w, x, y]);
        assert_eq!(sub.constraints().len(), 1);
        assert_eq!(sub.vars(), &[w, x, y]);
        assert_eq!(inst.subinstance(inst.vars()).constraints().len(), 2);
        let empty = inst.subinstance(&[]);
        assert!(empty.vars().is_empty() && empty.constraints().is_empty());
        // names survive restriction
        assert_eq!(sub.name(y), "y");
        assert_eq!(sub.var("z"), None);
    }

    #[test]
    fn primal_graph_of_betweenness() {
        let inst = betweenness();
        let g = inst.primal_graph();
        // wx wy xy xz yz
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        let none = Instance::with_variables(pa(), ["a", "b"]).unwrap();
        assert_eq!(none.primal_graph().edge_count(), 0);
    }

    #[test]
    fn negation_expands_to_other_relations() {
        let calc = Calculus::new(CalculusKind::Cardinal);
        let se = calc.relation_id("SE").unwrap();
        let c = Constraint::from_literals(
            &calc,
            &[Var(0), Var(1)],
            vec![vec![Literal { atom: Atom::new(se, &[Var(0), Var(1)]), neg: true }]],
        )
        .unwrap();
        let rels = c.relations().unwrap();
        assert_eq!(rels.len(), 8);
        assert!(!rels.contains(&se));
    }

    #[test]
    fn implication_needs_a_whole_term() {
        let inst = betweenness();
        let c = &inst.constraints()[0];
        let [w, x, y] = ["w", "x", "y"].map(|n| inst.var(n).unwrap());
        let half = AtomicNetwork::from_entries([], [(tuple(&[w, x]), 0)]).unwrap();
        assert!(!c.implied_by(&half));
        let full = AtomicNetwork::from_entries([], [(tuple(&[w, x]), 0), (tuple(&[x, y]), 0)]).unwrap();
        assert!(c.implied_by(&full));
    }

    #[test]
    fn validation_errors() {
        let mut inst = Instance::with_variables(pa(), ["a", "b"]).unwrap();
        assert!(matches!(inst.add_variable("a"), Err(Error::DuplicateVariable { .. })));
        assert!(matches!(inst.constrain(&["a", "b"], &["zz"]), Err(Error::UnknownRelation { .. })));
        assert!(matches!(inst.constrain(&["a", "q"], &["<"]), Err(Error::UnknownVariable { .. })));
        let calc = pa();
        assert!(matches!(
            Constraint::disjunction(&calc, &[Var(0)], &[0]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(Constraint::disjunction(&calc, &[Var(0), Var(1)], &[]).is_err());
    }
}
