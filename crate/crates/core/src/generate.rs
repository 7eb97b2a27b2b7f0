//! Seeded instance generators for testing and benchmarking.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::calculus::{Calculus, CalculusKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Atom, Constraint, Instance, Literal};
use crate::model::Model;
use crate::network::{AtomicNetwork, RelId, Tuple, Var};

#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub vars: usize,
    pub constraints: usize,
    /// Largest number of relations in a plain disjunction.
    pub max_disjuncts: usize,
    /// Chance that a constraint is a general DNF instead of a disjunction.
    pub dnf_chance: f64,
}

impl RandomSpec {
    pub fn new(vars: usize, constraints: usize) -> Self {
        RandomSpec {
            vars,
            constraints,
            max_disjuncts: 3,
            dnf_chance: 0.25,
        }
    }
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Random scopes of distinct variables; DNF terms use atoms on tuples over
/// the scope (repetition allowed) and may be negated.
pub fn random_instance(calc: Arc<Calculus>, spec: &RandomSpec, rng: &mut impl Rng) -> Instance {
    let mut inst = Instance::with_variables(calc.clone(), names(spec.vars)).expect("fresh names");
    let arity = calc.arity();
    if spec.vars < arity {
        return inst;
    }
    let vars = inst.vars().to_vec();
    let count = calc.relation_count() as RelId;
    for _ in 0..spec.constraints {
        let scope: Vec<Var> = vars.choose_multiple(rng, arity).copied().collect();
        let c = if rng.gen_bool(spec.dnf_chance) {
            let terms = (0..rng.gen_range(1..=2))
                .map(|_| {
                    (0..rng.gen_range(1..=2))
                        .map(|_| {
                            let args: Vec<Var> = (0..arity).map(|_| *scope.choose(rng).unwrap()).collect();
                            Literal {
                                atom: Atom::new(rng.gen_range(0..count), &args),
                                neg: rng.gen_bool(0.3),
                            }
                        })
                        .collect()
                })
                .collect();
            Constraint::from_literals(&calc, &scope, terms)
        } else {
            let k = rng.gen_range(1..=spec.max_disjuncts.min(count as usize));
            let mut rels: Vec<RelId> = (0..count).collect();
            rels.shuffle(rng);
            rels.truncate(k);
            Constraint::disjunction(&calc, &scope, &rels)
        };
        inst.add_constraint(c.expect("well-formed draw")).expect("scope variables exist");
    }
    inst
}

/// Erdős–Rényi graph.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random `w`-tree on `n >= w + 1` vertices: a `(w+1)`-clique grown by
/// attaching each new vertex to a random existing `w`-clique. Its
/// treewidth is exactly `w`.
pub fn random_ktree(n: usize, w: usize, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new(n);
    let base = (w + 1).min(n);
    for u in 0..base {
        for v in u + 1..base {
            g.add_edge(u, v);
        }
    }
    if n <= w + 1 {
        return g;
    }
    let mut cliques: Vec<Vec<usize>> = (0..=w)
        .map(|skip| (0..=w).filter(|&x| x != skip).collect())
        .collect();
    for v in w + 1..n {
        let c = cliques.choose(rng).unwrap().clone();
        for &u in &c {
            g.add_edge(u, v);
        }
        for skip in 0..c.len() {
            let mut next: Vec<usize> = c.iter().copied().filter(|&x| x != c[skip]).collect();
            next.push(v);
            cliques.push(next);
        }
    }
    g
}

/// A random model for a calculus with coordinates, over `vars`.
pub fn random_model(calc: &Calculus, vars: &[Var], rng: &mut impl Rng) -> Result<Model> {
    let span = 2 * vars.len().max(1) as i64;
    let mut interval = || {
        let a = rng.gen_range(0..span);
        (a, rng.gen_range(a + 1..=span))
    };
    Ok(match calc.kind() {
        CalculusKind::Point => Model::Point(vars.iter().map(|&v| (v, interval().0)).collect()),
        CalculusKind::Interval => Model::Interval(vars.iter().map(|&v| (v, interval())).collect()),
        CalculusKind::Cardinal => Model::Plane(vars.iter().map(|&v| (v, (interval().0, interval().0))).collect()),
        CalculusKind::Block(d) => Model::Box(vars.iter().map(|&v| (v, (0..d).map(|_| interval()).collect())).collect()),
        _ => return Err(Error::NoRealizer(calc.name())),
    })
}

/// Extends the complete satisfiable network `base` by the variables in
/// `fresh`, one at a time, each time choosing uniformly among the complete
/// satisfiable extensions.
pub fn random_complete_network(calc: &Calculus, base: AtomicNetwork, fresh: &[Var], rng: &mut impl Rng) -> AtomicNetwork {
    let mut net = base;
    for &v in fresh {
        let mut seen = 0u64;
        let mut pick: Vec<(Tuple, RelId)> = Vec::new();
        calc.for_each_extension(&net, v, &mut |new| {
            seen += 1;
            if rng.gen_range(0..seen) == 0 {
                pick = new.to_vec();
            }
        });
        let add = AtomicNetwork::from_entries(net.vars().iter().copied().chain([v]), pick).expect("extension tuples");
        net = net.union(&add).expect("extension only adds tuples with the fresh variable");
    }
    net
}

/// A satisfiable instance whose primal graph is a random `w`-tree, with
/// its planted model: each edge carries the model's relation plus up to
/// `extra` other relations.
pub fn planted_ktree_instance(
    calc: Arc<Calculus>,
    n: usize,
    w: usize,
    extra: usize,
    rng: &mut impl Rng,
) -> Result<(Instance, Model)> {
    if calc.arity() != 2 {
        return Err(Error::invalid("calculus", "planted k-trees need a binary calculus"));
    }
    let mut inst = Instance::with_variables(calc.clone(), names(n)).expect("fresh names");
    let vars = inst.vars().to_vec();
    let model = random_model(&calc, &vars, rng)?;
    let g = random_ktree(n, w, rng);
    let count = calc.relation_count() as RelId;
    for (u, v) in g.edges() {
        let (a, b) = if rng.gen_bool(0.5) { (vars[u], vars[v]) } else { (vars[v], vars[u]) };
        let planted = model.relation(&calc, &[a, b]).expect("model covers every variable");
        let mut rels = BTreeSet::from([planted]);
        for _ in 0..extra {
            rels.insert(rng.gen_range(0..count));
        }
        let rels: Vec<RelId> = rels.into_iter().collect();
        inst.add_constraint(Constraint::disjunction(&calc, &[a, b], &rels)?)?;
    }
    Ok((inst, model))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::oracle::verify_model;
    use crate::td::{decompose, TdMode};

    #[test]
    fn ktrees_have_their_width() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for w in 1..=4 {
            let g = random_ktree(40, w, &mut rng);
            assert_eq!(decompose(&g, TdMode::Heuristic).unwrap().width(), w as isize);
            assert_eq!(g.edge_count(), w * (w + 1) / 2 + (40 - w - 1) * w);
        }
    }

    #[test]
    fn planted_instances_hold_in_their_model() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let calc = Arc::new(Calculus::new(CalculusKind::Interval));
        let (inst, model) = planted_ktree_instance(calc, 30, 2, 2, &mut rng).unwrap();
        assert_eq!(inst.constraints().len(), 3 + 27 * 2);
        assert_eq!(verify_model(&inst, &model), Ok(()));
    }

    #[test]
    fn random_networks_are_complete_and_satisfiable() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for kind in CalculusKind::ALL {
            let calc = Calculus::new(kind);
            let vars: Vec<Var> = (0..4).map(Var).collect();
            let net = random_complete_network(&calc, AtomicNetwork::new(Vec::new()), &vars, &mut rng);
            assert_eq!(net.vars(), vars.as_slice());
            assert!(calc.is_complete(&net) && calc.is_satisfiable(&net), "{kind}");
        }
    }

    #[test]
    fn seeds_are_deterministic() {
        let calc = Arc::new(Calculus::new(CalculusKind::Rcc8));
        let a = random_instance(calc.clone(), &RandomSpec::new(5, 6), &mut ChaCha8Rng::seed_from_u64(9));
        let b = random_instance(calc, &RandomSpec::new(5, 6), &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a.constraints(), b.constraints());
    }
}
