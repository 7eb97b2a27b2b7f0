//! Brute-force ground truth, kept separate from the DP: satisfiability by
//! choosing one DNF term per constraint under the decider, by global
//! certificate enumeration, and direct checks of concrete models.

use std::collections::BTreeMap;

use crate::calculus::{for_each_certificate, Calculus, CalculusKind};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::model::Model;
use crate::network::{tuple, AtomicNetwork, RelId, Tuple};

/// Largest instance the oracles accept for the given calculus.
pub fn guard(calc: &Calculus) -> usize {
    if calc.arity() >= 3 {
        5
    } else {
        8
    }
}

fn check_guard(inst: &Instance) -> Result<()> {
    let limit = guard(inst.calculus());
    if inst.vars().len() > limit {
        return Err(Error::OracleGuard {
            vars: inst.vars().len(),
            limit,
        });
    }
    Ok(())
}

/// Satisfiable iff some choice of one term per constraint gives a
/// conflict-free satisfiable atomic network.
pub fn brute_solve(inst: &Instance) -> Result<bool> {
    check_guard(inst)?;
    let mut chosen = BTreeMap::new();
    Ok(choose(inst, 0, &mut chosen))
}

fn choose(inst: &Instance, i: usize, chosen: &mut BTreeMap<Tuple, RelId>) -> bool {
    let calc = inst.calculus();
    let net = |chosen: &BTreeMap<Tuple, RelId>| {
        AtomicNetwork::from_entries(inst.vars().iter().copied(), chosen.iter().map(|(t, r)| (t.clone(), *r)))
            .expect("no conflicts by construction")
    };
    if i == inst.constraints().len() {
        return calc.is_satisfiable(&net(chosen));
    }
    for term in inst.constraints()[i].dnf() {
        let mut added = Vec::new();
        let mut clash = false;
        for a in term {
            match chosen.get(&a.args) {
                Some(&r) if r != a.rel => {
                    clash = true;
                    break;
                }
                Some(_) => {}
                None => {
                    chosen.insert(a.args.clone(), a.rel);
                    added.push(a.args.clone());
                }
            }
        }
        if !clash && calc.is_satisfiable(&net(chosen)) && choose(inst, i + 1, chosen) {
            return true;
        }
        for t in added {
            chosen.remove(&t);
        }
    }
    false
}

/// Satisfiable iff some complete satisfiable network on all variables
/// implies every constraint. Exponentially slower than [`brute_solve`].
pub fn brute_solve_enumerative(inst: &Instance) -> Result<bool> {
    check_guard(inst)?;
    let mut found = false;
    for_each_certificate(inst.calculus(), inst, inst.vars(), &mut |_| {
        found = true;
        false
    });
    Ok(found)
}

/// Index of the first constraint the model falsifies, evaluating atoms
/// on the model's coordinates, sets or tree.
pub fn verify_model(inst: &Instance, model: &Model) -> std::result::Result<(), usize> {
    let calc = inst.calculus();
    for (i, c) in inst.constraints().iter().enumerate() {
        let holds = c
            .dnf()
            .iter()
            .any(|term| term.iter().all(|a| model.relation(calc, &a.args) == Some(a.rel)));
        if !holds {
            return Err(i);
        }
    }
    Ok(())
}

/// A complete satisfiable network on all variables implying every constraint.
pub fn verify_certificate(inst: &Instance, net: &AtomicNetwork) -> bool {
    let calc = inst.calculus();
    net.vars() == inst.vars()
        && calc.is_complete(net)
        && calc.is_satisfiable(net)
        && inst.constraints().iter().all(|c| c.implied_by(net))
}

/// Number of complete satisfiable networks on `m` variables, from the
/// calculus' own enumerator or, with `generic`, from the decider-filtered
/// search.
pub fn count_complete_satisfiable(calc: &Calculus, m: usize, generic: bool) -> Result<u64> {
    let limit = match calc.kind() {
        CalculusKind::Point => 7,
        CalculusKind::Phylogeny => 5,
        CalculusKind::Block(d) if d > 1 => 3,
        _ => 4,
    };
    if m > limit {
        return Err(Error::OracleGuard { vars: m, limit });
    }
    let vars: Vec<_> = (0..m as u32).map(crate::network::Var).collect();
    let mut count = 0u64;
    let mut visit = |_: AtomicNetwork| {
        count += 1;
        true
    };
    if generic {
        calc.generic_complete(&vars, None, &mut visit);
    } else {
        calc.for_each_complete(&vars, &mut visit);
    }
    Ok(count)
}

/// RCC5 networks on `m` variables with EQ on the diagonal and DR or PO
/// (symmetrically) on every other pair: returns (total, satisfiable).
pub fn rcc5_drpo_count(m: usize) -> Result<(u64, u64)> {
    let calc = Calculus::new(CalculusKind::Rcc5);
    let pairs: Vec<(u32, u32)> = (0..m as u32).flat_map(|i| (i + 1..m as u32).map(move |j| (i, j))).collect();
    if pairs.len() > 20 {
        return Err(Error::OracleGuard { vars: m, limit: 6 });
    }
    let id = |n: &str| calc.relation_id(n).expect("rcc5 relation");
    let (eq, dr, po) = (id("EQ"), id("DR"), id("PO"));
    let vars: Vec<_> = (0..m as u32).map(crate::network::Var).collect();
    let (mut total, mut sat) = (0, 0);
    for mask in 0u32..1 << pairs.len() {
        let mut entries: Vec<(Tuple, RelId)> = vars.iter().map(|&v| (tuple(&[v, v]), eq)).collect();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let r = if mask & (1 << k) != 0 { po } else { dr };
            entries.push((tuple(&[vars[i as usize], vars[j as usize]]), r));
            entries.push((tuple(&[vars[j as usize], vars[i as usize]]), r));
        }
        let net = AtomicNetwork::from_entries(vars.iter().copied(), entries)?;
        total += 1;
        if calc.is_satisfiable(&net) {
            sat += 1;
        }
    }
    Ok((total, sat))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::instance::tests::betweenness;
    use crate::network::Var;

    fn pa() -> Arc<Calculus> {
        Arc::new(Calculus::new(CalculusKind::Point))
    }

    #[test]
    fn betweenness_and_patchwork() {
        let b = betweenness();
        assert!(brute_solve(&b).unwrap());
        assert!(brute_solve_enumerative(&b).unwrap());

        let mut u = Instance::with_variables(pa(), ["a", "x", "y", "b"]).unwrap();
        for (s, r) in [(["a", "x"], "<"), (["x", "b"], "<"), (["a", "y"], ">"), (["y", "b"], ">")] {
            u.constrain(&s, &[r]).unwrap();
        }
        assert!(!brute_solve(&u).unwrap());
        assert!(!brute_solve_enumerative(&u).unwrap());

        let free = Instance::with_variables(pa(), ["p", "q", "r"]).unwrap();
        assert!(brute_solve(&free).unwrap());
    }

    #[test]
    fn guard_is_a_hard_error() {
        let names: Vec<String> = (0..9).map(|i| format!("v{i}")).collect();
        let big = Instance::with_variables(pa(), names).unwrap();
        assert!(matches!(brute_solve(&big), Err(Error::OracleGuard { vars: 9, limit: 8 })));
        let phylo = Arc::new(Calculus::new(CalculusKind::Phylogeny));
        let names: Vec<String> = (0..6).map(|i| format!("v{i}")).collect();
        let big = Instance::with_variables(phylo, names).unwrap();
        assert!(matches!(brute_solve(&big), Err(Error::OracleGuard { limit: 5, .. })));
    }

    #[test]
    fn betweenness_models() {
        let b = betweenness();
        let model = |xs: [i64; 4]| Model::Point((0..4).map(|i| (Var(i as u32), xs[i])).collect());
        assert_eq!(verify_model(&b, &model([0, 1, 2, 3])), Ok(()));
        assert_eq!(verify_model(&b, &model([0, 2, 1, 3])), Err(0));
        let empty = Instance::new(pa());
        assert_eq!(verify_model(&empty, &model([5, 5, 5, 5])), Ok(()));
    }

    #[test]
    fn small_counts() {
        let pa = Calculus::new(CalculusKind::Point);
        assert_eq!(count_complete_satisfiable(&pa, 3, true).unwrap(), 13);
        let ia = Calculus::new(CalculusKind::Interval);
        assert_eq!(count_complete_satisfiable(&ia, 2, false).unwrap(), 13);
        assert!(count_complete_satisfiable(&pa, 8, false).is_err());
        assert_eq!(rcc5_drpo_count(4).unwrap(), (64, 64));
    }
}
