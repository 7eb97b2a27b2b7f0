use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcsp::generate::{random_complete_network, random_graph, random_instance, random_model, RandomSpec};
use qcsp::graph::{Graph, NamedGraph};
use qcsp::oracle::{brute_solve, count_complete_satisfiable, verify_model};
use qcsp::reductions::{cdc_to_ia, coloring_decomposition, coloring_to_cdc};
use qcsp::td::{validate, TdMode};
use qcsp::{
    decompose, enumerate_certificates, make_nice, solve, Atom, AtomicNetwork, Calculus, CalculusKind, Constraint,
    Instance, Literal, RelId, SolveOptions, Var,
};

fn sat(inst: &Instance) -> bool {
    solve(inst, &SolveOptions { provenance: false, ..Default::default() }).unwrap().sat
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_kinds() -> impl Strategy<Value = CalculusKind> {
    prop::sample::select(vec![
        CalculusKind::Point,
        CalculusKind::Interval,
        CalculusKind::Cardinal,
        CalculusKind::Rcc5,
        CalculusKind::Rcc8,
        CalculusKind::Phylogeny,
    ])
}

fn width_of(g: &Graph, mode: TdMode) -> isize {
    decompose(g, mode).unwrap().width()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn make_nice_keeps_validity_and_width(seed: u64, n in 1usize..=50, p in 0.02f64..0.5) {
        let g = random_graph(n, p, &mut rng(seed));
        let td = decompose(&g, TdMode::Heuristic).unwrap();
        prop_assert!(validate(&td, &g).is_ok());
        let nice = make_nice(&td);
        prop_assert!(nice.check_nice().is_ok());
        prop_assert!(validate(&nice.as_tree_decomposition(), &g).is_ok());
        prop_assert_eq!(nice.width(), td.width());
    }

    #[test]
    fn heuristic_width_is_at_least_exact(seed: u64, n in 1usize..=12, p in 0.1f64..0.7) {
        let g = random_graph(n, p, &mut rng(seed));
        prop_assert!(width_of(&g, TdMode::Heuristic) >= width_of(&g, TdMode::Exact));
    }

    #[test]
    fn trees_have_width_one(seed: u64, n in 2usize..=40) {
        let mut r = rng(seed);
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (r.gen_range(0..v), v)).collect();
        let g = Graph::from_edges(n, &edges);
        prop_assert_eq!(width_of(&g, TdMode::Heuristic), 1);
        if n <= 20 {
            prop_assert_eq!(width_of(&g, TdMode::Exact), 1);
        }
    }

    #[test]
    fn dp_matches_oracle(seed: u64, kind in small_kinds(), extra in 0usize..6) {
        let calc = Arc::new(Calculus::new(kind));
        let vars = if calc.arity() == 3 { 4 } else { 5 };
        let inst = random_instance(calc, &RandomSpec::new(vars, vars + extra), &mut rng(seed));
        prop_assert_eq!(sat(&inst), brute_solve(&inst).unwrap());
    }

    #[test]
    fn records_are_projected_certificates(seed: u64, kind in small_kinds()) {
        let calc = Arc::new(Calculus::new(kind));
        let vars = 4;
        let inst = random_instance(calc.clone(), &RandomSpec::new(vars, 3), &mut rng(seed));
        let sol = solve(&inst, &SolveOptions::default()).unwrap();
        let records = sol.records().unwrap();
        for t in 0..sol.nice.len() {
            let below = sol.nice.subtree_vars(t);
            let bag = &sol.nice.node(t).bag;
            let want: BTreeSet<AtomicNetwork> = enumerate_certificates(&calc, &inst.subinstance(&below), &below)
                .iter()
                .map(|c| c.project(bag))
                .collect();
            let got: BTreeSet<AtomicNetwork> = records[t].as_ref().unwrap().members().iter().cloned().collect();
            prop_assert_eq!(got, want, "node {}", t);
        }
    }

    #[test]
    fn records_never_exceed_the_complete_count(seed: u64, kind in small_kinds()) {
        let calc = Arc::new(Calculus::new(kind));
        let inst = random_instance(calc.clone(), &RandomSpec::new(7, 6), &mut rng(seed));
        let sol = solve(&inst, &SolveOptions { provenance: false, ..Default::default() }).unwrap();
        for s in &sol.stats.nodes {
            if let Ok(bound) = count_complete_satisfiable(&calc, s.bag_size, false) {
                prop_assert!(s.record_size as u64 <= bound, "{:?} over {}", s, bound);
            }
        }
    }

    #[test]
    fn small_colouring_instances(seed: u64, n in 7usize..=8, p in 0.1f64..0.6, k in 2usize..=4) {
        let graph = random_graph(n, p, &mut rng(seed));
        let g = NamedGraph { names: (0..n).map(|i| format!("v{i}")).collect(), graph };
        let inst = coloring_to_cdc(&g, k).unwrap();
        let td = coloring_decomposition(&g, k, TdMode::Heuristic).unwrap();
        let opts = SolveOptions { provenance: false, decomposition: Some(td), ..Default::default() };
        prop_assert_eq!(solve(&inst, &opts).unwrap().sat, g.graph.is_colourable(k));
    }

    #[test]
    fn colouring_width_bound(seed: u64, n in 1usize..=6, p in 0.1f64..0.8, k in 2usize..=4) {
        let graph = random_graph(n, p, &mut rng(seed));
        let wg = width_of(&graph, TdMode::Exact).max(0);
        let g = NamedGraph { names: (0..n).map(|i| format!("v{i}")).collect(), graph };
        let inst = coloring_to_cdc(&g, k).unwrap();
        prop_assert!(width_of(&inst.primal_graph(), TdMode::Exact) <= wg + 2 * k as isize - 1);
    }

    #[test]
    fn translation_preserves_answers(seed: u64, vars in 2usize..=6, constraints in 1usize..=10) {
        let cdc = Arc::new(Calculus::new(CalculusKind::Cardinal));
        let mut spec = RandomSpec::new(vars, constraints);
        spec.dnf_chance = 0.0;
        spec.max_disjuncts = 4;
        let src = random_instance(cdc, &spec, &mut rng(seed));
        let ia = cdc_to_ia(&src).unwrap();
        prop_assert_eq!(ia.primal_graph(), src.primal_graph());
        let want = brute_solve(&src).unwrap();
        prop_assert_eq!(sat(&src), want);
        prop_assert_eq!(sat(&ia), want);
        prop_assert_eq!(brute_solve(&ia).unwrap(), want);
    }

    #[test]
    fn subinstance_primal_graph(seed: u64, kind in small_kinds()) {
        let mut r = rng(seed);
        let calc = Arc::new(Calculus::new(kind));
        let inst = random_instance(calc, &RandomSpec::new(8, 10), &mut r);
        let keep: Vec<Var> = inst.vars().choose_multiple(&mut r, 5).copied().collect();
        let sub = inst.subinstance(&keep);
        let mut want = BTreeSet::new();
        for c in inst.constraints() {
            let s = c.scope();
            if s.iter().all(|v| keep.contains(v)) {
                for (i, a) in s.iter().enumerate() {
                    for b in &s[i + 1..] {
                        if a != b {
                            want.insert((*a.min(b), *a.max(b)));
                        }
                    }
                }
            }
        }
        let got: BTreeSet<(Var, Var)> = sub.primal_graph().labeled_edges().into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn projection_keeps_completeness_and_satisfiability(seed: u64, kind in small_kinds(), keep in 0usize..=4) {
        let mut r = rng(seed);
        let calc = Calculus::new(kind);
        let vars: Vec<Var> = (0..4).map(Var).collect();
        let net = random_complete_network(&calc, AtomicNetwork::new(Vec::new()), &vars, &mut r);
        let part: Vec<Var> = vars.choose_multiple(&mut r, keep).copied().collect();
        let p = net.project(&part);
        prop_assert_eq!(p.vars().len(), keep);
        prop_assert!(calc.is_complete(&p) && calc.is_satisfiable(&p));
    }

    #[test]
    fn implication_survives_completion(seed: u64, kind in small_kinds()) {
        let mut r = rng(seed);
        let calc = Arc::new(Calculus::new(kind));
        let inst = random_instance(calc.clone(), &RandomSpec::new(4, 4), &mut r);
        let vars = inst.vars().to_vec();
        let full = random_complete_network(&calc, AtomicNetwork::new(Vec::new()), &vars, &mut r);
        // a partial network: the complete one with random entries dropped
        let entries: Vec<_> = full.entries().iter().filter(|_| r.gen_bool(0.6)).cloned().collect();
        let partial = AtomicNetwork::from_entries(vars.iter().copied(), entries).unwrap();
        let completed = calc.complete_network(&partial).unwrap();
        prop_assert!(calc.is_complete(&completed));
        for c in inst.constraints() {
            if c.implied_by(&partial) {
                prop_assert!(c.implied_by(&completed));
                prop_assert!(c.implied_by(&full));
            }
        }
    }

    #[test]
    fn negation_normalization_keeps_meaning(seed: u64, kind in prop::sample::select(vec![
        CalculusKind::Point, CalculusKind::Interval, CalculusKind::Cardinal, CalculusKind::Block(2),
    ])) {
        let mut r = rng(seed);
        let calc = Calculus::new(kind);
        let vars = [Var(0), Var(1), Var(2)];
        let count = calc.relation_count() as RelId;
        let terms: Vec<Vec<Literal>> = (0..r.gen_range(1..=3))
            .map(|_| {
                (0..r.gen_range(1..=3))
                    .map(|_| {
                        let args = [*vars.choose(&mut r).unwrap(), *vars.choose(&mut r).unwrap()];
                        Literal { atom: Atom::new(r.gen_range(0..count), &args), neg: r.gen_bool(0.5) }
                    })
                    .collect()
            })
            .collect();
        let c = Constraint::from_literals(&calc, &vars, terms.clone()).unwrap();
        let mut inst = Instance::with_variables(Arc::new(Calculus::new(kind)), ["a", "b", "c"]).unwrap();
        inst.add_constraint(c).unwrap();
        for _ in 0..20 {
            let model = random_model(&calc, &vars, &mut r).unwrap();
            let holds = terms.iter().any(|t| {
                t.iter().all(|l| (model.relation(&calc, &l.atom.args) == Some(l.atom.rel)) != l.neg)
            });
            prop_assert_eq!(verify_model(&inst, &model).is_ok(), holds);
        }
    }
}

#[test]
fn realized_models_round_trip() {
    let mut r = rng(11);
    let kinds = [
        CalculusKind::Point,
        CalculusKind::Interval,
        CalculusKind::Cardinal,
        CalculusKind::Block(2),
        CalculusKind::Phylogeny,
    ];
    for kind in kinds {
        let calc = Calculus::new(kind);
        for m in 1..=4u32 {
            let vars: Vec<Var> = (0..m).map(Var).collect();
            for _ in 0..50 {
                let net = random_complete_network(&calc, AtomicNetwork::new(Vec::new()), &vars, &mut r);
                let model = calc.realize(&net).unwrap();
                assert!(model.is_well_formed(), "{kind}");
                assert_eq!(model.network(&calc, &vars), net, "{kind} m={m}");
            }
        }
    }
}

#[test]
fn sat_answers_come_with_verified_models() {
    let mut r = rng(12);
    let kinds = [
        CalculusKind::Point,
        CalculusKind::Interval,
        CalculusKind::Cardinal,
        CalculusKind::Block(2),
        CalculusKind::Phylogeny,
    ];
    let mut checked = 0;
    while checked < 500 {
        let calc = Arc::new(Calculus::new(kinds[checked % kinds.len()]));
        let vars = r.gen_range(3..=10);
        let inst = random_instance(calc, &RandomSpec::new(vars, vars), &mut r);
        let sol = solve(&inst, &SolveOptions::default()).unwrap();
        if !sol.sat {
            continue;
        }
        let model = sol.model(&inst).unwrap();
        assert_eq!(verify_model(&inst, &model), Ok(()), "{inst:?}");
        checked += 1;
    }
}

#[test]
fn ba1_is_the_interval_algebra() {
    let ia = Calculus::new(CalculusKind::Interval);
    let ba1 = Calculus::new(CalculusKind::Block(1));
    assert_eq!(ia.relation_count(), ba1.relation_count());
    let vars: Vec<Var> = (0..3).map(Var).collect();
    let mut a = Vec::new();
    ia.for_each_complete(&vars, &mut |n| {
        a.push(n);
        true
    });
    let mut b = Vec::new();
    ba1.for_each_complete(&vars, &mut |n| {
        b.push(n);
        true
    });
    a.sort();
    b.sort();
    assert_eq!(a, b);
}
