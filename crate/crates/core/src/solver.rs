//! Certificate-record dynamic programming over nice tree decompositions.
//!
//! The record of node `t` is the set of certificates of the instance
//! restricted to the variables below `t`, projected onto the bag of `t`.
//! The instance is satisfiable iff the root record is non-empty.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};
use web_time::Instant;

use indexmap::IndexSet;
use rayon::prelude::*;

use crate::calculus::{merge, Calculus};
use crate::error::{Error, Result};
use crate::instance::{Constraint, Instance};
use crate::model::Model;
use crate::network::{AtomicNetwork, Overlay, Tuple, Var, RelId};
use crate::td::{self, make_nice_weighted, NiceDecomposition, NodeKind, TdMode, TreeDecomposition};

/// Relations on `(u, v)` permitted by the binary disjunctions between `u`
/// and `v`, intersected per `u`.
fn allowed_pairs(calc: &Calculus, local: &[&Constraint], v: Var) -> Vec<(Var, Vec<RelId>)> {
    let mut out: BTreeMap<Var, Vec<RelId>> = BTreeMap::new();
    for c in local {
        let (scope, Some(rels)) = (c.scope(), c.relations()) else { continue };
        let rels: Vec<RelId> = match *scope {
            [u, w] if w == v && u != v => rels,
            [w, u] if w == v && u != v => match rels.iter().map(|&r| calc.converse(r)).collect() {
                Some(conv) => conv,
                None => continue,
            },
            _ => continue,
        };
        let u = if scope[0] == v { scope[1] } else { scope[0] };
        match out.get_mut(&u) {
            Some(prev) => prev.retain(|r| rels.contains(r)),
            None => {
                out.insert(u, rels);
            }
        }
    }
    out.into_iter().collect()
}

/// Back-pointers from a record member to the child members it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Link {
    Leaf,
    One(u32),
    Two(u32, u32),
}

#[derive(Clone, Debug, Default)]
pub struct Record {
    members: IndexSet<AtomicNetwork>,
    links: Vec<Link>,
}

impl Record {
    pub fn members(&self) -> &IndexSet<AtomicNetwork> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, n: &AtomicNetwork) -> bool {
        self.members.contains(n)
    }

    pub fn link(&self, i: usize) -> Link {
        self.links[i]
    }

    fn push(&mut self, n: AtomicNetwork, link: Link) {
        if self.members.insert(n) {
            self.links.push(link);
        }
    }
}

/// How introduce nodes produce their records.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IntroduceStrategy {
    /// Extend each child member by the new variable in every satisfiable
    /// way and check the constraints that mention it.
    #[default]
    Extend,
    /// Enumerate the certificates of the bag's sub-instance and keep those
    /// whose projection lies in the child record.
    Enumerate,
}

pub fn leaf_step() -> Record {
    let mut r = Record::default();
    r.push(AtomicNetwork::default(), Link::Leaf);
    r
}

/// Projects every member away from `v`, deduplicating.
pub fn forget_step(child: &Record, v: Var) -> Record {
    let mut r = Record::default();
    for (i, n) in child.members.iter().enumerate() {
        r.push(n.without(v), Link::One(i as u32));
    }
    r
}

/// Set intersection; the smaller record drives the scan, but members keep
/// the order of `left`.
pub fn join_step(left: &Record, right: &Record) -> Record {
    let mut r = Record::default();
    if left.len() <= right.len() {
        for (i, n) in left.members.iter().enumerate() {
            if let Some(j) = right.members.get_index_of(n) {
                r.push(n.clone(), Link::Two(i as u32, j as u32));
            }
        }
    } else {
        let mut hits: Vec<(usize, usize)> = right
            .members
            .iter()
            .enumerate()
            .filter_map(|(j, n)| left.members.get_index_of(n).map(|i| (i, j)))
            .collect();
        hits.sort_unstable();
        for (i, j) in hits {
            r.push(left.members[i].clone(), Link::Two(i as u32, j as u32));
        }
    }
    r
}

/// Per-solve context: the instance, a variable-to-constraint index and the
/// bag enumeration cache.
pub struct Dp<'a> {
    inst: &'a Instance,
    by_var: HashMap<Var, Vec<usize>>,
    strategy: IntroduceStrategy,
    cache: Mutex<HashMap<Vec<Var>, Arc<Vec<AtomicNetwork>>>>,
}

impl<'a> Dp<'a> {
    pub fn new(inst: &'a Instance, strategy: IntroduceStrategy) -> Self {
        let mut by_var: HashMap<Var, Vec<usize>> = HashMap::new();
        for (i, c) in inst.constraints().iter().enumerate() {
            let mut scope = c.scope().to_vec();
            scope.sort_unstable();
            scope.dedup();
            for v in scope {
                by_var.entry(v).or_default().push(i);
            }
        }
        Dp {
            inst,
            by_var,
            strategy,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Constraints with scope inside `bag`, optionally only those mentioning `v`.
    fn local(&self, bag: &[Var], v: Option<Var>) -> Vec<&'a Constraint> {
        let inside = |c: &Constraint| c.scope().iter().all(|x| bag.binary_search(x).is_ok());
        let mut ids: Vec<usize> = match v {
            Some(v) => self.by_var.get(&v).cloned().unwrap_or_default(),
            None => bag.iter().flat_map(|x| self.by_var.get(x).into_iter().flatten().copied()).collect(),
        };
        ids.sort_unstable();
        ids.dedup();
        let all = self.inst.constraints();
        ids.into_iter().map(|i| &all[i]).filter(|c| inside(c)).collect()
    }

    /// `bag` is the child's bag plus `v`, sorted.
    pub fn introduce_step(&self, child: &Record, bag: &[Var], v: Var) -> Record {
        let calc = self.inst.calculus();
        let mut r = Record::default();
        match self.strategy {
            IntroduceStrategy::Extend => {
                let local = self.local(bag, Some(v));
                let allowed = allowed_pairs(calc, &local, v);
                for (i, n) in child.members.iter().enumerate() {
                    calc.for_each_extension_within(n, v, &allowed, &mut |new: &[(Tuple, RelId)]| {
                        let view = Overlay { base: n, extra: new };
                        if local.iter().all(|c| c.implied_by(&view)) {
                            let fresh = AtomicNetwork::from_sorted_unchecked(bag.to_vec(), new.to_vec());
                            r.push(merge(n, &fresh), Link::One(i as u32));
                        }
                    });
                }
            }
            IntroduceStrategy::Enumerate => {
                for cert in self.bag_certificates(bag).iter() {
                    if let Some(i) = child.members.get_index_of(&cert.without(v)) {
                        r.push(cert.clone(), Link::One(i as u32));
                    }
                }
            }
        }
        r
    }

    /// Certificates of the sub-instance induced by `bag`, cached per bag.
    fn bag_certificates(&self, bag: &[Var]) -> Arc<Vec<AtomicNetwork>> {
        if let Some(hit) = self.cache.lock().unwrap().get(bag) {
            return hit.clone();
        }
        let local = self.local(bag, None);
        let mut out = Vec::new();
        self.inst.calculus().for_each_complete(bag, &mut |n| {
            if local.iter().all(|c| c.implied_by(&n)) {
                out.push(n);
            }
            true
        });
        let out = Arc::new(out);
        self.cache.lock().unwrap().insert(bag.to_vec(), out.clone());
        out
    }

    fn step(&self, nice: &NiceDecomposition, t: usize, records: &[Option<Record>]) -> Record {
        let node = nice.node(t);
        let child = |i: usize| records[node.children[i]].as_ref().expect("child record computed");
        match node.kind {
            NodeKind::Leaf => leaf_step(),
            NodeKind::Introduce(v) => self.introduce_step(child(0), &node.bag, v),
            NodeKind::Forget(v) => forget_step(child(0), v),
            NodeKind::Join => join_step(child(0), child(1)),
        }
    }

    /// Runs the DP bottom-up. With `keep` every record survives, otherwise
    /// a record is dropped once its parent is computed. With `stop_early`
    /// the run ends at the first empty record.
    pub fn run(&self, nice: &NiceDecomposition, keep: bool, stop_early: bool) -> Run {
        let mut records: Vec<Option<Record>> = vec![None; nice.len()];
        let mut stats = Vec::with_capacity(nice.len());
        let mut empty = false;
        for t in 0..nice.len() {
            let start = Instant::now();
            let r = self.step(nice, t, &records);
            stats.push(NodeStat::new(nice, t, r.len(), start));
            empty |= r.is_empty();
            records[t] = Some(r);
            if !keep {
                for &c in &nice.node(t).children {
                    records[c] = None;
                }
            }
            if empty && stop_early {
                break;
            }
        }
        Run { records, stats, sat: !empty }
    }

    /// Same results as [`Dp::run`], computing independent subtrees in
    /// parallel. Maximal paths between join nodes are scheduled as tasks
    /// in rounds, so the schedule cannot affect any record.
    pub fn run_parallel(&self, nice: &NiceDecomposition, keep: bool) -> Run {
        let n = nice.len();
        let mut seg_of = vec![0usize; n];
        let mut segments: Vec<Vec<usize>> = Vec::new();
        for t in 0..n {
            let node = nice.node(t);
            if node.children.len() == 1 {
                let s = seg_of[node.children[0]];
                segments[s].push(t);
                seg_of[t] = s;
            } else {
                seg_of[t] = segments.len();
                segments.push(vec![t]);
            }
        }
        let deps: Vec<Vec<usize>> = segments
            .iter()
            .map(|s| nice.node(s[0]).children.iter().map(|&c| seg_of[c]).collect())
            .collect();
        let mut done = vec![false; segments.len()];
        let mut records: Vec<Option<Record>> = vec![None; n];
        let mut stats: Vec<Option<NodeStat>> = vec![None; n];
        while done.iter().any(|d| !d) {
            let ready: Vec<usize> = (0..segments.len())
                .filter(|&s| !done[s] && deps[s].iter().all(|&d| done[d]))
                .collect();
            let results: Vec<Vec<(usize, Record, NodeStat)>> = ready
                .par_iter()
                .map(|&s| {
                    let mut out: Vec<(usize, Record, NodeStat)> = Vec::with_capacity(segments[s].len());
                    for &t in &segments[s] {
                        let start = Instant::now();
                        let r = match out.last() {
                            Some((_, prev, _)) => {
                                let node = nice.node(t);
                                match node.kind {
                                    NodeKind::Introduce(v) => self.introduce_step(prev, &node.bag, v),
                                    NodeKind::Forget(v) => forget_step(prev, v),
                                    _ => unreachable!("segment interior has one child"),
                                }
                            }
                            None => self.step(nice, t, &records),
                        };
                        let stat = NodeStat::new(nice, t, r.len(), start);
                        if !keep {
                            if let Some(last) = out.last_mut() {
                                last.1 = Record::default();
                            }
                        }
                        out.push((t, r, stat));
                    }
                    out
                })
                .collect();
            for (&s, res) in ready.iter().zip(results) {
                if !keep {
                    for &c in &nice.node(segments[s][0]).children {
                        records[c] = None;
                    }
                }
                let last = *segments[s].last().unwrap();
                for (t, r, stat) in res {
                    stats[t] = Some(stat);
                    if keep || t == last {
                        records[t] = Some(r);
                    }
                }
                done[s] = true;
            }
        }
        let stats: Vec<NodeStat> = stats.into_iter().map(|s| s.unwrap()).collect();
        let sat = stats.iter().all(|s| s.record_size > 0);
        Run { records, stats, sat }
    }
}

/// Output of a DP pass.
pub struct Run {
    pub records: Vec<Option<Record>>,
    pub stats: Vec<NodeStat>,
    pub sat: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeStat {
    pub node: usize,
    pub kind: &'static str,
    pub bag_size: usize,
    pub record_size: usize,
    pub micros: u128,
}

impl NodeStat {
    fn new(nice: &NiceDecomposition, t: usize, record_size: usize, start: Instant) -> Self {
        NodeStat {
            node: t,
            kind: nice.node(t).kind.label(),
            bag_size: nice.node(t).bag.len(),
            record_size,
            micros: start.elapsed().as_micros(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Stats {
    pub nodes: Vec<NodeStat>,
    /// Width of the decomposition used; `-1` for an instance without variables.
    pub width: isize,
    pub peak_record: usize,
    pub decompose_micros: u128,
    pub dp_micros: u128,
}

impl Stats {
    /// `node_id,kind,bag_size,record_size,micros`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("node_id,kind,bag_size,record_size,micros\n");
        for s in &self.nodes {
            out.push_str(&format!("{},{},{},{},{}\n", s.node, s.kind, s.bag_size, s.record_size, s.micros));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub td_mode: TdMode,
    /// Use this decomposition instead of computing one; it is validated
    /// against the primal graph first.
    pub decomposition: Option<TreeDecomposition>,
    /// Retain records and back-pointers so a certificate can be extracted.
    pub provenance: bool,
    pub strategy: IntroduceStrategy,
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            td_mode: TdMode::Heuristic,
            decomposition: None,
            provenance: true,
            strategy: IntroduceStrategy::Extend,
            parallel: false,
        }
    }
}

pub struct Solution {
    pub sat: bool,
    pub stats: Stats,
    pub nice: NiceDecomposition,
    records: Option<Vec<Option<Record>>>,
}

impl Solution {
    pub fn records(&self) -> Option<&[Option<Record>]> {
        self.records.as_deref()
    }

    /// A complete satisfiable network on all variables implying every
    /// constraint. Needs a satisfiable result solved with provenance.
    pub fn certificate(&self, inst: &Instance) -> Result<AtomicNetwork> {
        if !self.sat {
            return Err(Error::Unsat);
        }
        let records = self
            .records
            .as_ref()
            .ok_or_else(|| Error::Contract("solved without provenance".into()))?;
        extract_certificate(inst, &self.nice, records)
    }

    /// A concrete model of the extracted certificate, where the calculus
    /// has a realizer.
    pub fn model(&self, inst: &Instance) -> Result<Model> {
        inst.calculus().realize(&self.certificate(inst)?)
    }
}

/// Edge weights for the introduce order: `ln(basic relations / terms)`
/// per constraint and scope pair, so tight constraints pull their
/// variables in early.
fn tightness(inst: &Instance) -> Vec<(Var, Var, f64)> {
    let basic = inst.calculus().relation_count() as f64;
    let mut out = Vec::new();
    for c in inst.constraints() {
        let w = (basic / c.dnf().len() as f64).ln().max(0.0) + 0.01;
        let s = c.scope();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                out.push((s[i], s[j], w));
            }
        }
    }
    out
}

/// Decomposes (or validates the given decomposition), converts it to nice
/// form and runs the DP.
pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<Solution> {
    let start = Instant::now();
    let graph = inst.primal_graph();
    let td = match &opts.decomposition {
        Some(td) => {
            td::validate(td, &graph).map_err(|vs| {
                Error::InvalidDecomposition(vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))
            })?;
            td.clone()
        }
        None => td::decompose(&graph, opts.td_mode)?,
    };
    let nice = make_nice_weighted(&td, tightness(inst));
    let decompose_micros = start.elapsed().as_micros();
    solve_nice(inst, nice, opts, decompose_micros)
}

/// Runs the DP on a nice decomposition assumed valid for `inst`.
pub fn solve_nice(inst: &Instance, nice: NiceDecomposition, opts: &SolveOptions, decompose_micros: u128) -> Result<Solution> {
    let start = Instant::now();
    let dp = Dp::new(inst, opts.strategy);
    let run = if opts.parallel {
        dp.run_parallel(&nice, opts.provenance)
    } else {
        dp.run(&nice, opts.provenance, !opts.provenance)
    };
    let stats = Stats {
        width: nice.width(),
        peak_record: run.stats.iter().map(|s| s.record_size).max().unwrap_or(0),
        nodes: run.stats,
        decompose_micros,
        dp_micros: start.elapsed().as_micros(),
    };
    Ok(Solution {
        sat: run.sat,
        stats,
        nice,
        records: opts.provenance.then_some(run.records),
    })
}

/// Follows back-pointers from the root, unions the chosen member of every
/// introduce node and completes the result.
pub fn extract_certificate(inst: &Instance, nice: &NiceDecomposition, records: &[Option<Record>]) -> Result<AtomicNetwork> {
    let missing = || Error::Contract("records were not retained".into());
    let root = nice.root();
    if records.get(root).and_then(|r| r.as_ref()).map_or(true, |r| r.is_empty()) {
        return Err(Error::Unsat);
    }
    let mut chosen = vec![usize::MAX; nice.len()];
    chosen[root] = 0;
    let mut entries: BTreeMap<Tuple, RelId> = BTreeMap::new();
    for t in (0..nice.len()).rev() {
        if chosen[t] == usize::MAX {
            continue;
        }
        let rec = records[t].as_ref().ok_or_else(missing)?;
        let node = nice.node(t);
        if let NodeKind::Introduce(_) = node.kind {
            for (tuple, rel) in rec.members[chosen[t]].entries() {
                if let Some(old) = entries.insert(tuple.clone(), *rel) {
                    if old != *rel {
                        return Err(Error::Conflict(tuple.clone()));
                    }
                }
            }
        }
        match rec.link(chosen[t]) {
            Link::Leaf => {}
            Link::One(i) => chosen[node.children[0]] = i as usize,
            Link::Two(i, j) => {
                chosen[node.children[0]] = i as usize;
                chosen[node.children[1]] = j as usize;
            }
        }
    }
    let union = AtomicNetwork::from_entries(inst.vars().iter().copied(), entries)?;
    inst.calculus().complete_network(&union)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{enumerate_certificates, Calculus, CalculusKind};
    use crate::instance::tests::betweenness;
    use crate::network::tuple;
    use crate::td::make_nice;

    fn pa_instance(vars: &[&str], cons: &[(&str, &str, &str)]) -> Instance {
        let mut inst = Instance::with_variables(Arc::new(Calculus::new(CalculusKind::Point)), vars.iter().copied()).unwrap();
        for (a, r, b) in cons {
            inst.constrain(&[*a, *b], &[*r]).unwrap();
        }
        inst
    }

    #[test]
    fn leaf_is_the_empty_network() {
        let r = leaf_step();
        assert_eq!(r.len(), 1);
        assert!(r.contains(&AtomicNetwork::default()));
    }

    #[test]
    fn introduce_unconstrained_point() {
        let inst = pa_instance(&["u", "v"], &[]);
        let dp = Dp::new(&inst, IntroduceStrategy::Extend);
        let u = dp.introduce_step(&leaf_step(), &[Var(0)], Var(0));
        assert_eq!(u.len(), 1);
        let uv = dp.introduce_step(&u, &[Var(0), Var(1)], Var(1));
        assert_eq!(uv.len(), 3);
        assert!(dp.introduce_step(&Record::default(), &[Var(0)], Var(0)).is_empty());

        let lt = pa_instance(&["u", "v"], &[("u", "<", "v")]);
        let dp = Dp::new(&lt, IntroduceStrategy::Enumerate);
        let u = dp.introduce_step(&leaf_step(), &[Var(0)], Var(0));
        assert_eq!(dp.introduce_step(&u, &[Var(0), Var(1)], Var(1)).len(), 1);
    }

    #[test]
    fn forget_and_join_laws() {
        let inst = pa_instance(&["u", "v"], &[]);
        let dp = Dp::new(&inst, IntroduceStrategy::Extend);
        let u = dp.introduce_step(&leaf_step(), &[Var(0)], Var(0));
        let uv = dp.introduce_step(&u, &[Var(0), Var(1)], Var(1));
        let back = forget_step(&uv, Var(1));
        assert_eq!(back.len(), 1);
        assert_eq!(back.members(), u.members());
        assert_eq!(forget_step(&u, Var(0)).members(), leaf_step().members());

        assert_eq!(join_step(&uv, &uv).members(), uv.members());
        assert!(join_step(&uv, &u).is_empty());
        let lt = dp.introduce_step(&u, &[Var(0), Var(1)], Var(1));
        let mut one = Record::default();
        one.push(lt.members()[0].clone(), Link::Leaf);
        assert_eq!(join_step(&uv, &one).len(), 1);
        assert_eq!(join_step(&one, &uv).len(), 1);
    }

    #[test]
    fn betweenness_is_sat_with_a_monotone_witness() {
        let inst = betweenness();
        let sol = solve(&inst, &SolveOptions::default()).unwrap();
        assert!(sol.sat);
        let cert = sol.certificate(&inst).unwrap();
        let calc = inst.calculus();
        assert!(calc.is_satisfiable(&cert) && calc.is_complete(&cert));
        assert!(inst.constraints().iter().all(|c| c.implied_by(&cert)));
        let lt = calc.relation_id("<").unwrap();
        let gt = calc.relation_id(">").unwrap();
        let chain = |r| (0..3).all(|i| cert.get(&tuple(&[Var(i), Var(i + 1)])) == Some(r));
        assert!(chain(lt) || chain(gt));
    }

    #[test]
    fn patchwork_union_is_unsat() {
        let inst = pa_instance(
            &["a", "x", "y", "b"],
            &[("a", "<", "x"), ("x", "<", "b"), ("a", ">", "y"), ("y", ">", "b")],
        );
        for parallel in [false, true] {
            let opts = SolveOptions { parallel, ..Default::default() };
            assert!(!solve(&inst, &opts).unwrap().sat);
        }
    }

    #[test]
    fn empty_instance_is_sat() {
        let inst = Instance::new(Arc::new(Calculus::new(CalculusKind::Interval)));
        let sol = solve(&inst, &SolveOptions::default()).unwrap();
        assert!(sol.sat);
        assert_eq!(sol.certificate(&inst).unwrap(), AtomicNetwork::default());
    }

    #[test]
    fn strategies_and_schedules_agree_on_records() {
        let inst = betweenness();
        let nice = make_nice(&td::decompose(&inst.primal_graph(), TdMode::Heuristic).unwrap());
        let a = Dp::new(&inst, IntroduceStrategy::Extend).run(&nice, true, false);
        let b = Dp::new(&inst, IntroduceStrategy::Enumerate).run(&nice, true, false);
        let c = Dp::new(&inst, IntroduceStrategy::Extend).run_parallel(&nice, true);
        for t in 0..nice.len() {
            let m = |r: &Run| r.records[t].as_ref().unwrap().members().clone();
            assert_eq!(m(&a), m(&b));
            assert_eq!(m(&a).iter().collect::<Vec<_>>(), m(&c).iter().collect::<Vec<_>>());
        }
        assert_eq!(
            a.stats.iter().map(|s| s.record_size).collect::<Vec<_>>(),
            c.stats.iter().map(|s| s.record_size).collect::<Vec<_>>()
        );
    }

    #[test]
    fn records_are_projected_certificates() {
        let inst = betweenness();
        let calc = inst.calculus();
        let nice = make_nice(&td::decompose(&inst.primal_graph(), TdMode::Heuristic).unwrap());
        let run = Dp::new(&inst, IntroduceStrategy::Extend).run(&nice, true, false);
        for t in 0..nice.len() {
            let below = nice.subtree_vars(t);
            let sub = inst.subinstance(&below);
            let expect: IndexSet<AtomicNetwork> = enumerate_certificates(calc, &sub, &below)
                .into_iter()
                .map(|c| c.project(&nice.node(t).bag))
                .collect();
            let got = run.records[t].as_ref().unwrap().members();
            assert_eq!(got.len(), expect.len(), "node {t}");
            assert!(got.iter().all(|n| expect.contains(n)), "node {t}");
        }
    }

    #[test]
    fn rejects_an_invalid_decomposition() {
        let inst = betweenness();
        let td = TreeDecomposition::new(vec![None], vec![vec![Var(0), Var(1)]]).unwrap();
        let opts = SolveOptions { decomposition: Some(td), ..Default::default() };
        assert!(matches!(solve(&inst, &opts), Err(Error::InvalidDecomposition(_))));
    }

    #[test]
    fn stats_csv_header() {
        let sol = solve(&betweenness(), &SolveOptions::default()).unwrap();
        let csv = sol.stats.to_csv();
        assert!(csv.starts_with("node_id,kind,bag_size,record_size,micros\n"));
        assert_eq!(csv.lines().count(), sol.nice.len() + 1);
        assert_eq!(sol.stats.width, 2);
    }
}
