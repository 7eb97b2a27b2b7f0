//! RCC5 and RCC8: relation algebras decided by algebraic closure.
//!
//! Composition tables are embedded. On atomic networks (basic relations and
//! unconstrained pairs) algebraic closure decides consistency for both
//! calculi.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{AtomicNetwork, Var};

pub const RCC8_NAMES: [&str; 8] = ["EQ", "PO", "DC", "EC", "NTPP", "NTPPi", "TPP", "TPPi"];
pub const RCC5_NAMES: [&str; 5] = ["EQ", "PO", "DR", "PP", "PPi"];

/// Composition rows for RCC8 as `(r, s, r;s)`.
const RCC8_COMPOSITION: &[(&str, &str, &[&str])] = &[
    ("DC", "DC", &["EQ", "PO", "DC", "EC", "NTPP", "NTPPi", "TPP", "TPPi"]),
    ("DC", "EC", &["DC", "EC", "PO", "TPP", "NTPP"]),
    ("DC", "PO", &["DC", "EC", "PO", "TPP", "NTPP"]),
    ("DC", "TPP", &["DC", "EC", "PO", "TPP", "NTPP"]),
    ("DC", "NTPP", &["DC", "EC", "PO", "TPP", "NTPP"]),
    ("DC", "TPPi", &["DC"]),
    ("DC", "NTPPi", &["DC"]),
    ("EC", "DC", &["DC", "EC", "PO", "TPPi", "NTPPi"]),
    ("EC", "EC", &["DC", "EC", "PO", "TPP", "TPPi", "EQ"]),
    ("EC", "PO", &["DC", "EC", "PO", "TPP", "NTPP"]),
    ("EC", "TPP", &["EC", "PO", "TPP", "NTPP"]),
    ("EC", "NTPP", &["PO", "TPP", "NTPP"]),
    ("EC", "TPPi", &["DC", "EC"]),
    ("EC", "NTPPi", &["DC"]),
    ("PO", "DC", &["DC", "EC", "PO", "TPPi", "NTPPi"]),
    ("PO", "EC", &["DC", "EC", "PO", "TPPi", "NTPPi"]),
    ("PO", "PO", &["EQ", "PO", "DC", "EC", "NTPP", "NTPPi", "TPP", "TPPi"]),
    ("PO", "TPP", &["PO", "TPP", "NTPP"]),
    ("PO", "NTPP", &["PO", "TPP", "NTPP"]),
    ("PO", "TPPi", &["DC", "EC", "PO", "TPPi", "NTPPi"]),
    ("PO", "NTPPi", &["DC", "EC", "PO", "TPPi", "NTPPi"]),
    ("TPP", "DC", &["DC"]),
    ("TPP", "EC", &["DC", "EC"]),
    ("TPP", "PO", &["DC", "EC", "PO", "TPP", "NTPP"]),
    ("TPP", "TPP", &["TPP", "NTPP"]),
    ("TPP", "NTPP", &["NTPP"]),
    ("TPP", "TPPi", &["DC", "EC", "PO", "TPP", "TPPi", "EQ"]),
    ("TPP", "NTPPi", &["DC", "EC", "PO", "TPPi", "NTPPi"]),
    ("NTPP", "DC", &["DC"]),
    ("NTPP", "EC", &["DC"]),
    ("NTPP", "PO", &["DC", "EC", "PO", "TPP", "NTPP"]),
    ("NTPP", "TPP", &["NTPP"]),
    ("NTPP", "NTPP", &["NTPP"]),
    ("NTPP", "TPPi", &["DC", "EC", "PO", "TPP", "NTPP"]),
    ("NTPP", "NTPPi", &["EQ", "PO", "DC", "EC", "NTPP", "NTPPi", "TPP", "TPPi"]),
    ("TPPi", "DC", &["DC", "EC", "PO", "TPPi", "NTPPi"]),
    ("TPPi", "EC", &["EC", "PO", "TPPi", "NTPPi"]),
    ("TPPi", "PO", &["PO", "TPPi", "NTPPi"]),
    ("TPPi", "TPP", &["PO", "TPP", "TPPi", "EQ"]),
    ("TPPi", "NTPP", &["PO", "TPP", "NTPP"]),
    ("TPPi", "TPPi", &["TPPi", "NTPPi"]),
    ("TPPi", "NTPPi", &["NTPPi"]),
    ("NTPPi", "DC", &["DC", "EC", "PO", "TPPi", "NTPPi"]),
    ("NTPPi", "EC", &["PO", "TPPi", "NTPPi"]),
    ("NTPPi", "PO", &["PO", "TPPi", "NTPPi"]),
    ("NTPPi", "TPP", &["PO", "TPPi", "NTPPi"]),
    ("NTPPi", "NTPP", &["PO", "TPP", "NTPP", "TPPi", "NTPPi", "EQ"]),
    ("NTPPi", "TPPi", &["NTPPi"]),
    ("NTPPi", "NTPPi", &["NTPPi"]),
];

const RCC8_CONVERSE: &[(&str, &str)] = &[
    ("EQ", "EQ"),
    ("PO", "PO"),
    ("DC", "DC"),
    ("EC", "EC"),
    ("NTPP", "NTPPi"),
    ("NTPPi", "NTPP"),
    ("TPP", "TPPi"),
    ("TPPi", "TPP"),
];

const RCC5_COMPOSITION: &[(&str, &str, &[&str])] = &[
    ("DR", "DR", &["EQ", "PO", "DR", "PP", "PPi"]),
    ("DR", "PO", &["DR", "PO", "PP"]),
    ("DR", "PP", &["DR", "PO", "PP"]),
    ("DR", "PPi", &["DR"]),
    ("PO", "DR", &["DR", "PO", "PPi"]),
    ("PO", "PO", &["EQ", "PO", "DR", "PP", "PPi"]),
    ("PO", "PP", &["PO", "PP"]),
    ("PO", "PPi", &["DR", "PO", "PPi"]),
    ("PP", "DR", &["DR"]),
    ("PP", "PO", &["DR", "PO", "PP"]),
    ("PP", "PP", &["PP"]),
    ("PP", "PPi", &["EQ", "PO", "DR", "PP", "PPi"]),
    ("PPi", "DR", &["DR", "PO", "PPi"]),
    ("PPi", "PO", &["PO", "PPi"]),
    ("PPi", "PP", &["EQ", "PO", "PP", "PPi"]),
    ("PPi", "PPi", &["PPi"]),
];

const RCC5_CONVERSE: &[(&str, &str)] = &[
    ("EQ", "EQ"),
    ("PO", "PO"),
    ("DR", "DR"),
    ("PP", "PPi"),
    ("PPi", "PP"),
];

/// Composition-table description; also the on-disk override format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionTable {
    pub relations: Vec<String>,
    pub identity: String,
    pub converse: BTreeMap<String, String>,
    /// `composition[r][s]` lists the relations allowed for `(x, z)` given
    /// `r(x, y)` and `s(y, z)`. Pairs involving the identity may be omitted.
    pub composition: BTreeMap<String, BTreeMap<String, Vec<String>>>,
}

impl CompositionTable {
    fn from_static(
        names: &[&str],
        converse: &[(&str, &str)],
        rows: &[(&str, &str, &[&str])],
    ) -> Self {
        let mut composition: BTreeMap<String, BTreeMap<String, Vec<String>>> = BTreeMap::new();
        for (r, s, out) in rows {
            composition
                .entry(r.to_string())
                .or_default()
                .insert(s.to_string(), out.iter().map(|x| x.to_string()).collect());
        }
        CompositionTable {
            relations: names.iter().map(|s| s.to_string()).collect(),
            identity: "EQ".into(),
            converse: converse
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            composition,
        }
    }

    pub fn rcc8() -> Self {
        Self::from_static(&RCC8_NAMES, RCC8_CONVERSE, RCC8_COMPOSITION)
    }

    pub fn rcc5() -> Self {
        Self::from_static(&RCC5_NAMES, RCC5_CONVERSE, RCC5_COMPOSITION)
    }
}

/// Relation sets as bitmasks over at most 8 basic relations.
pub type RelSet = u8;

#[derive(Clone, Debug)]
pub(crate) struct RegionAlgebra {
    pub count: usize,
    pub identity: u16,
    pub converse: Vec<u16>,
    /// composition of singleton relations
    pub compose_basic: Vec<Vec<RelSet>>,
    /// composition of arbitrary sets, indexed `[a][b]`
    compose_sets: Vec<RelSet>,
    converse_sets: Vec<RelSet>,
}

impl RegionAlgebra {
    pub fn from_table(table: &CompositionTable) -> Result<Self> {
        let count = table.relations.len();
        if count == 0 || count > 8 {
            return Err(Error::invalid("table", "between 1 and 8 relations supported"));
        }
        let id_of = |name: &str| -> Result<u16> {
            table
                .relations
                .iter()
                .position(|r| r == name)
                .map(|i| i as u16)
                .ok_or_else(|| Error::invalid("table", format!("unknown relation `{name}`")))
        };
        let identity = id_of(&table.identity)?;
        let mut converse = vec![u16::MAX; count];
        for (a, b) in &table.converse {
            converse[id_of(a)? as usize] = id_of(b)?;
        }
        if converse.contains(&u16::MAX) {
            return Err(Error::invalid("table", "converse map is not total"));
        }
        let mut compose_basic = vec![vec![0 as RelSet; count]; count];
        for r in 0..count {
            compose_basic[r][identity as usize] = 1 << r;
            compose_basic[identity as usize][r] = 1 << r;
        }
        for (r, row) in &table.composition {
            let r = id_of(r)? as usize;
            for (s, out) in row {
                let s = id_of(s)? as usize;
                let mut set = 0;
                for x in out {
                    set |= 1 << id_of(x)?;
                }
                compose_basic[r][s] = set;
            }
        }
        for (r, row) in compose_basic.iter().enumerate() {
            for (s, set) in row.iter().enumerate() {
                if *set == 0 {
                    return Err(Error::invalid(
                        "table",
                        format!(
                            "missing composition {} ; {}",
                            table.relations[r], table.relations[s]
                        ),
                    ));
                }
            }
        }
        let full = Self::full_of(count) as usize;
        let mut compose_sets = vec![0; (full + 1) * (full + 1)];
        for a in 0..=full {
            for b in 0..=full {
                let mut out = 0;
                for r in 0..count {
                    if a & (1 << r) == 0 {
                        continue;
                    }
                    for s in 0..count {
                        if b & (1 << s) != 0 {
                            out |= compose_basic[r][s];
                        }
                    }
                }
                compose_sets[a * (full + 1) + b] = out;
            }
        }
        let converse_sets = (0..=full)
            .map(|a| {
                (0..count)
                    .filter(|r| a & (1 << r) != 0)
                    .fold(0, |acc, r| acc | (1 << converse[r]))
            })
            .collect();
        Ok(RegionAlgebra {
            count,
            identity,
            converse,
            compose_basic,
            compose_sets,
            converse_sets,
        })
    }

    fn full_of(count: usize) -> RelSet {
        ((1u16 << count) - 1) as RelSet
    }

    pub fn full(&self) -> RelSet {
        Self::full_of(self.count)
    }

    pub fn compose(&self, a: RelSet, b: RelSet) -> RelSet {
        self.compose_sets[a as usize * (self.full() as usize + 1) + b as usize]
    }

    pub fn converse_set(&self, a: RelSet) -> RelSet {
        self.converse_sets[a as usize]
    }

    /// Algebraic closure of a relation-set matrix. Returns `false` if some
    /// entry becomes empty.
    pub fn close(&self, m: &mut [RelSet], n: usize) -> bool {
        let id = 1u8 << self.identity;
        for i in 0..n {
            m[i * n + i] &= id;
            if m[i * n + i] == 0 {
                return false;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let c = self.converse_set(m[j * n + i]);
                m[i * n + j] &= c;
                if m[i * n + j] == 0 {
                    return false;
                }
            }
        }
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        let mut queued = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j && m[i * n + j] != self.full() {
                    queue.push_back((i, j));
                    queued[i * n + j] = true;
                }
            }
        }
        while let Some((i, j)) = queue.pop_front() {
            queued[i * n + j] = false;
            let rij = m[i * n + j];
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                // (i,k) through j
                let ik = m[i * n + k] & self.compose(rij, m[j * n + k]);
                if ik != m[i * n + k] {
                    if ik == 0 {
                        return false;
                    }
                    m[i * n + k] = ik;
                    m[k * n + i] &= self.converse_set(ik);
                    for (a, b) in [(i, k), (k, i)] {
                        if !queued[a * n + b] {
                            queued[a * n + b] = true;
                            queue.push_back((a, b));
                        }
                    }
                }
                // (k,j) through i
                let kj = m[k * n + j] & self.compose(m[k * n + i], rij);
                if kj != m[k * n + j] {
                    if kj == 0 {
                        return false;
                    }
                    m[k * n + j] = kj;
                    m[j * n + k] &= self.converse_set(kj);
                    for (a, b) in [(k, j), (j, k)] {
                        if !queued[a * n + b] {
                            queued[a * n + b] = true;
                            queue.push_back((a, b));
                        }
                    }
                }
            }
        }
        true
    }

    /// Relation-set matrix of an atomic network; missing pairs are
    /// unconstrained.
    pub fn matrix(&self, net: &AtomicNetwork) -> Vec<RelSet> {
        let vars = net.vars();
        let n = vars.len();
        let mut m = vec![self.full(); n * n];
        for (t, r) in net.entries() {
            let i = vars.binary_search(&t[0]).unwrap();
            let j = vars.binary_search(&t[1]).unwrap();
            m[i * n + j] &= 1 << r;
        }
        m
    }

    /// Problems with the table as a relation algebra: converse must be an
    /// involution fixing the identity, the identity must be neutral, and
    /// `conv(r;s) = conv(s);conv(r)` must hold for all basic `r, s`.
    pub fn consistency_problems(&self, names: &[String]) -> Vec<String> {
        let mut out = Vec::new();
        let id = self.identity as usize;
        if self.converse[id] as usize != id {
            out.push(format!("converse of identity {} is not itself", names[id]));
        }
        for r in 0..self.count {
            if self.converse[self.converse[r] as usize] as usize != r {
                out.push(format!("converse is not an involution at {}", names[r]));
            }
            if self.compose_basic[r][id] != 1 << r || self.compose_basic[id][r] != 1 << r {
                out.push(format!("identity is not neutral for {}", names[r]));
            }
            for s in 0..self.count {
                let lhs = self.converse_set(self.compose_basic[r][s]);
                let rhs = self.compose_basic[self.converse[s] as usize][self.converse[r] as usize];
                if lhs != rhs {
                    out.push(format!("converse does not distribute over {} ; {}", names[r], names[s]));
                }
            }
        }
        out
    }

    /// The table this algebra was built from, with every pair spelled out.
    pub fn to_table(&self, names: &[String]) -> CompositionTable {
        let set_names = |set: RelSet| -> Vec<String> {
            (0..self.count).filter(|r| set & (1 << r) != 0).map(|r| names[r].clone()).collect()
        };
        CompositionTable {
            relations: names.to_vec(),
            identity: names[self.identity as usize].clone(),
            converse: (0..self.count)
                .map(|r| (names[r].clone(), names[self.converse[r] as usize].clone()))
                .collect(),
            composition: (0..self.count)
                .map(|r| {
                    let row = (0..self.count)
                        .map(|s| (names[s].clone(), set_names(self.compose_basic[r][s])))
                        .collect();
                    (names[r].clone(), row)
                })
                .collect(),
        }
    }

    pub fn decide(&self, net: &AtomicNetwork) -> bool {
        let n = net.vars().len();
        let mut m = self.matrix(net);
        if m.contains(&0) {
            return false;
        }
        self.close(&mut m, n)
    }
}

/// A region of the explicit set model: `X(i)` private to the `i`-th
/// variable, `Y(i, j)` shared by a partially overlapping pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    X(u32),
    Y(u32, u32),
}

/// Variables interpreted as finite sets of pairwise disjoint regions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rcc5SetModel {
    pub sets: BTreeMap<Var, BTreeSet<Region>>,
}

pub const RCC5_EQ: u16 = 0;
pub const RCC5_PO: u16 = 1;
pub const RCC5_DR: u16 = 2;
pub const RCC5_PP: u16 = 3;
pub const RCC5_PPI: u16 = 4;

/// RCC5 relation between two non-empty sets of regions.
pub fn rcc5_relation_of_sets<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> u16 {
    if a == b {
        RCC5_EQ
    } else if a.is_disjoint(b) {
        RCC5_DR
    } else if a.is_subset(b) {
        RCC5_PP
    } else if b.is_subset(a) {
        RCC5_PPI
    } else {
        RCC5_PO
    }
}

/// The set model for an RCC5 network whose off-diagonal entries are all DR
/// or PO: every variable gets its own region, and every PO pair shares one
/// more region.
pub fn rcc5_drpo_model(net: &AtomicNetwork) -> Result<Rcc5SetModel> {
    let vars = net.vars();
    let mut sets: BTreeMap<Var, BTreeSet<Region>> = vars
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, BTreeSet::from([Region::X(i as u32 + 1)])))
        .collect();
    for (t, r) in net.entries() {
        let (x, y) = (t[0], t[1]);
        if x == y {
            if *r != RCC5_EQ {
                return Err(Error::Unsat);
            }
            continue;
        }
        let i = vars.binary_search(&x).unwrap() as u32 + 1;
        let j = vars.binary_search(&y).unwrap() as u32 + 1;
        match *r {
            RCC5_DR => {}
            RCC5_PO => {
                let y_region = Region::Y(i.min(j), i.max(j));
                sets.get_mut(&x).unwrap().insert(y_region);
                sets.get_mut(&y).unwrap().insert(y_region);
            }
            _ => {
                return Err(Error::Contract(
                    "set model construction needs DR/PO off-diagonal entries".into(),
                ))
            }
        }
    }
    Ok(Rcc5SetModel { sets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::tuple;

    fn algebra(table: &CompositionTable) -> RegionAlgebra {
        RegionAlgebra::from_table(table).unwrap()
    }

    fn check_self_consistency(table: &CompositionTable) {
        let a = algebra(table);
        let n = a.count;
        for r in 0..n {
            assert_eq!(a.converse[a.converse[r] as usize] as usize, r, "converse involution");
            let id = a.identity as usize;
            assert_eq!(a.compose_basic[id][r], 1 << r);
            assert_eq!(a.compose_basic[r][id], 1 << r);
            // identity is only in r;s when s is the converse of r
            for s in 0..n {
                let has_id = a.compose_basic[r][s] & (1 << id) != 0;
                assert_eq!(has_id, s == a.converse[r] as usize, "{r} {s}");
            }
        }
        for r in 0..n {
            for s in 0..n {
                // (r;s)^ = s^;r^
                let lhs = a.converse_set(a.compose_basic[r][s]);
                let rhs = a.compose_basic[a.converse[s] as usize][a.converse[r] as usize];
                assert_eq!(lhs, rhs, "converse law at {} ; {}", table.relations[r], table.relations[s]);
            }
        }
        // triangle symmetry: t in r;s iff s in r^;t iff r in t;s^
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    let a1 = a.compose_basic[r][s] & (1 << t) != 0;
                    let a2 = a.compose_basic[a.converse[r] as usize][t] & (1 << s) != 0;
                    let a3 = a.compose_basic[t][a.converse[s] as usize] & (1 << r) != 0;
                    assert_eq!(a1, a2);
                    assert_eq!(a1, a3);
                }
            }
        }
    }

    #[test]
    fn rcc8_table_self_consistent() {
        check_self_consistency(&CompositionTable::rcc8());
    }

    #[test]
    fn rcc5_table_self_consistent() {
        check_self_consistency(&CompositionTable::rcc5());
    }

    /// Oracle: RCC5 composition derived from non-empty subsets of a 7-element
    /// universe (enough room for every Venn configuration of three sets).
    #[test]
    fn rcc5_table_matches_set_semantics() {
        let universe = 7u32;
        let sets: Vec<BTreeSet<u32>> = (1u32..(1 << universe))
            .map(|mask| (0..universe).filter(|b| mask & (1 << b) != 0).collect())
            .collect();
        let mut derived = [[0u8; 5]; 5];
        // fix `a` to canonical shapes to keep the triple loop small: by
        // symmetry of the universe, relabelings do not add configurations
        let anchors: Vec<&BTreeSet<u32>> = sets.iter().filter(|s| s.len() <= 4).take(40).collect();
        for a in &anchors {
            for b in &sets {
                let rab = rcc5_relation_of_sets(a, b);
                for c in &sets {
                    let rbc = rcc5_relation_of_sets(b, c);
                    let rac = rcc5_relation_of_sets(a, c);
                    derived[rab as usize][rbc as usize] |= 1 << rac;
                }
            }
        }
        let alg = algebra(&CompositionTable::rcc5());
        for r in 0..5 {
            for s in 0..5 {
                assert_eq!(
                    derived[r][s], alg.compose_basic[r][s],
                    "{} ; {}",
                    RCC5_NAMES[r], RCC5_NAMES[s]
                );
            }
        }
    }

    /// Coarsening RCC8 to RCC5 must reproduce the RCC5 table.
    #[test]
    fn rcc8_coarsens_to_rcc5() {
        let to5 = |r: usize| -> usize {
            match RCC8_NAMES[r] {
                "EQ" => 0,
                "PO" => 1,
                "DC" | "EC" => 2,
                "NTPP" | "TPP" => 3,
                _ => 4,
            }
        };
        let a8 = algebra(&CompositionTable::rcc8());
        let a5 = algebra(&CompositionTable::rcc5());
        let mut coarse = [[0u8; 5]; 5];
        for r in 0..8 {
            for s in 0..8 {
                let mut out = 0u8;
                for t in 0..8 {
                    if a8.compose_basic[r][s] & (1 << t) != 0 {
                        out |= 1 << to5(t);
                    }
                }
                coarse[to5(r)][to5(s)] |= out;
            }
        }
        for r in 0..5 {
            for s in 0..5 {
                assert_eq!(coarse[r][s], a5.compose_basic[r][s]);
            }
        }
    }

    fn rcc8(entries: &[(u32, &str, u32)]) -> AtomicNetwork {
        AtomicNetwork::from_entries(
            [],
            entries.iter().map(|&(a, r, b)| {
                (
                    tuple(&[Var(a), Var(b)]),
                    RCC8_NAMES.iter().position(|n| *n == r).unwrap() as u16,
                )
            }),
        )
        .unwrap()
    }

    #[test]
    fn nested_parts_cannot_be_disconnected() {
        let a = algebra(&CompositionTable::rcc8());
        assert!(!a.decide(&rcc8(&[(0, "NTPP", 1), (1, "NTPP", 2), (0, "DC", 2)])));
        assert!(a.decide(&rcc8(&[(0, "NTPP", 1), (1, "NTPP", 2), (0, "NTPP", 2)])));
        assert!(a.decide(&rcc8(&[(0, "EQ", 1), (1, "EQ", 0)])));
        assert!(!a.decide(&rcc8(&[(0, "TPP", 1), (1, "TPP", 0)])));
    }

    #[test]
    fn drpo_model_shapes() {
        let po = AtomicNetwork::from_entries(
            [],
            [
                (tuple(&[Var(0), Var(1)]), RCC5_PO),
                (tuple(&[Var(1), Var(0)]), RCC5_PO),
            ],
        )
        .unwrap();
        let m = rcc5_drpo_model(&po).unwrap();
        assert_eq!(m.sets[&Var(0)], BTreeSet::from([Region::X(1), Region::Y(1, 2)]));
        assert_eq!(m.sets[&Var(1)], BTreeSet::from([Region::X(2), Region::Y(1, 2)]));

        let dr = AtomicNetwork::from_entries([], [(tuple(&[Var(0), Var(1)]), RCC5_DR)]).unwrap();
        let m = rcc5_drpo_model(&dr).unwrap();
        assert!(m.sets[&Var(0)].is_disjoint(&m.sets[&Var(1)]));

        let single = AtomicNetwork::new([Var(0)]);
        let m = rcc5_drpo_model(&single).unwrap();
        assert_eq!(m.sets[&Var(0)], BTreeSet::from([Region::X(1)]));
    }
}
