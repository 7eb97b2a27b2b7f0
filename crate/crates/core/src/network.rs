//! Atomic constraint networks: the certificates manipulated by the solver.
//!
//! A network maps ordered variable tuples to basic-relation ids. Entries are
//! kept sorted lexicographically by tuple, so two networks over the same
//! variables compare (and hash) equal exactly when their entry maps agree.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Dense per-instance variable id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Index of a basic relation inside its calculus.
pub type RelId = u16;

/// Ordered argument tuple. Every shipped calculus has arity at most three.
pub type Tuple = SmallVec<[Var; 3]>;

pub fn tuple(vars: &[Var]) -> Tuple {
    Tuple::from_slice(vars)
}

/// Anything that can answer "which basic relation holds on this tuple".
pub trait RelationLookup {
    fn relation(&self, tuple: &[Var]) -> Option<RelId>;
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomicNetwork {
    vars: Vec<Var>,
    entries: Vec<(Tuple, RelId)>,
}

impl AtomicNetwork {
    /// Network over `vars` without any entries.
    pub fn new(vars: impl IntoIterator<Item = Var>) -> Self {
        let mut vars: Vec<Var> = vars.into_iter().collect();
        vars.sort_unstable();
        vars.dedup();
        AtomicNetwork {
            vars,
            entries: Vec::new(),
        }
    }

    /// Builds a network, rejecting tuples outside `vars` and conflicting
    /// duplicate entries.
    pub fn from_entries(
        vars: impl IntoIterator<Item = Var>,
        entries: impl IntoIterator<Item = (Tuple, RelId)>,
    ) -> Result<Self> {
        let mut net = AtomicNetwork::new(vars);
        for (t, r) in entries {
            net.insert(t, r)?;
        }
        Ok(net)
    }

    /// Fast constructor for callers that already hold sorted, duplicate-free
    /// entries whose tuples lie inside the (sorted) variable list.
    pub(crate) fn from_sorted_unchecked(vars: Vec<Var>, entries: Vec<(Tuple, RelId)>) -> Self {
        debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        AtomicNetwork { vars, entries }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn entries(&self) -> &[(Tuple, RelId)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    pub fn get(&self, t: &[Var]) -> Option<RelId> {
        self.entries
            .binary_search_by(|(k, _)| k.as_slice().cmp(t))
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// Adds `t -> rel`, adding the tuple's variables to the network if needed.
    /// Re-inserting an identical entry is a no-op; a different relation is a
    /// conflict.
    pub fn insert(&mut self, t: Tuple, rel: RelId) -> Result<()> {
        for &v in &t {
            if let Err(i) = self.vars.binary_search(&v) {
                self.vars.insert(i, v);
            }
        }
        match self
            .entries
            .binary_search_by(|(k, _)| k.as_slice().cmp(t.as_slice()))
        {
            Ok(i) if self.entries[i].1 == rel => Ok(()),
            Ok(_) => Err(Error::Conflict(t)),
            Err(i) => {
                self.entries.insert(i, (t, rel));
                Ok(())
            }
        }
    }

    /// Restriction to the entries whose tuples lie entirely inside `keep`.
    pub fn project(&self, keep: &[Var]) -> AtomicNetwork {
        let mut vars: Vec<Var> = keep
            .iter()
            .copied()
            .filter(|v| self.contains_var(*v))
            .collect();
        vars.sort_unstable();
        vars.dedup();
        let entries = self
            .entries
            .iter()
            .filter(|(t, _)| t.iter().all(|v| vars.binary_search(v).is_ok()))
            .cloned()
            .collect();
        AtomicNetwork { vars, entries }
    }

    /// Drops one variable together with every entry mentioning it.
    pub fn without(&self, gone: Var) -> AtomicNetwork {
        AtomicNetwork {
            vars: self.vars.iter().copied().filter(|&v| v != gone).collect(),
            entries: self
                .entries
                .iter()
                .filter(|(t, _)| !t.contains(&gone))
                .cloned()
                .collect(),
        }
    }

    /// Entry-map union; fails if both sides assign different relations to the
    /// same tuple.
    pub fn union(&self, other: &AtomicNetwork) -> Result<AtomicNetwork> {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(&other.vars);
        vars.sort_unstable();
        vars.dedup();

        let (a, b) = (&self.entries, &other.entries);
        let mut entries = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    entries.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    entries.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    if a[i].1 != b[j].1 {
                        return Err(Error::Conflict(a[i].0.clone()));
                    }
                    entries.push(a[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        entries.extend_from_slice(&a[i..]);
        entries.extend_from_slice(&b[j..]);
        Ok(AtomicNetwork { vars, entries })
    }

    /// Applies an order-preserving variable renaming. Because the map is
    /// monotone the canonical entry order survives without re-sorting.
    pub fn rename_monotone(&self, map: impl Fn(Var) -> Var) -> AtomicNetwork {
        let vars: Vec<Var> = self.vars.iter().map(|&v| map(v)).collect();
        let entries = self
            .entries
            .iter()
            .map(|(t, r)| (t.iter().map(|&v| map(v)).collect(), *r))
            .collect();
        AtomicNetwork { vars, entries }
    }

    /// Arbitrary renaming; entries are re-sorted.
    pub fn rename(&self, map: impl Fn(Var) -> Var) -> AtomicNetwork {
        let mut vars: Vec<Var> = self.vars.iter().map(|&v| map(v)).collect();
        vars.sort_unstable();
        vars.dedup();
        let mut entries: Vec<(Tuple, RelId)> = self
            .entries
            .iter()
            .map(|(t, r)| (t.iter().map(|&v| map(v)).collect(), *r))
            .collect();
        entries.sort();
        AtomicNetwork { vars, entries }
    }
}

impl RelationLookup for AtomicNetwork {
    fn relation(&self, tuple: &[Var]) -> Option<RelId> {
        self.get(tuple)
    }
}

/// A network seen together with a handful of not-yet-materialized entries.
/// Used to test candidate extensions before allocating them.
pub(crate) struct Overlay<'a> {
    pub base: &'a AtomicNetwork,
    pub extra: &'a [(Tuple, RelId)],
}

impl RelationLookup for Overlay<'_> {
    fn relation(&self, tuple: &[Var]) -> Option<RelId> {
        self.base.get(tuple).or_else(|| {
            self.extra
                .iter()
                .find(|(t, _)| t.as_slice() == tuple)
                .map(|(_, r)| *r)
        })
    }
}

/// Every tuple (with repetition) of the given arity over `vars`, in
/// lexicographic order when `vars` is sorted.
pub fn all_tuples(vars: &[Var], arity: usize) -> Vec<Tuple> {
    let mut out = Vec::new();
    if arity == 0 {
        return out;
    }
    let m = vars.len();
    if m == 0 {
        return out;
    }
    let mut idx = vec![0usize; arity];
    loop {
        out.push(idx.iter().map(|&i| vars[i]).collect());
        let mut pos = arity;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
        }
    }
}
