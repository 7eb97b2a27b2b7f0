//! Calculi whose objects are tuples of points or intervals over `d`
//! independent linear orders: the point algebra (1 dimension, points),
//! Allen's interval algebra (1 dimension, intervals), the cardinal direction
//! calculus (2 dimensions, points) and the block algebra BA_d (d dimensions,
//! intervals).
//!
//! A basic relation is a tuple of per-dimension local relations. Deciding
//! reduces to one point-ordering problem per dimension; complete networks
//! correspond one-to-one to tuples of ordered partitions of the endpoints.

use std::cmp::Ordering;

use smallvec::SmallVec;

use super::interval::{IA_SIGNATURES, IA_COUNT};
use super::partition::for_each_ordered_partition;
use super::point::{order_points, ordering_of, rel_of};
use crate::network::{AtomicNetwork, RelId, Tuple, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Shape {
    Point,
    Interval,
}

impl Shape {
    fn points(self) -> usize {
        match self {
            Shape::Point => 1,
            Shape::Interval => 2,
        }
    }

    fn local_count(self) -> usize {
        match self {
            Shape::Point => 3,
            Shape::Interval => IA_COUNT,
        }
    }
}

/// Per-dimension coordinates of one object: `(lo, hi)`, with `lo == hi` for
/// points.
pub(crate) type Coords = SmallVec<[(i64, i64); 3]>;

#[derive(Clone, Debug)]
pub(crate) struct Ordinal {
    pub shape: Shape,
    pub dims: usize,
    /// global relation id -> local relation id per dimension
    locals: Vec<SmallVec<[u8; 3]>>,
    /// mixed-radix code of local ids -> global relation id
    global: Vec<RelId>,
    /// 4-comparison signature code -> IA id (interval shape only)
    ia_by_signature: [u8; 81],
}

fn sig_code(sig: [Ordering; 4]) -> usize {
    sig.iter()
        .fold(0, |acc, o| acc * 3 + (*o as i8 + 1) as usize)
}

impl Ordinal {
    pub fn new(shape: Shape, dims: usize, locals: Vec<SmallVec<[u8; 3]>>) -> Self {
        let base = shape.local_count();
        let mut global = vec![RelId::MAX; base.pow(dims as u32)];
        for (g, loc) in locals.iter().enumerate() {
            assert_eq!(loc.len(), dims);
            let code = loc.iter().fold(0, |acc, &l| acc * base + l as usize);
            assert_eq!(global[code], RelId::MAX, "duplicate local signature");
            global[code] = g as RelId;
        }
        assert!(global.iter().all(|&g| g != RelId::MAX), "relations not exhaustive");
        let mut ia_by_signature = [u8::MAX; 81];
        for (id, sig) in IA_SIGNATURES.iter().enumerate() {
            ia_by_signature[sig_code(*sig)] = id as u8;
        }
        Ordinal {
            shape,
            dims,
            locals,
            global,
            ia_by_signature,
        }
    }

    pub fn locals(&self, rel: RelId) -> &[u8] {
        &self.locals[rel as usize]
    }

    pub fn combine(&self, locals: &[u8]) -> RelId {
        let base = self.shape.local_count();
        let code = locals.iter().fold(0, |acc, &l| acc * base + l as usize);
        self.global[code]
    }

    /// Local relation in one dimension given `(lo, hi)` of both objects.
    fn local_from(&self, a: (i64, i64), b: (i64, i64)) -> u8 {
        match self.shape {
            Shape::Point => rel_of(a.0.cmp(&b.0)) as u8,
            Shape::Interval => {
                let sig = [a.0.cmp(&b.0), a.0.cmp(&b.1), a.1.cmp(&b.0), a.1.cmp(&b.1)];
                let id = self.ia_by_signature[sig_code(sig)];
                debug_assert_ne!(id, u8::MAX, "endpoint order not an IA relation");
                id
            }
        }
    }

    pub fn relation_from_coords(&self, a: &[(i64, i64)], b: &[(i64, i64)]) -> RelId {
        let locals: SmallVec<[u8; 3]> = (0..self.dims).map(|d| self.local_from(a[d], b[d])).collect();
        self.combine(&locals)
    }

    /// Point-ordering constraints for one dimension. Point ids are
    /// `pos * points + k` for the `k`-th endpoint of the variable at `pos`.
    fn dim_constraints(&self, net: &AtomicNetwork, dim: usize) -> Vec<(usize, Ordering, usize)> {
        let vars = net.vars();
        let pos = |v: Var| vars.binary_search(&v).expect("entry variable in network");
        let mut out = Vec::with_capacity(net.len() * 4 + vars.len());
        match self.shape {
            Shape::Point => {
                for (t, r) in net.entries() {
                    let l = self.locals[*r as usize][dim] as u16;
                    out.push((pos(t[0]), ordering_of(l), pos(t[1])));
                }
            }
            Shape::Interval => {
                for i in 0..vars.len() {
                    out.push((2 * i, Ordering::Less, 2 * i + 1));
                }
                for (t, r) in net.entries() {
                    let (x, y) = (pos(t[0]), pos(t[1]));
                    let sig = IA_SIGNATURES[self.locals[*r as usize][dim] as usize];
                    out.push((2 * x, sig[0], 2 * y));
                    out.push((2 * x, sig[1], 2 * y + 1));
                    out.push((2 * x + 1, sig[2], 2 * y));
                    out.push((2 * x + 1, sig[3], 2 * y + 1));
                }
            }
        }
        out
    }

    /// Per-dimension endpoint ranks realizing the network, or `None`.
    pub fn decide(&self, net: &AtomicNetwork) -> Option<Vec<Vec<usize>>> {
        let n = net.vars().len() * self.shape.points();
        (0..self.dims)
            .map(|d| order_points(n, &self.dim_constraints(net, d)))
            .collect()
    }

    /// Coordinates per variable (in `vars` order) from per-dimension ranks.
    pub fn coords(&self, vars_len: usize, ranks: &[Vec<usize>]) -> Vec<Coords> {
        (0..vars_len)
            .map(|i| {
                ranks
                    .iter()
                    .map(|r| match self.shape {
                        Shape::Point => (r[i] as i64, r[i] as i64),
                        Shape::Interval => (r[2 * i] as i64, r[2 * i + 1] as i64),
                    })
                    .collect()
            })
            .collect()
    }

    /// The complete network determined by coordinates.
    pub fn network_from_coords(&self, vars: &[Var], coords: &[Coords]) -> AtomicNetwork {
        let mut entries = Vec::with_capacity(vars.len() * vars.len());
        for (i, &x) in vars.iter().enumerate() {
            for (j, &y) in vars.iter().enumerate() {
                let rel = self.relation_from_coords(&coords[i], &coords[j]);
                entries.push((Tuple::from_slice(&[x, y]), rel));
            }
        }
        AtomicNetwork::from_sorted_unchecked(vars.to_vec(), entries)
    }

    /// Every complete satisfiable network over `vars` (sorted), via ordered
    /// partitions of the endpoints in each dimension.
    pub fn for_each_complete(&self, vars: &[Var], visit: &mut dyn FnMut(AtomicNetwork) -> bool) -> bool {
        let m = vars.len();
        let per_dim = self.valid_orders(m);
        let mut choice = vec![0usize; self.dims];
        if per_dim.is_empty() {
            return true;
        }
        loop {
            let ranks: Vec<Vec<usize>> = choice.iter().map(|&c| per_dim[c].clone()).collect();
            let coords = self.coords(m, &ranks);
            if !visit(self.network_from_coords(vars, &coords)) {
                return false;
            }
            // odometer over dimensions
            let mut d = self.dims;
            loop {
                if d == 0 {
                    return true;
                }
                d -= 1;
                choice[d] += 1;
                if choice[d] < per_dim.len() {
                    break;
                }
                choice[d] = 0;
            }
        }
    }

    /// Rank vectors of all ordered partitions of the endpoints of `m`
    /// objects in which every interval starts strictly before it ends.
    fn valid_orders(&self, m: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let p = m * self.shape.points();
        for_each_ordered_partition(p, |ranks| {
            let ok = match self.shape {
                Shape::Point => true,
                Shape::Interval => (0..m).all(|i| ranks[2 * i] < ranks[2 * i + 1]),
            };
            if ok {
                out.push(ranks.to_vec());
            }
            true
        });
        out
    }

    /// Visits every complete satisfiable extension of the complete network
    /// `net` by the fresh variable `v`. The visitor receives the new entries
    /// (every tuple mentioning `v`), sorted. Extensions whose relation on
    /// `(u, v)` lies outside the list given for `u` in `allowed` may be
    /// skipped; the dimensions are fixed one at a time and a choice is cut
    /// as soon as no allowed relation matches its local prefix.
    pub fn for_each_extension(
        &self,
        net: &AtomicNetwork,
        v: Var,
        allowed: &[(Var, Vec<RelId>)],
        visit: &mut dyn FnMut(&[(Tuple, RelId)]),
    ) {
        let vars = net.vars();
        let m = vars.len();
        let Some(ranks) = self.decide(net) else {
            return;
        };
        let coords = self.coords(m, &ranks);
        // doubled coordinates: existing block q sits at 2q+1, gaps at even values
        let blocks: Vec<usize> = ranks
            .iter()
            .map(|r| r.iter().copied().max().map_or(0, |x| x + 1))
            .collect();
        let options: Vec<Vec<(i64, i64)>> = blocks
            .iter()
            .map(|&r| {
                let top = 2 * r as i64;
                match self.shape {
                    Shape::Point => (0..=top).map(|h| (h, h)).collect(),
                    Shape::Interval => {
                        let mut o = Vec::new();
                        for lo in 0..=top {
                            for hi in lo..=top {
                                if lo < hi || lo % 2 == 0 {
                                    o.push((lo, hi));
                                }
                            }
                        }
                        o
                    }
                }
            })
            .collect();
        let doubled: Vec<Coords> = coords
            .iter()
            .map(|c| c.iter().map(|&(a, b)| (2 * a + 1, 2 * b + 1)).collect())
            .collect();

        let base = self.shape.local_count();
        let mut filters = Vec::new();
        for (u, rels) in allowed {
            let Ok(i) = vars.binary_search(u) else { continue };
            // prefixes[d][code of locals 0..=d] is true if some allowed relation starts that way
            let mut prefixes: Vec<Vec<bool>> = (1..=self.dims).map(|d| vec![false; base.pow(d as u32)]).collect();
            for &r in rels {
                let mut code = 0;
                for (d, &l) in self.locals[r as usize].iter().enumerate() {
                    code = code * base + l as usize;
                    prefixes[d][code] = true;
                }
            }
            filters.push(Filter { at: i, prefixes });
        }

        let mut walk = Walk {
            ord: self,
            vars,
            v,
            options: &options,
            doubled: &doubled,
            filters: &filters,
            base,
            mine: Coords::new(),
            codes: vec![0; filters.len()],
            buf: Vec::with_capacity(2 * m + 1),
            visit,
        };
        walk.dim(0);
    }

    /// Relation between an existing object (doubled coords) and the new one.
    /// `new_first` selects the tuple `(new, existing)`.
    fn rel_between(&self, existing: &[(i64, i64)], new: &[(i64, i64)], new_first: bool) -> RelId {
        let mut locals: SmallVec<[u8; 3]> = SmallVec::new();
        for d in 0..self.dims {
            let (a, b) = if new_first {
                (new[d], existing[d])
            } else {
                (existing[d], new[d])
            };
            locals.push(self.local_from(a, b));
        }
        self.combine(&locals)
    }
}

struct Filter {
    at: usize,
    prefixes: Vec<Vec<bool>>,
}

struct Walk<'a, 'v> {
    ord: &'a Ordinal,
    vars: &'a [Var],
    v: Var,
    options: &'a [Vec<(i64, i64)>],
    doubled: &'a [Coords],
    filters: &'a [Filter],
    base: usize,
    mine: Coords,
    codes: Vec<usize>,
    buf: Vec<(Tuple, RelId)>,
    visit: &'v mut dyn FnMut(&[(Tuple, RelId)]),
}

impl Walk<'_, '_> {
    fn dim(&mut self, d: usize) {
        let ord = self.ord;
        if d == ord.dims {
            self.emit();
            return;
        }
        let saved = self.codes.clone();
        'options: for &o in &self.options[d] {
            for (k, f) in self.filters.iter().enumerate() {
                let code = saved[k] * self.base + ord.local_from(self.doubled[f.at][d], o) as usize;
                if !f.prefixes[d][code] {
                    continue 'options;
                }
                self.codes[k] = code;
            }
            self.mine.push(o);
            self.dim(d + 1);
            self.mine.pop();
        }
        self.codes = saved;
    }

    fn emit(&mut self) {
        let ord = self.ord;
        let v = self.v;
        // lo == hi inside a gap stands for two fresh blocks in order
        let mine_self: Coords = self
            .mine
            .iter()
            .map(|&(a, b)| match ord.shape {
                Shape::Interval if a == b => (a, b + 1),
                _ => (a, b),
            })
            .collect();
        self.buf.clear();
        self.buf.push((Tuple::from_slice(&[v, v]), ord.relation_from_coords(&mine_self, &mine_self)));
        for (i, &u) in self.vars.iter().enumerate() {
            self.buf.push((Tuple::from_slice(&[u, v]), ord.rel_between(&self.doubled[i], &self.mine, false)));
            self.buf.push((Tuple::from_slice(&[v, u]), ord.rel_between(&self.doubled[i], &self.mine, true)));
        }
        self.buf.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        (self.visit)(&self.buf);
    }
}
