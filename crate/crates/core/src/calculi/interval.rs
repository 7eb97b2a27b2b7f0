//! Allen's interval algebra and the block algebra BA_d.

use std::cmp::Ordering::{self, Equal as E, Greater as G, Less as L};

use smallvec::SmallVec;

use super::ordinal::{Ordinal, Shape};

pub const IA_COUNT: usize = 13;

pub const IA_NAMES: [&str; IA_COUNT] = [
    "p", "pi", "m", "mi", "o", "oi", "d", "di", "s", "si", "f", "fi", "e",
];

/// Full endpoint order of `I` against `J` for each IA relation:
/// `[I- vs J-, I- vs J+, I+ vs J-, I+ vs J+]`.
pub const IA_SIGNATURES: [[Ordering; 4]; IA_COUNT] = [
    [L, L, L, L], // p
    [G, G, G, G], // pi
    [L, L, E, L], // m
    [G, E, G, G], // mi
    [L, L, G, L], // o
    [G, L, G, G], // oi
    [G, L, G, L], // d
    [L, L, G, G], // di
    [E, L, G, L], // s
    [E, L, G, G], // si
    [G, L, G, E], // f
    [L, L, G, E], // fi
    [E, L, G, E], // e
];

/// Endpoint formulas as printed in the usual presentation of the algebra
/// (one defining formula per converse pair, omitting `I- < I+`). Each entry
/// is `(name, [(endpoint of I, ordering, endpoint of J)])` with endpoints
/// encoded `0 = start, 1 = end`; converses swap the roles of `I` and `J`.
pub const IA_TABLE_FORMULAS: [(&str, &[(u8, Ordering, u8)]); 7] = [
    ("p", &[(1, L, 0)]),
    ("m", &[(1, E, 0)]),
    ("o", &[(0, L, 0), (1, G, 0), (1, L, 1)]),
    ("d", &[(0, G, 0), (1, L, 1)]),
    ("s", &[(0, E, 0), (1, L, 1)]),
    ("f", &[(1, E, 1), (0, G, 0)]),
    ("e", &[(0, E, 0), (1, E, 1)]),
];

pub fn ia_id(name: &str) -> Option<u8> {
    IA_NAMES.iter().position(|&n| n == name).map(|i| i as u8)
}

/// IA relation of the converse pair.
pub fn ia_converse(id: u8) -> u8 {
    let sig = IA_SIGNATURES[id as usize];
    let conv = [sig[0].reverse(), sig[2].reverse(), sig[1].reverse(), sig[3].reverse()];
    IA_SIGNATURES.iter().position(|s| *s == conv).unwrap() as u8
}

pub(crate) fn block_ordinal(dims: usize) -> (Ordinal, Vec<String>) {
    let total = IA_COUNT.pow(dims as u32);
    let mut locals = Vec::with_capacity(total);
    let mut names = Vec::with_capacity(total);
    for code in 0..total {
        let mut c = code;
        let mut loc: SmallVec<[u8; 3]> = SmallVec::from_elem(0, dims);
        for d in (0..dims).rev() {
            loc[d] = (c % IA_COUNT) as u8;
            c /= IA_COUNT;
        }
        names.push(block_name(&loc));
        locals.push(loc);
    }
    (Ordinal::new(Shape::Interval, dims, locals), names)
}

/// `p` for one dimension, `(p,m)` for two, and so on.
pub fn block_name(locals: &[u8]) -> String {
    if locals.len() == 1 {
        return IA_NAMES[locals[0] as usize].to_string();
    }
    let parts: Vec<&str> = locals.iter().map(|&l| IA_NAMES[l as usize]).collect();
    format!("({})", parts.join(","))
}
