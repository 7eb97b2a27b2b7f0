//! The cardinal direction calculus: points in the plane, one point-algebra
//! relation per coordinate.

use smallvec::smallvec;

use super::ordinal::{Ordinal, Shape};
use super::point::{EQ, GT, LT};

pub const CDC_NAMES: [&str; 9] = ["=", "N", "E", "S", "W", "NE", "SE", "SW", "NW"];

/// `(first coordinate, second coordinate)` comparison of `x` against `y`.
pub const CDC_PAIRS: [(u16, u16); 9] = [
    (EQ, EQ), // =
    (EQ, GT), // N
    (GT, EQ), // E
    (EQ, LT), // S
    (LT, EQ), // W
    (GT, GT), // NE
    (GT, LT), // SE
    (LT, LT), // SW
    (LT, GT), // NW
];

pub(crate) fn cardinal_ordinal() -> Ordinal {
    let locals = CDC_PAIRS
        .iter()
        .map(|&(a, b)| smallvec![a as u8, b as u8])
        .collect();
    Ordinal::new(Shape::Point, 2, locals)
}

pub(crate) fn point_ordinal() -> Ordinal {
    Ordinal::new(Shape::Point, 1, vec![smallvec![0], smallvec![1], smallvec![2]])
}
