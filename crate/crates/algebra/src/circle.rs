//! Circle combinatorics: points in cyclic position, the sign function, the
//! linking number of two chords and the parallel number.
//!
//! A point is identified by its exact rational position; the anticlockwise
//! order of the circle is the order of positions, with the cut placed after
//! the largest position. Base sets put `a_k` at position `k`; auxiliary
//! points created by enlarging a set land at fractional positions strictly
//! inside a gap, so every linking number involving them is well defined.

use std::fmt;

use num::rational::Ratio;
use num::{BigRational, Signed, Zero};
use thiserror::Error;

use crate::ring::Polynomial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircleError {
    #[error("point {0} is not a member of the point set")]
    ForeignPoint(Point),
    #[error("point index {0} is out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
}

/// Sign of an exact rational: -1, 0 or 1.
pub fn sign(a: &BigRational) -> i32 {
    if a.is_zero() {
        0
    } else if a.is_negative() {
        -1
    } else {
        1
    }
}

#[inline]
fn tri(a: Ratio<i64>) -> i64 {
    a.numer().signum()
}

/// A value in {0, +-1/2, +-1}, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    doubled: i8,
}

impl HalfInt {
    pub fn new(doubled: i8) -> HalfInt {
        assert!((-2..=2).contains(&doubled), "half-integer out of range");
        HalfInt { doubled }
    }

    pub const ZERO: HalfInt = HalfInt { doubled: 0 };

    pub fn doubled(&self) -> i8 {
        self.doubled
    }

    pub fn is_zero(&self) -> bool {
        self.doubled == 0
    }

    pub fn neg(&self) -> HalfInt {
        HalfInt { doubled: -self.doubled }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(num::BigInt::from(self.doubled), num::BigInt::from(2))
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.doubled {
            0 => write!(f, "0"),
            2 => write!(f, "1"),
            -2 => write!(f, "-1"),
            1 => write!(f, "1/2"),
            -1 => write!(f, "-1/2"),
            _ => unreachable!(),
        }
    }
}

/// A point of the circle, identified by its exact position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pos: Ratio<i64>,
}

impl Point {
    pub fn at(pos: Ratio<i64>) -> Point {
        Point { pos }
    }

    pub fn position(&self) -> Ratio<i64> {
        self.pos
    }

    /// Base-point index when the position is an integer.
    pub fn index(&self) -> Option<i64> {
        if *self.pos.denom() == 1 {
            Some(*self.pos.numer())
        } else {
            None
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index() {
            Some(k) => write!(f, "a{k}"),
            None => write!(f, "a({}/{})", self.pos.numer(), self.pos.denom()),
        }
    }
}

/// An ordered pair generator: `left.right`, with the left slot the vector
/// side and the right slot the covector side of the pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairGen {
    pub left: Point,
    pub right: Point,
}

impl fmt::Display for PairGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.left, self.right)
    }
}

/// The degree-1 polynomial for the pair `pq`; zero when `p = q`.
pub fn pair_poly(p: Point, q: Point) -> Polynomial<PairGen> {
    if p == q {
        Polynomial::zero()
    } else {
        Polynomial::var(PairGen { left: p, right: q })
    }
}

/// A finite anticlockwise-ordered set of circle points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// The base set `a_1, ..., a_r` at integer positions.
    pub fn circle(r: usize) -> PointSet {
        PointSet {
            points: (1..=r as i64).map(|k| Point::at(Ratio::from_integer(k))).collect(),
        }
    }

    pub fn from_points(mut points: Vec<Point>) -> PointSet {
        points.sort();
        points.dedup();
        PointSet { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.points.iter().copied()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    /// The base point `a_k` (integer position `k`), 1-based; stable under
    /// enlargement by auxiliary points.
    pub fn point(&self, k: usize) -> Result<Point, CircleError> {
        let candidate = Point::at(Ratio::from_integer(k as i64));
        if k == 0 || !self.contains(candidate) {
            return Err(CircleError::IndexOutOfRange(k, self.points.len()));
        }
        Ok(candidate)
    }

    /// The generator polynomial `pq`, checking membership of both points.
    pub fn generator(&self, p: Point, q: Point) -> Result<Polynomial<PairGen>, CircleError> {
        for pt in [p, q] {
            if !self.contains(pt) {
                return Err(CircleError::ForeignPoint(pt));
            }
        }
        Ok(pair_poly(p, q))
    }

    /// Inserts `count` fresh points in the open gap anticlockwise of
    /// `anchor`, returning the enlarged set and the new points in order.
    pub fn enlarge_after(&self, anchor: Point, count: usize) -> (PointSet, Vec<Point>) {
        let idx = self
            .points
            .binary_search(&anchor)
            .expect("anchor must belong to the point set");
        let gap = if idx + 1 < self.points.len() {
            self.points[idx + 1].position() - anchor.position()
        } else {
            Ratio::from_integer(1)
        };
        let step = gap / Ratio::from_integer(count as i64 + 1);
        let fresh: Vec<Point> = (1..=count as i64)
            .map(|t| Point::at(anchor.position() + step * Ratio::from_integer(t)))
            .collect();
        let mut points = self.points.clone();
        points.extend(fresh.iter().copied());
        points.sort();
        (PointSet { points }, fresh)
    }

    /// A strictly ordered anticlockwise tuple check (up to rotation).
    pub fn is_anticlockwise(&self, tuple: &[Point]) -> bool {
        anticlockwise(tuple)
    }
}

/// Mutually distinct and anticlockwise ordered (up to rotation).
pub fn anticlockwise(tuple: &[Point]) -> bool {
    cyclically_increasing(&tuple.iter().map(|p| p.position()).collect::<Vec<_>>())
}

/// All positions distinct and some rotation strictly increasing.
fn cyclically_increasing(pos: &[Ratio<i64>]) -> bool {
    if pos.len() <= 1 {
        return true;
    }
    let mut descents = 0;
    for i in 0..pos.len() {
        let a = pos[i];
        let b = pos[(i + 1) % pos.len()];
        if a == b {
            return false;
        }
        if a > b {
            descents += 1;
        }
    }
    descents <= 1
}

/// Linking number of the chords `rx` and `sy` from raw positions. The
/// positions play the role of the circle coordinate with the cut placed
/// after the largest value.
pub fn linking_number_positions(
    r: Ratio<i64>,
    x: Ratio<i64>,
    s: Ratio<i64>,
    y: Ratio<i64>,
) -> HalfInt {
    let first = tri(r - x) * tri(r - y) * tri(y - x);
    let second = tri(r - x) * tri(r - s) * tri(s - x);
    HalfInt::new((first - second) as i8)
}

/// Linking number of the chords `rx` and `sy`.
pub fn linking_number(r: Point, x: Point, s: Point, y: Point) -> HalfInt {
    linking_number_positions(r.position(), x.position(), s.position(), y.position())
}

/// Parallel number of the chords `(a_i, a_j)` and `(a_i', a_j')`: the
/// five-case position classification, zero in the remaining cases.
pub fn parallel_number(i: Point, j: Point, ip: Point, jp: Point) -> HalfInt {
    debug_assert!(i != j && ip != jp, "parallel number needs genuine chords");
    let cyc = |ps: &[Point]| cyclically_increasing(&ps.iter().map(|p| p.position()).collect::<Vec<_>>());
    if cyc(&[i, ip, jp, j]) {
        return HalfInt::new(2);
    }
    if cyc(&[ip, i, j, jp]) {
        return HalfInt::new(-2);
    }
    if (i == ip && cyc(&[i, jp, j])) || (jp == j && cyc(&[i, ip, j])) {
        return HalfInt::new(1);
    }
    if (ip == i && cyc(&[i, j, jp])) || (j == jp && cyc(&[ip, i, j])) {
        return HalfInt::new(-1);
    }
    HalfInt::ZERO
}
