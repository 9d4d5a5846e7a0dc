//! Schubert-cell coordinates, the coordinate bracket and the embedding into
//! determinant ratios.
//!
//! Columns `1..r` are identified with the circle points `a_1..a_r`. A cell is
//! fixed by the sorted index set of its pivot columns; its coordinates are
//! indexed by a pivot row and a non-pivot column. The embedding sends the
//! coordinate `(i, j)` to the determinant ratio whose rows are the pivot
//! points with `a_i` replaced by `a_j` in the numerator, realized against a
//! tuple of auxiliary right points placed in the gap anticlockwise of `a_j`.
//! Verification compares the swapping bracket of two images against the image
//! of the coordinate bracket, as a zero certificate in the quotient field
//! over the enlarged point set.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::{BigInt, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bracket::{bracket_fraction, BracketParams};
use crate::circle::{linking_number, parallel_number, Point};
use crate::fraction::{det_ratio, frac_equal, Fraction, FractionError};
use crate::rank::{is_zero_rank_n, RankContext, ZeroCertificate};
use crate::ring::{Monomial, Polynomial, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrassError {
    #[error("pivot set must be nonempty, sorted, distinct and within 1..=r")]
    BadPivotSet,
    #[error("coordinate row {0} is not a pivot")]
    RowNotPivot(usize),
    #[error("coordinate column {0} must be a non-pivot column in 1..=r")]
    BadColumn(usize),
    #[error("matrix must have full row rank")]
    RankDeficient,
    #[error("matrix shape mismatch")]
    Shape,
    #[error(transparent)]
    Fraction(#[from] FractionError),
}

/// A sorted pivot-column set fixing a Schubert cell of the Grassmannian of
/// n-planes in r-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertIndex {
    r: usize,
    pivots: Vec<usize>,
}

impl SchubertIndex {
    pub fn new(r: usize, pivots: Vec<usize>) -> Result<SchubertIndex, GrassError> {
        if pivots.is_empty()
            || pivots.windows(2).any(|w| w[0] >= w[1])
            || pivots[0] < 1
            || *pivots.last().unwrap() > r
        {
            return Err(GrassError::BadPivotSet);
        }
        Ok(SchubertIndex { r, pivots })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, k: usize) -> bool {
        self.pivots.binary_search(&k).is_ok()
    }

    /// 0-based slot of a pivot column.
    pub fn slot(&self, i: usize) -> Option<usize> {
        self.pivots.binary_search(&i).ok()
    }

    /// The pivots with `i` removed, in increasing order.
    pub fn hat(&self, i: usize) -> Vec<usize> {
        self.pivots.iter().copied().filter(|&k| k != i).collect()
    }

    pub fn coord(&self, i: usize, j: usize) -> Result<CoordSymbol, GrassError> {
        if !self.contains(i) {
            return Err(GrassError::RowNotPivot(i));
        }
        if j < 1 || j > self.r || self.contains(j) {
            return Err(GrassError::BadColumn(j));
        }
        Ok(CoordSymbol { i, j })
    }

    /// All coordinates of the cell, in (row, column) order.
    pub fn coords(&self) -> Vec<CoordSymbol> {
        let mut out = Vec::new();
        for &i in &self.pivots {
            for j in 1..=self.r {
                if !self.contains(j) {
                    out.push(CoordSymbol { i, j });
                }
            }
        }
        out
    }
}

/// A cell coordinate: pivot row index and non-pivot column index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordSymbol {
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for CoordSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m[{},{}]", self.i, self.j)
    }
}

/// Polynomials in the formal cell coordinates.
pub type CoordPoly = Polynomial<CoordSymbol>;

/// An exact rational matrix, rows of equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Matrix, GrassError> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(GrassError::Shape);
        }
        Ok(Matrix { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Matrix {
        Matrix {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&v| Rational::from(BigInt::from(v))).collect())
                .collect(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.rows[row][col]
    }
}

/// Exact determinant by Gaussian elimination.
fn det(mut rows: Vec<Vec<Rational>>) -> Rational {
    let n = rows.len();
    let mut sign = Rational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !rows[r][col].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if pivot != col {
            rows.swap(pivot, col);
            sign = -sign;
        }
        let head = rows[col][col].clone();
        let pivot_row = rows[col].clone();
        for row in rows.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &head;
            for (entry, above) in row.iter_mut().zip(&pivot_row).skip(col) {
                *entry -= &factor * above;
            }
        }
    }
    let mut acc = sign;
    for (i, row) in rows.iter().enumerate() {
        acc *= &row[i];
    }
    acc
}

/// Minor of the matrix on the 1-based columns `cols`, in the given order.
pub fn minor(m: &Matrix, cols: &[usize]) -> Result<Rational, GrassError> {
    if cols.len() != m.n_rows() || cols.iter().any(|&c| c < 1 || c > m.n_cols()) {
        return Err(GrassError::Shape);
    }
    let rows: Vec<Vec<Rational>> = (0..m.n_rows())
        .map(|r| cols.iter().map(|&c| m.rows[r][c - 1].clone()).collect())
        .collect();
    Ok(det(rows))
}

/// Pluecker coordinate of the matrix at a sorted column set.
pub fn plucker(m: &Matrix, index: &SchubertIndex) -> Result<Rational, GrassError> {
    if index.r() != m.n_cols() || index.n() != m.n_rows() {
        return Err(GrassError::Shape);
    }
    minor(m, index.pivots())
}

/// The lexicographically minimal column set with a nonzero minor.
pub fn schubert_cell_index(m: &Matrix) -> Result<SchubertIndex, GrassError> {
    let n = m.n_rows();
    let r = m.n_cols();
    if n > r {
        return Err(GrassError::Shape);
    }
    for cols in (1..=r).combinations(n) {
        if !minor(m, &cols)?.is_zero() {
            return SchubertIndex::new(r, cols);
        }
    }
    Err(GrassError::RankDeficient)
}

fn base_point(k: usize) -> Point {
    Point::at(num::rational::Ratio::from_integer(k as i64))
}

/// The coordinate bracket of two cell coordinates: a combination of at most
/// two quadratic terms, weighted by the parallel number and the linking
/// number of the chords `(a_i, a_j)` and `(a_i', a_j')`.
pub fn coordinate_bracket(c: CoordSymbol, cp: CoordSymbol, p: &BracketParams) -> CoordPoly {
    let (ai, aj) = (base_point(c.i), base_point(c.j));
    let (aip, ajp) = (base_point(cp.i), base_point(cp.j));
    let s = parallel_number(ai, aj, aip, ajp);
    let j = linking_number(ai, aj, aip, ajp);
    let mut out = CoordPoly::zero();
    if !s.is_zero() {
        let coeff = (&p.alpha - &p.beta) * s.to_rational();
        let m = Monomial::from_powers(vec![
            (CoordSymbol { i: c.i, j: cp.j }, 1),
            (CoordSymbol { i: cp.i, j: c.j }, 1),
        ]);
        out.add_term(m, coeff);
    }
    if !j.is_zero() {
        let coeff = (&p.alpha + &p.beta) * j.to_rational();
        let m = Monomial::from_powers(vec![(c, 1), (cp, 1)]);
        out.add_term(m, coeff);
    }
    out
}

/// The swapping-bracket weights induced on the embedding's target.
pub fn target_weights(p: &BracketParams) -> BracketParams {
    BracketParams::new(&p.beta - &p.alpha, &p.alpha + &p.beta)
}

/// The embedding of a cell's coordinate ring into determinant ratios.
#[derive(Debug, Clone)]
pub struct CellMap {
    index: SchubertIndex,
}

/// Realized images of the coordinates needed for one verification item,
/// together with the enlarged context they live in.
pub struct RealizedPair {
    pub ctx: RankContext,
    pub images: BTreeMap<CoordSymbol, Fraction>,
}

impl RealizedPair {
    pub fn image(&self, c: &CoordSymbol) -> &Fraction {
        &self.images[c]
    }
}

/// Outcome of one pairwise verification.
#[derive(Debug, Clone)]
pub struct PairOutcome {
    pub c: CoordSymbol,
    pub cp: CoordSymbol,
    pub certificate: ZeroCertificate,
}

impl CellMap {
    pub fn new(index: SchubertIndex) -> CellMap {
        CellMap { index }
    }

    pub fn index(&self) -> &SchubertIndex {
        &self.index
    }

    /// Image of one coordinate: the determinant ratio with rows `hat(i), j`
    /// over `hat(i), i`, realized with a fresh default right tuple. Returns
    /// the enlarged context.
    pub fn image(
        &self,
        c: CoordSymbol,
        ctx: &RankContext,
    ) -> Result<(Fraction, RankContext), GrassError> {
        let left: Vec<Point> = self.index.hat(c.i).into_iter().map(base_point).collect();
        let (ratio, out_ctx) = det_ratio(&left, base_point(c.j), base_point(c.i), ctx, None)?;
        Ok((ratio.realized, out_ctx))
    }

    /// Realizes the images of every coordinate appearing in the verification
    /// of the pair `(c, cp)`. Each column in play gets its own auxiliary
    /// right tuple in the gap anticlockwise of its point, so all images live
    /// in one enlarged context.
    pub fn realize_pair(
        &self,
        c: CoordSymbol,
        cp: CoordSymbol,
        ctx: &RankContext,
    ) -> Result<RealizedPair, GrassError> {
        let n = self.index.n();
        let mut columns: Vec<usize> = vec![c.j, cp.j];
        columns.sort();
        columns.dedup();
        let mut points = ctx.points().clone();
        let mut tuples: BTreeMap<usize, Vec<Point>> = BTreeMap::new();
        for &col in &columns {
            let (bigger, fresh) = points.enlarge_after(base_point(col), n);
            points = bigger;
            tuples.insert(col, fresh);
        }
        let big_ctx = ctx.with_points(points);
        let mut images = BTreeMap::new();
        let needed = [
            CoordSymbol { i: c.i, j: c.j },
            CoordSymbol { i: cp.i, j: cp.j },
            CoordSymbol { i: c.i, j: cp.j },
            CoordSymbol { i: cp.i, j: c.j },
        ];
        for sym in needed {
            if images.contains_key(&sym) {
                continue;
            }
            let left: Vec<Point> = self.index.hat(sym.i).into_iter().map(base_point).collect();
            let (ratio, _) = det_ratio(
                &left,
                base_point(sym.j),
                base_point(sym.i),
                &big_ctx,
                Some(tuples[&sym.j].clone()),
            )?;
            images.insert(sym, ratio.realized);
        }
        Ok(RealizedPair { ctx: big_ctx, images })
    }

    /// Ring-homomorphic image of a formal coordinate polynomial given the
    /// realized coordinate images.
    pub fn image_expr(&self, e: &CoordPoly, images: &BTreeMap<CoordSymbol, Fraction>) -> Fraction {
        let mut acc = Fraction::from_int(0);
        for (m, coeff) in e.terms() {
            let mut term = Fraction::constant(coeff.clone());
            for (sym, exp) in m.powers() {
                term = term.mul(&images[sym].pow(*exp));
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Verifies one coordinate pair: the swapping bracket (with the induced
    /// weights) of the two images must equal the image of the coordinate
    /// bracket, as elements of the quotient fraction field.
    pub fn verify_pair(
        &self,
        c: CoordSymbol,
        cp: CoordSymbol,
        p: &BracketParams,
        ctx: &RankContext,
    ) -> Result<PairOutcome, GrassError> {
        let realized = self.realize_pair(c, cp, ctx)?;
        let lhs = bracket_fraction(realized.image(&c), realized.image(&cp), &target_weights(p));
        let formal = coordinate_bracket(c, cp, p);
        let rhs = self.image_expr(&formal, &realized.images);
        let certificate = frac_equal(&lhs, &rhs, &realized.ctx);
        Ok(PairOutcome { c, cp, certificate })
    }

    /// Verifies the logarithmic identity for the pure (0,1) weights: the
    /// bracket of two images equals the linking number of the two chords
    /// times the product of the images.
    pub fn verify_pair_01(
        &self,
        c: CoordSymbol,
        cp: CoordSymbol,
        ctx: &RankContext,
    ) -> Result<PairOutcome, GrassError> {
        let realized = self.realize_pair(c, cp, ctx)?;
        let lhs = bracket_fraction(
            realized.image(&c),
            realized.image(&cp),
            &BracketParams::from_ints(0, 1),
        );
        let j = linking_number(
            base_point(c.i),
            base_point(c.j),
            base_point(cp.i),
            base_point(cp.j),
        );
        let rhs = realized
            .image(&c)
            .mul(realized.image(&cp))
            .scalar_mul(&j.to_rational());
        let certificate = frac_equal(&lhs, &rhs, &realized.ctx);
        Ok(PairOutcome { c, cp, certificate })
    }

    /// All unordered coordinate pairs (diagonal included), in a canonical
    /// order.
    pub fn coordinate_pairs(&self) -> Vec<(CoordSymbol, CoordSymbol)> {
        let coords = self.index.coords();
        let mut out = Vec::new();
        for (a, &c) in coords.iter().enumerate() {
            for &cp in &coords[a..] {
                out.push((c, cp));
            }
        }
        out
    }

    /// Pairwise verification sweep over every coordinate pair; items run in
    /// parallel, results are reported in pair order.
    pub fn verify_sweep(
        &self,
        p: &BracketParams,
        ctx: &RankContext,
    ) -> Result<Vec<PairOutcome>, GrassError> {
        let pairs = self.coordinate_pairs();
        let mut outcomes = pairs
            .into_par_iter()
            .map(|(c, cp)| self.verify_pair(c, cp, p, ctx))
            .collect::<Result<Vec<_>, _>>()?;
        outcomes.sort_by_key(|o| (o.c, o.cp));
        Ok(outcomes)
    }

    /// Sweep of the logarithmic (0,1) identity over every coordinate pair.
    pub fn verify_sweep_01(&self, ctx: &RankContext) -> Result<Vec<PairOutcome>, GrassError> {
        let pairs = self.coordinate_pairs();
        let mut outcomes = pairs
            .into_par_iter()
            .map(|(c, cp)| self.verify_pair_01(c, cp, ctx))
            .collect::<Result<Vec<_>, _>>()?;
        outcomes.sort_by_key(|o| (o.c, o.cp));
        Ok(outcomes)
    }
}

/// Report of the injectivity spot check: images of random nonzero coordinate
/// polynomials must be nonzero in the quotient field.
#[derive(Debug, Clone)]
pub struct InjectivityReport {
    pub samples: u32,
    pub nonzero: u32,
    /// Renderings of any sampled polynomial whose image failed to certify
    /// nonzero; expected empty.
    pub flagged: Vec<String>,
}

impl InjectivityReport {
    pub fn pass(&self) -> bool {
        self.flagged.is_empty()
    }
}

/// Samples random nonzero coordinate polynomials of bounded degree and
/// certifies their images nonzero.
pub fn injectivity_spotcheck(
    map: &CellMap,
    ctx: &RankContext,
    degree_bound: u32,
    samples: u32,
    seed: u64,
) -> Result<InjectivityReport, GrassError> {
    let coords = map.index().coords();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut exprs = Vec::with_capacity(samples as usize);
    while exprs.len() < samples as usize {
        let n_terms = rng.random_range(1..=3usize);
        let mut e = CoordPoly::zero();
        for _ in 0..n_terms {
            let deg = rng.random_range(0..=degree_bound);
            let mut powers = Vec::new();
            for _ in 0..deg {
                let c = coords[rng.random_range(0..coords.len())];
                powers.push((c, 1u32));
            }
            let coeff = loop {
                let k = rng.random_range(-5i64..=5);
                if k != 0 {
                    break k;
                }
            };
            e.add_term(Monomial::from_powers(powers), Rational::from(BigInt::from(coeff)));
        }
        if !e.is_zero() {
            exprs.push(e);
        }
    }
    let outcomes: Vec<(String, bool)> = exprs
        .into_par_iter()
        .map(|e| {
            // realize every occurring coordinate with its own tuple, then
            // map the polynomial through
            let n = map.index().n();
            let mut points = ctx.points().clone();
            let mut images = BTreeMap::new();
            for sym in e.variables() {
                let (bigger, fresh) = points.enlarge_after(base_point(sym.j), n);
                points = bigger;
                let left: Vec<Point> =
                    map.index().hat(sym.i).into_iter().map(base_point).collect();
                let big_ctx = ctx.with_points(points.clone());
                let (ratio, _) = det_ratio(
                    &left,
                    base_point(sym.j),
                    base_point(sym.i),
                    &big_ctx,
                    Some(fresh),
                )?;
                images.insert(sym, ratio.realized);
            }
            let big_ctx = ctx.with_points(points);
            let img = map.image_expr(&e, &images);
            let cert = is_zero_rank_n(img.num(), &big_ctx);
            Ok::<_, GrassError>((e.to_string(), !cert.is_zero()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = InjectivityReport { samples, nonzero: 0, flagged: Vec::new() };
    for (rendering, ok) in outcomes {
        if ok {
            report.nonzero += 1;
        } else {
            report.flagged.push(rendering);
        }
    }
    Ok(report)
}
