//! The two-parameter swapping bracket and its alternative computation routes.
//!
//! On generators the bracket is `{rx, sy} = J(rx, sy) * (alpha * ry * sx +
//! beta * rx * sy)`; it extends to polynomials as a biderivation, to
//! fractions by the quotient rule, and two further routes compute the bracket
//! of a generator with a pairing determinant: boundary sums over one side of
//! the oriented edge (with an auxiliary side marker) and cofactor expansion.
//! The routes are kept separate on purpose: their agreement is machine
//! checked, exactly where possible and through the evaluation oracle on the
//! quotient otherwise.

use num::rational::Ratio;
use num::Zero;
use thiserror::Error;

use crate::circle::{
    anticlockwise, linking_number, linking_number_positions, pair_poly, PairGen, Point,
};
use crate::fraction::Fraction;
use crate::rank::{determinant, is_zero_rank_n, RankContext};
use crate::ring::{Polynomial, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BracketError {
    #[error("oriented edge needs two distinct points")]
    DegenerateEdge,
    #[error("row and column tuples have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("tuple is not mutually distinct and anticlockwise ordered")]
    NotAnticlockwise,
    #[error("argument is zero in the quotient")]
    ZeroArgument,
}

/// The two bracket weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketParams {
    pub alpha: Rational,
    pub beta: Rational,
}

impl BracketParams {
    pub fn new(alpha: Rational, beta: Rational) -> BracketParams {
        BracketParams { alpha, beta }
    }

    pub fn from_ints(alpha: i64, beta: i64) -> BracketParams {
        BracketParams::new(
            Rational::from(num::BigInt::from(alpha)),
            Rational::from(num::BigInt::from(beta)),
        )
    }
}

/// Bracket of two generators.
pub fn bracket_gen(a: PairGen, b: PairGen, p: &BracketParams) -> Polynomial<PairGen> {
    let j = linking_number(a.left, a.right, b.left, b.right);
    if j.is_zero() {
        return Polynomial::zero();
    }
    let mut out = Polynomial::zero();
    if !p.alpha.is_zero() {
        let swapped = &pair_poly(a.left, b.right) * &pair_poly(b.left, a.right);
        out = &out + &swapped.scalar_mul(&p.alpha);
    }
    if !p.beta.is_zero() {
        let kept = &Polynomial::var(a) * &Polynomial::var(b);
        out = &out + &kept.scalar_mul(&p.beta);
    }
    out.scalar_mul(&j.to_rational())
}

/// Biderivation extension of the generator bracket to polynomials.
pub fn bracket_poly(
    f: &Polynomial<PairGen>,
    g: &Polynomial<PairGen>,
    p: &BracketParams,
) -> Polynomial<PairGen> {
    let f_vars: Vec<PairGen> = f.variables().into_iter().collect();
    let g_vars: Vec<PairGen> = g.variables().into_iter().collect();
    let g_partials: Vec<Polynomial<PairGen>> =
        g_vars.iter().map(|v| g.partial_derivative(v)).collect();
    let mut out = Polynomial::zero();
    for u in &f_vars {
        let mut df: Option<Polynomial<PairGen>> = None;
        for (v, dg) in g_vars.iter().zip(&g_partials) {
            let core = bracket_gen(*u, *v, p);
            if core.is_zero() {
                continue;
            }
            let df = df.get_or_insert_with(|| f.partial_derivative(u));
            out = &out + &(&(&*df * dg) * &core);
        }
    }
    out
}

/// Quotient-rule extension to fractions: for `A/B` and `C/D` the result is
/// `(BD{A,C} - AD{B,C} - CB{A,D} + AC{B,D}) / (BD)^2`, unreduced.
pub fn bracket_fraction(f: &Fraction, g: &Fraction, p: &BracketParams) -> Fraction {
    let (a, b) = (f.num(), f.den());
    let (c, d) = (g.num(), g.den());
    let mut num = &(b * d) * &bracket_poly(a, c, p);
    num = &num - &(&(a * d) * &bracket_poly(b, c, p));
    num = &num - &(&(c * b) * &bracket_poly(a, d, p));
    num = &num + &(&(a * c) * &bracket_poly(b, d, p));
    let den = (b * d).pow(2);
    Fraction::from_parts_unchecked(num, den)
}

/// The logarithmic bracket `{A, B} / (A * B)` for polynomials that are
/// nonzero in the quotient.
pub fn log_bracket_poly(
    a: &Polynomial<PairGen>,
    b: &Polynomial<PairGen>,
    p: &BracketParams,
    ctx: &RankContext,
) -> Result<Fraction, BracketError> {
    if is_zero_rank_n(a, ctx).is_zero() || is_zero_rank_n(b, ctx).is_zero() {
        return Err(BracketError::ZeroArgument);
    }
    Ok(Fraction::from_parts_unchecked(bracket_poly(a, b, p), a * b))
}

/// Logarithmic bracket for fractions.
pub fn log_bracket(
    f: &Fraction,
    g: &Fraction,
    p: &BracketParams,
    ctx: &RankContext,
) -> Result<Fraction, BracketError> {
    if is_zero_rank_n(f.num(), ctx).is_zero() || is_zero_rank_n(g.num(), ctx).is_zero() {
        return Err(BracketError::ZeroArgument);
    }
    let br = bracket_fraction(f, g, p);
    let prod = f.mul(g);
    // dividing by a fraction with certified-nonzero numerator
    Ok(Fraction::from_parts_unchecked(
        br.num() * prod.den(),
        br.den() * prod.num(),
    ))
}

/// Which side of the oriented edge the boundary formula sums over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundarySide {
    Right,
    Left,
}

/// True when `q` lies on the right of the oriented edge `a -> b`: the closed
/// arc from `b` anticlockwise back to `a`, endpoints included.
pub fn right_of_edge(a: Point, b: Point, q: Point) -> bool {
    q == a || q == b || anticlockwise(&[b, q, a])
}

/// Boundary-formula bracket of the edge `ab` with the determinant of
/// `(xs, ys)`, computed with the (1,0) weights.
///
/// The side marker is a fresh position immediately anticlockwise of `a`
/// (right sum) or of `b` (left sum). The right sum ranges over the rows and
/// columns on the closed right side; the left sum ranges over the strictly
/// left rows and columns plus the degenerate row `a` and column `b`, whose
/// contributions do not vanish on the left side.
pub fn bracket_det_boundary(
    a: Point,
    b: Point,
    xs: &[Point],
    ys: &[Point],
    side: BoundarySide,
) -> Result<Polynomial<PairGen>, BracketError> {
    if a == b {
        return Err(BracketError::DegenerateEdge);
    }
    if xs.len() != ys.len() {
        return Err(BracketError::SizeMismatch(xs.len(), ys.len()));
    }
    if !anticlockwise(xs) || !anticlockwise(ys) {
        return Err(BracketError::NotAnticlockwise);
    }
    let marker = match side {
        BoundarySide::Right => adjacent_position(a, b, xs, ys),
        BoundarySide::Left => adjacent_position(b, a, xs, ys),
    };
    let row_included = |q: Point| match side {
        BoundarySide::Right => right_of_edge(a, b, q),
        BoundarySide::Left => !right_of_edge(a, b, q) || q == a,
    };
    let col_included = |q: Point| match side {
        BoundarySide::Right => right_of_edge(a, b, q),
        BoundarySide::Left => !right_of_edge(a, b, q) || q == b,
    };
    let mut out = Polynomial::zero();
    for (d, &x) in xs.iter().enumerate() {
        if !row_included(x) {
            continue;
        }
        let j = linking_number_positions(a.position(), b.position(), x.position(), marker);
        if j.is_zero() || x == b {
            continue;
        }
        let mut rows = xs.to_vec();
        rows[d] = a;
        let det = determinant(&rows, ys).expect("equal sizes");
        let term = &pair_poly(x, b) * &det;
        out = &out + &term.scalar_mul(&j.to_rational());
    }
    for (d, &y) in ys.iter().enumerate() {
        if !col_included(y) {
            continue;
        }
        let j = linking_number_positions(a.position(), b.position(), marker, y.position());
        if j.is_zero() || y == a {
            continue;
        }
        let mut cols = ys.to_vec();
        cols[d] = b;
        let det = determinant(xs, &cols).expect("equal sizes");
        let term = &pair_poly(a, y) * &det;
        out = &out + &term.scalar_mul(&j.to_rational());
    }
    Ok(out)
}

/// A fresh position strictly inside the arc that starts at `from` and runs
/// anticlockwise, closer to `from` than any point of the edge or tuples.
fn adjacent_position(from: Point, other: Point, xs: &[Point], ys: &[Point]) -> Ratio<i64> {
    let mut relevant: Vec<Ratio<i64>> = vec![from.position(), other.position()];
    relevant.extend(xs.iter().map(|p| p.position()));
    relevant.extend(ys.iter().map(|p| p.position()));
    relevant.sort();
    relevant.dedup();
    let i = relevant.binary_search(&from.position()).expect("from is relevant");
    if i + 1 < relevant.len() {
        (from.position() + relevant[i + 1]) / Ratio::from_integer(2)
    } else {
        from.position() + Ratio::new(1, 2)
    }
}

/// Cofactor-expansion bracket of the determinant of `(xs, ys)` with a
/// polynomial: the sum of signed complementary minors times entry brackets.
pub fn bracket_cofactor(
    xs: &[Point],
    ys: &[Point],
    b: &Polynomial<PairGen>,
    p: &BracketParams,
) -> Result<Polynomial<PairGen>, BracketError> {
    if xs.len() != ys.len() {
        return Err(BracketError::SizeMismatch(xs.len(), ys.len()));
    }
    let mut out = Polynomial::zero();
    for (s, &row) in xs.iter().enumerate() {
        for (t, &col) in ys.iter().enumerate() {
            if row == col {
                continue; // zero entry
            }
            let entry = pair_poly(row, col);
            let core = bracket_poly(&entry, b, p);
            if core.is_zero() {
                continue;
            }
            let sub_rows: Vec<Point> = xs
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != s)
                .map(|(_, &q)| q)
                .collect();
            let sub_cols: Vec<Point> = ys
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != t)
                .map(|(_, &q)| q)
                .collect();
            let minor = determinant(&sub_rows, &sub_cols).expect("equal sizes");
            let signed = if (s + t).is_multiple_of(2) { minor } else { -&minor };
            out = &out + &(&signed * &core);
        }
    }
    Ok(out)
}

/// Cofactor-expansion bracket against a fraction.
pub fn bracket_cofactor_fraction(
    xs: &[Point],
    ys: &[Point],
    b: &Fraction,
    p: &BracketParams,
) -> Result<Fraction, BracketError> {
    if xs.len() != ys.len() {
        return Err(BracketError::SizeMismatch(xs.len(), ys.len()));
    }
    let mut out = Fraction::from_int(0);
    for (s, &row) in xs.iter().enumerate() {
        for (t, &col) in ys.iter().enumerate() {
            if row == col {
                continue;
            }
            let entry = Fraction::from_poly(pair_poly(row, col));
            let core = bracket_fraction(&entry, b, p);
            if core.is_structural_zero() {
                continue;
            }
            let sub_rows: Vec<Point> = xs
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != s)
                .map(|(_, &q)| q)
                .collect();
            let sub_cols: Vec<Point> = ys
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != t)
                .map(|(_, &q)| q)
                .collect();
            let minor = determinant(&sub_rows, &sub_cols).expect("equal sizes");
            let signed = if (s + t).is_multiple_of(2) { minor } else { -&minor };
            out = out.add(&core.mul(&Fraction::from_poly(signed)));
        }
    }
    Ok(out)
}

/// The sum of linking numbers of the edge with the diagonal entry chords,
/// `sum_i J(ab, x_i y_i)`; the pairing of rows to columns does not change it.
pub fn diagonal_linking_sum(
    a: Point,
    b: Point,
    xs: &[Point],
    ys: &[Point],
) -> Result<Rational, BracketError> {
    if xs.len() != ys.len() {
        return Err(BracketError::SizeMismatch(xs.len(), ys.len()));
    }
    let mut acc = Rational::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        acc += linking_number(a, b, x, y).to_rational();
    }
    Ok(acc)
}
