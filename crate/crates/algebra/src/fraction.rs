//! Unreduced fractions over the rank n quotient, cross fractions and
//! determinant ratios.
//!
//! The quotient ring is not known to admit unique factorization, so there is
//! no GCD cancellation anywhere: arithmetic keeps numerators and denominators
//! as built, and equality is always a cross-multiplication certificate. A
//! fraction's denominator is nonzero in the quotient either by an oracle
//! certificate taken at construction or structurally (monomials, and products
//! of certified denominators, cannot vanish: the quotient is an integral
//! domain and a generic configuration keeps all off-diagonal pairings
//! nonzero).

use num::BigInt;
use thiserror::Error;

use crate::circle::{pair_poly, PairGen, Point};
use crate::rank::{
    determinant, evaluate_config, is_zero_rank_n, random_config, trial_seed, CertDetail,
    RankContext, Verdict, ZeroCertificate,
};
use crate::ring::{Polynomial, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FractionError {
    #[error("denominator is zero in the rank n quotient")]
    ZeroDenominator,
    #[error("cannot invert a fraction whose numerator is zero in the quotient")]
    InvertZero,
    #[error("cross fraction needs x != t, y != z, x != z and y != t")]
    DegenerateCross,
    #[error("left tuple must have n-1 = {expected} points, got {got}")]
    LeftTupleSize { expected: usize, got: usize },
    #[error("tuple points must be mutually distinct")]
    DuplicatePoints,
    #[error("right tuple must have n = {expected} points, got {got}")]
    RightTupleSize { expected: usize, got: usize },
    #[error("point {0} is not in the context's point set")]
    ForeignPoint(Point),
}

/// Numerator / denominator over the pair-generator ring, unreduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    num: Polynomial<PairGen>,
    den: Polynomial<PairGen>,
}

/// Once `frac_equal`'s exact cross product would exceed this many raw term
/// products, skip the symbolic difference and compare by evaluation only.
const CROSS_PRODUCT_TERM_CAP: usize = 100_000;

impl Fraction {
    /// Builds a fraction, certifying that the denominator is nonzero in the
    /// quotient defined by `ctx`.
    pub fn new(
        num: Polynomial<PairGen>,
        den: Polynomial<PairGen>,
        ctx: &RankContext,
    ) -> Result<Fraction, FractionError> {
        if is_zero_rank_n(&den, ctx).is_zero() {
            return Err(FractionError::ZeroDenominator);
        }
        Ok(Fraction { num, den })
    }

    /// Builds a fraction whose denominator the caller guarantees nonzero in
    /// the quotient (monomials, products of certified denominators).
    pub fn from_parts_unchecked(num: Polynomial<PairGen>, den: Polynomial<PairGen>) -> Fraction {
        debug_assert!(!den.is_zero());
        Fraction { num, den }
    }

    pub fn from_poly(p: Polynomial<PairGen>) -> Fraction {
        Fraction { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: Rational) -> Fraction {
        Fraction::from_poly(Polynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Fraction {
        Fraction::constant(Rational::from(BigInt::from(n)))
    }

    pub fn num(&self) -> &Polynomial<PairGen> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<PairGen> {
        &self.den
    }

    /// Zero as an element of the free fraction ring (numerator identically
    /// zero), which is stronger than zero in the quotient.
    pub fn is_structural_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Fraction) -> Fraction {
        Fraction {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    pub fn sub(&self, other: &Fraction) -> Fraction {
        Fraction {
            num: &(&self.num * &other.den) - &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    pub fn neg(&self) -> Fraction {
        Fraction { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &Fraction) -> Fraction {
        Fraction {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn scalar_mul(&self, c: &Rational) -> Fraction {
        Fraction { num: self.num.scalar_mul(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Fraction {
        Fraction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Swaps numerator and denominator after certifying the numerator.
    pub fn invert(&self, ctx: &RankContext) -> Result<Fraction, FractionError> {
        if is_zero_rank_n(&self.num, ctx).is_zero() {
            return Err(FractionError::InvertZero);
        }
        Ok(Fraction { num: self.den.clone(), den: self.num.clone() })
    }

    /// Evaluates numerator and denominator at a configuration.
    pub fn evaluate_pair(&self, cfg: &crate::rank::GeometricConfig) -> Option<(u64, u64)> {
        let n = evaluate_config(&self.num, cfg).ok()?;
        let d = evaluate_config(&self.den, cfg).ok()?;
        Some((n, d))
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.constant_value().map(|c| c == Rational::from(BigInt::from(1))) == Some(true) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Certificate that two fractions are equal in the quotient's fraction
/// field: a zero certificate for the cross-multiplied difference.
pub fn frac_equal(f: &Fraction, g: &Fraction, ctx: &RankContext) -> ZeroCertificate {
    let cross_terms = f.num.num_terms() * g.den.num_terms() + g.num.num_terms() * f.den.num_terms();
    if cross_terms <= CROSS_PRODUCT_TERM_CAP {
        let diff = &(&f.num * &g.den) - &(&g.num * &f.den);
        return is_zero_rank_n(&diff, ctx);
    }
    // evaluate the cross products without constructing them
    let field = ctx.oracle().field();
    let trials = ctx.oracle().trials;
    for t in 0..trials {
        let seed = trial_seed(ctx, t);
        let cfg = random_config(ctx, seed);
        let (fnum, fden) = f.evaluate_pair(&cfg).expect("context covers all points");
        let (gnum, gden) = g.evaluate_pair(&cfg).expect("context covers all points");
        let lhs = field.mul(fnum, gden);
        let rhs = field.mul(gnum, fden);
        if lhs != rhs {
            return ZeroCertificate {
                verdict: Verdict::NonZero,
                detail: CertDetail::Witness {
                    trial_seed: seed,
                    value: field.sub(lhs, rhs),
                    config: Box::new(cfg),
                },
            };
        }
    }
    ZeroCertificate {
        verdict: Verdict::ProbablyZero,
        detail: CertDetail::AllTrialsVanished { trials },
    }
}

/// Zero certificate for a single fraction in the quotient field.
pub fn frac_is_zero(f: &Fraction, ctx: &RankContext) -> ZeroCertificate {
    is_zero_rank_n(&f.num, ctx)
}

/// The cross fraction `(xz * yt) / (xt * yz)`.
///
/// Beyond the defining conditions `x != t`, `y != z`, the factors `xz` and
/// `yt` must also be genuine generators, otherwise the element collapses.
pub fn cross_fraction(x: Point, y: Point, z: Point, t: Point) -> Result<Fraction, FractionError> {
    if x == t || y == z || x == z || y == t {
        return Err(FractionError::DegenerateCross);
    }
    let num = &pair_poly(x, z) * &pair_poly(y, t);
    let den = &pair_poly(x, t) * &pair_poly(y, z);
    // monomial denominator: nonzero in the quotient for rank >= 2
    Ok(Fraction::from_parts_unchecked(num, den))
}

/// A ratio of two pairing determinants differing in the last row point,
/// together with the data that realized it.
#[derive(Debug, Clone)]
pub struct DeterminantRatio {
    pub left: Vec<Point>,
    pub t: Point,
    pub y: Point,
    pub right: Vec<Point>,
    pub realized: Fraction,
}

/// Realizes the determinant ratio `E(left | t, y)` with the given right
/// tuple, or with fresh auxiliary points placed in the gap anticlockwise of
/// `t`. Returns the ratio and the context it lives in (enlarged when the
/// default tuple was used).
pub fn det_ratio(
    left: &[Point],
    t: Point,
    y: Point,
    ctx: &RankContext,
    right: Option<Vec<Point>>,
) -> Result<(DeterminantRatio, RankContext), FractionError> {
    let n = ctx.n();
    if left.len() != n - 1 {
        return Err(FractionError::LeftTupleSize { expected: n - 1, got: left.len() });
    }
    let mut den_rows: Vec<Point> = left.to_vec();
    den_rows.push(y);
    if !mutually_distinct(&den_rows) {
        return Err(FractionError::DuplicatePoints);
    }
    let (right, out_ctx) = match right {
        Some(r) => {
            if r.len() != n {
                return Err(FractionError::RightTupleSize { expected: n, got: r.len() });
            }
            if !mutually_distinct(&r) {
                return Err(FractionError::DuplicatePoints);
            }
            for p in &r {
                if !ctx.points().contains(*p) {
                    return Err(FractionError::ForeignPoint(*p));
                }
            }
            (r, ctx.clone())
        }
        None => {
            let (points, fresh) = ctx.points().enlarge_after(t, n);
            (fresh, ctx.with_points(points))
        }
    };
    let mut num_rows: Vec<Point> = left.to_vec();
    num_rows.push(t);
    let num = determinant(&num_rows, &right).expect("equal tuple sizes");
    let den = determinant(&den_rows, &right).expect("equal tuple sizes");
    let realized = Fraction::new(num, den, &out_ctx)?;
    Ok((
        DeterminantRatio { left: left.to_vec(), t, y, right, realized },
        out_ctx,
    ))
}

fn mutually_distinct(points: &[Point]) -> bool {
    let mut sorted = points.to_vec();
    sorted.sort();
    sorted.windows(2).all(|w| w[0] != w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::PointSet;
    use crate::rank::OracleParams;

    fn ctx(n: usize, r: usize) -> RankContext {
        RankContext::new(n, PointSet::circle(r), OracleParams::default()).unwrap()
    }

    fn gen(c: &RankContext, i: usize, j: usize) -> Polynomial<PairGen> {
        let p = c.points();
        pair_poly(p.point(i).unwrap(), p.point(j).unwrap())
    }

    #[test]
    fn arithmetic_shape() {
        let c = ctx(2, 4);
        let f = Fraction::from_parts_unchecked(gen(&c, 1, 2), gen(&c, 3, 4));
        // F + 0 equals F in the quotient field
        let sum = f.add(&Fraction::from_int(0));
        assert!(frac_equal(&sum, &f, &c).is_zero());
        // F * invert(F) = 1
        let prod = f.mul(&f.invert(&c).unwrap());
        assert!(frac_equal(&prod, &Fraction::from_int(1), &c).is_zero());
        // structural product rule
        let g = Fraction::from_parts_unchecked(gen(&c, 2, 3), gen(&c, 1, 4));
        let p = f.mul(&g);
        assert_eq!(p.num(), &(&gen(&c, 1, 2) * &gen(&c, 2, 3)));
        assert_eq!(p.den(), &(&gen(&c, 3, 4) * &gen(&c, 1, 4)));
    }

    #[test]
    fn inequality_witnessed() {
        let c = ctx(2, 4);
        let f = Fraction::from_parts_unchecked(gen(&c, 1, 2), gen(&c, 1, 3));
        let g = Fraction::from_parts_unchecked(gen(&c, 1, 3), gen(&c, 1, 2));
        let cert = frac_equal(&f, &g, &c);
        assert_eq!(cert.verdict, Verdict::NonZero);
    }

    #[test]
    fn construction_checks_denominator() {
        let c = ctx(2, 4);
        assert!(matches!(
            Fraction::new(Polynomial::one(), Polynomial::zero(), &c),
            Err(FractionError::ZeroDenominator)
        ));
        assert!(matches!(
            Fraction::from_int(0).invert(&c),
            Err(FractionError::InvertZero)
        ));
    }

    #[test]
    fn cross_fraction_shape_and_reciprocal() {
        let c = ctx(2, 5);
        let p = |k| c.points().point(k).unwrap();
        let cf = cross_fraction(p(1), p(2), p(3), p(4)).unwrap();
        assert_eq!(cf.num(), &(&gen(&c, 1, 3) * &gen(&c, 2, 4)));
        let swapped = cross_fraction(p(1), p(2), p(4), p(3)).unwrap();
        let prod = cf.mul(&swapped);
        assert!(frac_equal(&prod, &Fraction::from_int(1), &c).is_zero());
        assert!(matches!(
            cross_fraction(p(1), p(2), p(1), p(4)),
            Err(FractionError::DegenerateCross)
        ));
    }

    #[test]
    fn cross_fraction_evaluates_to_cross_ratio() {
        let c = ctx(2, 5);
        let p = |k| c.points().point(k).unwrap();
        let cf = cross_fraction(p(1), p(2), p(3), p(4)).unwrap();
        let cfg = random_config(&c, 99);
        let (num, den) = cf.evaluate_pair(&cfg).unwrap();
        let field = c.oracle().field();
        let direct_num = field.mul(cfg.pairing(p(1), p(3)).unwrap(), cfg.pairing(p(2), p(4)).unwrap());
        let direct_den = field.mul(cfg.pairing(p(1), p(4)).unwrap(), cfg.pairing(p(2), p(3)).unwrap());
        assert_eq!(num, direct_num);
        assert_eq!(den, direct_den);
    }

    #[test]
    fn det_ratio_basics() {
        let c = ctx(2, 5);
        let p = |k| c.points().point(k).unwrap();
        // E(left | y, y) = 1
        let (e, ectx) = det_ratio(&[p(2)], p(1), p(1), &c, None).unwrap();
        assert!(frac_equal(&e.realized, &Fraction::from_int(1), &ectx).is_zero());
        // E(left | t, y) * E(left | y, t) = 1
        let (a, actx) = det_ratio(&[p(2)], p(3), p(1), &c, None).unwrap();
        let (b, _) = det_ratio(&[p(2)], p(1), p(3), &actx, Some(a.right.clone())).unwrap();
        let prod = a.realized.mul(&b.realized);
        assert!(frac_equal(&prod, &Fraction::from_int(1), &actx).is_zero());
        // shape errors
        assert!(matches!(
            det_ratio(&[p(2), p(3)], p(4), p(1), &c, None),
            Err(FractionError::LeftTupleSize { expected: 1, got: 2 })
        ));
        assert!(matches!(
            det_ratio(&[p(1)], p(3), p(1), &c, None),
            Err(FractionError::DuplicatePoints)
        ));
    }

    #[test]
    fn pairs_of_cross_fractions_commute_at_01() {
        // the bracket of two cross fractions vanishes identically for the
        // (0,1) weights, before any quotient
        use crate::bracket::{bracket_fraction, BracketParams};
        let c = ctx(2, 5);
        let p = |k| c.points().point(k).unwrap();
        let p01 = BracketParams::from_ints(0, 1);
        let a = cross_fraction(p(1), p(2), p(3), p(4)).unwrap();
        let b = cross_fraction(p(2), p(5), p(1), p(3)).unwrap();
        assert!(bracket_fraction(&a, &b, &p01).is_structural_zero());
        assert!(bracket_fraction(&a, &a, &p01).is_structural_zero());
    }

    #[test]
    fn frac_equal_reflexive() {
        let c = ctx(2, 4);
        let f = Fraction::from_parts_unchecked(gen(&c, 1, 2), gen(&c, 3, 4));
        assert!(frac_equal(&f, &f, &c).is_zero());
    }

    #[test]
    fn bracket_is_independent_of_the_realization() {
        // bracketing a generator against two realizations of the same
        // determinant ratio gives equal fractions in the quotient field
        use crate::bracket::{bracket_fraction, BracketParams};
        let c = ctx(2, 6);
        let p = |k| c.points().point(k).unwrap();
        let (a, _) = det_ratio(&[p(2)], p(3), p(1), &c, Some(vec![p(4), p(5)])).unwrap();
        let (b, _) = det_ratio(&[p(2)], p(3), p(1), &c, Some(vec![p(5), p(6)])).unwrap();
        let g = Fraction::from_poly(gen(&c, 1, 4));
        let p10 = BracketParams::from_ints(1, 0);
        let via_a = bracket_fraction(&g, &a.realized, &p10);
        let via_b = bracket_fraction(&g, &b.realized, &p10);
        assert!(frac_equal(&via_a, &via_b, &c).is_zero());
    }

    #[test]
    fn det_ratio_right_tuple_independence_small() {
        let c = ctx(2, 6);
        let p = |k| c.points().point(k).unwrap();
        let (a, _) = det_ratio(&[p(2)], p(3), p(1), &c, Some(vec![p(4), p(5)])).unwrap();
        let (b, _) = det_ratio(&[p(2)], p(3), p(1), &c, Some(vec![p(5), p(6)])).unwrap();
        assert!(frac_equal(&a.realized, &b.realized, &c).is_zero());
        // and against a fresh default tuple in an enlarged set
        let (d, dctx) = det_ratio(&[p(2)], p(3), p(1), &c, None).unwrap();
        assert!(frac_equal(&a.realized, &d.realized, &dctx).is_zero());
    }
}
