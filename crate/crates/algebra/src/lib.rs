//! Exact symbolic computation in the rank n swapping algebra.
//!
//! The algebra lives on a finite set of points of a circle: its generators are
//! ordered point pairs `xy` (with `xx = 0`), its Poisson bracket is weighted by
//! linking numbers of chords, and its rank n quotient divides by the ideal of
//! all (n+1)x(n+1) pairing determinants. On top of the quotient sit the
//! fraction field, cross fractions and determinant ratios, and an embedding of
//! Grassmannian Schubert-cell coordinates whose Poisson compatibility this
//! crate machine-checks, both symbolically and through a randomized
//! evaluation oracle over a large prime field.
//!
//! Module map:
//!
//! - [`ring`]: sparse multivariate polynomials over an abstract variable
//!   alphabet with exact rational coefficients.
//! - [`circle`]: points, circular order, linking numbers, parallel numbers.
//! - [`bracket`]: the two-parameter swapping bracket on generators,
//!   polynomials and fractions, plus the alternative computation routes
//!   (boundary sums, cofactor expansion, logarithmic form).
//! - [`rank`]: determinants of pairings, the minor ideal, a normal-form
//!   reducer and the randomized geometric evaluation oracle.
//! - [`fraction`]: unreduced fractions over the quotient, cross fractions and
//!   determinant ratios.
//! - [`grassmannian`]: Schubert-cell coordinates, the coordinate bracket, the
//!   embedding into determinant ratios and its verification sweeps.
//! - [`network`]: perfect planar networks, boundary measurement and the
//!   induced bracket as an independent oracle for the coordinate bracket.

pub mod bracket;
pub mod circle;
pub mod fp;
pub mod fraction;
pub mod grassmannian;
pub mod network;
pub mod rank;
pub mod ring;

pub use bracket::BracketParams;
pub use circle::{HalfInt, PairGen, Point, PointSet};
pub use fraction::Fraction;
pub use rank::{RankContext, Verdict, ZeroCertificate};
pub use ring::{Polynomial, Rational};
