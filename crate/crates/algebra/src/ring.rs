//! Sparse multivariate polynomial arithmetic with exact rational coefficients.
//!
//! The engine is generic over the variable alphabet so the same tested core
//! serves point-pair generators, network vertex-edge variables and formal
//! cell coordinates. Mixing alphabets is impossible by construction: each
//! alphabet is its own Rust type.
//!
//! Monomials are kept in a canonical sorted form and polynomials in an
//! ordered term map, so structural equality coincides with ring equality and
//! iteration order is deterministic. The term order is graded lexicographic:
//! higher total degree wins, ties are broken at the first variable (in the
//! alphabet's own order) where the exponents differ, larger exponent first.
//! Under this order the leading term of a pairing determinant with sorted
//! row/column tuples is its main-diagonal product, which is what the rank
//! reducer relies on.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::fp::PrimeField;

/// Exact rational scalar used for all coefficients.
pub type Rational = BigRational;

/// Requirements on a variable alphabet.
pub trait Var: Clone + Ord + Eq + Hash + fmt::Debug + fmt::Display {}
impl<T: Clone + Ord + Eq + Hash + fmt::Debug + fmt::Display> Var for T {}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("assignment does not cover variable {0}")]
    MissingVariable(String),
    #[error("coefficient denominator vanishes modulo the oracle prime")]
    DenominatorVanishes,
}

/// A power product of variables; no zero exponents, factors sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial<V: Var> {
    factors: Vec<(V, u32)>,
    degree: u32,
}

impl<V: Var> Monomial<V> {
    pub fn one() -> Self {
        Monomial { factors: Vec::new(), degree: 0 }
    }

    pub fn var(v: V) -> Self {
        Monomial { factors: vec![(v, 1)], degree: 1 }
    }

    pub fn from_powers(mut powers: Vec<(V, u32)>) -> Self {
        powers.retain(|(_, e)| *e > 0);
        powers.sort_by(|a, b| a.0.cmp(&b.0));
        let mut factors: Vec<(V, u32)> = Vec::with_capacity(powers.len());
        for (v, e) in powers {
            match factors.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => factors.push((v, e)),
            }
        }
        let degree = factors.iter().map(|(_, e)| e).sum();
        Monomial { factors, degree }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn powers(&self) -> &[(V, u32)] {
        &self.factors
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let mut a = self.factors.iter().peekable();
        let mut b = other.factors.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => {
                        factors.push((va.clone(), *ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        factors.push((vb.clone(), *eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        factors.push((va.clone(), ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => {
                    factors.extend(a.map(|(v, e)| (v.clone(), *e)));
                    break;
                }
                (None, Some(_)) => {
                    factors.extend(b.map(|(v, e)| (v.clone(), *e)));
                    break;
                }
                (None, None) => break,
            }
        }
        let degree = self.degree + other.degree;
        Monomial { factors, degree }
    }

    /// Exact division: `self / other` when every exponent of `other` fits.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut factors = Vec::with_capacity(self.factors.len());
        let mut b = other.factors.iter().peekable();
        for (v, e) in &self.factors {
            match b.peek() {
                Some((w, f)) if w == v => {
                    if f > e {
                        return None;
                    }
                    if e - f > 0 {
                        factors.push((v.clone(), e - f));
                    }
                    b.next();
                }
                Some((w, _)) if w < v => return None,
                _ => factors.push((v.clone(), *e)),
            }
        }
        if b.peek().is_some() {
            return None;
        }
        let degree = self.degree - other.degree;
        Some(Monomial { factors, degree })
    }

    /// Removes one power of `v`; `None` if `v` does not occur.
    pub fn remove_one(&self, v: &V) -> Option<Self> {
        let i = self.factors.binary_search_by(|(w, _)| w.cmp(v)).ok()?;
        let mut factors = self.factors.clone();
        if factors[i].1 == 1 {
            factors.remove(i);
        } else {
            factors[i].1 -= 1;
        }
        Some(Monomial { factors, degree: self.degree - 1 })
    }
}

impl<V: Var> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Var> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Graded lex tie-break: walk variables in ascending order, first
        // difference decides, larger exponent means larger monomial.
        let mut a = self.factors.iter();
        let mut b = other.factors.iter();
        loop {
            match (a.next(), b.next()) {
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // The side owning the earlier variable has a positive
                    // exponent where the other has zero.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {}
                        ord => return ord,
                    },
                },
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl<V: Var> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial: canonical map from monomials to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<V: Var> {
    terms: BTreeMap<Monomial<V>, Rational>,
}

impl<V: Var> Polynomial<V> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Polynomial::constant(Rational::from(BigInt::from(n)))
    }

    pub fn var(v: V) -> Self {
        Polynomial::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial<V>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// The constant value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Leading (largest) term under the graded lex order.
    pub fn leading_term(&self) -> Option<(&Monomial<V>, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn coefficient(&self, m: &Monomial<V>) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Monomial<V>, Rational)> {
        self.terms.pop_last()
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial<V>, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to one variable.
    pub fn partial_derivative(&self, v: &V) -> Self {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let reduced = m.remove_one(v).expect("exponent checked");
            out.add_term(reduced, c * Rational::from(BigInt::from(e)));
        }
        out
    }

    /// All variables occurring with positive exponent.
    pub fn variables(&self) -> BTreeSet<V> {
        let mut set = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.powers() {
                set.insert(v.clone());
            }
        }
        set
    }

    /// Exact evaluation under a total assignment of the occurring variables.
    pub fn evaluate(&self, assignment: &BTreeMap<V, Rational>) -> Result<Rational, RingError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.powers() {
                let val = assignment
                    .get(v)
                    .ok_or_else(|| RingError::MissingVariable(v.to_string()))?;
                for _ in 0..*e {
                    term *= val;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Evaluation in a prime field; `assign` maps every occurring variable.
    pub fn evaluate_mod<F>(&self, assign: F, field: &PrimeField) -> Result<u64, RingError>
    where
        F: Fn(&V) -> Result<u64, RingError>,
    {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut term = rational_mod(c, field)?;
            for (v, e) in m.powers() {
                let val = assign(v)?;
                term = field.mul(term, field.pow(val, *e as u64));
            }
            acc = field.add(acc, term);
        }
        Ok(acc)
    }

    /// Rescales every variable `v` by a nonzero rational factor `scale(v)`.
    pub fn scale_variables<F>(&self, scale: F) -> Self
    where
        F: Fn(&V) -> Rational,
    {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut k = c.clone();
            for (v, e) in m.powers() {
                let s = scale(v);
                for _ in 0..*e {
                    k *= &s;
                }
            }
            out.add_term(m.clone(), k);
        }
        out
    }
}

fn rational_mod(c: &Rational, field: &PrimeField) -> Result<u64, RingError> {
    let p = BigInt::from(field.modulus());
    let num = c.numer().mod_floor_u64(&p);
    let den = c.denom().mod_floor_u64(&p);
    let den_inv = field.inv(den).ok_or(RingError::DenominatorVanishes)?;
    Ok(field.mul(num, den_inv))
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: &BigInt) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: &BigInt) -> u64 {
        use num::Integer;
        let r = self.mod_floor(p);
        let (_, digits) = r.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("residue below a u64 modulus"),
        }
    }
}

impl<V: Var> Add for &Polynomial<V> {
    type Output = Polynomial<V>;
    fn add(self, rhs: Self) -> Polynomial<V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<V: Var> Sub for &Polynomial<V> {
    type Output = Polynomial<V>;
    fn sub(self, rhs: Self) -> Polynomial<V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<V: Var> Neg for &Polynomial<V> {
    type Output = Polynomial<V>;
    fn neg(self) -> Polynomial<V> {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<V: Var> Mul for &Polynomial<V> {
    type Output = Polynomial<V>;
    fn mul(self, rhs: Self) -> Polynomial<V> {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl<V: Var> fmt::Display for Polynomial<V> {
    /// Canonical rendering: terms from leading to trailing, every term as
    /// `c * v^e * ...`, negative coefficients folded into a ` - ` separator.
    /// The output is valid CLI expression syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag} * {m}")?;
            }
        }
        Ok(())
    }
}
