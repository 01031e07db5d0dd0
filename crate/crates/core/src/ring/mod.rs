//! Exact scalar rings.
//!
//! [`Ring`] is the arithmetic contract shared by rationals, sparse
//! polynomials and rational functions. [`Scalar`] adds the field operations
//! and the exact determinant routines used by the rest of the crate; it is
//! implemented by [`Rational`] and [`RatFunc`].

mod monomial;
mod parse;
mod poly;
mod ratfunc;
mod rational;
mod var;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub use monomial::Monomial;
pub use parse::parse_ratfunc;
pub use poly::SparsePoly;
pub(crate) use ratfunc::constant_of;
pub use ratfunc::RatFunc;
pub(crate) use ratfunc::{expand, lcm, Factors};
pub use rational::Rational;
pub use var::Var;

use crate::error::Result;
use crate::matrix::Matrix;

/// Assignment of rational values to indeterminates.
pub type Point = HashMap<Var, Rational>;

/// Commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Quotient `self / rhs` when it exists in the ring.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Sum of a sequence of ring elements.
pub fn sum<'a, R: Ring, I: IntoIterator<Item = &'a R>>(items: I) -> R {
    items.into_iter().fold(R::zero(), |acc, x| acc.add(x))
}

/// Product of a sequence of ring elements.
pub fn product<'a, R: Ring, I: IntoIterator<Item = &'a R>>(items: I) -> R {
    items.into_iter().fold(R::one(), |acc, x| acc.mul(x))
}

/// Field of exact scalars the distance matrices live over.
pub trait Scalar: Ring + fmt::Display {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn from_rational(q: &Rational) -> Self;

    /// Exact determinant.
    fn det(m: &Matrix<Self>) -> Self;

    /// `(det M, cof M)` read off from `det(M + xJ)` with `x` adjoined.
    fn det_plus_xj(m: &Matrix<Self>) -> Result<(Self, Self)>;

    /// Value at a rational point.
    fn evaluate(&self, point: &Point) -> Result<Rational>;

    /// Canonical representative; cancels common factors where possible.
    fn reduce(&self) -> Self {
        self.clone()
    }

    fn variables(&self) -> BTreeSet<Var>;

    /// The indeterminate this value is, if it is a bare variable.
    fn as_var(&self) -> Option<Var>;

    fn parse(s: &str) -> Result<Self>;

    /// Embedding into rational functions.
    fn to_ratfunc(&self) -> RatFunc;

    fn adjugate(m: &Matrix<Self>) -> Matrix<Self> {
        crate::matrix::adjugate_by_cofactors(m)
    }

    fn inverse(m: &Matrix<Self>) -> Result<Matrix<Self>> {
        let d = Self::det(m);
        let inv = d.inv().ok_or(crate::error::Error::SingularMatrix)?;
        Ok(Self::adjugate(m).map(|c| c.mul(&inv)))
    }
}
