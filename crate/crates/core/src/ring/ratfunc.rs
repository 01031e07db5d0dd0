use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::gcd;
use super::{Point, Rational, Ring, SparsePoly, Var};
use crate::error::{Error, Result};

/// Monic non-constant polynomials with multiplicities.
pub(crate) type Factors = Vec<(SparsePoly, u32)>;

/// Quotient of a polynomial by a product of monic factors.
///
/// Denominators are kept factored. Sums take the least common multiple of
/// the factor lists and products merge them, so recurring factors never
/// square up. Whole factors are cancelled by trial division as results are
/// formed; [`RatFunc::reduced`] also cancels partial common factors by a gcd.
/// Equality is decided by cross-multiplication, so it never depends on the
/// representative.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: SparsePoly,
    den: Factors,
}

pub(crate) fn expand(fs: &[(SparsePoly, u32)]) -> SparsePoly {
    fs.iter().fold(SparsePoly::one(), |acc, (f, e)| acc.mul(&f.pow(*e)))
}

fn push_factor(fs: &mut Factors, f: SparsePoly, e: u32) {
    if e == 0 {
        return;
    }
    match fs.iter_mut().find(|(g, _)| *g == f) {
        Some((_, k)) => *k += e,
        None => fs.push((f, e)),
    }
}

/// `(c, fs)` with `p = c Π fs`: the monomial content is split into single
/// variables and the rest made monic.
fn split(p: &SparsePoly) -> (BigRational, Factors) {
    let mut fs = Factors::new();
    let terms = p.terms();
    let mut rest = p.clone();
    if let Some((m0, _)) = terms.first() {
        let mut content = Monomial::one();
        for (v, e) in m0.vars() {
            let k = terms.iter().map(|(m, _)| m.exponent(v)).min().unwrap_or(0).min(e);
            if k > 0 {
                content = content.mul(&Monomial::var(v, k));
                push_factor(&mut fs, SparsePoly::var(v), k);
            }
        }
        if !content.is_one() {
            rest = rest.div_exact(&SparsePoly::monomial(content, BigRational::one())).expect("content divides");
        }
    }
    let lc = rest.leading().expect("nonzero polynomial").1.clone();
    if !rest.is_constant() {
        push_factor(&mut fs, rest.scale(&lc.recip()), 1);
    }
    (lc, fs)
}

/// Cheap necessary condition for `f | p`.
fn may_divide(p: &SparsePoly, f: &SparsePoly) -> bool {
    f.len() <= p.len() && f.variables().iter().all(|&v| f.degree_in(v) <= p.degree_in(v))
}

/// Cancels whole factors of `den` from `num`.
fn settle(mut num: SparsePoly, den: Factors) -> RatFunc {
    if num.is_zero() {
        return RatFunc::zero();
    }
    let mut out = Factors::with_capacity(den.len());
    for (f, mut e) in den {
        while e > 0 && may_divide(&num, &f) {
            match num.div_exact(&f) {
                Some(q) => {
                    num = q;
                    e -= 1;
                }
                None => break,
            }
        }
        push_factor(&mut out, f, e);
    }
    RatFunc { num, den: out }
}

/// `lcm(a, b)`, with the cofactors `lcm / a` and `lcm / b`.
pub(crate) fn lcm(a: &[(SparsePoly, u32)], b: &[(SparsePoly, u32)]) -> (Factors, Factors, Factors) {
    let mut l: Factors = a.to_vec();
    let mut over_a = Factors::new();
    let mut over_b = Factors::new();
    for (f, e) in b {
        match l.iter_mut().find(|(g, _)| g == f) {
            Some((_, k)) if *k >= *e => {}
            Some((_, k)) => {
                over_a.push((f.clone(), *e - *k));
                *k = *e;
            }
            None => {
                over_a.push((f.clone(), *e));
                l.push((f.clone(), *e));
            }
        }
    }
    for (f, k) in &l {
        let e = b.iter().find(|(g, _)| g == f).map_or(0, |(_, e)| *e);
        if *k > e {
            over_b.push((f.clone(), *k - e));
        }
    }
    (l, over_a, over_b)
}

impl RatFunc {
    /// `num / den`.
    pub fn new(num: SparsePoly, den: SparsePoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        let (c, fs) = split(&den);
        Ok(settle(num.scale(&c.recip()), fs))
    }

    /// `num / Π fs` for monic non-constant factors.
    pub(crate) fn from_factors(num: SparsePoly, fs: Factors) -> RatFunc {
        settle(num, fs)
    }

    /// `num / Π dens`, keeping the given denominators as separate factors.
    pub fn over_product(num: SparsePoly, dens: &[SparsePoly]) -> Result<RatFunc> {
        let mut c = BigRational::one();
        let mut fs = Factors::new();
        for d in dens {
            if d.is_zero() {
                return Err(Error::DenominatorVanishes);
            }
            let (k, parts) = split(d);
            c *= k;
            for (f, e) in parts {
                push_factor(&mut fs, f, e);
            }
        }
        Ok(settle(num.scale(&c.recip()), fs))
    }

    pub fn from_poly(p: SparsePoly) -> RatFunc {
        RatFunc { num: p, den: Factors::new() }
    }

    pub fn var(name: &str) -> RatFunc {
        RatFunc::from_poly(SparsePoly::var(Var::new(name)))
    }

    pub fn from_rational(q: &Rational) -> RatFunc {
        RatFunc::from_poly(SparsePoly::from_rational(q))
    }

    pub fn numer(&self) -> &SparsePoly {
        &self.num
    }

    /// The expanded denominator.
    pub fn denom(&self) -> SparsePoly {
        expand(&self.den)
    }

    /// The denominator's monic factors with multiplicities.
    pub fn denom_factors(&self) -> &[(SparsePoly, u32)] {
        &self.den
    }

    /// The polynomial this equals, if the denominator is constant.
    pub fn as_poly(&self) -> Option<SparsePoly> {
        self.den.is_empty().then(|| self.num.clone())
    }

    pub fn term_count(&self) -> usize {
        self.num.len() + self.den.iter().map(|(f, _)| f.len()).sum::<usize>()
    }

    /// Cancels the greatest common divisor of numerator and denominator.
    pub fn reduced(&self) -> RatFunc {
        let mut num = self.num.clone();
        let mut den = Factors::new();
        for (f, e) in &self.den {
            for _ in 0..*e {
                let g = gcd(&num, f);
                if g.is_constant() {
                    push_factor(&mut den, f.clone(), 1);
                    continue;
                }
                num = num.div_exact(&g).expect("gcd divides numerator");
                let rest = f.div_exact(&g).expect("gcd divides factor");
                if !rest.is_constant() {
                    push_factor(&mut den, rest.monic(), 1);
                }
            }
        }
        // the split-off parts may still share factors with the numerator
        if den != self.den {
            return RatFunc { num, den }.reduced();
        }
        RatFunc { num, den }
    }

    pub fn evaluate(&self, point: &Point) -> Result<Rational> {
        let mut d = BigRational::one();
        for (f, e) in &self.den {
            d *= num_traits::pow(f.evaluate(point)?.0, *e as usize);
        }
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        let n = self.num.evaluate(point)?;
        Ok(Rational(n.0 / d))
    }

    /// Substitutes bound variables, keeping the rest symbolic.
    pub fn substitute(&self, point: &Point) -> Result<RatFunc> {
        let dens: Vec<SparsePoly> = self.den.iter().map(|(f, e)| f.substitute(point).pow(*e)).collect();
        RatFunc::over_product(self.num.substitute(point), &dens)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        let mut s = self.num.variables();
        for (f, _) in &self.den {
            s.extend(f.variables());
        }
        s
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.num.is_zero() {
            return None;
        }
        let (c, fs) = split(&self.num);
        let mut num = expand(&self.den).scale(&c.recip());
        // factors shared between old and new denominators cancel outright
        let mut den = Factors::new();
        for (f, e) in fs {
            let k = self.den.iter().find(|(g, _)| *g == f).map_or(0, |(_, k)| *k);
            if k > 0 {
                num = num.div_exact(&f.pow(k.min(e))).expect("factor divides its expansion");
            }
            push_factor(&mut den, f, e - k.min(e));
        }
        Some(RatFunc { num, den })
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        let (_, over_a, over_b) = lcm(&self.den, &other.den);
        self.num.mul(&expand(&over_a)) == other.num.mul(&expand(&over_b))
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(SparsePoly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(SparsePoly::one())
    }
    fn from_i64(n: i64) -> Self {
        RatFunc::from_poly(SparsePoly::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        let (l, over_a, over_b) = lcm(&self.den, &rhs.den);
        let num = self.num.mul(&expand(&over_a)).add(&rhs.num.mul(&expand(&over_b)));
        settle(num, l)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel each numerator against the other denominator first
        let a = settle(self.num.clone(), rhs.den.clone());
        let b = settle(rhs.num.clone(), self.den.clone());
        let mut den = a.den;
        for (f, e) in b.den {
            push_factor(&mut den, f, e);
        }
        RatFunc { num: a.num.mul(&b.num), den }
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.denom())
        }
    }
}

/// Rational number view of a constant rational function.
pub(crate) fn constant_of(r: &RatFunc) -> Option<Rational> {
    if !r.den.is_empty() {
        return None;
    }
    r.num.constant_value().map(Rational)
}
