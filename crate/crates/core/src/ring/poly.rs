use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Point, Rational, Ring, Var};
use crate::error::{Error, Result};

/// Multivariate polynomial over the rationals.
///
/// Terms are kept sorted by decreasing monomial, without zero coefficients,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SparsePoly {
    terms: Vec<(Monomial, BigRational)>,
}

fn merge(
    a: &[(Monomial, BigRational)],
    b: &[(Monomial, BigRational)],
    negate_b: bool,
) -> Vec<(Monomial, BigRational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let nb = |c: &BigRational| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((b[j].0.clone(), nb(&b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), nb(c))));
    out
}

impl SparsePoly {
    pub fn constant(q: BigRational) -> SparsePoly {
        if q.is_zero() {
            SparsePoly::default()
        } else {
            SparsePoly { terms: vec![(Monomial::one(), q)] }
        }
    }

    pub fn from_rational(q: &Rational) -> SparsePoly {
        SparsePoly::constant(q.0.clone())
    }

    pub fn var(v: Var) -> SparsePoly {
        SparsePoly::monomial(Monomial::var(v, 1), BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> SparsePoly {
        if c.is_zero() {
            SparsePoly::default()
        } else {
            SparsePoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from terms in any order, combining duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> SparsePoly {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        SparsePoly {
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn scale(&self, c: &BigRational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::default();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::default();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect(),
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> SparsePoly {
        match self.leading() {
            None => SparsePoly::default(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.iter().flat_map(|(m, _)| m.vars().map(|(v, _)| v)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    /// Coefficients of `v^0, v^1, ...` as polynomials free of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<SparsePoly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        // removing a variable keeps the relative order of the rest
        buckets.into_iter().map(|terms| SparsePoly { terms }).collect()
    }

    pub fn evaluate(&self, point: &Point) -> Result<Rational> {
        let mut total = BigRational::zero();
        let mut cache: BTreeMap<(Var, u32), BigRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.vars() {
                let p = match cache.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let base = point.get(&v).ok_or_else(|| Error::UnboundVariable(v.name()))?;
                        let p = num_traits::pow(base.0.clone(), e as usize);
                        cache.insert((v, e), p.clone());
                        p
                    }
                };
                t *= p;
            }
            total += t;
        }
        Ok(Rational(total))
    }

    /// Substitutes the bound variables, leaving the others symbolic.
    pub fn substitute(&self, point: &Point) -> SparsePoly {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Monomial::one();
            for (v, e) in m.vars() {
                match point.get(&v) {
                    Some(q) => coeff *= num_traits::pow(q.0.clone(), e as usize),
                    None => rest = rest.mul(&Monomial::var(v, e)),
                }
            }
            out.push((rest, coeff));
        }
        SparsePoly::from_terms(out)
    }

    fn mul_poly(&self, other: &SparsePoly) -> SparsePoly {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.is_empty() {
            return SparsePoly::default();
        }
        let mut parts: Vec<Vec<(Monomial, BigRational)>> = small
            .terms
            .iter()
            .map(|(m, c)| big.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect())
            .collect();
        while parts.len() > 1 {
            let mut next = Vec::with_capacity(parts.len() / 2 + 1);
            let mut it = parts.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(merge(&a, &b, false)),
                    None => next.push(a),
                }
            }
            parts = next;
        }
        SparsePoly { terms: parts.pop().unwrap_or_default() }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    fn divide(&self, d: &SparsePoly) -> Option<SparsePoly> {
        let (dm, dc) = d.leading()?;
        if self.is_zero() {
            return Some(SparsePoly::default());
        }
        if d.len() == 1 {
            let inv = dc.recip();
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                terms.push((m.div(dm)?, c * &inv));
            }
            return Some(SparsePoly { terms });
        }
        let inv = dc.recip();
        let mut rem: BTreeMap<Monomial, BigRational> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(dm)?;
            let qc = &c * &inv;
            for (n, e) in &d.terms[1..] {
                let key = n.mul(&qm);
                let delta = e * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(SparsePoly { terms: quot })
    }

    /// Pseudo-remainder of `self` by `d` viewed as polynomials in `v`.
    fn pseudo_rem(&self, d: &SparsePoly, v: Var) -> SparsePoly {
        let dd = d.degree_in(v);
        let lc = d.coefficients_in(v).pop().unwrap_or_default();
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= dd {
            let k = r.degree_in(v);
            let lr = r.coefficients_in(v).pop().unwrap_or_default();
            let shift = SparsePoly::monomial(Monomial::var(v, k - dd), BigRational::one());
            r = lc.mul(&r).sub(&lr.mul(&shift).mul(d));
        }
        r
    }

    /// Gcd of the coefficients of `self` viewed as a polynomial in `v`.
    fn content_in(&self, v: Var) -> SparsePoly {
        let mut g = SparsePoly::zero();
        for c in self.coefficients_in(v) {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_constant() {
                return SparsePoly::one();
            }
        }
        g
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return SparsePoly::one();
    }
    if a.len() == 1 && b.len() == 1 {
        // gcd of two monomials
        let (ma, mb) = (&a.terms[0].0, &b.terms[0].0);
        let mut m = Monomial::one();
        for (v, e) in ma.vars() {
            let f = mb.exponent(v).min(e);
            if f > 0 {
                m = m.mul(&Monomial::var(v, f));
            }
        }
        return SparsePoly::monomial(m, BigRational::one());
    }
    let vars: BTreeSet<Var> = a.variables().union(&b.variables()).copied().collect();
    let v = *vars.iter().next().expect("non-constant polynomial has a variable");
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    if da == 0 {
        return gcd(a, &b.content_in(v));
    }
    if db == 0 {
        return gcd(&a.content_in(v), b);
    }
    let (ca, cb) = (a.content_in(v), b.content_in(v));
    let c = gcd(&ca, &cb);
    let mut p = a.divide(&ca).expect("content divides");
    let mut q = b.divide(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        let r = p.pseudo_rem(&q, v);
        if r.is_zero() {
            break q;
        }
        if r.degree_in(v) == 0 {
            break SparsePoly::one();
        }
        let cr = r.content_in(v);
        let r = r.divide(&cr).expect("content divides").monic();
        p = q;
        q = r;
    };
    c.mul(&g).monic()
}

impl Ring for SparsePoly {
    fn zero() -> Self {
        SparsePoly::default()
    }
    fn one() -> Self {
        SparsePoly::constant(BigRational::one())
    }
    fn from_i64(n: i64) -> Self {
        SparsePoly::constant(BigRational::from_integer(BigInt::from(n)))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }
    fn add(&self, rhs: &Self) -> Self {
        SparsePoly { terms: merge(&self.terms, &rhs.terms, false) }
    }
    fn sub(&self, rhs: &Self) -> Self {
        SparsePoly { terms: merge(&self.terms, &rhs.terms, true) }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_poly(rhs)
    }
    fn neg(&self) -> Self {
        SparsePoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.divide(rhs)
    }
}

fn monomial_display_key(m: &Monomial) -> Vec<(String, u32)> {
    let mut v: Vec<(String, u32)> = m.vars().map(|(x, e)| (x.name(), e)).collect();
    v.sort();
    v
}

impl fmt::Display for SparsePoly {
    /// Terms by decreasing total degree, then by variable name, so printed
    /// output does not depend on the order variables were first seen.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut items: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (m.degree(), monomial_display_key(m), c))
            .collect();
        items.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        for (k, (_, mono, c)) in items.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let body: Vec<String> = mono
                .iter()
                .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            let coeff = Rational(abs).to_string();
            if body.is_empty() {
                f.write_str(&coeff)?;
            } else if coeff == "1" {
                f.write_str(&body.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, body.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> SparsePoly {
        SparsePoly::var(Var::new(name))
    }

    fn c(n: i64) -> SparsePoly {
        SparsePoly::from_i64(n)
    }

    #[test]
    fn arithmetic_cancels() {
        let (a, b) = (v("pa"), v("pb"));
        let s = a.add(&b).mul(&a.sub(&b));
        assert_eq!(s, a.mul(&a).sub(&b.mul(&b)));
        assert!(s.sub(&s).is_zero());
    }

    #[test]
    fn exact_division() {
        let q = v("pq");
        let num = q.pow(3).sub(&c(1));
        let den = q.sub(&c(1));
        assert_eq!(num.div_exact(&den), Some(q.mul(&q).add(&q).add(&c(1))));
        assert_eq!(num.div_exact(&q.add(&c(1))), None);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let (x, y) = (v("gx"), v("gy"));
        let f = x.mul(&y).sub(&c(2));
        let a = f.mul(&x.add(&y));
        let b = f.mul(&x.sub(&c(3))).mul(&y);
        assert_eq!(gcd(&a, &b), f.monic());
        assert!(gcd(&x.add(&c(1)), &y.add(&c(1))).is_one());
    }

    #[test]
    fn display_is_stable() {
        let (a, b) = (v("da"), v("db"));
        let p = a.mul(&a).scale(&BigRational::new(3.into(), 2.into())).sub(&b).add(&c(-4));
        assert_eq!(p.to_string(), "3/2*da^2 - db - 4");
    }
}
