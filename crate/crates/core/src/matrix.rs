//! Dense matrices over exact rings and their determinant-type invariants.

use std::collections::BTreeSet;
use std::fmt;


use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use crate::error::{Error, Result};
use crate::ring::{
    expand, lcm, parse_ratfunc, Factors, Point, RatFunc, Rational, Ring, Scalar, SparsePoly, Var,
};

/// Dense row-major matrix with vertex labels on rows and columns.
///
/// Labels only record which vertices the rows and columns stand for;
/// equality ignores them.
#[derive(Clone, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
    row_labels: Vec<usize>,
    col_labels: Vec<usize>,
}

impl<R: PartialEq> PartialEq for Matrix<R> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Matrix<R>> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            row_labels: (1..=rows).collect(),
            col_labels: (1..=cols).collect(),
        })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Matrix<R>> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Matrix<R> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, data).expect("sizes agree")
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix<R> {
        Matrix::from_fn(rows, cols, |_, _| R::zero())
    }

    pub fn ones(rows: usize, cols: usize) -> Matrix<R> {
        Matrix::from_fn(rows, cols, |_, _| R::one())
    }

    pub fn identity(n: usize) -> Matrix<R> {
        Matrix::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn diagonal(d: &[R]) -> Matrix<R> {
        Matrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { R::zero() })
    }

    pub fn column(v: &[R]) -> Matrix<R> {
        Matrix::from_fn(v.len(), 1, |i, _| v[i].clone())
    }

    pub fn with_labels(mut self, rows: Vec<usize>, cols: Vec<usize>) -> Matrix<R> {
        assert_eq!(rows.len(), self.rows);
        assert_eq!(cols.len(), self.cols);
        self.row_labels = rows;
        self.col_labels = cols;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row_labels(&self) -> &[usize] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[usize] {
        &self.col_labels
    }

    pub fn row_index(&self, label: usize) -> Option<usize> {
        self.row_labels.iter().position(|&l| l == label)
    }

    pub fn col_index(&self, label: usize) -> Option<usize> {
        self.col_labels.iter().position(|&l| l == label)
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&R) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        }
    }

    pub fn try_map<T: Ring>(&self, f: impl Fn(&R) -> Result<T>) -> Result<Matrix<T>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        })
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<R> {
        let mut m = Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone());
        m.row_labels = rows.iter().map(|&i| self.row_labels[i]).collect();
        m.col_labels = cols.iter().map(|&j| self.col_labels[j]).collect();
        m
    }

    /// Deletes the given row and column indices.
    pub fn remove(&self, rows: &[usize], cols: &[usize]) -> Matrix<R> {
        let keep_r: Vec<usize> = (0..self.rows).filter(|i| !rows.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|j| !cols.contains(j)).collect();
        self.select(&keep_r, &keep_c)
    }

    pub fn transpose(&self) -> Matrix<R> {
        let mut m = Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone());
        m.row_labels = self.col_labels.clone();
        m.col_labels = self.row_labels.clone();
        m
    }

    pub fn matmul(&self, rhs: &Matrix<R>) -> Result<Matrix<R>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut m = Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = rhs.get(k, j);
                if !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        });
        m.row_labels = self.row_labels.clone();
        m.col_labels = rhs.col_labels.clone();
        Ok(m)
    }

    fn zip(&self, rhs: &Matrix<R>, f: impl Fn(&R, &R) -> R) -> Result<Matrix<R>> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} versus {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut m = self.clone();
        for (x, y) in m.data.iter_mut().zip(&rhs.data) {
            *x = f(x, y);
        }
        Ok(m)
    }

    pub fn add(&self, rhs: &Matrix<R>) -> Result<Matrix<R>> {
        self.zip(rhs, |a, b| a.add(b))
    }

    pub fn sub(&self, rhs: &Matrix<R>) -> Result<Matrix<R>> {
        self.zip(rhs, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &R) -> Matrix<R> {
        self.map(|x| x.mul(c))
    }

    /// `self + xJ`.
    pub fn plus_constant(&self, x: &R) -> Matrix<R> {
        self.map(|v| v.add(x))
    }

    pub fn sum_entries(&self) -> R {
        self.data.iter().fold(R::zero(), |acc, x| acc.add(x))
    }

    pub fn row_sums(&self) -> Vec<R> {
        (0..self.rows).map(|i| crate::ring::sum(self.row(i))).collect()
    }

    pub fn col_sums(&self) -> Vec<R> {
        (0..self.cols)
            .map(|j| (0..self.rows).fold(R::zero(), |acc, i| acc.add(self.get(i, j))))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn require_square<R: Ring>(m: &Matrix<R>) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("{}x{} is not square", m.rows, m.cols)))
    }
}

/// Fraction-free Gaussian elimination; needs exact division in the ring.
pub fn det_bareiss<R: Ring>(m: &Matrix<R>) -> R {
    let n = m.rows;
    if n == 0 {
        return R::one();
    }
    let mut a: Vec<Vec<R>> = m.to_rows();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.div_exact(&prev).expect("Bareiss quotients are exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Cofactor expansion with every minor on the leading rows memoised by its
/// column set; division-free, `O(n 2^n)` ring multiplications.
pub fn det_laplace<R: Ring>(m: &Matrix<R>) -> R {
    let n = m.rows;
    assert!(n <= 20, "cofactor expansion is exponential in n");
    let mut minor: Vec<R> = vec![R::zero(); 1 << n];
    minor[0] = R::one();
    for mask in 1usize..(1 << n) {
        let k = mask.count_ones() as usize;
        let row = k - 1;
        let mut acc = R::zero();
        let mut t = 0;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let entry = m.get(row, c);
            let sub = &minor[mask & !(1 << c)];
            if !entry.is_zero() && !sub.is_zero() {
                let term = entry.mul(sub);
                acc = if (row + t).is_multiple_of(2) { acc.add(&term) } else { acc.sub(&term) };
            }
            t += 1;
        }
        minor[mask] = acc;
    }
    minor.pop().expect("table is non-empty")
}

/// Largest order for which polynomial determinants use cofactor expansion.
pub const LAPLACE_MAX_ORDER: usize = 8;

pub fn det_poly(m: &Matrix<SparsePoly>) -> SparsePoly {
    if m.rows <= LAPLACE_MAX_ORDER {
        det_laplace(m)
    } else {
        det_bareiss(m)
    }
}

/// Clears denominators row by row: returns `P` and `ℓ` with
/// `P[i] = ℓ_i M[i]` polynomial, each `ℓ_i` the factored lcm of row `i`'s
/// denominators.
fn clear_rows(m: &Matrix<RatFunc>) -> (Matrix<SparsePoly>, Vec<Factors>) {
    let mut out = Vec::with_capacity(m.rows * m.cols);
    let mut mults = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut l = Factors::new();
        for r in m.row(i) {
            l = lcm(&l, r.denom_factors()).0;
        }
        for r in m.row(i) {
            let (_, over, _) = lcm(r.denom_factors(), &l);
            out.push(r.numer().mul(&expand(&over)));
        }
        mults.push(l);
    }
    (Matrix::new(m.rows, m.cols, out).expect("sizes agree"), mults)
}

fn merged(mults: &[Factors]) -> Factors {
    let mut all = Factors::new();
    for l in mults {
        for (f, e) in l {
            match all.iter_mut().find(|(g, _)| g == f) {
                Some((_, k)) => *k += e,
                None => all.push((f.clone(), *e)),
            }
        }
    }
    all
}

/// Splits `c0 + c1 x` into its coefficients.
fn affine_in(p: &SparsePoly, x: Var) -> Result<(SparsePoly, SparsePoly)> {
    let mut cs = p.coefficients_in(x);
    if cs.len() > 2 {
        return Err(Error::NonLinearInX);
    }
    cs.resize(2, SparsePoly::zero());
    let c1 = cs.pop().expect("two coefficients");
    let c0 = cs.pop().expect("two coefficients");
    Ok((c0, c1))
}

fn gauss_jordan(m: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    let n = m.rows;
    let mut a = m.to_rows();
    let mut inv: Vec<Vec<Rational>> = Matrix::<Rational>::identity(n).to_rows();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(k, p);
        inv.swap(k, p);
        let piv = a[k][k].inv().expect("nonzero pivot");
        for j in 0..n {
            a[k][j] = a[k][j].mul(&piv);
            inv[k][j] = inv[k][j].mul(&piv);
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                let t = a[k][j].mul(&f);
                a[i][j] = a[i][j].sub(&t);
                let t = inv[k][j].mul(&f);
                inv[i][j] = inv[i][j].sub(&t);
            }
        }
    }
    Ok(Matrix::from_rows(inv)?.with_labels(m.col_labels.clone(), m.row_labels.clone()))
}

/// Adjugate from cofactors: `adj[j][i] = (-1)^(i+j) det(M without row i, col j)`.
pub fn adjugate_by_cofactors<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    let n = m.rows;
    if n == 1 {
        return Matrix::identity(1);
    }
    let mut adj = Matrix::from_fn(n, n, |j, i| {
        let c = S::det(&m.remove(&[i], &[j]));
        if (i + j) % 2 == 0 {
            c
        } else {
            c.neg()
        }
    });
    adj.row_labels = m.col_labels.clone();
    adj.col_labels = m.row_labels.clone();
    adj
}

/// Integer Bareiss after clearing each row's denominators.
fn det_rational(m: &Matrix<Rational>) -> Rational {
    let n = m.rows;
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.0.denom()));
            let out = row.iter().map(|q| q.0.numer() * (&l / q.0.denom())).collect();
            scale *= l;
            out
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                row[j] = (&row[j] * &pivot[k] - &row[k] * &pivot[j]) / &prev;
            }
        }
        prev = pivot[k].clone();
    }
    let d = if n == 0 { BigInt::one() } else { a[n - 1][n - 1].clone() };
    let d = if negate { -d } else { d };
    Rational(BigRational::new(d, scale))
}

impl Scalar for Rational {
    fn inv(&self) -> Option<Self> {
        Rational::inv(self)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn det(m: &Matrix<Self>) -> Self {
        det_rational(m)
    }
    fn det_plus_xj(m: &Matrix<Self>) -> Result<(Self, Self)> {
        require_square(m)?;
        // det(M + xJ) is affine in x, so two evaluations determine it
        let d0 = det_rational(m);
        let d1 = det_rational(&m.plus_constant(&Rational::one()));
        let cof = d1.sub(&d0);
        Ok((d0, cof))
    }
    fn adjugate(m: &Matrix<Self>) -> Matrix<Self> {
        let d = Self::det(m);
        if d.is_zero() {
            adjugate_by_cofactors(m)
        } else {
            gauss_jordan(m).expect("nonsingular").scale(&d)
        }
    }
    fn inverse(m: &Matrix<Self>) -> Result<Matrix<Self>> {
        gauss_jordan(m)
    }
    fn evaluate(&self, _point: &Point) -> Result<Rational> {
        Ok(self.clone())
    }
    fn variables(&self) -> BTreeSet<Var> {
        BTreeSet::new()
    }
    fn as_var(&self) -> Option<Var> {
        None
    }
    fn parse(s: &str) -> Result<Self> {
        let r = parse_ratfunc(s)?;
        crate::ring::constant_of(&r).ok_or_else(|| Error::NotConstant(s.to_string()))
    }
    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_rational(self)
    }
}

impl Scalar for RatFunc {
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self)
    }
    fn from_rational(q: &Rational) -> Self {
        RatFunc::from_rational(q)
    }
    fn det(m: &Matrix<Self>) -> Self {
        let (p, mults) = clear_rows(m);
        let d = det_poly(&p);
        RatFunc::from_factors(d, merged(&mults))
    }
    fn det_plus_xj(m: &Matrix<Self>) -> Result<(Self, Self)> {
        require_square(m)?;
        let xv = Var::adjoined_x();
        let x = SparsePoly::var(xv);
        let (mut p, mults) = clear_rows(m);
        for (i, l) in mults.iter().enumerate() {
            let lx = expand(l).mul(&x);
            for j in 0..p.cols {
                let v = p.get(i, j).add(&lx);
                p.set(i, j, v);
            }
        }
        let (c0, c1) = affine_in(&det_poly(&p), xv)?;
        let den = merged(&mults);
        Ok((RatFunc::from_factors(c0, den.clone()), RatFunc::from_factors(c1, den)))
    }
    fn evaluate(&self, point: &Point) -> Result<Rational> {
        RatFunc::evaluate(self, point)
    }
    fn reduce(&self) -> Self {
        self.reduced()
    }
    fn variables(&self) -> BTreeSet<Var> {
        RatFunc::variables(self)
    }
    fn as_var(&self) -> Option<Var> {
        let p = self.as_poly()?;
        match p.terms() {
            [(m, c)] if num_traits::One::is_one(c) => {
                let vs: Vec<(Var, u32)> = m.vars().collect();
                match vs.as_slice() {
                    [(v, 1)] => Some(*v),
                    _ => None,
                }
            }
            _ => None,
        }
    }
    fn parse(s: &str) -> Result<Self> {
        parse_ratfunc(s)
    }
    fn to_ratfunc(&self) -> RatFunc {
        self.clone()
    }
}

/// `det(M)` by exact elimination.
pub fn exact_det<S: Scalar>(m: &Matrix<S>) -> Result<S> {
    require_square(m)?;
    Ok(S::det(m))
}

/// Classical adjugate `adj(M) = (c_ji)`.
pub fn adjugate<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<S>> {
    require_square(m)?;
    if m.rows == 0 {
        return Ok(Matrix::identity(0));
    }
    Ok(S::adjugate(m))
}

/// `cof(M)`, the sum of all cofactors, via the adjugate.
pub fn cof_sum<S: Scalar>(m: &Matrix<S>) -> Result<S> {
    Ok(adjugate(m)?.sum_entries())
}

/// `(det M, cof M)` from `det(M + xJ) = det M + x cof M`.
pub fn det_and_cof<S: Scalar>(m: &Matrix<S>) -> Result<(S, S)> {
    require_square(m)?;
    S::det_plus_xj(m)
}

/// Exact inverse; fails on singular input.
pub fn solve_inverse<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<S>> {
    require_square(m)?;
    S::inverse(m)
}

/// Specializes every entry at a rational point.
pub fn evaluate<S: Scalar>(m: &Matrix<S>, point: &Point) -> Result<Matrix<Rational>> {
    m.try_map(|x| x.evaluate(point))
}

/// Entrywise cancellation of common factors.
pub fn reduce_entries<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    m.map(Scalar::reduce)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect())
            .unwrap()
    }

    /// Leibniz-formula oracle, independent of elimination.
    fn leibniz(m: &Matrix<Rational>) -> Rational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for k in 0..n {
                    let mut v = p.clone();
                    v.insert(k, n - 1);
                    out.push(v);
                }
            }
            out
        }
        let n = m.rows();
        let mut total = Rational::zero();
        for p in perms(n) {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            let mut t = Rational::one();
            for (i, &pi) in p.iter().enumerate() {
                t = t.mul(m.get(i, pi));
            }
            total = if inv % 2 == 0 { total.add(&t) } else { total.sub(&t) };
        }
        total
    }

    #[test]
    fn two_by_two_swap() {
        let m = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(exact_det(&m).unwrap(), Rational::from(-1));
        assert_eq!(adjugate(&m).unwrap(), q(&[&[0, -1], &[-1, 0]]));
        assert_eq!(cof_sum(&m).unwrap(), Rational::from(-2));
        assert_eq!(solve_inverse(&m).unwrap(), m);
    }

    #[test]
    fn all_ones_minus_identity() {
        let m = q(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        assert_eq!(exact_det(&m).unwrap(), Rational::from(2));
        assert_eq!(adjugate(&m).unwrap(), q(&[&[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]]));
        assert_eq!(cof_sum(&m).unwrap(), Rational::from(3));
        assert_eq!(det_and_cof(&m).unwrap(), (Rational::from(2), Rational::from(3)));
        let h = Rational::new(1, 2);
        let inv = Matrix::from_fn(3, 3, |i, j| if i == j { h.neg() } else { h.clone() });
        assert_eq!(solve_inverse(&m).unwrap(), inv);
    }

    #[test]
    fn zero_scalar_and_path() {
        assert_eq!(det_and_cof(&q(&[&[0]])).unwrap(), (Rational::zero(), Rational::one()));
        let p = q(&[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]]);
        assert_eq!(det_and_cof(&p).unwrap(), (Rational::from(4), Rational::from(4)));
    }

    #[test]
    fn singular_inverse_fails_and_adjugate_survives() {
        let m = q(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve_inverse(&m), Err(Error::SingularMatrix));
        assert_eq!(adjugate(&m).unwrap(), q(&[&[4, -2], &[-2, 1]]));
        assert_eq!(exact_det(&q(&[&[1, 2, 3]])), Err(Error::DimensionMismatch("1x3 is not square".into())));
    }

    #[test]
    fn evaluation_of_unreduced_quotient() {
        let r = RatFunc::parse("q^2 - 1").unwrap().div(&RatFunc::parse("q^2 + q - 2").unwrap()).unwrap();
        let qv = Var::new("q");
        let at = |v: i64| Point::from([(qv, Rational::from(v))]);
        assert_eq!(r.evaluate(&at(3)).unwrap(), Rational::new(4, 5));
        assert_eq!(r.evaluate(&at(1)), Err(Error::DenominatorVanishes));
        assert_eq!(r.reduce().evaluate(&at(1)).unwrap(), Rational::new(2, 3));
    }

    #[test]
    fn laplace_and_bareiss_agree_with_leibniz() {
        let m = q(&[&[0, 3, -1, 2], &[5, 0, 2, 2], &[1, -4, 0, 7], &[2, 2, 9, 0]]);
        let l = leibniz(&m);
        assert_eq!(det_bareiss(&m), l);
        assert_eq!(det_laplace(&m), l);
    }

    #[test]
    fn symbolic_det_and_cof() {
        let a = RatFunc::parse("a").unwrap();
        let b = RatFunc::parse("b").unwrap();
        let z = RatFunc::zero();
        let m = Matrix::from_rows(vec![vec![z.clone(), a.clone()], vec![b.clone(), z]]).unwrap();
        let (d, c) = det_and_cof(&m).unwrap();
        assert_eq!(d, a.mul(&b).neg());
        assert_eq!(c, a.add(&b).neg());
        assert_eq!(cof_sum(&m).unwrap(), c);
        let inv = solve_inverse(&m).unwrap();
        assert_eq!(m.matmul(&inv).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn rational_entries_clear_denominators() {
        let a = RatFunc::parse("1/(s - 1)").unwrap();
        let m = Matrix::from_rows(vec![
            vec![a.clone(), RatFunc::one()],
            vec![RatFunc::parse("s").unwrap(), a.clone()],
        ])
        .unwrap();
        let expect = a.mul(&a).sub(&RatFunc::parse("s").unwrap());
        assert_eq!(exact_det(&m).unwrap(), expect);
        let (d, c) = det_and_cof(&m).unwrap();
        assert_eq!(d, expect);
        assert_eq!(c, cof_sum(&m).unwrap());
    }
}
