//! `det`, `cof` and `κ` of `D_G`, computed from the full matrix or assembled
//! from per-block data; minors and the bordered `κ` identity.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::builder::{build_matrices, m_column, AmMatrices};
use crate::error::{Error, Result};
use crate::graph::{classify_minor, restrict_datum, BlockDatum, GraphDatum, MinorClass};
use crate::matrix::{cof_sum, det_and_cof, evaluate, exact_det, Matrix};
use crate::ring::{product, Point, Rational, Ring, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    Ghh,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantTriple<S> {
    pub det: S,
    pub cof: S,
    pub kappa: S,
    pub method: Method,
}

impl<S: Scalar> InvariantTriple<S> {
    pub fn same_values(&self, other: &Self) -> bool {
        self.det == other.det && self.cof == other.cof && self.kappa == other.kappa
    }

    /// Values at a rational point, cancelling common factors first so that
    /// removable singularities (such as `q = 1`) evaluate to their limit.
    pub fn evaluate(&self, point: &Point) -> Result<InvariantTriple<Rational>> {
        Ok(InvariantTriple {
            det: self.det.reduce().evaluate(point)?,
            cof: self.cof.reduce().evaluate(point)?,
            kappa: self.kappa.reduce().evaluate(point)?,
            method: self.method,
        })
    }
}

/// Per-block quantities the closed forms are assembled from.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockInvariants<S> {
    pub det: S,
    pub cof: S,
    /// `κ_e = a_e^(p_e - 1) det D*_e`.
    pub kappa: S,
    pub dstar_det: S,
}

pub fn block_invariants<S: Scalar>(b: &BlockDatum<S>) -> BlockInvariants<S> {
    let (det, cof) = det_and_cof(&b.d_matrix()).expect("block matrices are square");
    let dstar_det = S::det(&b.dstar);
    let kappa = b.a.pow(b.size() as u32 - 1).mul(&dstar_det);
    BlockInvariants { det, cof, kappa, dstar_det }
}

/// `Σ_e t_e Π_{f≠e} w_f`, by prefix and suffix products.
pub fn sum_with_others<S: Ring>(terms: &[S], weights: &[S]) -> S {
    let n = weights.len();
    let mut suffix = vec![S::one(); n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1].mul(&weights[k]);
    }
    let mut prefix = S::one();
    let mut acc = S::zero();
    for k in 0..n {
        acc = acc.add(&terms[k].mul(&prefix).mul(&suffix[k + 1]));
        prefix = prefix.mul(&weights[k]);
    }
    acc
}

/// `κ(D, v0) = det(D' - u e^T - m w^T)`, where `D'` drops row and column
/// `v0`, `u` is column `v0` and `w^T` is row `v0` of `d`, and `mcol` is
/// `m(rows ∖ v0, v0)`.
///
/// `d` may be a minor; its row and column labels say which vertices remain.
pub fn kappa_at<S: Scalar>(d: &Matrix<S>, mcol: &[S], v0: usize) -> Result<S> {
    let r0 = d.row_index(v0).ok_or(Error::VertexMissing(v0))?;
    let c0 = d.col_index(v0).ok_or(Error::VertexMissing(v0))?;
    if mcol.len() + 1 != d.rows() {
        return Err(Error::DimensionMismatch(format!(
            "m column has {} entries for {} remaining rows",
            mcol.len(),
            d.rows() - 1
        )));
    }
    let rows: Vec<usize> = (0..d.rows()).filter(|&i| i != r0).collect();
    let cols: Vec<usize> = (0..d.cols()).filter(|&j| j != c0).collect();
    let m = Matrix::from_fn(rows.len(), cols.len(), |i, j| {
        let (ri, cj) = (rows[i], cols[j]);
        d.get(ri, cj).sub(d.get(ri, c0)).sub(&mcol[i].mul(d.get(r0, cj)))
    });
    exact_det(&m)
}

/// `κ(D_G)` at base vertex `v0`, straight from the glued matrices.
pub fn kappa_of<S: Scalar>(am: &AmMatrices<S>, v0: usize) -> Result<S> {
    let rows: Vec<usize> = am.order.iter().copied().filter(|&v| v != v0).collect();
    if rows.len() == am.order.len() {
        return Err(Error::VertexMissing(v0));
    }
    kappa_at(&am.d, &m_column(am, &rows, v0), v0)
}

/// Brute-force triple: `det`, cofactor sum through the adjugate, and `κ` at
/// the smallest vertex.
pub fn invariants_direct<S: Scalar>(am: &AmMatrices<S>, _g: &GraphDatum<S>) -> InvariantTriple<S> {
    let det = exact_det(&am.d).expect("square");
    let cof = cof_sum(&am.d).expect("square");
    let kappa = kappa_of(am, am.order[0]).expect("vertex present");
    InvariantTriple { det, cof, kappa, method: Method::Direct }
}

/// Triple assembled from per-block `det`, `cof` and `det D*` only.
pub fn invariants_ghh<S: Scalar>(g: &GraphDatum<S>) -> InvariantTriple<S> {
    let parts: Vec<BlockInvariants<S>> = g.blocks().par_iter().map(block_invariants).collect();
    ghh_from_blocks(&parts)
}

pub fn ghh_from_blocks<S: Scalar>(parts: &[BlockInvariants<S>]) -> InvariantTriple<S> {
    let kappas: Vec<S> = parts.iter().map(|p| p.kappa.clone()).collect();
    let dets: Vec<S> = parts.iter().map(|p| p.det.clone()).collect();
    let excess: Vec<S> = parts.iter().map(|p| p.cof.sub(&p.kappa)).collect();
    let kappa = product(&kappas);
    let det = sum_with_others(&dets, &kappas);
    let cof = kappa.add(&sum_with_others(&excess, &kappas));
    InvariantTriple { det, cof, kappa, method: Method::Ghh }
}

/// `det(D + xJ)` for a datum, from the block closed form.
pub fn det_plus_x_ghh<S: Scalar>(g: &GraphDatum<S>, x: &S) -> S {
    let t = invariants_ghh(g);
    t.det.add(&x.mul(&t.cof))
}

/// Which classical identity family to check.
#[derive(Clone, Debug, PartialEq)]
pub enum GhhFlavor<S> {
    /// All `a_e = 1`; identities for `D*_G`.
    Multiplicative,
    /// All `a_e = 1/(q - 1)` for the given `q`.
    Q(S),
    /// A q-datum over the indeterminate `q`, specialized to `q = 1`.
    Classical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl IdentityCheck {
    fn new<T: Scalar>(name: &str, lhs: &T, rhs: &T) -> IdentityCheck {
        IdentityCheck { name: name.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), holds: lhs == rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhhReport {
    pub flavor: String,
    pub checks: Vec<IdentityCheck>,
}

impl GhhReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn require_q_weights<S: Scalar>(g: &GraphDatum<S>, q: &S) -> Result<()> {
    let qm1 = q.sub(&S::one());
    for b in g.blocks() {
        if !b.a.mul(&qm1).is_one() {
            return Err(Error::WrongSpecialization(format!("block {} has a_e(q - 1) != 1", b.id)));
        }
    }
    Ok(())
}

/// Checks the multiplicative, q- or classical GHH identities on a datum of
/// the matching specialization.
pub fn classical_ghh_check<S: Scalar>(g: &GraphDatum<S>, flavor: &GhhFlavor<S>) -> Result<GhhReport> {
    match flavor {
        GhhFlavor::Multiplicative => {
            if let Some(b) = g.blocks().iter().find(|b| !b.a.is_one()) {
                return Err(Error::WrongSpecialization(format!("block {} has a_e != 1", b.id)));
            }
            let am = build_matrices(g);
            let (lhs_det, lhs_cof) = det_and_cof(&am.dstar)?;
            let per: Vec<(S, S)> = g.blocks().iter().map(|b| det_and_cof(&b.dstar)).collect::<Result<_>>()?;
            let dets: Vec<S> = per.iter().map(|p| p.0.clone()).collect();
            let excess: Vec<S> = per.iter().map(|p| p.1.sub(&p.0)).collect();
            let rhs_det = product(&dets);
            let rhs_cof = rhs_det.add(&sum_with_others(&excess, &dets));
            Ok(GhhReport {
                flavor: "multiplicative".into(),
                checks: vec![
                    IdentityCheck::new("det D*_G", &lhs_det, &rhs_det),
                    IdentityCheck::new("cof D*_G", &lhs_cof, &rhs_cof),
                ],
            })
        }
        GhhFlavor::Q(q) => {
            require_q_weights(g, q)?;
            let qm1 = q.sub(&S::one());
            let am = build_matrices(g);
            let (lhs_det, lhs_cof) = det_and_cof(&am.d)?;
            let per: Vec<(S, S)> = g.blocks().iter().map(|b| det_and_cof(&b.d_matrix())).collect::<Result<_>>()?;
            let dets: Vec<S> = per.iter().map(|p| p.0.clone()).collect();
            let dstar: Vec<S> = per.iter().map(|(d, c)| qm1.mul(d).add(c)).collect();
            let weighted = sum_with_others(&dets, &dstar);
            let rhs_cof = product(&dstar).sub(&qm1.mul(&weighted));
            Ok(GhhReport {
                flavor: "q".into(),
                checks: vec![
                    IdentityCheck::new("det D_q(G)", &lhs_det, &weighted),
                    IdentityCheck::new("cof D_q(G)", &lhs_cof, &rhs_cof),
                ],
            })
        }
        GhhFlavor::Classical => {
            let q = S::parse("q").map_err(|_| Error::WrongSpecialization("ring has no indeterminate q".into()))?;
            require_q_weights(g, &q)?;
            let at1 = Point::from([(q.as_var().expect("q is a variable"), Rational::one())]);
            let am = build_matrices(g);
            let full = evaluate(&am.d, &at1)?;
            let (lhs_det, lhs_cof) = det_and_cof(&full)?;
            let per: Vec<(Rational, Rational)> = g
                .blocks()
                .iter()
                .map(|b| det_and_cof(&evaluate(&b.d_matrix().map(Scalar::reduce), &at1)?))
                .collect::<Result<_>>()?;
            let dets: Vec<Rational> = per.iter().map(|p| p.0.clone()).collect();
            let cofs: Vec<Rational> = per.iter().map(|p| p.1.clone()).collect();
            Ok(GhhReport {
                flavor: "classical".into(),
                checks: vec![
                    IdentityCheck::new("det D_G", &lhs_det, &sum_with_others(&dets, &cofs)),
                    IdentityCheck::new("cof D_G", &lhs_cof, &product(&cofs)),
                ],
            })
        }
    }
}

/// `det(D_T + xJ)` for a tree datum from the per-edge closed form
/// `x Π k_e + Σ_e (x - a_e) a_e (m_e - 1)(m'_e - 1) Π_{f≠e} k_f`
/// with `k_e = a_e (1 - m_e m'_e)`.
pub fn tree_master<S: Scalar>(g: &GraphDatum<S>, x: &S) -> Result<S> {
    let mut ks = Vec::new();
    let mut ts = Vec::new();
    for b in g.blocks() {
        if b.size() != 2 {
            return Err(Error::NotATree(format!("block {} has {} vertices", b.id, b.size())));
        }
        let (m, mp) = (b.dstar.get(0, 1), b.dstar.get(1, 0));
        ks.push(b.a.mul(&S::one().sub(&m.mul(mp))));
        let t = m.sub(&S::one()).mul(&mp.sub(&S::one()));
        ts.push(x.sub(&b.a).mul(&b.a).mul(&t));
    }
    Ok(x.mul(&product(&ks)).add(&sum_with_others(&ts, &ks)))
}

fn complement<S: Scalar>(g: &GraphDatum<S>, removed: &BTreeSet<usize>) -> BTreeSet<usize> {
    g.vertices().iter().copied().filter(|v| !removed.contains(v)).collect()
}

fn admissible<S: Scalar>(g: &GraphDatum<S>, rows: &BTreeSet<usize>, cols: &BTreeSet<usize>) -> Result<MinorClass> {
    match classify_minor(g, rows, cols) {
        MinorClass::Inadmissible(why) => Err(Error::InadmissibleMinor(why)),
        c => Ok(c),
    }
}

/// `det((D + xJ)_{I|J})` from the block closed forms.
pub fn minor_det<S: Scalar>(g: &GraphDatum<S>, rows: &BTreeSet<usize>, cols: &BTreeSet<usize>, x: &S) -> Result<S> {
    match admissible(g, rows, cols)? {
        MinorClass::Equal => {
            let sub = restrict_datum(g, &complement(g, rows))?;
            let parts: Vec<BlockInvariants<S>> = sub.blocks().iter().map(block_invariants).collect();
            let kappas: Vec<S> = parts.iter().map(|p| p.kappa.clone()).collect();
            let terms: Vec<S> = sub
                .blocks()
                .iter()
                .zip(&parts)
                .map(|(b, p)| b.a.sub(x).mul(&p.kappa.sub(&p.cof)))
                .collect();
            Ok(x.mul(&product(&kappas)).add(&sum_with_others(&terms, &kappas)))
        }
        MinorClass::DeltaTwo { i0, j0, p_i0, p_j0 } => {
            let common: BTreeSet<usize> = rows.intersection(cols).copied().collect();
            let keep = complement(g, &common);
            let sub = restrict_datum(g, &keep)?;
            let ei = sub.common_block(i0, p_i0).expect("pendant block");
            let ej = sub.common_block(j0, p_j0).expect("pendant block");
            let rest: Vec<S> = sub
                .blocks()
                .iter()
                .filter(|b| b.id != ei && b.id != ej)
                .map(|b| block_invariants(b).kappa)
                .collect();
            let (bi, bj) = (sub.block(ei), sub.block(ej));
            let one = S::one();
            let value = product(&rest)
                .mul(&bi.a)
                .mul(&bj.a.sub(x))
                .mul(&bi.m(p_i0, i0).sub(&one))
                .mul(&bj.m(j0, p_j0).sub(&one));
            // cofactor sign of the deleted row and column within V ∖ (I ∩ J)
            let rank = |v: usize| keep.iter().position(|&w| w == v).expect("kept vertex");
            Ok(if (rank(i0) + rank(j0)) % 2 == 0 { value } else { value.neg() })
        }
        MinorClass::DeltaMoreThanTwo => Ok(S::zero()),
        MinorClass::Inadmissible(_) => unreachable!("filtered by admissible"),
    }
}

/// Brute force: determinant of `D + xJ` with rows `I` and columns `J` deleted.
pub fn minor_det_direct<S: Scalar>(
    am: &AmMatrices<S>,
    rows: &BTreeSet<usize>,
    cols: &BTreeSet<usize>,
    x: &S,
) -> Result<S> {
    let sub = literal_minor(am, rows, cols)?;
    exact_det(&sub.plus_constant(x))
}

fn literal_minor<S: Scalar>(am: &AmMatrices<S>, rows: &BTreeSet<usize>, cols: &BTreeSet<usize>) -> Result<Matrix<S>> {
    let idx = |set: &BTreeSet<usize>| -> Result<Vec<usize>> {
        set.iter().map(|&v| am.d.row_index(v).ok_or(Error::VertexMissing(v))).collect()
    };
    Ok(am.d.remove(&idx(rows)?, &idx(cols)?))
}

/// `κ(D_{I|J}, v0)` from the closed form: the product of block `κ`s over the
/// structure left after deleting `I`, or zero when `I ≠ J`.
pub fn minor_kappa<S: Scalar>(g: &GraphDatum<S>, rows: &BTreeSet<usize>, cols: &BTreeSet<usize>, v0: usize) -> Result<S> {
    if !g.contains(v0) {
        return Err(Error::VertexMissing(v0));
    }
    if rows.contains(&v0) || cols.contains(&v0) {
        return Err(Error::VertexInRemovedSet(v0));
    }
    match admissible(g, rows, cols)? {
        MinorClass::Equal => {
            let sub = restrict_datum(g, &complement(g, rows))?;
            let ks: Vec<S> = sub.blocks().iter().map(|b| block_invariants(b).kappa).collect();
            Ok(product(&ks))
        }
        _ => Ok(S::zero()),
    }
}

/// Brute force `κ(D_{I|J}, v0)` from its defining determinant.
pub fn minor_kappa_direct<S: Scalar>(
    am: &AmMatrices<S>,
    rows: &BTreeSet<usize>,
    cols: &BTreeSet<usize>,
    v0: usize,
) -> Result<S> {
    if rows.contains(&v0) || cols.contains(&v0) {
        return Err(Error::VertexInRemovedSet(v0));
    }
    let sub = literal_minor(am, rows, cols)?;
    let mrows: Vec<usize> = sub.row_labels().iter().copied().filter(|&v| v != v0).collect();
    kappa_at(&sub, &m_column(am, &mrows, v0), v0)
}

/// `det [[m(V, v), D + xJ], [0, e^T]]`.
pub fn bordered_det<S: Scalar>(am: &AmMatrices<S>, v: usize, x: &S) -> Result<S> {
    if am.d.row_index(v).is_none() {
        return Err(Error::VertexMissing(v));
    }
    let n = am.order.len();
    let mcol = m_column(am, &am.order, v);
    let m = Matrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j) {
        (true, 0) => mcol[i].clone(),
        (true, j) => am.d.get(i, j - 1).add(x),
        (false, 0) => S::zero(),
        (false, _) => S::one(),
    });
    exact_det(&m)
}

/// [`bordered_det`], checked against `(-1)^(|V|-1) κ`.
pub fn bordered_kappa<S: Scalar>(g: &GraphDatum<S>, v: usize, x: &S) -> Result<S> {
    let value = bordered_det(&build_matrices(g), v, x)?;
    let n = g.n();
    let kappa = invariants_ghh(g).kappa;
    let expected = if n % 2 == 1 { kappa } else { kappa.neg() };
    if value != expected {
        return Err(Error::Inconsistent(format!("bordered determinant {value} differs from {expected}")));
    }
    Ok(value)
}
