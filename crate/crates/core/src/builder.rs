//! Assembles `D*_G` and `D_G` from block data, plus the q-distance and tree
//! constructors.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{blocks_from_edges, validate_datum, BlockDatum, Edge, GraphDatum};
use crate::matrix::Matrix;
use crate::ring::{RatFunc, Scalar};

/// The glued multiplicative and additive-multiplicative matrices, rows and
/// columns in ascending vertex order.
#[derive(Clone, Debug, PartialEq)]
pub struct AmMatrices<S> {
    pub dstar: Matrix<S>,
    pub d: Matrix<S>,
    pub order: Vec<usize>,
}

/// Propagates `m_ij = m_iv m_vj` and `d_ij = d_iv + m_iv d_vj` across cut
/// vertices, breadth-first from every source vertex.
pub fn build_matrices<S: Scalar>(g: &GraphDatum<S>) -> AmMatrices<S> {
    let order = g.vertices().to_vec();
    let n = order.len();
    let block_d: Vec<Matrix<S>> = g.blocks().iter().map(|b| b.d_matrix().map(Scalar::reduce)).collect();
    let mut dstar = Matrix::zeros(n, n).with_labels(order.clone(), order.clone());
    let mut d = dstar.clone();
    for (si, &src) in order.iter().enumerate() {
        let mut m_row: BTreeMap<usize, S> = BTreeMap::from([(src, S::one())]);
        let mut d_row: BTreeMap<usize, S> = BTreeMap::from([(src, S::zero())]);
        let mut queue = VecDeque::from([(src, None::<usize>)]);
        while let Some((w, from)) = queue.pop_front() {
            let (mw, dw) = (m_row[&w].clone(), d_row[&w].clone());
            for &e in g.blocks_of(w) {
                if Some(e) == from {
                    continue;
                }
                let b = g.block(e);
                let lw = b.local(w).expect("w in block");
                for (lu, &u) in b.vertices.iter().enumerate() {
                    if u == w {
                        continue;
                    }
                    m_row.insert(u, mw.mul(b.dstar.get(lw, lu)).reduce());
                    d_row.insert(u, dw.add(&mw.mul(block_d[e].get(lw, lu))).reduce());
                    if g.is_cut(u) {
                        queue.push_back((u, Some(e)));
                    }
                }
            }
        }
        for (sj, v) in order.iter().enumerate() {
            dstar.set(si, sj, m_row.remove(v).expect("connected datum reaches every vertex"));
            d.set(si, sj, d_row.remove(v).expect("connected datum reaches every vertex"));
        }
    }
    AmMatrices { dstar, d, order }
}

/// The column `m(rows, v)` of `D*_G`, for the listed row vertices.
pub fn m_column<S: Scalar>(mats: &AmMatrices<S>, rows: &[usize], v: usize) -> Vec<S> {
    let j = mats.dstar.col_index(v).expect("vertex present");
    rows.iter().map(|&r| mats.dstar.get(mats.dstar.row_index(r).expect("vertex present"), j).clone()).collect()
}

/// Block of a q-distance datum: exponents `α` with zero diagonal and weight `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct QBlock<S> {
    pub vertices: Vec<usize>,
    pub alpha: Vec<Vec<i64>>,
    pub w: S,
}

/// The indeterminate `q` of q-distance data.
pub fn q_var() -> RatFunc {
    RatFunc::var("q")
}

/// `D*_e = (q^α_ij)`, `a_e = w_e / (q - 1)`; `q` may be the indeterminate
/// or any scalar other than one.
pub fn build_q_datum<S: Scalar>(n: usize, blocks: &[QBlock<S>], q: &S) -> Result<GraphDatum<S>> {
    let qm1 = q.sub(&S::one()).inv().ok_or(Error::DenominatorVanishes)?;
    let mut out = Vec::with_capacity(blocks.len());
    for (k, b) in blocks.iter().enumerate() {
        let p = b.vertices.len();
        if b.alpha.len() != p || b.alpha.iter().any(|r| r.len() != p) {
            return Err(Error::DimensionMismatch(format!("block {k}: exponent matrix is not {p}x{p}")));
        }
        let mut dstar = Matrix::identity(p);
        for i in 0..p {
            for j in 0..p {
                let e = b.alpha[i][j];
                if e < 0 {
                    return Err(Error::NegativeExponent(e));
                }
                if i == j && e != 0 {
                    return Err(Error::DiagonalNotOne(k));
                }
                dstar.set(i, j, q.pow(e as u32));
            }
        }
        out.push(BlockDatum::new(b.vertices.clone(), b.w.mul(&qm1), dstar));
    }
    validate_datum(n, out)
}

/// One 2x2 block per tree edge.
pub fn build_tree_datum<S: Scalar>(n: usize, edges: &[Edge<S>]) -> Result<GraphDatum<S>> {
    if n == 0 || edges.len() + 1 != n {
        return Err(Error::NotATree(format!("{} edges on {n} vertices", edges.len())));
    }
    let blocks = blocks_from_edges(n, edges).map_err(|e| Error::NotATree(e.to_string()))?;
    if blocks.len() != edges.len() {
        return Err(Error::NotATree("edge list contains a cycle".into()));
    }
    validate_datum(n, blocks).map_err(|e| Error::NotATree(e.to_string()))
}
