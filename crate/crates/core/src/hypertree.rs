//! Closed forms for hypertrees, whose blocks are cliques with `m_ij = m_i m'_j`,
//! and for cliques hung off blocks with constant row sums.
//!
//! Everything is kept in cleared form: with `s_v = m_v m'_v`, the factors
//! `1 - s_v` only ever appear as products, never as denominators.

use crate::error::{Error, Result};
use crate::graph::{subgraph_i_to_e, BlockDatum, GraphDatum};
use crate::invariants::{sum_with_others, InvariantTriple, Method};
use crate::inverse::InverseParts;
use crate::matrix::{exact_det, Matrix};
use crate::ring::{product, Ring, Scalar};

/// A clique block: `(D*)_{ij} = m_i m'_j` off the diagonal, `1` on it.
#[derive(Clone, Debug, PartialEq)]
pub struct CliqueDatum<S> {
    pub vertices: Vec<usize>,
    pub m: Vec<S>,
    pub mp: Vec<S>,
    pub a: S,
}

impl<S: Scalar> CliqueDatum<S> {
    pub fn p(&self) -> usize {
        self.vertices.len()
    }

    pub fn dstar(&self) -> Matrix<S> {
        let p = self.p();
        Matrix::from_fn(p, p, |i, j| if i == j { S::one() } else { self.m[i].mul(&self.mp[j]) })
    }

    pub fn to_block(&self) -> BlockDatum<S> {
        BlockDatum::new(self.vertices.clone(), self.a.clone(), self.dstar())
    }

    /// Recovers a rank-one factorisation of a block's off-diagonal part, if
    /// it has one with the needed entries invertible.
    pub fn from_block(b: &BlockDatum<S>) -> Option<CliqueDatum<S>> {
        let d = &b.dstar;
        let p = d.rows();
        let (m, mp) = if p == 2 {
            (vec![d.get(0, 1).clone(), d.get(1, 0).clone()], vec![S::one(), S::one()])
        } else {
            let mut m: Vec<S> = (0..p).map(|i| d.get(i, 0).clone()).collect();
            let mut mp = vec![S::one(); p];
            for (j, x) in mp.iter_mut().enumerate().skip(2) {
                *x = d.get(1, j).div(&m[1])?;
            }
            mp[1] = d.get(2, 1).div(&m[2])?;
            m[0] = d.get(0, 1).div(&mp[1])?;
            (m, mp)
        };
        let c = CliqueDatum { vertices: b.vertices.clone(), m, mp, a: b.a.clone() };
        (c.dstar() == *d).then_some(c)
    }

    /// `1 - m_v m'_v` for each vertex.
    fn gaps(&self) -> Vec<S> {
        self.m.iter().zip(&self.mp).map(|(m, mp)| S::one().sub(&m.mul(mp))).collect()
    }

    fn check(&self) -> Result<()> {
        let p = self.p();
        if p < 2 || self.m.len() != p || self.mp.len() != p {
            return Err(Error::InvalidHypertree(format!("clique on {p} vertices with {} heads, {} tails", self.m.len(), self.mp.len())));
        }
        Ok(())
    }
}

/// `Π_{u ∉ skip} g_u`.
fn prod_except<S: Ring>(g: &[S], skip: &[usize]) -> S {
    product(g.iter().enumerate().filter(|(u, _)| !skip.contains(u)).map(|(_, x)| x))
}

/// Cleared clique quantities.
struct CliqueParts<S> {
    /// `det D* = Π g + Σ_v s_v Π_{u≠v} g_u`.
    det: S,
    /// `cof D* - det D* = (p-1) Π g + Σ_{v<w} (m_v-m_w)(m'_v-m'_w) Π_{u≠v,w} g_u`.
    excess: S,
}

fn clique_parts<S: Scalar>(c: &CliqueDatum<S>) -> CliqueParts<S> {
    let g = c.gaps();
    let p = c.p();
    let full = product(&g);
    let mut det = full.clone();
    for v in 0..p {
        det = det.add(&c.m[v].mul(&c.mp[v]).mul(&prod_except(&g, &[v])));
    }
    let mut excess = full.mul(&S::from_i64(p as i64 - 1));
    for v in 0..p {
        for w in v + 1..p {
            let t = c.m[v].sub(&c.m[w]).mul(&c.mp[v].sub(&c.mp[w]));
            excess = excess.add(&t.mul(&prod_except(&g, &[v, w])));
        }
    }
    CliqueParts { det, excess }
}

/// `(det D*, cof D*)` of a clique block, division free.
pub fn clique_det_cof<S: Scalar>(c: &CliqueDatum<S>) -> (S, S) {
    let parts = clique_parts(c);
    let cof = parts.det.add(&parts.excess);
    (parts.det, cof)
}

fn assemble<S: Scalar>(n: usize, cliques: &[CliqueDatum<S>]) -> Result<GraphDatum<S>> {
    for c in cliques {
        c.check()?;
    }
    GraphDatum::new((1..=n).collect(), cliques.iter().map(CliqueDatum::to_block).collect())
        .map_err(|e| Error::InvalidHypertree(e.to_string()))
}

/// `κ_e = a_e^(p_e-1) det D*_e`, `det = -Σ_e a_e^p_e T_e Π_{f≠e} κ_f` and
/// `cof = Π κ + Σ_e a_e^(p_e-1) T_e Π_{f≠e} κ_f` with `T_e = cof D*_e - det D*_e`.
pub fn hypertree_invariants<S: Scalar>(n: usize, cliques: &[CliqueDatum<S>]) -> Result<InvariantTriple<S>> {
    assemble(n, cliques)?;
    let mut kappas = Vec::new();
    let mut det_terms = Vec::new();
    let mut cof_terms = Vec::new();
    for c in cliques {
        let parts = clique_parts(c);
        let ap = c.a.pow(c.p() as u32 - 1);
        kappas.push(ap.mul(&parts.det));
        let t = ap.mul(&parts.excess);
        det_terms.push(t.mul(&c.a).neg());
        cof_terms.push(t);
    }
    let kappa = product(&kappas);
    Ok(InvariantTriple {
        det: sum_with_others(&det_terms, &kappas),
        cof: kappa.add(&sum_with_others(&cof_terms, &kappas)),
        kappa,
        method: Method::Ghh,
    })
}

/// Weighted q-hypertree with blocks `K_{p_e}` and weights `w_e`: returns
/// `κ = Π (-w_e)^(p_e-1) (1 + (p_e-1) q)` and `det(D + xJ)`.
pub fn hypertree_q<S: Scalar>(blocks: &[(usize, S)], q: &S, x: &S) -> (S, S) {
    let one = S::one();
    let mut ks = Vec::new();
    let mut terms = Vec::new();
    for (p, w) in blocks {
        let pm1 = S::from_i64(*p as i64 - 1);
        let lead = w.neg().pow(*p as u32 - 1);
        ks.push(lead.mul(&one.add(&pm1.mul(q))));
        terms.push(pm1.mul(&w.add(&x.mul(&one.sub(q)))).mul(&lead));
    }
    let kappa = product(&ks);
    let det = x.mul(&kappa).add(&sum_with_others(&terms, &ks));
    (kappa, det)
}

/// The q-hypertree as clique data: `m_v = q`, `m'_v = 1`, `a_e = w_e/(q-1)`,
/// so that every off-diagonal `D*` entry is `q`.
pub fn q_cliques<S: Scalar>(blocks: &[(Vec<usize>, S)], q: &S) -> Result<Vec<CliqueDatum<S>>> {
    let qm1 = q.sub(&S::one()).inv().ok_or(Error::DenominatorVanishes)?;
    Ok(blocks
        .iter()
        .map(|(vs, w)| CliqueDatum {
            vertices: vs.clone(),
            m: vec![q.clone(); vs.len()],
            mp: vec![S::one(); vs.len()],
            a: w.mul(&qm1),
        })
        .collect())
}

/// `det(D + xJ)` for blocks with constant row sums plus attached cliques.
///
/// A core block `j` with `D_j e = d_j e` contributes `κ_j` and
/// `(a_j - x) a_j^(p'_j-1) det(D*_j - J)`; the `1/d_j` of the closed form is
/// absorbed by Cramer's rule into `det(D_j)/d_j = det(D_j with column 1
/// replaced by e)`.
pub fn pendant_clique_det<S: Scalar>(
    n: usize,
    core: &[BlockDatum<S>],
    cliques: &[CliqueDatum<S>],
    x: &S,
) -> Result<S> {
    for c in cliques {
        c.check()?;
    }
    let blocks: Vec<BlockDatum<S>> = core.iter().cloned().chain(cliques.iter().map(CliqueDatum::to_block)).collect();
    GraphDatum::new((1..=n).collect(), blocks)?;
    let mut kappas = Vec::new();
    let mut terms = Vec::new();
    for (j, b) in core.iter().enumerate() {
        let d = b.d_matrix();
        let sums = d.row_sums();
        if sums.iter().any(|s| *s != sums[0]) {
            return Err(Error::RowSumNotConstant(j));
        }
        let p = b.size();
        let shifted = exact_det(&b.dstar.plus_constant(&S::one().neg()))?;
        let core_part = b.a.pow(p as u32 - 1).mul(&shifted);
        let mut replaced = d.clone();
        for i in 0..p {
            replaced.set(i, 0, S::one());
        }
        let cramer = exact_det(&replaced)?.mul(&S::from_i64(p as i64));
        kappas.push(core_part.add(&cramer));
        terms.push(b.a.sub(x).mul(&core_part));
    }
    for c in cliques {
        let parts = clique_parts(c);
        let ap = c.a.pow(c.p() as u32 - 1);
        kappas.push(ap.mul(&parts.det));
        terms.push(x.sub(&c.a).mul(&ap).mul(&parts.excess));
    }
    Ok(x.mul(&product(&kappas)).add(&sum_with_others(&terms, &kappas)))
}

/// Inverse pieces from the clique closed forms; the only denominators are
/// the `det D*_e`.
pub fn hypertree_inverse_parts<S: Scalar>(n: usize, cliques: &[CliqueDatum<S>]) -> Result<InverseParts<S>> {
    let g = assemble(n, cliques)?;
    let verts = g.vertices().to_vec();
    let mut dstar_inv: Matrix<S> = Matrix::identity(n).with_labels(verts.clone(), verts.clone());
    let mut laplacian: Matrix<S> = Matrix::zeros(n, n).with_labels(verts.clone(), verts.clone());
    let mut a_inv = Vec::new();
    // -a_f T_f / det D*_f, the block shares of α
    let mut shares = Vec::new();
    let mut kappas = Vec::new();
    for (e, c) in cliques.iter().enumerate() {
        let parts = clique_parts(c);
        let det_inv = parts.det.inv().ok_or(Error::SingularBlock(e))?;
        let ai = c.a.inv().ok_or(Error::NonInvertibleWeight(e))?;
        let gaps = c.gaps();
        let p = c.p();
        let idx: Vec<usize> = c.vertices.iter().map(|&v| g.index_of(v).expect("vertex")).collect();
        for v in 0..p {
            for w in 0..p {
                let (i, j) = (idx[v], idx[w]);
                let entry = if v == w {
                    let mut num = prod_except(&gaps, &[v]);
                    for u in (0..p).filter(|&u| u != v) {
                        num = num.add(&c.m[u].mul(&c.mp[u]).mul(&prod_except(&gaps, &[u, v])));
                    }
                    num.mul(&det_inv)
                } else {
                    let off = c.m[v].mul(&c.mp[w]).mul(&prod_except(&gaps, &[v, w])).mul(&det_inv);
                    laplacian.set(i, j, ai.mul(&off).reduce());
                    off.neg()
                };
                let base = if i == j { dstar_inv.get(i, j).sub(&S::one()) } else { S::zero() };
                dstar_inv.set(i, j, base.add(&entry).reduce());
            }
        }
        shares.push(c.a.mul(&parts.excess).mul(&det_inv).neg());
        kappas.push(c.a.pow(p as u32 - 1).mul(&parts.det));
        a_inv.push(ai);
    }
    for j in 0..n {
        let s = (0..n).filter(|&k| k != j).fold(S::zero(), |s, k| s.add(laplacian.get(k, j)));
        laplacian.set(j, j, s.neg().reduce());
    }
    let alpha = shares.iter().fold(S::zero(), |s, x| s.add(x)).reduce();
    let alpha_inv = alpha.inv().ok_or(Error::SingularDistanceMatrix)?;
    let kappa = product(&kappas);
    let det = alpha.mul(&kappa).reduce();
    if det.is_zero() {
        return Err(Error::SingularDistanceMatrix);
    }

    let mut beta = Vec::with_capacity(n);
    let mut c_matrix = Matrix::zeros(n, n).with_labels(verts.clone(), verts.clone());
    for (i, &v) in verts.iter().enumerate() {
        let mut acc = S::zero();
        let mut row = vec![S::zero(); n];
        for &e in g.blocks_of(v) {
            let (vs, fs) = subgraph_i_to_e(&g, v, e)?;
            let inner = fs.iter().fold(S::zero(), |s, &f| s.add(&shares[f]));
            acc = acc.add(&a_inv[e].mul(&inner));
            for u in vs.into_iter().filter(|&u| u != v) {
                row[g.index_of(u).expect("vertex")] = a_inv[e].clone();
            }
        }
        let b = acc.mul(&alpha_inv).reduce();
        for (j, r) in row.iter().enumerate() {
            c_matrix.set(i, j, if j == i { b.clone() } else { b.sub(r).reduce() });
        }
        beta.push(b);
    }
    let tau_in = dstar_inv.col_sums().into_iter().map(|x| x.reduce()).collect();
    let tau_out = dstar_inv.row_sums().into_iter().map(|x| x.reduce()).collect();
    let alpha = if kappa.is_zero() { None } else { Some(alpha) };
    Ok(InverseParts { alpha, det, kappa, tau_in, tau_out, beta, c_matrix, laplacian, dstar_inv })
}
