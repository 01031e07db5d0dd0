//! `D_G^{-1}` in closed form, as a rank-one update of `C (D*)^{-1}` and in
//! Laplacian form.

use rayon::prelude::*;

use crate::builder::build_matrices;
use crate::error::{Error, Result};
use crate::graph::{subgraph_i_to_e, GraphDatum};
use crate::invariants::{block_invariants, BlockInvariants};
use crate::matrix::{exact_det, solve_inverse, Matrix};
use crate::ring::{product, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct InverseParts<S> {
    /// `α = det / κ`; `None` when `κ = 0`.
    pub alpha: Option<S>,
    pub det: S,
    pub kappa: S,
    pub tau_in: Vec<S>,
    pub tau_out: Vec<S>,
    pub beta: Vec<S>,
    pub c_matrix: Matrix<S>,
    pub laplacian: Matrix<S>,
    pub dstar_inv: Matrix<S>,
}

/// `(D*_G)^{-1} = Σ_e [(D*_e)^{-1}] + Id - Σ_e [Id_e]`, each block inverse
/// embedded at its vertices.
pub fn dstar_inverse_assembled<S: Scalar>(g: &GraphDatum<S>) -> Result<Matrix<S>> {
    let n = g.n();
    let mut out: Matrix<S> = Matrix::identity(n).with_labels(g.vertices().to_vec(), g.vertices().to_vec());
    for b in g.blocks() {
        let inv = solve_inverse(&b.dstar).map_err(|_| Error::SingularBlock(b.id))?;
        let idx: Vec<usize> = b.vertices.iter().map(|&v| g.index_of(v).expect("block vertex")).collect();
        for (li, &i) in idx.iter().enumerate() {
            for (lj, &j) in idx.iter().enumerate() {
                let mut x = out.get(i, j).add(inv.get(li, lj));
                if i == j {
                    x = x.sub(&S::one());
                }
                out.set(i, j, x);
            }
        }
    }
    Ok(out.map(Scalar::reduce))
}

fn check_weights<S: Scalar>(g: &GraphDatum<S>) -> Result<Vec<S>> {
    g.blocks().iter().map(|b| b.a.inv().ok_or(Error::NonInvertibleWeight(b.id))).collect()
}

/// Every part of both closed forms.
///
/// `β_i` is accumulated as `Σ_{e∋i} a_e^{-1} Σ_{f⊂G_{i→e}} det_f Π_{g≠f} κ_g`
/// and divided by `det D_G` once, using `κ(D_G) = Π κ_g`.
pub fn compute_parts<S: Scalar>(g: &GraphDatum<S>) -> Result<InverseParts<S>> {
    let dstar_inv = dstar_inverse_assembled(g)?;
    let a_inv = check_weights(g)?;
    let blocks: Vec<BlockInvariants<S>> = g.blocks().par_iter().map(block_invariants).collect();
    let kappas: Vec<S> = blocks.iter().map(|b| b.kappa.clone()).collect();
    let kappa = product(&kappas);
    // det_f Π_{g≠f} κ_g for each block f
    let weighted: Vec<S> = (0..blocks.len())
        .map(|f| {
            let others = kappas.iter().enumerate().filter(|&(k, _)| k != f).map(|(_, k)| k);
            blocks[f].det.mul(&product(others))
        })
        .collect();
    let det = weighted.iter().fold(S::zero(), |acc, w| acc.add(w)).reduce();
    let det_inv = det.inv().ok_or(Error::SingularDistanceMatrix)?;
    let n = g.n();
    let verts = g.vertices().to_vec();

    let rows: Vec<(S, Vec<S>)> = verts
        .par_iter()
        .map(|&i| -> Result<(S, Vec<S>)> {
            let mut acc = S::zero();
            // 1/a_e for the `j ∈ G_{i→e}` entries of row i
            let mut shift = vec![S::zero(); n];
            for &e in g.blocks_of(i) {
                let (vs, fs) = subgraph_i_to_e(g, i, e)?;
                let inner = fs.iter().fold(S::zero(), |s, &f| s.add(&weighted[f]));
                acc = acc.add(&a_inv[e].mul(&inner));
                for v in vs.into_iter().filter(|&v| v != i) {
                    shift[g.index_of(v).expect("vertex")] = a_inv[e].clone();
                }
            }
            Ok((acc.mul(&det_inv).reduce(), shift))
        })
        .collect::<Result<_>>()?;
    let beta: Vec<S> = rows.iter().map(|r| r.0.clone()).collect();
    let c_matrix = Matrix::from_fn(n, n, |i, j| if i == j { beta[i].clone() } else { beta[i].sub(&rows[i].1[j]).reduce() })
        .with_labels(verts.clone(), verts.clone());

    let tau_in = dstar_inv.col_sums().into_iter().map(|x| x.reduce()).collect();
    let tau_out = dstar_inv.row_sums().into_iter().map(|x| x.reduce()).collect();

    let mut laplacian = Matrix::zeros(n, n).with_labels(verts.clone(), verts);
    for (e, b) in g.blocks().iter().enumerate() {
        for &u in &b.vertices {
            for &v in &b.vertices {
                if u != v {
                    let (i, j) = (g.index_of(u).expect("vertex"), g.index_of(v).expect("vertex"));
                    laplacian.set(i, j, a_inv[e].mul(dstar_inv.get(i, j)).neg().reduce());
                }
            }
        }
    }
    for j in 0..n {
        let s = (0..n).filter(|&k| k != j).fold(S::zero(), |s, k| s.add(laplacian.get(k, j)));
        laplacian.set(j, j, s.neg().reduce());
    }

    let alpha = kappa.inv().map(|ki| det.mul(&ki).reduce());
    Ok(InverseParts { alpha, det, kappa, tau_in, tau_out, beta, c_matrix, laplacian, dstar_inv })
}

fn outer<S: Scalar>(u: &[S], v: &[S], scale: &S) -> Matrix<S> {
    Matrix::from_fn(u.len(), v.len(), |i, j| scale.mul(&u[i]).mul(&v[j]))
}

/// `(κ/det) τ_out τ_in^T + C (D*)^{-1}`.
pub fn inverse_closed_form<S: Scalar>(g: &GraphDatum<S>) -> Result<Matrix<S>> {
    let p = compute_parts(g)?;
    Ok(closed_form_from_parts(&p))
}

pub fn closed_form_from_parts<S: Scalar>(p: &InverseParts<S>) -> Matrix<S> {
    let ratio = p.kappa.div(&p.det).expect("det checked nonzero");
    let rank_one = outer(&p.tau_out, &p.tau_in, &ratio);
    let rest = p.c_matrix.matmul(&p.dstar_inv).expect("square");
    rank_one.add(&rest).expect("same shape").map(Scalar::reduce).with_labels(
        p.c_matrix.row_labels().to_vec(),
        p.c_matrix.col_labels().to_vec(),
    )
}

/// `(1/α) τ_out τ_in^T - L + C diag(τ_in)`, after checking
/// `C = (-L + C diag(τ_in)) D*_G`.
pub fn inverse_via_laplacian<S: Scalar>(g: &GraphDatum<S>) -> Result<Matrix<S>> {
    let p = compute_parts(g)?;
    let dstar = build_matrices(g).dstar;
    let core = p.c_matrix.matmul(&Matrix::diagonal(&p.tau_in))?.sub(&p.laplacian)?;
    let lhs = core.matmul(&dstar)?.map(Scalar::reduce);
    if lhs != p.c_matrix {
        return Err(Error::Inconsistent("C differs from (-L + C diag(tau_in)) D*".into()));
    }
    let ratio = p.kappa.div(&p.det).expect("det checked nonzero");
    let out = outer(&p.tau_out, &p.tau_in, &ratio).add(&core)?;
    Ok(out.map(Scalar::reduce).with_labels(p.c_matrix.row_labels().to_vec(), p.c_matrix.col_labels().to_vec()))
}

/// Constant-weight case `D = a (D* - e e^T)`, inverted by Sherman-Morrison:
/// `a^{-1} [(D*)^{-1} + (D*)^{-1} e e^T (D*)^{-1} / (1 - e^T (D*)^{-1} e)]`.
pub fn q_inverse_special<S: Scalar>(g: &GraphDatum<S>) -> Result<Matrix<S>> {
    let a = &g.blocks()[0].a;
    if g.blocks().iter().any(|b| b.a != *a) {
        return Err(Error::SpecialCaseViolated);
    }
    let a_inv = a.inv().ok_or(Error::NonInvertibleWeight(0))?;
    let inv = dstar_inverse_assembled(g)?;
    let denom = S::one().sub(&inv.sum_entries()).reduce();
    let scale = denom.inv().ok_or(Error::SingularUpdate)?;
    let update = outer(&inv.row_sums(), &inv.col_sums(), &scale);
    Ok(inv.add(&update)?.scale(&a_inv).map(Scalar::reduce))
}

/// Checks `D · X = Id` and `X · D = Id` exactly.
pub fn is_two_sided_inverse<S: Scalar>(d: &Matrix<S>, x: &Matrix<S>) -> Result<bool> {
    let id = Matrix::identity(d.rows());
    let left = d.matmul(x)?.map(Scalar::reduce);
    let right = x.matmul(d)?.map(Scalar::reduce);
    Ok(left == id && right == id)
}

/// `det D*_G`, used where the caller must rule out a singular `D*`.
pub fn dstar_det<S: Scalar>(g: &GraphDatum<S>) -> Result<S> {
    exact_det(&build_matrices(g).dstar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{build_q_datum, build_tree_datum, q_var, QBlock};
    use crate::graph::{validate_datum, BlockDatum, Edge};
    use crate::invariants::invariants_ghh;
    use crate::matrix::evaluate;
    use crate::ring::{Point, RatFunc, Rational, Ring, Var};

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn three_blocks() -> GraphDatum<Rational> {
        let tri = Matrix::from_rows(vec![
            vec![r(1), r(2), r(-1)],
            vec![r(3), r(1), r(5)],
            vec![Rational::new(1, 2), r(4), r(1)],
        ])
        .unwrap();
        let edge = |m: i64, mp: i64| Matrix::from_rows(vec![vec![r(1), r(m)], vec![r(mp), r(1)]]).unwrap();
        validate_datum(
            5,
            vec![
                BlockDatum::new(vec![1, 2, 3], r(2), tri),
                BlockDatum::new(vec![3, 4], r(-3), edge(2, 7)),
                BlockDatum::new(vec![2, 5], Rational::new(1, 3), edge(-2, 3)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn k2_dstar_inverse() {
        let (m, mp) = (RatFunc::var("km"), RatFunc::var("kmp"));
        let g = build_tree_datum(2, &[Edge { u: 1, v: 2, a: RatFunc::var("ka"), m_uv: m.clone(), m_vu: mp.clone() }])
            .unwrap();
        let inv = dstar_inverse_assembled(&g).unwrap();
        let s = RatFunc::one().sub(&m.mul(&mp)).inv().unwrap();
        let want = Matrix::from_rows(vec![vec![s.clone(), m.neg().mul(&s)], vec![mp.neg().mul(&s), s.clone()]]).unwrap();
        assert_eq!(inv, want);
        let p = compute_parts(&g).unwrap();
        let tau_sum = p.tau_in.iter().fold(RatFunc::zero(), |a, b| a.add(b));
        assert_eq!(tau_sum, RatFunc::from_i64(2).sub(&m).sub(&mp).mul(&s));
        let d = build_matrices(&g).d;
        assert!(is_two_sided_inverse(&d, &inverse_closed_form(&g).unwrap()).unwrap());
        assert_eq!(inverse_via_laplacian(&g).unwrap(), inverse_closed_form(&g).unwrap());
    }

    #[test]
    fn symbolic_path_dstar_inverse() {
        let v = |s: &str| RatFunc::var(s);
        let e = |u, w, t: &str| Edge { u, v: w, a: v(&format!("{t}a")), m_uv: v(&format!("{t}m")), m_vu: v(&format!("{t}n")) };
        let g = build_tree_datum(3, &[e(1, 2, "s"), e(2, 3, "t")]).unwrap();
        let dstar = build_matrices(&g).dstar;
        assert!(is_two_sided_inverse(&dstar, &dstar_inverse_assembled(&g).unwrap()).unwrap());
    }

    #[test]
    fn constant_weight_block() {
        let dstar = Matrix::from_rows(vec![vec![r(1), r(2), r(3)], vec![r(-1), r(1), r(4)], vec![r(2), r(5), r(1)]]).unwrap();
        let a = r(3);
        let g = validate_datum(3, vec![BlockDatum::new(vec![1, 2, 3], a.clone(), dstar.clone())]).unwrap();
        let p = compute_parts(&g).unwrap();
        assert_eq!(p.c_matrix, Matrix::identity(3).scale(&a.inv().unwrap()));
        let sm = solve_inverse(&dstar.sub(&Matrix::ones(3, 3)).unwrap()).unwrap().scale(&a.inv().unwrap());
        assert_eq!(inverse_closed_form(&g).unwrap(), sm);
        assert_eq!(q_inverse_special(&g).unwrap(), sm);
    }

    #[test]
    fn three_block_identities() {
        let g = three_blocks();
        let am = build_matrices(&g);
        let p = compute_parts(&g).unwrap();
        let oracle = solve_inverse(&am.d).unwrap();
        assert_eq!(inverse_closed_form(&g).unwrap(), oracle);
        assert_eq!(inverse_via_laplacian(&g).unwrap(), oracle);
        let t = invariants_ghh(&g);
        let excess = t.kappa.sub(&t.cof);
        for s in p.c_matrix.col_sums() {
            assert_eq!(t.det.mul(&s), excess);
        }
        assert!(p.laplacian.col_sums().iter().all(|x| x.is_zero()));
        assert!(p.laplacian.get(g.index_of(4).unwrap(), g.index_of(5).unwrap()).is_zero());
        // τ_in^T m_{•→l} = 1
        let hits = Matrix::column(&p.tau_in).transpose().matmul(&am.dstar).unwrap();
        assert!(hits.entries().iter().all(|x| x.is_one()));
        for leaf in [1, 4, 5] {
            let i = g.index_of(leaf).unwrap();
            let e = g.blocks_of(leaf)[0];
            let a_inv = g.block(e).a.inv().unwrap();
            assert_eq!(p.beta[i], a_inv);
            assert!((0..5).all(|j| j == i || p.c_matrix.get(i, j).is_zero()));
        }
        assert!(matches!(q_inverse_special(&g), Err(Error::SpecialCaseViolated)));
    }

    #[test]
    fn unit_path_q_inverse() {
        let blk = |u, v| QBlock { vertices: vec![u, v], alpha: vec![vec![0, 1], vec![1, 0]], w: RatFunc::one() };
        let g = build_q_datum(3, &[blk(1, 2), blk(2, 3)], &q_var()).unwrap();
        let at1 = Point::from([(Var::new("q"), r(1))]);
        let classical = Matrix::from_rows(vec![vec![r(0), r(1), r(2)], vec![r(1), r(0), r(1)], vec![r(2), r(1), r(0)]]).unwrap();
        let oracle = solve_inverse(&classical).unwrap();
        let special = q_inverse_special(&g).unwrap();
        assert_eq!(evaluate(&special, &at1).unwrap(), oracle);
        let general = inverse_closed_form(&g).unwrap();
        assert_eq!(general, special);
        assert_eq!(evaluate(&general, &at1).unwrap(), oracle);
    }

    #[test]
    fn singular_inputs() {
        let bad = Matrix::from_rows(vec![vec![r(1), r(1)], vec![r(1), r(1)]]).unwrap();
        let g = validate_datum(2, vec![BlockDatum::new(vec![1, 2], r(1), bad)]).unwrap();
        assert_eq!(compute_parts(&g).unwrap_err(), Error::SingularBlock(0));
        let ok = Matrix::from_rows(vec![vec![r(1), r(2)], vec![r(2), r(1)]]).unwrap();
        let g = validate_datum(2, vec![BlockDatum::new(vec![1, 2], r(0), ok)]).unwrap();
        assert_eq!(compute_parts(&g).unwrap_err(), Error::NonInvertibleWeight(0));
    }
}
