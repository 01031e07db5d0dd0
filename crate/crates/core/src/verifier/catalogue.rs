//! The identities under test, each as a list of `(lhs, rhs)` pairs that must
//! agree exactly.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::sample::{DatumKind, Sample};
use crate::builder::{build_q_datum, QBlock};
use crate::error::{Error, Result};
use crate::graph::{classify_minor, GraphDatum};
use crate::hypertree::{clique_det_cof, hypertree_invariants, hypertree_inverse_parts, hypertree_q, pendant_clique_det};
use crate::invariants::{
    block_invariants, bordered_det, classical_ghh_check, invariants_ghh, kappa_of, minor_det, minor_det_direct,
    minor_kappa, minor_kappa_direct, tree_master, GhhFlavor, GhhReport,
};
use crate::inverse::{compute_parts, dstar_inverse_assembled, inverse_closed_form, inverse_via_laplacian, InverseParts};
use crate::matrix::{det_and_cof, exact_det, Matrix};
use crate::ring::{product, sum, RatFunc, Rational, Ring, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    KappaClosedForm,
    KappaProduct,
    DetRatioSum,
    CofRatioSum,
    CofMultiplicative,
    GhhDetSum,
    GhhCofSum,
    GhhMultiplicative,
    GhhQ,
    GhhClassical,
    TreeMaster,
    MinorDet,
    MinorKappa,
    BorderedKappa,
    InverseClosedForm,
    TauSums,
    CColumnSums,
    LaplacianRelation,
    CliqueDetCof,
    HypertreeInvariants,
    HypertreeQ,
    HypertreeInverse,
    PendantCliques,
}

use Identity::*;

impl Identity {
    pub const ALL: [Identity; 23] = [
        KappaClosedForm,
        KappaProduct,
        DetRatioSum,
        CofRatioSum,
        CofMultiplicative,
        GhhDetSum,
        GhhCofSum,
        GhhMultiplicative,
        GhhQ,
        GhhClassical,
        TreeMaster,
        MinorDet,
        MinorKappa,
        BorderedKappa,
        InverseClosedForm,
        TauSums,
        CColumnSums,
        LaplacianRelation,
        CliqueDetCof,
        HypertreeInvariants,
        HypertreeQ,
        HypertreeInverse,
        PendantCliques,
    ];

    /// The block-level identities for `det`, `cof` and `κ`.
    pub const MASTER: [Identity; 7] =
        [KappaClosedForm, KappaProduct, DetRatioSum, CofRatioSum, CofMultiplicative, GhhDetSum, GhhCofSum];

    pub fn id(self) -> &'static str {
        match self {
            KappaClosedForm => "kappa-closed-form",
            KappaProduct => "kappa-product",
            DetRatioSum => "det-ratio-sum",
            CofRatioSum => "cof-ratio-sum",
            CofMultiplicative => "cof-multiplicative",
            GhhDetSum => "ghh-det-sum",
            GhhCofSum => "ghh-cof-sum",
            GhhMultiplicative => "ghh-multiplicative",
            GhhQ => "ghh-q",
            GhhClassical => "ghh-classical",
            TreeMaster => "tree-master",
            MinorDet => "minor-det",
            MinorKappa => "minor-kappa",
            BorderedKappa => "bordered-kappa",
            InverseClosedForm => "inverse-closed-form",
            TauSums => "tau-sums",
            CColumnSums => "c-column-sums",
            LaplacianRelation => "laplacian-relation",
            CliqueDetCof => "clique-det-cof",
            HypertreeInvariants => "hypertree-invariants",
            HypertreeQ => "hypertree-q",
            HypertreeInverse => "hypertree-inverse",
            PendantCliques => "pendant-cliques",
        }
    }

    pub fn from_id(s: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|i| i.id() == s)
    }

    pub fn statement(self) -> &'static str {
        match self {
            KappaClosedForm => "κ(D, v0) = det(D*) Π a_e^(p_e-1) for every v0",
            KappaProduct => "det(D*) Π a_e^(p_e-1) = Π κ(D_e)",
            DetRatioSum => "det(D)/κ(D) = Σ det(D_e)/κ(D_e)",
            CofRatioSum => "cof(D)/κ(D) - 1 = Σ (cof(D_e)/κ(D_e) - 1)",
            CofMultiplicative => "cof(D) = cof(D*) Π a_e^(p_e-1) and cof(D) det(D*) = cof(D*) κ(D)",
            GhhDetSum => "det(D) = Σ det(D_e) Π_{f≠e} κ(D_f)",
            GhhCofSum => "cof(D) = κ(D) + Σ (cof(D_e) - κ(D_e)) Π_{f≠e} κ(D_f)",
            GhhMultiplicative => "det and cof of D*_G from the blocks",
            GhhQ => "det and cof of D_q(G) from the blocks",
            GhhClassical => "det and cof of the classical D_G from the blocks at q = 1",
            TreeMaster => "det(D_T + xJ) from per-edge data",
            MinorDet => "det((D + xJ)_{I|J}) closed form, |I|, |J| ≤ 2",
            MinorKappa => "κ(D_{I|J}, v0) = Π_{E°} κ(D_e) if I = J, else 0",
            BorderedKappa => "det [[m(V, v), D + xJ], [0, e^T]] = (-1)^(|V|-1) κ(D)",
            InverseClosedForm => "D ((κ/det) τ_out τ_in^T + C (D*)^-1) = Id, both sides; assembled (D*)^-1",
            TauSums => "det(D*) τ_in^T e = det(D*) e^T τ_out = cof(D*)",
            CColumnSums => "det(D) e^T C = (κ - cof) e^T",
            LaplacianRelation => "C = (-L + C diag(τ_in)) D*; Laplacian form of the inverse",
            CliqueDetCof => "det and cof of a clique block",
            HypertreeInvariants => "hypertree det, cof, κ closed forms",
            HypertreeQ => "q-hypertree κ and det(D + xJ)",
            HypertreeInverse => "hypertree inverse parts",
            PendantCliques => "det(D + xJ) with cliques on constant-row-sum blocks",
        }
    }

    pub fn kind(self) -> DatumKind {
        match self {
            GhhMultiplicative => DatumKind::Multiplicative,
            GhhQ | GhhClassical => DatumKind::QGraph,
            TreeMaster => DatumKind::Tree,
            CliqueDetCof | HypertreeInvariants | HypertreeInverse => DatumKind::Hypertree,
            HypertreeQ => DatumKind::QHypertree,
            PendantCliques => DatumKind::CycleClique,
            _ => DatumKind::General,
        }
    }

    /// Quantities that must be nonzero at a sample point; draws where one
    /// vanishes are rejected.
    pub fn denominators(self) -> &'static [&'static str] {
        match self {
            DetRatioSum | CofRatioSum => &["κ(D)", "κ(D_e)"],
            GhhQ => &["q - 1"],
            HypertreeQ => &["q - 1"],
            InverseClosedForm | TauSums | CColumnSums | LaplacianRelation => {
                &["a_e", "det(D*_e)", "det(D)"]
            }
            HypertreeInverse => &["a_e", "det(D*_e)", "det(D)"],
            _ => &[],
        }
    }

    /// Whether the identity is stated without placeholder denominators.
    pub fn cleared(self) -> bool {
        !matches!(self, DetRatioSum | CofRatioSum)
    }
}

/// Caps on the work an evaluation does.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Largest `|I|` and `|J|` for minors.
    pub minor_size: usize,
}

type Pairs<S> = Vec<(S, S)>;

fn inv_or_degenerate<S: Scalar>(x: &S) -> Result<S> {
    x.inv().ok_or(Error::DenominatorVanishes)
}

fn weight_power<S: Scalar>(g: &GraphDatum<S>) -> S {
    product(&g.blocks().iter().map(|b| b.a.pow(b.size() as u32 - 1)).collect::<Vec<_>>())
}

fn report_pairs<S: Scalar>(r: &GhhReport) -> Result<Pairs<S>> {
    r.checks.iter().map(|c| Ok((S::parse(&c.lhs)?, S::parse(&c.rhs)?))).collect()
}

fn matrix_pairs<S: Scalar>(lhs: &Matrix<S>, rhs: &Matrix<S>, out: &mut Pairs<S>) {
    out.extend(lhs.entries().iter().cloned().zip(rhs.entries().iter().cloned()));
}

fn parts_pairs<S: Scalar>(a: &InverseParts<S>, b: &InverseParts<S>) -> Pairs<S> {
    let mut out = vec![(a.det.clone(), b.det.clone()), (a.kappa.clone(), b.kappa.clone())];
    if let (Some(x), Some(y)) = (&a.alpha, &b.alpha) {
        out.push((x.clone(), y.clone()));
    }
    for (x, y) in [(&a.tau_in, &b.tau_in), (&a.tau_out, &b.tau_out), (&a.beta, &b.beta)] {
        out.extend(x.iter().cloned().zip(y.iter().cloned()));
    }
    matrix_pairs(&a.c_matrix, &b.c_matrix, &mut out);
    matrix_pairs(&a.laplacian, &b.laplacian, &mut out);
    matrix_pairs(&a.dstar_inv, &b.dstar_inv, &mut out);
    out
}

fn subsets(vs: &[usize], max: usize) -> Vec<BTreeSet<usize>> {
    let mut out = vec![BTreeSet::new()];
    for k in 1..=max.min(vs.len()) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.iter().map(|&i| vs[i]).collect());
            let Some(pos) = (0..k).rev().find(|&p| idx[p] < vs.len() - k + p) else { break };
            idx[pos] += 1;
            for q in pos + 1..k {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    out
}

/// Admissible `(I, J)` pairs with `|I|, |J| ≤ max`.
pub fn admissible_minors<S: Scalar>(g: &GraphDatum<S>, max: usize) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
    let subs = subsets(g.vertices(), max);
    let mut out = Vec::new();
    for i in &subs {
        for j in subs.iter().filter(|j| j.len() == i.len()) {
            if classify_minor(g, i, j).is_admissible() {
                out.push((i.clone(), j.clone()));
            }
        }
    }
    out
}

/// Classical `D_G` identities need the indeterminate `q`, so they are always
/// evaluated over rational functions and the values brought back to `S`.
fn classical_pairs<S: Scalar>(s: &Sample<S>) -> Result<Pairs<S>> {
    let blocks: Vec<QBlock<RatFunc>> =
        s.exponents.iter().map(|b| QBlock { vertices: b.vertices.clone(), alpha: b.alpha.clone(), w: RatFunc::one() }).collect();
    let g = build_q_datum(s.datum.n(), &blocks, &RatFunc::var("q"))?;
    let report = classical_ghh_check(&g, &GhhFlavor::Classical)?;
    let pairs: Pairs<Rational> = report_pairs(&report)?;
    Ok(pairs.iter().map(|(l, r)| (S::from_rational(l), S::from_rational(r))).collect())
}

/// Both sides of every equality the identity asserts on this sample.
pub fn evaluate<S: Scalar>(id: Identity, s: &Sample<S>, limits: Limits) -> Result<Pairs<S>> {
    let g = &s.datum;
    let x = &s.x;
    match id {
        KappaClosedForm => {
            let d = s.direct()?;
            let rhs = d.dstar_det.mul(&weight_power(g));
            g.vertices().iter().map(|&v| Ok((kappa_of(&d.am, v)?, rhs.clone()))).collect()
        }
        KappaProduct => {
            let d = s.direct()?;
            let ks: Vec<S> = g.blocks().iter().map(|b| block_invariants(b).kappa).collect();
            Ok(vec![(d.dstar_det.mul(&weight_power(g)), product(&ks))])
        }
        DetRatioSum | CofRatioSum => {
            let d = s.direct()?;
            let k_inv = inv_or_degenerate(&d.kappa)?;
            let mut rhs = S::zero();
            for b in g.blocks() {
                let bi = block_invariants(b);
                let ki = inv_or_degenerate(&bi.kappa)?;
                rhs = rhs.add(&if id == DetRatioSum { bi.det.mul(&ki) } else { bi.cof.mul(&ki).sub(&S::one()) });
            }
            let lhs = if id == DetRatioSum { d.det.mul(&k_inv) } else { d.cof.mul(&k_inv).sub(&S::one()) };
            Ok(vec![(lhs, rhs)])
        }
        CofMultiplicative => {
            let d = s.direct()?;
            Ok(vec![
                (d.cof.clone(), d.dstar_cof.mul(&weight_power(g))),
                (d.cof.mul(&d.dstar_det), d.dstar_cof.mul(&d.kappa)),
            ])
        }
        GhhDetSum => Ok(vec![(s.direct()?.det.clone(), invariants_ghh(g).det)]),
        GhhCofSum => Ok(vec![(s.direct()?.cof.clone(), invariants_ghh(g).cof)]),
        GhhMultiplicative => report_pairs(&classical_ghh_check(g, &GhhFlavor::Multiplicative)?),
        GhhQ => {
            let q = s.q.clone().ok_or_else(|| Error::WrongSpecialization("sample has no q".into()))?;
            report_pairs(&classical_ghh_check(g, &GhhFlavor::Q(q))?)
        }
        GhhClassical => classical_pairs(s),
        TreeMaster => {
            let d = s.direct()?;
            Ok(vec![(exact_det(&d.am.d.plus_constant(x))?, tree_master(g, x)?)])
        }
        MinorDet => {
            let d = s.direct()?;
            admissible_minors(g, limits.minor_size)
                .iter()
                .map(|(i, j)| Ok((minor_det(g, i, j, x)?, minor_det_direct(&d.am, i, j, x)?)))
                .collect()
        }
        MinorKappa => {
            let d = s.direct()?;
            let mut out = Vec::new();
            for (i, j) in admissible_minors(g, limits.minor_size) {
                for &v0 in g.vertices().iter().filter(|v| !i.contains(v) && !j.contains(v)) {
                    out.push((minor_kappa(g, &i, &j, v0)?, minor_kappa_direct(&d.am, &i, &j, v0)?));
                }
            }
            Ok(out)
        }
        BorderedKappa => {
            let d = s.direct()?;
            let k = if g.n() % 2 == 1 { invariants_ghh(g).kappa } else { invariants_ghh(g).kappa.neg() };
            g.vertices().iter().map(|&v| Ok((bordered_det(&d.am, v, x)?, k.clone()))).collect()
        }
        InverseClosedForm => {
            let d = s.direct()?;
            let inv = inverse_closed_form(g)?;
            let id = Matrix::identity(g.n());
            let mut out = Vec::new();
            matrix_pairs(&d.am.d.matmul(&inv)?, &id, &mut out);
            matrix_pairs(&inv.matmul(&d.am.d)?, &id, &mut out);
            matrix_pairs(&dstar_inverse_assembled(g)?.matmul(&d.am.dstar)?, &id, &mut out);
            Ok(out)
        }
        TauSums => {
            let d = s.direct()?;
            let p = compute_parts(g)?;
            Ok(vec![
                (d.dstar_det.mul(&sum(&p.tau_in)), d.dstar_cof.clone()),
                (d.dstar_det.mul(&sum(&p.tau_out)), d.dstar_cof.clone()),
            ])
        }
        CColumnSums => {
            let d = s.direct()?;
            let p = compute_parts(g)?;
            let excess = d.kappa.sub(&d.cof);
            Ok(p.c_matrix.col_sums().iter().map(|c| (d.det.mul(c), excess.clone())).collect())
        }
        LaplacianRelation => {
            let d = s.direct()?;
            let p = compute_parts(g)?;
            let core = p.c_matrix.matmul(&Matrix::diagonal(&p.tau_in))?.sub(&p.laplacian)?;
            let mut out = Vec::new();
            matrix_pairs(&p.c_matrix, &core.matmul(&d.am.dstar)?, &mut out);
            matrix_pairs(&inverse_via_laplacian(g)?, &inverse_closed_form(g)?, &mut out);
            out.extend(p.laplacian.col_sums().into_iter().map(|c| (c, S::zero())));
            let hits = Matrix::column(&p.tau_in).transpose().matmul(&d.am.dstar)?;
            out.extend(hits.entries().iter().map(|h| (h.clone(), S::one())));
            Ok(out)
        }
        CliqueDetCof => {
            let mut out = Vec::new();
            for c in &s.cliques {
                let (det, cof) = clique_det_cof(c);
                let (bd, bc) = det_and_cof(&c.dstar())?;
                out.push((det, bd));
                out.push((cof, bc));
            }
            Ok(out)
        }
        HypertreeInvariants => {
            let d = s.direct()?;
            let t = hypertree_invariants(g.n(), &s.cliques)?;
            Ok(vec![(t.det, d.det.clone()), (t.cof, d.cof.clone()), (t.kappa, d.kappa.clone())])
        }
        HypertreeQ => {
            let d = s.direct()?;
            let q = s.q.clone().ok_or_else(|| Error::WrongSpecialization("sample has no q".into()))?;
            let (kappa, det) = hypertree_q(&s.weights, &q, x);
            Ok(vec![(kappa, d.kappa.clone()), (det, exact_det(&d.am.d.plus_constant(x))?)])
        }
        HypertreeInverse => Ok(parts_pairs(&hypertree_inverse_parts(g.n(), &s.cliques)?, &compute_parts(g)?)),
        PendantCliques => {
            let d = s.direct()?;
            Ok(vec![(pendant_clique_det(g.n(), &s.core, &s.cliques, x)?, exact_det(&d.am.d.plus_constant(x))?)])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in Identity::ALL {
            assert_eq!(Identity::from_id(id.id()), Some(id));
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{}\"", id.id()));
        }
        let distinct: BTreeSet<&str> = Identity::ALL.iter().map(|i| i.id()).collect();
        assert_eq!(distinct.len(), Identity::ALL.len());
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(&[1, 2, 3, 4], 2).len(), 1 + 4 + 6);
        assert_eq!(subsets(&[1, 2], 2).len(), 4);
    }
}
