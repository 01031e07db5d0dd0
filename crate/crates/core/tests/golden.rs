use std::collections::BTreeSet;

use amdist::builder::build_matrices;
use amdist::datafile::DatumFile;
use amdist::graph::GraphDatum;
use amdist::invariants::{invariants_direct, invariants_ghh, minor_det};
use amdist::matrix::Matrix;
use amdist::ring::{Rational, Ring};

const PATH4: &str = include_str!("../../cli/data/path4.json");

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn path4() -> GraphDatum<Rational> {
    serde_json::from_str::<DatumFile>(PATH4).unwrap().to_datum().unwrap()
}

/// Distances of the weighted path 1-2-3-4, written out by hand from
/// `d_uv = a (m_uv - 1)` on edges and `d_ij = d_iv + m_iv d_vj` across
/// the middle vertex.
fn path4_by_hand() -> Matrix<Rational> {
    Matrix::from_rows(vec![
        vec![r(0, 1), r(4, 1), r(-8, 1), r(13, 4)],
        vec![r(-1, 1), r(0, 1), r(-4, 1), r(-1, 4)],
        vec![r(5, 1), r(3, 1), r(0, 1), r(3, 4)],
        vec![r(79, 2), r(51, 2), r(9, 2), r(0, 1)],
    ])
    .unwrap()
}

fn leibniz(m: &Matrix<Rational>) -> Rational {
    let n = m.rows();
    let mut total = Rational::zero();
    let mut p: Vec<usize> = (0..n).collect();
    // Heap's algorithm, tracking parity through the swap count.
    let mut c = vec![0; n];
    let mut odd = false;
    let term = |p: &[usize]| p.iter().enumerate().fold(Rational::one(), |t, (i, &j)| t.mul(m.get(i, j)));
    total = total.add(&term(&p));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            odd = !odd;
            let t = term(&p);
            total = if odd { total.sub(&t) } else { total.add(&t) };
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

#[test]
fn path4_distance_matrix() {
    let am = build_matrices(&path4());
    assert_eq!(am.order, vec![1, 2, 3, 4]);
    assert_eq!(am.d, path4_by_hand());
}

#[test]
fn path4_invariants() {
    let d = path4_by_hand();
    let det = leibniz(&d);
    let cof = leibniz(&d.plus_constant(&Rational::one())).sub(&det);
    assert_eq!(det, r(4071, 8));
    assert_eq!(cof, r(-621, 4));

    let g = path4();
    let ghh = invariants_ghh(&g);
    assert_eq!(ghh.det, det);
    assert_eq!(ghh.cof, cof);
    assert_eq!(ghh.kappa, r(-429, 4));
    assert!(invariants_direct(&build_matrices(&g), &g).same_values(&ghh));
}

#[test]
fn path4_minor() {
    let d = path4_by_hand();
    let sub = d.select(&[1, 2, 3], &[0, 1, 2]);
    // Plain determinant of the submatrix, no cofactor sign.
    let brute = leibniz(&sub);
    assert_eq!(brute, r(-99, 2));
    let closed = minor_det(&path4(), &BTreeSet::from([1]), &BTreeSet::from([4]), &Rational::zero()).unwrap();
    assert_eq!(closed, brute);
}
