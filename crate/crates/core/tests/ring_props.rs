use amdist::matrix::{adjugate, cof_sum, det_and_cof, det_bareiss, det_laplace, exact_det, solve_inverse, Matrix};
use amdist::ring::{Point, RatFunc, Rational, Ring, Scalar, SparsePoly, Var};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

/// Small polynomials in `a, b, c` with rational coefficients.
fn poly() -> impl Strategy<Value = RatFunc> {
    prop::collection::vec((rational(), 0u32..3, 0u32..3, 0u32..2), 1..5).prop_map(|terms| {
        let v = |s: &str| RatFunc::var(s);
        terms.iter().fold(RatFunc::zero(), |acc, (c, i, j, k)| {
            acc.add(&RatFunc::from_rational(c).mul(&v("a").pow(*i)).mul(&v("b").pow(*j)).mul(&v("c").pow(*k)))
        })
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| n.div(&d))
}

fn point() -> impl Strategy<Value = Point> {
    (rational(), rational(), rational()).prop_map(|(a, b, c)| {
        Point::from([(Var::new("a"), a), (Var::new("b"), b), (Var::new("c"), c)])
    })
}

fn square(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(rational(), n * n).prop_map(move |xs| Matrix::new(n, n, xs).unwrap())
}

/// Leibniz expansion, used as the determinant oracle.
fn leibniz(m: &Matrix<Rational>) -> Rational {
    fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
        if n == 0 {
            return vec![(vec![], false)];
        }
        let mut out = Vec::new();
        for (p, odd) in perms(n - 1) {
            for k in 0..n {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push((q, odd ^ ((n - 1 - k) % 2 == 1)));
            }
        }
        out
    }
    perms(m.rows()).into_iter().fold(Rational::zero(), |acc, (p, odd)| {
        let t = p.iter().enumerate().fold(Rational::one(), |t, (i, &j)| t.mul(m.get(i, j)));
        if odd {
            acc.sub(&t)
        } else {
            acc.add(&t)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_field_laws(x in ratfunc(), y in ratfunc(), z in ratfunc()) {
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        if let Some(q) = x.div(&y) {
            prop_assert_eq!(q.mul(&y), x.clone());
        }
        if let Some(i) = x.inv() {
            prop_assert!(i.mul(&x).is_one());
        }
    }

    #[test]
    fn ratfunc_display_round_trips(x in ratfunc()) {
        let back = RatFunc::parse(&x.to_string()).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), x.to_string());
    }

    #[test]
    fn reduction_preserves_value(x in ratfunc(), p in point()) {
        let r = x.reduced();
        prop_assert_eq!(&r, &x);
        if let Ok(v) = x.evaluate(&p) {
            prop_assert_eq!(r.evaluate(&p).unwrap(), v);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in ratfunc(), y in ratfunc(), p in point()) {
        if let (Ok(a), Ok(b)) = (x.evaluate(&p), y.evaluate(&p)) {
            prop_assert_eq!(x.add(&y).evaluate(&p).unwrap(), a.add(&b));
            prop_assert_eq!(x.mul(&y).evaluate(&p).unwrap(), a.mul(&b));
        }
    }

    #[test]
    fn rational_display_round_trips(q in rational()) {
        prop_assert_eq!(Rational::parse(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn determinants_agree(m in (1usize..6).prop_flat_map(square)) {
        let l = leibniz(&m);
        prop_assert_eq!(exact_det(&m).unwrap(), l.clone());
        prop_assert_eq!(det_bareiss(&m), l.clone());
        prop_assert_eq!(det_laplace(&m), l);
    }

    #[test]
    fn det_plus_constant_is_affine(m in (1usize..6).prop_flat_map(square), c in rational()) {
        let (d, cof) = det_and_cof(&m).unwrap();
        prop_assert_eq!(exact_det(&m.plus_constant(&c)).unwrap(), d.add(&c.mul(&cof)));
        prop_assert_eq!(cof_sum(&m).unwrap(), cof);
    }

    #[test]
    fn adjugate_and_inverse(m in (1usize..6).prop_flat_map(square)) {
        let d = exact_det(&m).unwrap();
        let adj = adjugate(&m).unwrap();
        let n = m.rows();
        prop_assert_eq!(m.matmul(&adj).unwrap(), Matrix::<Rational>::identity(n).scale(&d));
        match solve_inverse(&m) {
            Ok(inv) => prop_assert_eq!(inv.scale(&d), adj),
            Err(_) => prop_assert!(d.is_zero()),
        }
    }

    #[test]
    fn det_is_multiplicative(a in square(3), b in square(3)) {
        let ab = a.matmul(&b).unwrap();
        prop_assert_eq!(exact_det(&ab).unwrap(), exact_det(&a).unwrap().mul(&exact_det(&b).unwrap()));
    }

    #[test]
    fn symbolic_det_specializes(xs in prop::collection::vec(poly(), 9), p in point()) {
        let m = Matrix::new(3, 3, xs).unwrap();
        let (d, c) = det_and_cof(&m).unwrap();
        let at = m.try_map(|x| x.evaluate(&p)).unwrap();
        let (dv, cv) = det_and_cof(&at).unwrap();
        prop_assert_eq!(d.evaluate(&p).unwrap(), dv);
        prop_assert_eq!(c.evaluate(&p).unwrap(), cv);
    }
}

#[test]
fn polynomial_gcd_cancels_shared_factor() {
    let p = |s: &str| RatFunc::parse(s).unwrap();
    let x = p("(a^2 - b^2)*(c + 1)").div(&p("(a - b)*(c^2 - 1)")).unwrap().reduced();
    assert_eq!(x.denom(), SparsePoly::var(Var::new("c")).add(&SparsePoly::from_i64(-1)));
}
