use absval::arith::finite::Fq;
use absval::arith::poly::{Poly, PolyRing};
use absval::arith::rational::{int, rat, Rational, Q};
use absval::arith::ring::{Field, Ring};
use absval::arith::{factor_finite_field, factor_over_extension, factor_rationals, poly_gcd, resultant, squarefree_part, AlgExt, RatFunc};
use absval::Error;
use proptest::prelude::*;

fn qp(c: &[i64]) -> Poly<Rational> {
    PolyRing::new(Q).from_ints(c)
}

/// Determinant by fraction-free Gaussian elimination over Q, written
/// independently of the library's Berkowitz routine.
fn oracle_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = int(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != int(0)) else { return int(0) };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let piv = m[k][k].clone();
        det *= &piv;
        for i in k + 1..n {
            let f = &m[i][k] / &piv;
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Sylvester matrix, highest coefficients first.
fn oracle_resultant(a: &Poly<Rational>, b: &Poly<Rational>) -> Rational {
    let m = a.c.len() - 1;
    let n = b.c.len() - 1;
    let mut s = vec![vec![int(0); m + n]; m + n];
    for i in 0..n {
        for (j, c) in a.c.iter().rev().enumerate() {
            s[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.c.iter().rev().enumerate() {
            s[n + i][i + j] = c.clone();
        }
    }
    oracle_det(s)
}

#[test]
fn gcd_examples() {
    let r = PolyRing::new(Q);
    assert_eq!(poly_gcd(&Q, &qp(&[-1, 0, 1]), &qp(&[-1, 1])), qp(&[-1, 1]));
    assert_eq!(poly_gcd(&Q, &qp(&[1, 0, 1]), &qp(&[-1, 0, 1])), r.one());
    assert_eq!(poly_gcd(&Q, &qp(&[-1, 0, 0, 0, 1]), &qp(&[-1, 0, 0, 0, 0, 0, 1])), qp(&[-1, 0, 1]));
    assert_eq!(poly_gcd(&Q, &qp(&[0, 2]), &Poly::zero()), qp(&[0, 1]));
}

#[test]
fn squarefree_examples() {
    // (x-1)^2 (x+2)
    let f = qp(&[2, -3, 0, 1]);
    assert_eq!(squarefree_part(&Q, &f).unwrap(), qp(&[-2, 1, 1]));

    let f5 = Fq::prime(5).unwrap();
    let r5 = PolyRing::new(f5.clone());
    let x5x = r5.from_ints(&[0, -1, 0, 0, 0, 1]);
    assert_eq!(squarefree_part(&f5, &x5x).unwrap(), x5x);

    let f2 = Fq::prime(2).unwrap();
    let kt = RatFunc::new(f2);
    let r = PolyRing::new(kt.clone());
    let f = r.from_coeffs(vec![kt.neg(&kt.t()), kt.zero(), kt.one()]);
    assert_eq!(squarefree_part(&kt, &f), Err(Error::Inseparable));
}

#[test]
fn resultant_examples() {
    assert_eq!(resultant(&Q, &qp(&[-2, 0, 1]), &qp(&[0, 1])), int(-2));
    assert_eq!(resultant(&Q, &qp(&[1, 0, 1]), &qp(&[-1, 0, 1])), int(4));
    assert_eq!(oracle_resultant(&qp(&[-2, 0, 1]), &qp(&[0, 1])), int(-2));
    assert_eq!(oracle_resultant(&qp(&[1, 0, 1]), &qp(&[-1, 0, 1])), int(4));
    let (a, b) = (rat(3, 2), rat(-7, 5));
    let r = PolyRing::new(Q);
    assert_eq!(resultant(&Q, &r.linear(&a), &r.linear(&b)), &a - &b);
}

#[test]
fn finite_field_examples() {
    let f5 = Fq::prime(5).unwrap();
    let r5 = PolyRing::new(f5.clone());
    let facs = factor_finite_field(&f5, &r5.from_ints(&[1, 0, 1]));
    assert_eq!(facs, vec![(r5.from_ints(&[-3, 1]), 1), (r5.from_ints(&[-2, 1]), 1)]);

    let f7 = Fq::prime(7).unwrap();
    let r7 = PolyRing::new(f7.clone());
    assert_eq!(factor_finite_field(&f7, &r7.from_ints(&[1, 0, 1])), vec![(r7.from_ints(&[1, 0, 1]), 1)]);

    let f3 = Fq::prime(3).unwrap();
    let r3 = PolyRing::new(f3.clone());
    assert_eq!(factor_finite_field(&f3, &r3.from_ints(&[0, 0, 1])), vec![(r3.from_ints(&[0, 1]), 2)]);
}

#[test]
fn extension_field_factoring() {
    // x^4 - 1 over F_9 splits completely.
    let f9 = Fq::with_degree(3, 2).unwrap();
    let r9 = PolyRing::new(f9.clone());
    let facs = factor_finite_field(&f9, &r9.from_ints(&[-1, 0, 0, 0, 1]));
    assert_eq!(facs.len(), 4);
    assert!(facs.iter().all(|(g, m)| g.deg() == Some(1) && *m == 1));
    // x^2 + 1 over F_4: (x + 1)^2.
    let f4 = Fq::with_degree(2, 2).unwrap();
    let r4 = PolyRing::new(f4.clone());
    assert_eq!(factor_finite_field(&f4, &r4.from_ints(&[1, 0, 1])), vec![(r4.from_ints(&[1, 1]), 2)]);
}

#[test]
fn rational_examples() {
    let mut facs = factor_rationals(&qp(&[-1, 0, 0, 0, 1])).unwrap();
    facs.sort_by_key(|p| p.c.len());
    assert_eq!(facs.len(), 3);
    assert!(facs.contains(&qp(&[-1, 1])) && facs.contains(&qp(&[1, 1])) && facs.contains(&qp(&[1, 0, 1])));
    assert_eq!(factor_rationals(&qp(&[-2, 0, 1])).unwrap(), vec![qp(&[-2, 0, 1])]);
    // Sophie Germain: x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2), checked by expansion.
    let r = PolyRing::new(Q);
    assert_eq!(r.mul(&qp(&[2, -2, 1]), &qp(&[2, 2, 1])), qp(&[4, 0, 0, 0, 1]));
    let facs = factor_rationals(&qp(&[4, 0, 0, 0, 1])).unwrap();
    assert_eq!(facs.len(), 2);
    assert!(facs.contains(&qp(&[2, -2, 1])) && facs.contains(&qp(&[2, 2, 1])));
    // Non-monic input.
    let facs = factor_rationals(&qp(&[-3, 5, 2])).unwrap();
    assert_eq!(facs.len(), 2);
    assert!(facs.contains(&r.from_coeffs(vec![rat(-1, 2), int(1)])) && facs.contains(&qp(&[3, 1])));
    assert!(matches!(factor_rationals(&qp(&[1; 14])), Err(Error::DegreeLimit(13, 12))));
}

#[test]
fn extension_examples() {
    let sqrt2 = AlgExt::new(Q, qp(&[-2, 0, 1]), "y");
    let facs = factor_over_extension(&qp(&[-2, 0, 1]), &sqrt2).unwrap();
    assert_eq!(facs.len(), 2);
    assert!(facs.iter().all(|g| g.deg() == Some(1)));
    let facs = factor_over_extension(&qp(&[-3, 0, 1]), &sqrt2).unwrap();
    assert_eq!(facs.len(), 1);

    let cbrt2 = AlgExt::new(Q, qp(&[-2, 0, 0, 1]), "y");
    let mr = PolyRing::new(cbrt2.clone());
    let y = cbrt2.generator();
    let y2 = cbrt2.mul(&y, &y);
    let facs = factor_over_extension(&qp(&[-2, 0, 0, 1]), &cbrt2).unwrap();
    let lin = mr.from_coeffs(vec![cbrt2.neg(&y), cbrt2.one()]);
    let quad = mr.from_coeffs(vec![y2, y.clone(), cbrt2.one()]);
    assert_eq!(facs.len(), 2);
    assert!(facs.contains(&lin));
    assert!(facs.contains(&quad));
}

#[test]
fn bivariate_factoring() {
    for k in [Fq::prime(7).unwrap(), Fq::prime(13).unwrap()] {
        let kt = RatFunc::new(k.clone());
        let r = PolyRing::new(kt.clone());
        let t = kt.t();
        // x^4 - t^2 = (x^2 - t)(x^2 + t)
        let f = r.from_coeffs(vec![kt.neg(&kt.mul(&t, &t)), kt.zero(), kt.zero(), kt.zero(), kt.one()]);
        let facs = kt_factor(&kt, &f);
        assert_eq!(facs.len(), 2);
        let prod = facs.iter().fold(r.one(), |a, b| r.mul(&a, b));
        assert_eq!(prod, f);
    }
    let kt = RatFunc::new(Q);
    let r = PolyRing::new(kt.clone());
    let t = kt.t();
    // x^2 - t is irreducible; x^2 - t^2 (t + 1)^2 splits.
    let f = r.from_coeffs(vec![kt.neg(&t), kt.zero(), kt.one()]);
    assert_eq!(kt_factor(&kt, &f).len(), 1);
    let s = kt.mul(&t, &kt.add(&t, &kt.one()));
    let g = r.from_coeffs(vec![kt.neg(&kt.mul(&s, &s)), kt.zero(), kt.one()]);
    assert_eq!(kt_factor(&kt, &g).len(), 2);
}

fn kt_factor<K: absval::arith::Factorable>(kt: &RatFunc<K>, f: &Poly<<RatFunc<K> as Ring>::Elem>) -> Vec<Poly<<RatFunc<K> as Ring>::Elem>> {
    use absval::arith::Factorable;
    kt.factor_squarefree(f).unwrap()
}

fn small_poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_both(a in small_poly(), b in small_poly()) {
        let r = PolyRing::new(Q);
        let (a, b) = (qp(&a), qp(&b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = poly_gcd(&Q, &a, &b);
        prop_assert!(r.rem(&a, &g).is_zero());
        prop_assert!(r.rem(&b, &g).is_zero());
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(a in small_poly(), b in small_poly()) {
        let (a, b) = (qp(&a), qp(&b));
        prop_assume!(a.deg().unwrap_or(0) > 0 && b.deg().unwrap_or(0) > 0);
        let g = poly_gcd(&Q, &a, &b);
        let res = resultant(&Q, &a, &b);
        prop_assert_eq!(res == int(0), g.deg().unwrap() > 0);
        prop_assert_eq!(res, oracle_resultant(&a, &b));
    }

    #[test]
    fn rational_factors_reconstruct(c in prop::collection::vec(-20i64..=20, 3..7)) {
        let r = PolyRing::new(Q);
        let f = qp(&c);
        prop_assume!(f.deg().unwrap_or(0) >= 2);
        let f = squarefree_part(&Q, &f).unwrap();
        let facs = factor_rationals(&f).unwrap();
        let prod = facs.iter().fold(r.one(), |a, b| r.mul(&a, b));
        prop_assert_eq!(prod, r.monic(&f));
        // Same factors when the extension is trivial.
        let trivial = AlgExt::new(Q, qp(&[0, 1]), "y");
        let ext = factor_over_extension(&f, &trivial).unwrap();
        prop_assert_eq!(ext.len(), facs.len());
        for g in &ext {
            let down = r.from_coeffs(g.c.iter().map(|c| r.coeff_or_zero(c, 0)).collect());
            prop_assert!(facs.contains(&down));
        }
    }

    #[test]
    fn finite_field_factors_reconstruct(c in prop::collection::vec(0i64..7, 2..10), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let fp = Fq::prime(p).unwrap();
        let r = PolyRing::new(fp.clone());
        let f = r.from_ints(&c);
        prop_assume!(f.deg().unwrap_or(0) >= 1);
        let facs = factor_finite_field(&fp, &f);
        let prod = facs.iter().fold(r.one(), |a, (g, m)| r.mul(&a, &r.pow(g, *m as u64)));
        prop_assert_eq!(prod, r.monic(&f));
        for (g, _) in &facs {
            prop_assert!(absval::arith::factor::is_irreducible_ff(&fp, g));
        }
    }
}

#[test]
fn squarefree_over_rational_functions() {
    use absval::arith::Factorable;
    let kt = RatFunc::new(Q);
    let r = PolyRing::new(kt.clone());
    let t = kt.t();
    let x_minus = |a: &<RatFunc<Q> as Ring>::Elem| r.from_coeffs(vec![kt.neg(a), kt.one()]);
    let t2 = kt.mul(&t, &t);
    // (x - t)(x - t²) collides at t = 0 and t = 1 only.
    let f = r.mul(&x_minus(&t), &x_minus(&t2));
    assert!(kt.is_squarefree_poly(&f));
    assert!(!kt.is_squarefree_poly(&r.mul(&f, &x_minus(&t))));
    // Denominators in t.
    let inv = kt.inv(&kt.add(&t, &kt.one())).unwrap();
    let g = r.mul(&x_minus(&inv), &x_minus(&t));
    assert!(kt.is_squarefree_poly(&g));
    assert!(!kt.is_squarefree_poly(&r.mul(&g, &x_minus(&inv))));
    for rows in [vec![vec![0i64, -1], vec![], vec![1]], vec![vec![0, 0, -1], vec![0, 2], vec![1]]] {
        let p = r.from_coeffs(rows.iter().map(|c| kt.from_poly(PolyRing::new(Q).from_ints(c))).collect());
        assert_eq!(kt.is_squarefree_poly(&p), r.is_squarefree(&p));
    }
}
