use absval::abhyankar::Verdict;
use absval::arith::factor::Factorable;
use absval::arith::finite::Fq;
use absval::arith::poly::PolyRing;
use absval::arith::ratfunc::RatFunc;
use absval::arith::rational::Q;
use absval::fiberprod::*;
use absval::local::completion::{Center, Laurent};
use absval::places::PlaceOptions;
use absval::Error;
use proptest::prelude::*;

fn cover<K: Factorable>(k: &K, rows: &[&[i64]]) -> Result<Cover<K>, Error> {
    let kt = RatFunc::new(k.clone());
    let kp = PolyRing::new(k.clone());
    let f = PolyRing::new(kt.clone()).from_coeffs(rows.iter().map(|r| kt.from_poly(kp.from_ints(r))).collect());
    Cover::new(k, f, "C")
}

fn origin<K: Factorable>(k: &K) -> Laurent<K> {
    Laurent::new(k.clone(), Center::Finite(k.zero()))
}

/// `x^a = t^b · u(t)`.
fn monomial<K: Factorable>(k: &K, a: usize, b: usize, u: &[i64]) -> Cover<K> {
    let mut c0 = vec![0i64; b];
    c0.extend(u.iter().map(|x| -x));
    let mut rows: Vec<&[i64]> = vec![&c0];
    rows.extend(std::iter::repeat(&[][..]).take(a - 1));
    rows.push(&[1]);
    cover(k, &rows).unwrap()
}

fn count<K: Factorable>(c1: &Cover<K>, c2: &Cover<K>, s: &Laurent<K>, i1: usize, i2: usize) -> Result<(FiberCountReport, usize), Error> {
    let (r, p1, p2) = fiber_count_indexed(c1, c2, s, i1, i2, &PlaceOptions::default())?;
    let oracle = branch_count_oracle(&p1, &p2, None)?;
    Ok((r, oracle))
}

#[test]
fn cusp() {
    let (r, oracle) = count(&monomial(&Q, 2, 1, &[1]), &monomial(&Q, 3, 1, &[1]), &origin(&Q), 0, 0).unwrap();
    assert_eq!((r.e1, r.e2), (2, 3));
    assert_eq!(r.total(), 1);
    assert_eq!(r.sum_e(), 6);
    assert_eq!(oracle, 1);
    assert_eq!(verify_sum_e(&r), Verdict::Pass);
    assert_eq!(verify_gcd_count(&r).unwrap(), Verdict::Pass);
}

#[test]
fn common_ramification() {
    // x² = t and y⁴ = t: the fibered product is two branches y² = ±x.
    let (r, oracle) = count(&monomial(&Q, 2, 1, &[1]), &monomial(&Q, 4, 1, &[1]), &origin(&Q), 0, 0).unwrap();
    assert_eq!((r.total(), r.sum_e(), oracle), (2, 8, 2));
    // At infinity the same covers are still totally ramified.
    let (r, _) = count(&monomial(&Q, 2, 1, &[1]), &monomial(&Q, 3, 1, &[1]), &Laurent::new(Q, Center::Infinity), 0, 0).unwrap();
    assert_eq!((r.e1, r.e2, r.total()), (2, 3, 1));
}

#[test]
fn unramified_places_of_a_node() {
    // x² = t²(1 + t) has two places over t = 0, both unramified.
    let node = monomial(&Q, 2, 2, &[1, 1]);
    let places = cover_places_over(&node, &origin(&Q), &PlaceOptions::default()).unwrap();
    assert_eq!(places.places.iter().map(|p| (p.e, p.f)).collect::<Vec<_>>(), vec![(1, 1), (1, 1)]);
    let x2 = monomial(&Q, 2, 1, &[1]);
    for i in 0..2 {
        let (r, oracle) = count(&node, &x2, &origin(&Q), i, 0).unwrap();
        assert_eq!((r.total(), r.sum_e(), oracle), (1, 2, 1));
    }
}

#[test]
fn residue_degree_obstruction_over_f7() {
    // The unit ratio 2 is not a cube in F7.
    let f7 = Fq::prime(7).unwrap();
    let c1 = monomial(&f7, 3, 1, &[1, 3]);
    let c2 = monomial(&f7, 6, 1, &[2, 0, -1]);
    let err = fiber_count_indexed(&c1, &c2, &origin(&f7), 0, 0, &PlaceOptions::default()).unwrap_err();
    assert!(matches!(err, Error::ResidueDegreeObstruction { found: 3, .. }), "{err:?}");
}

#[test]
fn over_f13_with_roots_of_unity() {
    let f13 = Fq::prime(13).unwrap();
    let (r, oracle) = count(&monomial(&f13, 4, 1, &[1]), &monomial(&f13, 6, 1, &[1]), &origin(&f13), 0, 0).unwrap();
    assert_eq!((r.total(), r.sum_e(), oracle), (2, 24, 2));
}

#[test]
fn inseparable_cover_is_rejected() {
    let f3 = Fq::prime(3).unwrap();
    assert!(cover(&f3, &[&[0, -1], &[], &[], &[1]]).is_err());
}

#[test]
fn gcd_count_needs_a_tame_place() {
    let r = FiberCountReport {
        point: "t = 0".into(),
        p1: 0,
        p2: 0,
        e1: 2,
        e2: 2,
        tame1: false,
        tame2: false,
        per_component: vec![1],
        rows: vec![FiberRow { component: 0, j: 0, e: 4, f: 1 }],
        residue_degrees: vec![1],
    };
    assert!(matches!(verify_gcd_count(&r), Err(Error::HypothesisViolated(_))));
    assert_eq!(verify_sum_e(&r), Verdict::Pass);
}

#[test]
fn mismatched_base_places() {
    let c = monomial(&Q, 2, 1, &[1]);
    let p0 = cover_places_over(&c, &origin(&Q), &PlaceOptions::default()).unwrap().places;
    let pinf = cover_places_over(&c, &Laurent::new(Q, Center::Infinity), &PlaceOptions::default()).unwrap().places;
    assert!(matches!(branch_count_oracle(&p0[0], &pinf[0], None), Err(Error::MismatchedBasePlace)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sum_e_and_gcd(a1 in 2usize..=4, a2 in 2usize..=3, u1 in -3i64..=3, u2 in -3i64..=3) {
        // μ_2 ⊂ Q, so residue degrees stay 1 whenever gcd(a1, a2) ≤ 2.
        prop_assume!(num_integer::gcd(a1, a2) <= 2);
        let c1 = monomial(&Q, a1, 1, &[1, u1]);
        let c2 = monomial(&Q, a2, 1, &[1, 0, u2]);
        let (r, oracle) = count(&c1, &c2, &origin(&Q), 0, 0).unwrap();
        prop_assert_eq!(r.sum_e(), a1 * a2);
        prop_assert_eq!(r.total(), num_integer::gcd(a1, a2));
        prop_assert_eq!(oracle, r.total());
    }
}
