use absval::arith::poly::PolyRing;
use absval::arith::rational::rat;
use absval::arith::ring::Ring;
use absval::local::dvr::{Dvr, Zp};
use absval::local::element::LocalElement;
use absval::local::extension::{norm_valuation, ExtDvr, LocalExtension};
use absval::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn zp(p: u64, prec: usize) -> Zp {
    Zp::new(p, prec).unwrap()
}

fn ext(p: u64, h: &[i64]) -> (Zp, ExtDvr<Zp>) {
    let d = zp(p, 30);
    let h = PolyRing::new(d.clone()).from_ints(h);
    let r = ExtDvr::new(&d, &h, 0).unwrap();
    (d, r)
}

fn elem(d: &Zp, r: &ExtDvr<Zp>, c: &[i64]) -> Vec<BigInt> {
    r.from_power(&c.iter().map(|&x| d.from_i64(x)).collect::<Vec<_>>()).unwrap()
}

#[test]
fn ramification_data() {
    let (_, r) = ext(5, &[-5, 0, 1]);
    assert_eq!((r.ramification(), r.residue_degree(), r.degree()), (2, 1, 2));
    let (_, r) = ext(5, &[-2, 0, 1]);
    assert_eq!((r.ramification(), r.residue_degree()), (1, 2));
    let (_, r) = ext(2, &[2, 2, 1]);
    assert_eq!((r.ramification(), r.residue_degree()), (2, 1));
    let (_, r) = ext(3, &[-3, 0, 0, 1]);
    assert_eq!((r.ramification(), r.residue_degree()), (3, 1));
}

#[test]
fn valuations_in_the_extension() {
    let (d, r) = ext(5, &[-5, 0, 1]);
    // v_Π(5) = e.
    assert_eq!(r.val(&r.embed(&d.from_i64(5))), Some(2));
    assert_eq!(r.val(&elem(&d, &r, &[0, 1])), Some(1));
    assert_eq!(r.val(&elem(&d, &r, &[5, 1])), Some(1));
    assert_eq!(r.val(&elem(&d, &r, &[1, 1])), Some(0));
    assert_eq!(r.val(&r.pi_pow(3)), Some(3));
    assert_eq!(r.val(&r.zero()), None);
}

#[test]
fn unit_inverse() {
    let (d, r) = ext(5, &[-2, 0, 1]);
    let a = elem(&d, &r, &[1, 3]);
    let inv = r.unit_inv(&a).unwrap();
    assert_eq!(r.reduce(&r.mul(&a, &inv)), r.reduce(&r.one()));
    assert!(r.unit_inv(&r.embed(&d.from_i64(5))).is_none());
}

#[test]
fn element_valuation_through_the_norm() {
    let d = zp(2, 30);
    let pr = PolyRing::new(d.clone());
    let h = pr.from_ints(&[-2, 0, 1]);
    let l = LocalExtension::new(&d, &h, 0).unwrap();
    assert_eq!(l.element_valuation(&d, &pr.from_ints(&[0, 1])).unwrap(), rat(1, 2));
    assert_eq!(l.element_valuation(&d, &pr.from_ints(&[2, 1])).unwrap(), rat(1, 2));
    assert_eq!(l.element_valuation(&d, &pr.from_ints(&[1, 1])).unwrap(), rat(0, 1));
    assert_eq!(l.element_valuation(&d, &pr.from_ints(&[4])).unwrap(), rat(2, 1));
    // N(y + 2) = 4 - 2 = 2.
    assert_eq!(norm_valuation(&d, &h, &pr.from_ints(&[2, 1])).unwrap(), 1);
    assert!(matches!(l.residue(&pr.from_ints(&[0, 1])), Err(Error::NotAUnit)));
}

#[test]
fn local_element_arithmetic() {
    let d = zp(5, 10);
    let a = LocalElement::from_scaled(&d, &d.from_i64(50), 0);
    assert_eq!(a.valuation().unwrap(), Some(2));
    assert_eq!(a.precision(), 8);
    let b = LocalElement::from_scaled(&d, &d.from_i64(3), -1);
    assert_eq!(b.valuation().unwrap(), Some(-1));
    assert_eq!(a.mul(&d, &b).valuation().unwrap(), Some(1));
    assert_eq!(a.add(&d, &b).valuation().unwrap(), Some(-1));
    let inv = a.inv(&d).unwrap();
    assert_eq!(inv.valuation().unwrap(), Some(-2));
    assert_eq!(inv.mul(&d, &a).sub(&d, &LocalElement::one(&d)).valuation().ok().flatten().map_or(true, |v| v >= 8), true);
    assert_eq!(LocalElement::zero_exact(&d).valuation().unwrap(), None);
    let lost = LocalElement::from_scaled(&d, &d.zero(), 0);
    assert!(matches!(lost.valuation(), Err(Error::IndeterminateValuation)));
    assert_eq!(lost.absolute_precision(), Some(10));
    // Cancellation leaves fewer significant digits.
    let c = LocalElement::from_scaled(&d, &d.from_i64(1 + 5i64.pow(4)), 0);
    let diff = c.sub(&d, &LocalElement::one(&d));
    assert_eq!(diff.valuation().unwrap(), Some(4));
    assert!(diff.precision() <= 6);
}

fn small() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-30i64..30, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ext_ring_laws(a in small(), b in small(), c in small()) {
        for h in [[-5i64, 0, 1], [-2, 0, 1], [5, 5, 1]] {
            let (d, r) = ext(5, &h);
            let (a, b, c) = (elem(&d, &r, &a), elem(&d, &r, &b), elem(&d, &r, &c));
            let eq = |x: &Vec<BigInt>, y: &Vec<BigInt>| r.reduce(x) == r.reduce(y);
            prop_assert!(eq(&r.mul(&a, &b), &r.mul(&b, &a)));
            prop_assert!(eq(&r.mul(&r.mul(&a, &b), &c), &r.mul(&a, &r.mul(&b, &c))));
            prop_assert!(eq(&r.mul(&a, &r.add(&b, &c)), &r.add(&r.mul(&a, &b), &r.mul(&a, &c))));
        }
    }

    #[test]
    fn ext_valuation_is_multiplicative(a in small(), b in small()) {
        for h in [[-5i64, 0, 1], [-2, 0, 1], [5, 5, 1]] {
            let (d, r) = ext(5, &h);
            let (a, b) = (elem(&d, &r, &a), elem(&d, &r, &b));
            if let (Some(va), Some(vb)) = (r.val(&a), r.val(&b)) {
                if va + vb < 20 {
                    prop_assert_eq!(r.val(&r.mul(&a, &b)), Some(va + vb));
                }
            }
        }
    }

    #[test]
    fn ext_residue_is_a_homomorphism(a in small(), b in small()) {
        for h in [[-5i64, 0, 1], [-2, 0, 1]] {
            let (d, r) = ext(5, &h);
            let k = r.residue_field().clone();
            let (a, b) = (elem(&d, &r, &a), elem(&d, &r, &b));
            prop_assert_eq!(r.residue(&r.mul(&a, &b)), k.mul(&r.residue(&a), &r.residue(&b)));
            prop_assert_eq!(r.residue(&r.add(&a, &b)), k.add(&r.residue(&a), &r.residue(&b)));
        }
    }

    #[test]
    fn digits_round_trip(a in small()) {
        let (d, r) = ext(5, &[-2, 0, 1]);
        let a = r.reduce(&elem(&d, &r, &a));
        prop_assert_eq!(r.reduce(&r.from_digits(&r.digits(&a))), a);
    }
}
