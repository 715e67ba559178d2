use absval::arith::poly::PolyRing;
use absval::arith::rational::Q;
use absval::local::completion::Padic;
use absval::places::{place_extensions, GlobalField, PlaceOptions};
use absval::tensor::*;
use proptest::prelude::*;

fn qfield(c: &[i64], name: &str) -> GlobalField<Q> {
    GlobalField::new(Q, PolyRing::new(Q).from_ints(c), name).unwrap()
}

fn at(p: u64) -> Padic {
    Padic::new(p).unwrap()
}

fn degrees(t: &TensorDecomposition<Q>) -> Vec<usize> {
    let mut v: Vec<_> = t.components.iter().map(|c| c.degree()).collect();
    v.sort();
    v
}

#[test]
fn decompositions() {
    let i = qfield(&[1, 0, 1], "L");
    assert_eq!(degrees(&tensor_decompose(&i, &i).unwrap()), vec![1, 1]);
    let t = tensor_decompose(&qfield(&[-2, 0, 1], "L"), &qfield(&[-3, 0, 1], "M")).unwrap();
    assert_eq!(degrees(&t), vec![2]);
    assert_eq!(t.absolute_field(0).unwrap().0.degree(), 4);
    // Q(∛2) ⊗ Q(∛2) = Q(∛2) × Q(∛2, ζ3).
    let c = qfield(&[-2, 0, 0, 1], "L");
    let t = tensor_decompose(&c, &c).unwrap();
    assert_eq!(degrees(&t), vec![1, 2]);
    // Coprime degrees leave one component, of degree [L:K] over M.
    assert_eq!(degrees(&tensor_decompose(&qfield(&[-2, 0, 1], "L"), &c).unwrap()), vec![2]);
}

#[test]
fn absolute_fields_have_the_right_total_degree() {
    let c = qfield(&[-2, 0, 0, 1], "L");
    let t = tensor_decompose(&c, &c).unwrap();
    let total: usize = (0..t.len()).map(|i| t.absolute_field(i).unwrap().0.degree()).sum();
    assert_eq!(total, 9);
}

#[test]
fn sqrt2_sqrt3_at_5() {
    let t = tensor_decompose(&qfield(&[-2, 0, 1], "L"), &qfield(&[-3, 0, 1], "M")).unwrap();
    let rs = classify_all(&t, &at(5), &PlaceOptions::default()).unwrap();
    assert_eq!(rs.len(), 1);
    let r = &rs[0];
    assert_eq!((r.e_l, r.f_l, r.e_m, r.f_m), (1, 2, 1, 2));
    assert!(r.degree_identity_holds());
    // √6 ∈ Q_5 since 6 ≡ 1, so Q_25 ⊗ Q_25 splits in two.
    assert_eq!(r.count(), 2);
    assert_eq!(absolute_values_on_component(r, 0).iter().map(|v| (v.e_abs, v.f_abs)).collect::<Vec<_>>(), vec![(1, 2), (1, 2)]);
}

#[test]
fn gaussian_square_at_5_pairs_places_with_components() {
    let i = qfield(&[1, 0, 1], "L");
    let t = tensor_decompose(&i, &i).unwrap();
    let rs = classify_all(&t, &at(5), &PlaceOptions::default()).unwrap();
    assert_eq!(rs.len(), 4);
    for r in &rs {
        assert_eq!(r.count(), 1);
        assert_eq!(r.sigma.len(), 1);
    }
    // Each component is hit by exactly two of the four pairs.
    for i in 0..2 {
        assert_eq!(rs.iter().filter(|r| r.sigma[0] == i).count(), 2);
    }
}

#[test]
fn indexed_classification_checks_indices() {
    let i = qfield(&[1, 0, 1], "L");
    let t = tensor_decompose(&i, &i).unwrap();
    assert!(classify_indexed(&t, &at(5), 1, 1, &PlaceOptions::default()).is_ok());
    assert!(classify_indexed(&t, &at(5), 0, 2, &PlaceOptions::default()).is_err());
}

/// Places of each component, computed directly from its absolute field.
fn direct_profiles(t: &TensorDecomposition<Q>, p: u64) -> Vec<Vec<(usize, usize)>> {
    (0..t.len())
        .map(|i| {
            let f = t.absolute_field(i).unwrap().0;
            let mut v: Vec<_> = place_extensions(&f, &at(p), &PlaceOptions::default()).unwrap().iter().map(|x| (x.e, x.f)).collect();
            v.sort();
            v
        })
        .collect()
}

fn all_values(t: &TensorDecomposition<Q>, p: u64) -> Vec<(usize, usize)> {
    let rs = classify_all(t, &at(p), &PlaceOptions::default()).unwrap();
    let mut v: Vec<_> = (0..t.len()).flat_map(|i| component_profile(&rs, i)).collect();
    v.sort();
    v
}

fn quadratic() -> impl Strategy<Value = Vec<i64>> {
    prop::sample::select(vec![-1i64, 2, -2, 3, -3, 5, 6, -6, 7, 10, -15]).prop_map(|d| vec![-d, 0, 1])
}

fn small_field() -> impl Strategy<Value = Vec<i64>> {
    prop_oneof![quadratic(), prop::sample::select(vec![vec![-2i64, 0, 0, 1], vec![-3, 0, 0, 1], vec![1, 1, 0, 1], vec![-1, -1, 1]])]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn components_match_their_absolute_fields(a in small_field(), b in small_field(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let t = tensor_decompose(&qfield(&a, "L"), &qfield(&b, "M")).unwrap();
        let rs = classify_all(&t, &at(p), &PlaceOptions::default()).unwrap();
        let direct = direct_profiles(&t, p);
        for i in 0..t.len() {
            prop_assert_eq!(component_profile(&rs, i), direct[i].clone(), "component {}", i);
        }
        for r in &rs {
            prop_assert!(r.degree_identity_holds());
            prop_assert_eq!(r.sigma.len(), r.local_factors.len());
        }
    }

    #[test]
    fn swap_symmetry(a in small_field(), b in small_field(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let (l, m) = (qfield(&a, "L"), qfield(&b, "M"));
        let lm = tensor_decompose(&l, &m).unwrap();
        let ml = tensor_decompose(&m, &l).unwrap();
        prop_assert_eq!(degrees(&lm).len(), degrees(&ml).len());
        prop_assert_eq!(all_values(&lm, p), all_values(&ml, p));
    }
}
