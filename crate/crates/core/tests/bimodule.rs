use std::sync::Arc;

use anbimod::bimodule::{
    circ, phi, quotient_scan, reduction_element, star_left, star_right, Membership, QuotientSpan, SpanConfig,
};
use anbimod::voa::{GradedVector, PbwKey, QuotientMode, Space};
use anbimod::{Field, Scalar};
use proptest::prelude::*;

type Q = Scalar;
type V = GradedVector<Q>;

fn key(parts: &[u16]) -> PbwKey {
    PbwKey::new(parts)
}

fn basis(parts: &[u16]) -> V {
    V::basis(key(parts))
}

fn universal(c: Q) -> Arc<Space<Q>> {
    Arc::new(Space::vacuum(c, QuotientMode::Verma))
}

fn verma(c: Q, h: Q) -> Arc<Space<Q>> {
    Arc::new(Space::highest_weight("m", c, h, QuotientMode::Verma))
}

/// `(L(-1) + L(0)) u` straight from the Virasoro action.
fn translation_plus_weight(space: &Space<Q>, u: &V) -> V {
    space.virasoro_apply(-1, u) + space.virasoro_apply(0, u)
}

#[test]
fn circle_product_of_conformal_vector_with_vacuum() {
    let v = universal(Q::from_frac(1, 2));
    let omega = basis(&[2]);
    let expected = V::from_terms([(key(&[3]), Q::from_int(1)), (key(&[2]), Q::from_int(2))]);
    assert_eq!(circ(&v, &omega, &V::unit(), 0), expected);
    assert_eq!(expected, translation_plus_weight(&v, &omega));
}

#[test]
fn vacuum_kills_through_circle_product() {
    let v = universal(Q::from_frac(7, 10));
    let m = verma(Q::from_frac(7, 10), Q::from_frac(1, 2));
    for n in 0..3 {
        for w in m.basis_upto(4) {
            assert!(circ(&m, &V::unit(), &V::basis(w), n).is_zero());
        }
        for w in v.basis_upto(4) {
            assert!(circ(&v, &V::unit(), &V::basis(w), n).is_zero());
        }
    }
}

#[test]
fn unit_and_conformal_vector_products() {
    let v = universal(Q::from_frac(-22, 5));
    let omega = basis(&[2]);
    assert_eq!(star_left(&v, &omega, &V::unit(), 0), omega);
    assert_eq!(star_right(&v, &V::unit(), &omega, 0), omega);
    for n in 0..3 {
        for w in v.basis_upto(5) {
            let w = V::basis(w);
            assert_eq!(star_left(&v, &V::unit(), &w, n), w);
            assert_eq!(star_right(&v, &w, &V::unit(), n), w);
        }
    }
}

#[test]
fn reduction_elements() {
    let m = verma(Q::from_frac(1, 2), Q::from_frac(1, 16));
    let (u, w) = (basis(&[3]), basis(&[1, 1]));
    for n in 0..3 {
        assert_eq!(reduction_element(&m, &u, &w, n, 0, 0).unwrap(), circ(&m, &u, &w, n));
    }
    assert!(reduction_element(&m, &u, &w, 1, 2, 1).is_err());
}

#[test]
fn twist_fixes_vacuum_and_conformal_vector() {
    let v = universal(Q::from_frac(1, 2));
    assert_eq!(phi(&v, &V::unit()), V::unit());
    assert_eq!(phi(&v, &basis(&[2])), basis(&[2]));
    // The sign acts first, then L(1) L(-3)|0> = 4 L(-2)|0>.
    let expected = V::from_terms([(key(&[3]), Q::from_int(-1)), (key(&[2]), Q::from_int(-4))]);
    assert_eq!(phi(&v, &basis(&[3])), expected);
}

#[test]
fn scan_rows_are_consistent() {
    let c = Q::from_frac(1, 2);
    let v = Arc::new(Space::vacuum(c.clone(), QuotientMode::SimpleQuotient));
    let (report, span) = quotient_scan(v.clone(), v.clone(), SpanConfig::zhu(1), 0, 12, 3).unwrap();
    for row in &report.table {
        let total: usize = (0..=row.w).map(|d| v.dim(d)).sum();
        assert_eq!(row.dim_space, total);
        assert_eq!(row.dim_space, row.dim_span + row.dim_quotient);
    }
    assert_eq!(span.coset_basis().len(), report.stabilized_dim.unwrap());
    assert!(quotient_scan(v.clone(), v, SpanConfig::zhu(0), 5, 4, 3).is_err());
}

#[test]
fn universal_quotients_keep_growing() {
    let v = universal(Q::from_frac(7, 10));
    let (report, _) = quotient_scan(v.clone(), v, SpanConfig::zhu(0), 0, 10, 3).unwrap();
    assert_eq!(report.stabilized_dim, None);
    let dims: Vec<usize> = report.table.iter().map(|r| r.dim_quotient).collect();
    assert!(dims.windows(2).all(|w| w[0] <= w[1]));
    assert!(dims.last() > dims.first());
}

#[test]
fn generators_certify_into_their_own_span() {
    let c = Q::from_frac(7, 10);
    let v = universal(c.clone());
    let m = verma(c, Q::from_frac(3, 5));
    let mut span = QuotientSpan::new(v, m.clone(), SpanConfig::bimodule(1));
    let x = circ(&m, &basis(&[2]), &basis(&[1]), 1);
    match span.certify(&x, 0) {
        Membership::Member { certificate, .. } => assert!(!certificate.is_empty()),
        Membership::Outside { .. } => panic!("a generator must certify"),
    }
    match span.certify(&basis(&[]), 0) {
        Membership::Outside { .. } => {}
        Membership::Member { .. } => panic!("the lowest weight vector is not in the span"),
    }
}

#[test]
fn enrichment_never_enlarges_the_quotient() {
    let c = Q::from_frac(1, 2);
    let v = Arc::new(Space::vacuum(c.clone(), QuotientMode::SimpleQuotient));
    let m = Arc::new(Space::highest_weight("sigma", c, Q::from_frac(1, 16), QuotientMode::SimpleQuotient));
    let (plain, _) = quotient_scan(v.clone(), m.clone(), SpanConfig::bimodule(1), 0, 10, 3).unwrap();
    let (rich, _) = quotient_scan(v, m, SpanConfig::bimodule_enriched(1), 0, 10, 3).unwrap();
    for (p, r) in plain.table.iter().zip(&rich.table) {
        assert!(r.dim_quotient <= p.dim_quotient);
    }
}

fn vacuum_key() -> impl Strategy<Value = PbwKey> {
    (0u32..=5).prop_flat_map(|d| {
        let keys = anbimod::voa::partitions(d, 2);
        let len = keys.len().max(1);
        (Just(keys), 0..len)
    })
    .prop_filter_map("nonempty degree", |(keys, i)| keys.get(i).cloned())
}

fn module_key() -> impl Strategy<Value = PbwKey> {
    (0u32..=4).prop_flat_map(|d| {
        let keys = anbimod::voa::partitions(d, 1);
        let len = keys.len();
        (Just(keys), 0..len)
    })
    .prop_map(|(keys, i)| keys[i].clone())
}

fn central_charge() -> impl Strategy<Value = Q> {
    prop_oneof![Just(Q::from_frac(1, 2)), Just(Q::from_frac(7, 10)), Just(Q::from_frac(-22, 5))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conformal_vector_commutator(c in central_charge(), u in module_key(), n in 0u32..3) {
        let m = verma(c, Q::from_frac(1, 3));
        let omega = basis(&[2]);
        let u = V::basis(u);
        let lhs = star_left(&m, &omega, &u, n) - star_right(&m, &u, &omega, n);
        prop_assert_eq!(lhs, translation_plus_weight(&m, &u));
    }

    #[test]
    fn units_in_the_vacuum_module(c in central_charge(), w in vacuum_key(), n in 0u32..4) {
        let v = universal(c);
        let w = V::basis(w);
        prop_assert_eq!(star_left(&v, &V::unit(), &w, n), w.clone());
        prop_assert_eq!(star_right(&v, &w, &V::unit(), n), w);
    }

    #[test]
    fn twist_is_an_involution(c in central_charge(), w in module_key()) {
        let m = verma(c, Q::from_frac(2, 7));
        let w = V::basis(w);
        prop_assert_eq!(phi(&m, &phi(&m, &w)), w);
    }
}
