use anbimod::voa::{partition_count, GradedVector, PbwKey, QuotientMode, Space, SpaceKind};
use anbimod::{Field, Scalar};
use proptest::prelude::*;

type Q = Scalar;

fn q(n: i64, d: i64) -> Q {
    Q::from_frac(n, d)
}

fn key(parts: &[u16]) -> PbwKey {
    PbwKey::new(parts)
}

fn vac(c: Q, mode: QuotientMode) -> Space<Q> {
    Space::new("0", SpaceKind::Vacuum, mode, c, Q::from_int(0))
}

fn hw(c: Q, h: Q, mode: QuotientMode) -> Space<Q> {
    Space::new("m", SpaceKind::HighestWeight, mode, c, h)
}

/// Level-`n` dimension of the irreducible `(r, s)` minimal-model module from
/// the alternating-sum character formula.
fn character_dim(p: i64, qq: i64, r: i64, s: i64, n: i64) -> usize {
    let pc = |m: i64| if m < 0 { 0 } else { partition_count(m as u32, 1) as i64 };
    let base = (qq * r - p * s).pow(2);
    let mut total = 0i64;
    for k in -20i64..=20 {
        let a = (2 * p * qq * k + qq * r - p * s).pow(2) - base;
        let b = (2 * p * qq * k + qq * r + p * s).pow(2) - base;
        total += pc(n - a / (4 * p * qq)) - pc(n - b / (4 * p * qq));
    }
    total as usize
}

#[test]
fn gram_level_one_and_two_match_closed_forms() {
    let (c, h) = (q(7, 10), q(3, 5));
    let m = hw(c.clone(), h.clone(), QuotientMode::Verma);
    assert_eq!(m.gram_matrix(1).matrix, vec![vec![h.clone() * Q::from_int(2)]]);
    let g = m.gram_matrix(2);
    assert_eq!(g.keys, vec![key(&[2]), key(&[1, 1])]);
    let two = Q::from_int(2);
    let four = Q::from_int(4);
    assert_eq!(g.matrix[0][0], four.clone() * h.clone() + c.clone() / two.clone());
    assert_eq!(g.matrix[0][1], Q::from_int(6) * h.clone());
    assert_eq!(g.matrix[1][1], four * h.clone() * (two * h + Q::from_int(1)));
    assert!(g.is_symmetric());
}

#[test]
fn vacuum_conformal_vector_relations() {
    let c = q(-22, 5);
    let v = vac(c.clone(), QuotientMode::Verma);
    let omega = GradedVector::basis(key(&[2]));
    let l2 = v.virasoro_apply(2, &omega);
    assert_eq!(l2, GradedVector::term(PbwKey::vacuum(), c / Q::from_int(2)));
    assert!(v.virasoro_apply(-1, &GradedVector::unit()).is_zero());
    assert!(v.virasoro_apply(1, &omega).is_zero());
}

#[test]
fn lowering_then_raising_on_highest_weight() {
    let h = q(1, 16);
    let m = hw(q(1, 2), h.clone(), QuotientMode::Verma);
    let w = m.virasoro_apply(1, &m.virasoro_apply(-1, &GradedVector::unit()));
    assert_eq!(w, GradedVector::term(PbwKey::vacuum(), h * Q::from_int(2)));
}

#[test]
fn ising_and_lee_yang_graded_dimensions() {
    let cases: Vec<(Q, Q, i64, i64, i64, i64, SpaceKind)> = vec![
        (q(1, 2), q(0, 1), 3, 4, 1, 1, SpaceKind::Vacuum),
        (q(1, 2), q(1, 16), 3, 4, 1, 2, SpaceKind::HighestWeight),
        (q(1, 2), q(1, 2), 3, 4, 1, 3, SpaceKind::HighestWeight),
        (q(-22, 5), q(0, 1), 2, 5, 1, 1, SpaceKind::Vacuum),
        (q(-22, 5), q(-1, 5), 2, 5, 1, 2, SpaceKind::HighestWeight),
    ];
    for (c, h, p, qq, r, s, kind) in cases {
        let sp = Space::new("x", kind, QuotientMode::SimpleQuotient, c, h.clone());
        let dims = sp.graded_dims(9);
        let expected: Vec<usize> = (0..=9).map(|n| character_dim(p, qq, r, s, n)).collect();
        assert_eq!(dims, expected, "h = {h}");
    }
    let ising_vac = vac(q(1, 2), QuotientMode::SimpleQuotient);
    assert_eq!(ising_vac.graded_dims(6), vec![1, 0, 1, 1, 2, 2, 3]);
    let sigma = hw(q(1, 2), q(1, 16), QuotientMode::SimpleQuotient);
    assert_eq!(sigma.graded_dims(7), vec![1, 1, 1, 2, 2, 3, 4, 5]);
    let phi = hw(q(-22, 5), q(-1, 5), QuotientMode::SimpleQuotient);
    assert_eq!(phi.gram_matrix(1).matrix, vec![vec![q(-2, 5)]]);
    assert_eq!(phi.graded_dims(1), vec![1, 1]);
}

#[test]
fn conformal_modes_are_virasoro_generators() {
    let m = hw(q(7, 10), q(3, 5), QuotientMode::Verma);
    let omega = GradedVector::basis(key(&[2]));
    let w = GradedVector::from_terms(vec![(key(&[2, 1]), q(1, 1)), (key(&[1, 1, 1]), q(-2, 3))]);
    for k in -2..=3 {
        assert_eq!(m.mode_apply(&omega, k, &w), m.virasoro_apply(k as i32 - 1, &w), "k = {k}");
    }
    let one = GradedVector::unit();
    assert_eq!(m.mode_apply(&one, -1, &w), w);
    assert!(m.mode_apply(&one, 0, &w).is_zero());
}

#[test]
fn vacuum_creation_property() {
    let v = vac(q(1, 2), QuotientMode::Verma);
    for u in [key(&[2]), key(&[3]), key(&[2, 2]), key(&[4, 2])] {
        let ub = GradedVector::basis(u.clone());
        assert_eq!(v.mode_apply(&ub, -1, &GradedVector::unit()), ub);
        for k in 0..4 {
            assert!(v.mode_apply(&ub, k, &GradedVector::unit()).is_zero());
        }
    }
}

#[test]
fn maximal_ideal_acts_trivially_on_simple_modules() {
    let c = q(1, 2);
    let v = vac(c.clone(), QuotientMode::SimpleQuotient);
    let sigma = hw(c.clone(), q(1, 16), QuotientMode::SimpleQuotient);
    let eps = hw(c, q(1, 2), QuotientMode::SimpleQuotient);
    let kernel = v.kernel_basis(6);
    assert_eq!(kernel.len(), 1);
    for m in [&sigma, &eps] {
        for wk in m.basis_upto(2) {
            let w = GradedVector::basis(wk);
            for k in -2..=6 {
                assert!(m.mode_apply(&kernel[0], k, &w).is_zero());
            }
        }
    }
}

fn small_vacuum_key() -> impl Strategy<Value = PbwKey> {
    prop::sample::select(vec![vec![], vec![2], vec![3], vec![4], vec![2, 2], vec![5], vec![3, 2]])
        .prop_map(|p| PbwKey::new(&p))
}

fn small_module_key() -> impl Strategy<Value = PbwKey> {
    prop::sample::select(vec![vec![], vec![1], vec![2], vec![1, 1], vec![3], vec![2, 1]]).prop_map(|p| PbwKey::new(&p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // [u_m, v_n] = sum_i C(m, i) (u_i v)_{m+n-i}
    #[test]
    fn commutator_formula(u in small_vacuum_key(), v in small_vacuum_key(), w in small_module_key(),
                          m in -1i64..3, n in -2i64..3) {
        let c = q(7, 10);
        let vs = vac(c.clone(), QuotientMode::Verma);
        let ms = hw(c, q(3, 5), QuotientMode::Verma);
        let (ub, vb, wb) = (GradedVector::basis(u.clone()), GradedVector::basis(v.clone()), GradedVector::basis(w));
        let lhs = ms.mode_apply(&ub, m, &ms.mode_apply(&vb, n, &wb)) - ms.mode_apply(&vb, n, &ms.mode_apply(&ub, m, &wb));
        let mut rhs = GradedVector::zero();
        if m >= 0 {
            for i in 0..=m {
                let uiv = vs.mode_apply(&ub, i, &vb);
                let coef = Q::from_int(anbimod::scalar::binomial(m, i).try_into().unwrap());
                rhs.add_scaled(&coef, &ms.mode_apply(&uiv, m + n - i, &wb));
            }
            prop_assert_eq!(lhs, rhs);
        }
    }

    // (L(-1) u)_n = -n u_{n-1}
    #[test]
    fn translation_covariance(u in small_vacuum_key(), w in small_module_key(), n in -3i64..4) {
        let c = q(-22, 5);
        let vs = vac(c.clone(), QuotientMode::Verma);
        let ms = hw(c, q(-1, 5), QuotientMode::Verma);
        let ub = GradedVector::basis(u);
        let wb = GradedVector::basis(w);
        let du = vs.virasoro_apply(-1, &ub);
        let lhs = ms.mode_apply(&du, n, &wb);
        let rhs = ms.mode_apply(&ub, n - 1, &wb).scaled(&Q::from_int(-n));
        prop_assert_eq!(lhs, rhs);
    }

    // u_n v = sum_j (-1)^{n+j+1} L(-1)^j / j! v_{n+j} u
    #[test]
    fn skew_symmetry(u in small_vacuum_key(), v in small_vacuum_key(), n in -2i64..3) {
        let vs = vac(q(1, 2), QuotientMode::Verma);
        let (ub, vb) = (GradedVector::basis(u), GradedVector::basis(v));
        let lhs = vs.mode_apply(&ub, n, &vb);
        let mut rhs = GradedVector::zero();
        let mut fact = Q::from_int(1);
        for j in 0..16i64 {
            if j > 0 { fact *= Q::from_int(j); }
            let t = vs.mode_apply(&vb, n + j, &ub);
            if t.is_zero() { continue; }
            let t = vs.virasoro_power(-1, j as usize, &t);
            let sgn = if (n + j + 1).rem_euclid(2) == 0 { Q::from_int(1) } else { Q::from_int(-1) };
            rhs.add_scaled(&(sgn / fact.clone()), &t);
        }
        prop_assert_eq!(lhs, rhs);
    }
}
