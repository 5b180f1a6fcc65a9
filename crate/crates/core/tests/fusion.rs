use anbimod::bimodule::star_left;
use anbimod::fusion::checks::{filter_violation, omega_filter_self_test, semisimplicity, tensor_lemma};
use anbimod::fusion::{o_matrix, EngineConfig, FusionEngine, Piece};
use anbimod::linalg::Matrix;
use anbimod::report::Status;
use anbimod::voa::{GradedVector, PbwKey};
use anbimod::{Error, Field, Model, ModelSpec, Scalar};

type Q = Scalar;
type V = GradedVector<Q>;

fn ising() -> Model {
    ModelSpec::ising().build().unwrap()
}

fn lee_yang() -> Model {
    ModelSpec::lee_yang().build().unwrap()
}

#[test]
fn zero_modes_of_vacuum_and_conformal_vector() {
    for model in [ising(), lee_yang()] {
        for (i, m) in model.modules().iter().enumerate() {
            for s in 0..=2 {
                let d = m.dim(s);
                assert_eq!(o_matrix(m, &V::unit(), s), Matrix::identity(d), "module {i}, degree {s}");
                let weight = m.h().clone() + Q::from_int(s as i64);
                let expected = Matrix::identity(d).scaled(&weight);
                assert_eq!(o_matrix(m, &V::basis(PbwKey::new(&[2])), s), expected);
            }
        }
    }
}

#[test]
fn product_of_conformal_vectors_on_epsilon() {
    let model = ising();
    let eps = model.module(model.index_of("epsilon").unwrap());
    let omega = V::basis(PbwKey::new(&[2]));
    let product = star_left(model.vacuum(), &omega, &omega, 0);
    let quarter = Matrix::from_rows(vec![vec![Q::from_frac(1, 4)]]);
    assert_eq!(o_matrix(eps, &product, 0), quarter);
    assert_eq!(o_matrix(eps, &omega, 0).mul(&o_matrix(eps, &omega, 0)), quarter);
}

#[test]
fn ising_balanced_maps_at_level_zero() {
    let model = ising();
    let engine = FusionEngine::new(&model, EngineConfig::new(0));
    let (v, e, s) = (0, model.index_of("epsilon").unwrap(), model.index_of("sigma").unwrap());
    let dim = |i, j, k| engine.balanced_hom(i, Piece::new(j, 0), Piece::new(k, 0), 4).unwrap().dim;
    assert_eq!(dim(s, s, v), 1);
    assert_eq!(dim(e, e, e), 0);
    assert_eq!(dim(s, e, s), 1);
    for j in 0..3 {
        for k in 0..3 {
            assert_eq!(dim(v, j, k), usize::from(j == k));
        }
    }
}

#[test]
fn lee_yang_balanced_maps_at_level_zero() {
    let model = lee_yang();
    let engine = FusionEngine::new(&model, EngineConfig::new(0));
    let phi = model.index_of("phi").unwrap();
    for k in [0, phi] {
        assert_eq!(engine.balanced_hom(phi, Piece::new(phi, 0), Piece::new(k, 0), 4).unwrap().dim, 1);
    }
}

#[test]
fn zero_pieces_are_rejected() {
    let model = ising();
    let engine = FusionEngine::new(&model, EngineConfig::new(1));
    assert_eq!(Piece::new(0, 1).dim(&model), 0);
    let err = engine.balanced_hom(0, Piece::new(0, 1), Piece::new(0, 0), 4).unwrap_err();
    assert!(matches!(err, Error::Hypothesis(_)));
}

#[test]
fn tensor_products_over_the_algebra() {
    let model = ising();
    let (e, s) = (model.index_of("epsilon").unwrap(), model.index_of("sigma").unwrap());
    let engine = FusionEngine::new(&model, EngineConfig::new(1));
    assert_eq!(engine.tensor_over_algebra_dim(Piece::new(e, 0), Piece::new(e, 0)), 1);
    assert_eq!(engine.tensor_over_algebra_dim(Piece::new(e, 0), Piece::new(s, 0)), 0);
    assert_eq!(engine.tensor_over_algebra_dim(Piece::new(s, 1), Piece::new(s, 1)), 1);
    assert_eq!(engine.tensor_over_algebra_dim(Piece::new(s, 0), Piece::new(s, 1)), 0);
    assert_eq!(tensor_lemma(&engine).status, Status::Pass);
}

#[test]
fn filter_check_trips_on_misgraded_input() {
    let model = ising();
    let sigma = model.module(model.index_of("sigma").unwrap());
    let omega = PbwKey::new(&[2]);
    let top = V::basis(PbwKey::new(&[]));
    assert!(filter_violation(sigma, &omega, &top, 0).is_none());
    let raised = V::basis(PbwKey::new(&[1]));
    let (m, image) = filter_violation(sigma, &omega, &raised, 0).expect("L(1) L(-1) is nonzero on sigma");
    assert_eq!(m, 2);
    assert_eq!(image, V::term(PbwKey::new(&[]), Q::from_frac(1, 8)));
    let engine = FusionEngine::new(&model, EngineConfig::new(0));
    assert_eq!(omega_filter_self_test(&engine).status, Status::Pass);
}

#[test]
fn joint_zero_mode_rank() {
    for (model, n, expected) in [(ising(), 0, 3), (lee_yang(), 0, 2), (lee_yang(), 1, 3)] {
        let engine = FusionEngine::new(&model, EngineConfig::new(n));
        let checks = semisimplicity(&engine);
        assert!(checks.iter().all(|c| c.status != Status::Fail), "{checks:?}");
        assert!(checks[0].witness.summary.contains(&format!(" is {expected};")), "{}", checks[0].witness.summary);
    }
}
