use std::sync::Arc;

use dgar::ar::{ArEngine, Decision, EndAlgebra, Locality};
use dgar::catalog;
use dgar::dg::{DGAlgebra, DGModule, DGMorphism, GradedDims};
use dgar::linalg::{Field, Matrix};
use dgar::resolution::{resolve, ResolutionBudget};
use dgar::DgError;

const SEED: u64 = 5;
const Q: Field = Field::Rationals;

fn engine(name: &str) -> ArEngine {
    ArEngine::new(catalog::by_name(name).unwrap(), ResolutionBudget::default(), SEED).unwrap()
}

fn cone_of_x(r: &Arc<DGAlgebra>) -> DGModule {
    let reg = DGModule::regular(r.clone());
    let mut map = Matrix::zeros(Q, r.dim(), r.dim());
    map.set(r.dim() - 1, r.unit, Q.one());
    DGMorphism::new(reg.suspend(-r.top), reg, map).cone().module
}

#[test]
fn endomorphisms_of_free_modules() {
    let r = catalog::by_name("sphere-3").unwrap();
    let reg = DGModule::regular(r.clone());
    let end = EndAlgebra::of(&resolve(&reg, &ResolutionBudget::default()).unwrap()).unwrap();
    assert_eq!(end.dim(), 1);
    assert_eq!(end.locality(SEED), Locality::Local);

    let two = reg.direct_sum(&reg).unwrap();
    let end = EndAlgebra::of(&resolve(&two, &ResolutionBudget::default()).unwrap()).unwrap();
    assert_eq!(end.dim(), 4);
    assert_eq!(end.radical.as_ref().unwrap().dim(), 0);
    assert_eq!(end.locality(SEED), Locality::NotLocal);
    let e = end.find_idempotent(SEED).unwrap();
    assert_eq!(end.product(&e, &e), e);
    let lifted = end.lift_idempotent(&e).unwrap();
    assert_eq!(lifted.mul(&lifted), lifted);
}

#[test]
fn tau_of_regular_and_round_trip() {
    let e = engine("sphere-3");
    let reg = DGModule::regular(e.algebra.clone());
    let t = e.tau(&reg).unwrap();
    assert_eq!(t.cohomology_dims(), GradedDims::from_pairs(&[(-2, 1), (1, 1)]));
    let back = e.tau_inverse(&t).unwrap();
    assert_eq!(e.is_isomorphic(&back, &reg).unwrap(), Decision::Yes);
    assert_eq!(e.is_isomorphic(&back, &reg.suspend(1)).unwrap(), Decision::No);
}

#[test]
fn tau_inverse_undoes_tau_on_a_cone() {
    let e = engine("cp2-like");
    let m = cone_of_x(&e.algebra);
    let there = e.tau_inverse(&m).unwrap();
    let back = e.tau(&there).unwrap();
    assert_eq!(e.is_isomorphic(&back, &m).unwrap(), Decision::Yes);
}

#[test]
fn splitting() {
    let e = engine("sphere-3");
    let reg = DGModule::regular(e.algebra.clone());
    let parts = e.split_summands(&reg.direct_sum(&reg.suspend(1)).unwrap()).unwrap();
    assert_eq!(parts.len(), 2);
    assert!(parts.iter().all(|p| p.multiplicity == 1));
    let parts = e.split_summands(&reg.direct_sum(&reg).unwrap()).unwrap();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[0].multiplicity, 2);
    assert_eq!(e.is_isomorphic(parts[0].module(), &reg).unwrap(), Decision::Yes);
}

#[test]
fn triangle_at_regular_over_sphere() {
    let e = engine("sphere-3");
    let reg = DGModule::regular(e.algebra.clone());
    let t = e.ar_triangle_ending_at(&reg).unwrap();
    let s = t.summary(&e.budget).unwrap();
    assert_eq!(s.phi, [1, 2, 1]);
    assert!(s.phi_additive);
    assert!(!t.connecting.is_zero());
    let labels = e.arrow_labels(&t).unwrap();
    assert_eq!(labels.len(), 1);
    assert_eq!((labels[0].alpha, labels[0].beta), (1, 1));
    assert_eq!(labels[0].summand_phi, 2);
}

#[test]
fn triangle_refuses_decomposable_end() {
    let e = engine("sphere-3");
    let reg = DGModule::regular(e.algebra.clone());
    let two = reg.direct_sum(&reg).unwrap();
    assert!(matches!(e.ar_triangle_ending_at(&two), Err(DgError::Decomposable)));
}

#[test]
fn wedge_is_refused() {
    let w = catalog::by_name("wedge").unwrap();
    assert!(matches!(ArEngine::new(w, ResolutionBudget::default(), SEED), Err(DgError::NotGorenstein(_))));
}
