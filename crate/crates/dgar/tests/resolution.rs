use std::sync::Arc;

use dgar::catalog;
use dgar::dg::{hom_complex, tensor_bimodule, Bimodule, DGAlgebra, DGModule, DGMorphism, GradedDims, Side};
use dgar::linalg::{Field, Matrix};
use dgar::resolution::{
    compactness_certificate, derived_hom, ext_to_k, phi, resolve, semifree_hom, semifree_tensor, CompactnessVerdict,
    ResolutionBudget, SemifreeModule,
};
use dgar::DgError;

const Q: Field = Field::Rationals;

fn budget() -> ResolutionBudget {
    ResolutionBudget::default()
}

fn cone_of_x(r: &Arc<DGAlgebra>) -> DGModule {
    let reg = DGModule::regular(r.clone());
    let d = r.top;
    let mut map = Matrix::zeros(Q, r.dim(), r.dim());
    map.set(r.dim() - 1, r.unit, Q.one());
    DGMorphism::new(reg.suspend(-d), reg, map).cone().module
}

#[test]
fn free_and_shifted_free() {
    let r = catalog::by_name("sphere-3").unwrap();
    let reg = DGModule::regular(r.clone());
    let res = resolve(&reg, &budget()).unwrap();
    assert_eq!(res.semifree.generator_degrees(), vec![0]);
    assert!(res.morphism(&reg).is_quasi_isomorphism());
    let res = resolve(&reg.suspend(-3), &budget()).unwrap();
    assert_eq!(res.semifree.generator_degrees(), vec![3]);
    assert_eq!(ext_to_k(&reg, &budget()).unwrap(), GradedDims::from_pairs(&[(0, 1)]));
    assert_eq!(ext_to_k(&reg.suspend(2), &budget()).unwrap(), GradedDims::from_pairs(&[(2, 1)]));
}

#[test]
fn residue_field_exhausts_budget_with_spaced_generators() {
    let r = catalog::by_name("sphere-3").unwrap();
    let k = DGModule::residue_field(r);
    match resolve(&k, &ResolutionBudget::with_generators(5)) {
        Err(DgError::Budget(trace)) => {
            assert_eq!(trace.passes, vec![(0, 1), (2, 1), (4, 1), (6, 1), (8, 1)]);
            assert!(trace.is_monotone());
        }
        other => panic!("expected budget exhaustion, got {other:?}"),
    }
}

#[test]
fn residue_field_trace_by_hand_two_passes() {
    // Pass 1: the class of 1 ∈ k gives g0 in degree 0. Pass 2: cone of
    // R -> k has H spanned by σX in degree 2, so g1 has degree 2 and dg1 = -X·g0.
    let r = catalog::by_name("sphere-3").unwrap();
    let k = DGModule::residue_field(r);
    let Err(DgError::Budget(trace)) = resolve(&k, &ResolutionBudget::with_generators(2)) else { panic!() };
    assert_eq!(trace.passes, vec![(0, 1), (2, 1)]);
}

#[test]
fn resolutions_are_minimal_quasi_isomorphisms() {
    for name in ["sphere-3", "cp2-like", "s2xs2"] {
        let r = catalog::by_name(name).unwrap();
        let m = cone_of_x(&r);
        let res = resolve(&m, &budget()).unwrap();
        assert!(res.semifree.is_minimal());
        let mor = res.morphism(&m);
        assert!(mor.validate().is_empty(), "{name}: {:?}", mor.validate());
        assert!(mor.is_quasi_isomorphism());
        res.realized.ensure_valid().unwrap();
        let inf = m.cohomology_dims().inf().unwrap();
        assert!(res.semifree.generator_degrees().iter().all(|&g| g >= inf));
    }
}

#[test]
fn phi_of_cone_and_additivity() {
    let r = catalog::by_name("sphere-3").unwrap();
    let reg = DGModule::regular(r.clone());
    assert_eq!(phi(&reg, &budget()).unwrap(), 1);
    let c = cone_of_x(&r);
    assert_eq!(phi(&c, &budget()).unwrap(), 2);
    let s = c.direct_sum(&reg.suspend(4)).unwrap();
    assert_eq!(phi(&s, &budget()).unwrap(), 3);
}

#[test]
fn semifree_hom_matches_general_hom() {
    let r = catalog::by_name("cp2-like").unwrap();
    let m = cone_of_x(&r);
    let res = resolve(&m, &budget()).unwrap();
    for n in [m.clone(), DGModule::residue_field(r.clone()), DGModule::regular(r.clone()).suspend(2)] {
        let fast = semifree_hom(&res.semifree, &n).unwrap();
        let slow = hom_complex(&res.realized, &n).unwrap();
        assert_eq!(fast.complex.cohomology().dims(), slow.complex.cohomology().dims());
        for (j, p) in fast.complex.degrees.iter().enumerate() {
            let mut e = vec![Q.zero(); fast.dim()];
            e[j] = Q.one();
            let h = fast.map_of(&e);
            assert_eq!(fast.coords(&h), e);
            // D of the basis map, computed on matrices, matches the complex
            let dh = n.diff.mul(&h).sub(&h.mul(&res.realized.diff).scale(&Q.sign(p % 2 != 0)));
            assert_eq!(fast.coords(&dh), fast.complex.diff.column(j));
            // every basis map is R-linear of its degree
            for a in 0..r.dim() {
                let s = Q.sign((p * r.degree(a)) % 2 != 0);
                assert_eq!(h.mul(&res.realized.action[a]), n.action[a].mul(&h).scale(&s));
            }
        }
    }
}

#[test]
fn hom_into_k_has_zero_differential_on_minimal_resolutions() {
    let r = catalog::by_name("s2xs2").unwrap();
    let m = cone_of_x(&r);
    let (res, h) = derived_hom(&m, &DGModule::residue_field(r), &budget()).unwrap();
    assert!(h.complex.diff.is_zero());
    assert_eq!(h.complex.degrees.len(), res.phi());
}

#[test]
fn end_of_sphere_regular_is_k() {
    let r = catalog::by_name("sphere-3").unwrap();
    let reg = DGModule::regular(r.clone());
    let (_, h) = derived_hom(&reg, &reg, &budget()).unwrap();
    assert_eq!(h.complex.cohomology().dim(0), 1);
}

#[test]
fn semifree_tensor_matches_general_tensor() {
    let r = catalog::by_name("sphere-3").unwrap();
    let m = cone_of_x(&r);
    let res = resolve(&m, &budget()).unwrap();
    let dr = Bimodule::dual_of_algebra(r.clone());
    let (fast, left) = semifree_tensor(&dr.degrees, &dr.diff, &dr.right, Some(&dr.left), &res.semifree);
    let slow = tensor_bimodule(&dr, &res.realized).unwrap();
    assert_eq!(fast.cohomology().dims(), slow.cohomology_dims());
    let t = DGModule {
        algebra: r.clone(),
        side: Side::Left,
        labels: (0..fast.degrees.len()).map(|i| format!("t{i}")).collect(),
        degrees: fast.degrees,
        diff: fast.diff,
        action: left.unwrap(),
    };
    t.ensure_valid().unwrap();
}

#[test]
fn derived_tensor_infima_add() {
    let r = catalog::by_name("sphere-3").unwrap();
    let reg = DGModule::regular(r.clone());
    let res = resolve(&reg, &budget()).unwrap();
    let dr = Bimodule::dual_of_algebra(r.clone());
    let (t, _) = semifree_tensor(&dr.degrees, &dr.diff, &dr.right, None, &res.semifree);
    assert_eq!(t.cohomology().dims().inf(), Some(-3));
}

#[test]
fn k_tensor_k_grows_one_class_per_step() {
    let r = catalog::by_name("sphere-3").unwrap();
    let k = DGModule::residue_field(r.clone());
    // the partial resolution of k on 4 generators; k ⊗ F has zero differential
    let mut f = SemifreeModule::free(r.clone(), Side::Left);
    for j in 1..4 {
        let mut b = vec![Q.zero(); f.len() * 2];
        b[(j - 1) * 2 + 1] = -Q.one();
        f.attach(format!("g{j}"), 2 * j as i32, &b).unwrap();
    }
    let right_k = vec![Matrix::identity(Q, 1), Matrix::zeros(Q, 1, 1)];
    let (t, _) = semifree_tensor(&k.degrees, &k.diff, &right_k, None, &f);
    assert_eq!(t.cohomology().dims(), GradedDims::from_pairs(&[(0, 1), (2, 1), (4, 1), (6, 1)]));
}

#[test]
fn semifree_suspension_and_description_round_trip() {
    let r = catalog::by_name("cp2-like").unwrap();
    let m = cone_of_x(&r);
    let f = resolve(&m, &budget()).unwrap().semifree;
    for n in [-3, 1, 2] {
        let s = f.suspend(n);
        s.realize().ensure_valid().unwrap();
        assert_eq!(s.realize().cohomology_dims(), f.realize().cohomology_dims().suspended(n));
    }
    let desc = f.to_description();
    let back = SemifreeModule::from_description(&desc, r.clone()).unwrap();
    assert_eq!(back.realize().diff, f.realize().diff);
}

#[test]
fn right_modules_resolve_over_the_opposite() {
    let r = catalog::by_name("s2xs2").unwrap();
    let dr = Bimodule::dual_of_algebra(r.clone()).as_right();
    let res = resolve(&dr, &budget()).unwrap();
    assert_eq!(res.semifree.generator_degrees(), vec![-4]);
    assert_eq!(res.semifree.side, Side::Right);
}

#[test]
fn certificates() {
    let r = catalog::by_name("sphere-3").unwrap();
    let c = compactness_certificate(&DGModule::regular(r.clone()), &budget()).unwrap();
    assert_eq!(c.verdict, CompactnessVerdict::Compact);
    assert_eq!(c.generators, Some(vec![0]));
    let c = compactness_certificate(&DGModule::residue_field(r), &ResolutionBudget::with_generators(4)).unwrap();
    assert_eq!(c.verdict, CompactnessVerdict::NotWithinBudget);
    assert_eq!(c.trace.passes.len(), 4);
}

#[test]
fn window_limits_generator_degrees() {
    let r = catalog::by_name("sphere-3").unwrap();
    let k = DGModule::residue_field(r);
    let b = ResolutionBudget::new(100, 0, 5).unwrap();
    let Err(DgError::Budget(trace)) = resolve(&k, &b) else { panic!() };
    assert_eq!(trace.passes, vec![(0, 1), (2, 1), (4, 1)]);
    assert!(ResolutionBudget::new(0, 0, 1).is_err());
    assert!(ResolutionBudget::new(1, 2, 1).is_err());
}
