use dgar::ar::Locality;
use dgar::catalog;
use dgar::constructions::{
    build_tree, case1, case2, case2_alpha, distinct_component_certificate, pairing_nondegenerate, PairReason, Stats,
};
use dgar::dg::DGModule;
use dgar::linalg::Scalar;
use dgar::resolution::{resolve, ResolutionBudget, SemifreeModule};
use dgar::DgError;

const SEED: u64 = 3;

fn budget() -> ResolutionBudget {
    ResolutionBudget::default()
}

fn root(name: &str) -> SemifreeModule {
    resolve(&DGModule::regular(catalog::by_name(name).unwrap()), &budget()).unwrap().semifree
}

fn stats(x: &SemifreeModule) -> (i32, i32, usize) {
    let s = Stats::of(x).unwrap();
    (s.inf, s.amp, s.phi)
}

#[test]
fn growth_from_the_free_module() {
    assert_eq!(stats(&case1(&root("cp2-like"), &budget()).unwrap()), (0, 7, 2));
    assert_eq!(stats(&case2(&root("cp2-like"), 2, &budget()).unwrap()), (0, 5, 2));
    assert_eq!(stats(&case1(&root("sphere-3"), &budget()).unwrap()), (0, 5, 2));
}

#[test]
fn preconditions_are_named() {
    let shifted = root("sphere-3").suspend(1);
    assert!(matches!(case1(&shifted, &budget()), Err(DgError::Precondition(_))));
    assert!(matches!(case2(&root("sphere-3"), 2, &budget()), Err(DgError::Precondition(_))));
    let s3 = catalog::by_name("sphere-3").unwrap();
    assert!(build_tree(&s3, 2, 1, &budget(), SEED).is_err());
    assert_eq!(build_tree(&s3, 2, 0, &budget(), SEED).unwrap().len(), 1);
}

#[test]
fn depth_two_tree_over_truncated_polynomial() {
    let a = catalog::by_name("cp2-like").unwrap();
    let nodes = build_tree(&a, 2, 2, &budget(), SEED).unwrap();
    let got: Vec<(String, i32)> = nodes.iter().map(|n| (n.id.clone(), n.stats.amp)).collect();
    let want: Vec<(String, i32)> = [("X", 4), ("X(1)", 7), ("X(2)", 5), ("X(1,1)", 10), ("X(1,2)", 8), ("X(2,1)", 8)]
        .iter()
        .map(|(w, a)| (w.to_string(), *a))
        .collect();
    assert_eq!(got, want);
    assert!(nodes.iter().all(|n| n.laws_hold && n.locality == Locality::Local));
    assert!(nodes.iter().all(|n| n.stats.phi == n.word.len() + 1));
    // after Case 1 the pairing into the new top class is again perfect
    assert!(nodes.iter().filter(|n| n.word.last() == Some(&dgar::constructions::Step::One)).all(|n| n.pairing_nondegenerate == Some(true)));

    let column: Vec<(String, SemifreeModule)> =
        nodes.iter().filter(|n| n.word.len() == 2).map(|n| (n.id.clone(), n.module.clone().unwrap())).collect();
    let cert = distinct_component_certificate(&column, &budget(), SEED).unwrap();
    assert!(cert.amplitude_lower_bound >= 2);
}

#[test]
fn rays_in_the_middle_degree() {
    let a = catalog::by_name("s2xs2").unwrap();
    let f = a.field;
    let x = root("s2xs2");
    assert!(pairing_nondegenerate(&x, 2, 2).unwrap());
    let alpha = |c: &[i64]| -> Vec<Scalar> { c.iter().map(|&v| f.from_i64(v)).collect() };
    let family: Vec<(String, SemifreeModule)> = [("x", [1, 0]), ("y", [0, 1]), ("x+y", [1, 1])]
        .iter()
        .map(|(n, c)| (n.to_string(), case2_alpha(&x, 2, &alpha(c), &budget()).unwrap()))
        .collect();
    let s: Vec<_> = family.iter().map(|(_, m)| stats(m)).collect();
    assert!(s.iter().all(|&t| t == s[0]));
    let cert = distinct_component_certificate(&family, &budget(), SEED).unwrap();
    assert_eq!(cert.lower_bound, 3);
    assert!(cert.pairs.iter().all(|p| p.reason == PairReason::NotIsomorphic));

    for k in [2, -1] {
        let scaled = case2_alpha(&x, 2, &alpha(&[k, 0]), &budget()).unwrap();
        let pair = vec![family[0].clone(), ("kx".to_string(), scaled)];
        let cert = distinct_component_certificate(&pair, &budget(), SEED).unwrap();
        assert_eq!(cert.pairs[0].reason, PairReason::Isomorphic);
        assert_eq!(cert.lower_bound, 1);
    }
    assert!(case2_alpha(&x, 2, &alpha(&[0, 0]), &budget()).is_err());
}
